#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tailassign/core.hpp"
#include "tailassign/simplex.hpp"

// Shared fixtures: small hand-checkable instances and a brute-force LP
// solver used as an independent oracle for the simplex.

namespace ta_test {

using namespace tailassign;

inline Activity make_flight(const std::string& id, const std::string& from, const std::string& to,
                            Minutes dep, Minutes arr, double penalty = 10000.0) {
  Activity a;
  a.id = id;
  a.kind = ActivityKind::flight;
  a.departure_base = from;
  a.arrival_base = to;
  a.departure_time = dep;
  a.arrival_time = arr;
  a.flying_hours = (arr - dep) / 60.0;
  a.cycles = 1;
  a.uncovered_penalty = penalty;
  return a;
}

inline AirportInfo make_airport(Minutes mgt, Minutes mct, bool maint, int hangar, Minutes required) {
  AirportInfo ap;
  ap.mgt = mgt;
  ap.mct = mct;
  ap.is_maintenance_base = maint;
  ap.hangar_capacity = hangar;
  ap.required_maintenance_time = required;
  return ap;
}

// Two tails, four flights, three connection arcs:
//   F1 AAA->BBB 100-220, F2 BBB->AAA 260-380,
//   F3 AAA->CCC 520-640, F4 CCC->AAA 700-820.
// Arcs: (F1,F2) ground 40 at BBB, (F2,F3) ground 140 at AAA
// (maintenance-eligible: AAA hangar, required 120), (F3,F4) ground 60 at
// CCC (not eligible, required 150). T1 starts at AAA and owns the planned
// rotation F1>F2>F3>F4; T2 starts at BBB with hard resource state:
// the route F2>F3>F4 lands exactly at its FH and FC limits.
inline Instance two_tail_instance() {
  Instance inst;
  inst.horizon_days = 2;
  inst.airports["AAA"] = make_airport(30, 600, true, 2, 120);
  inst.airports["BBB"] = make_airport(25, 600, false, 0, 0);
  inst.airports["CCC"] = make_airport(35, 400, true, 1, 150);

  inst.activities.push_back(make_flight("F1", "AAA", "BBB", 100, 220));
  inst.activities.push_back(make_flight("F2", "BBB", "AAA", 260, 380));
  inst.activities.push_back(make_flight("F3", "AAA", "CCC", 520, 640));
  inst.activities.push_back(make_flight("F4", "CCC", "AAA", 700, 820));

  Tail t1;
  t1.id = "T1";
  t1.carry_in_base = "AAA";
  t1.carry_in_ready_time = 0;
  t1.fh_limit = 10.0;
  t1.fc_limit = 6;
  inst.tails.push_back(t1);

  Tail t2;
  t2.id = "T2";
  t2.carry_in_base = "BBB";
  t2.carry_in_ready_time = 0;
  t2.fh_limit = 8.0;
  t2.fc_limit = 4;
  t2.fh_accumulated = 2.0;
  t2.fc_accumulated = 1;
  inst.tails.push_back(t2);

  inst.lof_plan["T1"] = {"F1", "F2", "F3", "F4"};
  inst.cost_params.connection_cost = 10.0;
  inst.cost_params.maintenance_cost = 50.0;
  inst.cost_params.lof_bonus = 2.0;
  inst.rebuild_indices();
  return inst;
}

// Variant with a pre-assigned maintenance event M1 for T1 at AAA, window
// [400, 460] start, duration 150 (latest finish 610). Flights F3/F4 are
// shifted so they can follow the event under the latest-finish rule.
inline Instance preassigned_instance() {
  Instance inst = two_tail_instance();
  inst.activities[2] = make_flight("F3", "AAA", "CCC", 650, 770);
  inst.activities[3] = make_flight("F4", "CCC", "AAA", 830, 950);

  Activity m;
  m.id = "M1";
  m.kind = ActivityKind::pre_assigned_maintenance;
  m.departure_base = "AAA";
  m.arrival_base = "AAA";
  m.departure_time = 400;
  m.arrival_time = 550;
  m.flying_hours = 0.0;
  m.cycles = 0;
  m.uncovered_penalty = 10000.0;
  inst.activities.push_back(m);

  PreAssignment pre;
  pre.activity_id = "M1";
  pre.base = "AAA";
  pre.earliest_start = 400;
  pre.latest_start = 460;
  pre.duration = 150;
  inst.tails[0].pre_assignments.push_back(pre);

  inst.lof_plan["T1"] = {"F1", "F2", "M1", "F3", "F4"};
  inst.rebuild_indices();
  return inst;
}

// Brute-force LP minimum by enumerating basic solutions: every m-subset of
// columns (user columns plus slacks of <= rows), solved by Gaussian
// elimination. Returns +inf when no feasible vertex exists.
inline double lp_brute_force_min(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  struct Col {
    double cost;
    std::vector<double> a;
  };
  std::vector<Col> cols;
  for (const auto& c : lp.columns) {
    Col col{c.cost, std::vector<double>(m, 0.0)};
    for (const auto& e : c.entries) col.a[e.row] += e.coef;
    cols.push_back(std::move(col));
  }
  for (int i = 0; i < m; ++i) {
    if (lp.rows[i].sense == RowSense::less_equal) {
      Col col{0.0, std::vector<double>(m, 0.0)};
      col.a[i] = 1.0;
      cols.push_back(std::move(col));
    }
  }
  const int n = static_cast<int>(cols.size());
  if (m == 0) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(m);
  auto try_basis = [&]() {
    // Solve B x = b.
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (int c = 0; c < m; ++c)
      for (int r = 0; r < m; ++r) a[r][c] = cols[pick[c]].a[r];
    for (int r = 0; r < m; ++r) a[r][m] = lp.rows[r].rhs;
    for (int c = 0; c < m; ++c) {
      int piv = -1;
      double bestp = 1e-9;
      for (int r = c; r < m; ++r)
        if (std::fabs(a[r][c]) > bestp) {
          bestp = std::fabs(a[r][c]);
          piv = r;
        }
      if (piv < 0) return;
      std::swap(a[c], a[piv]);
      for (int r = 0; r < m; ++r) {
        if (r == c) continue;
        double f = a[r][c] / a[c][c];
        if (f == 0.0) continue;
        for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
      }
    }
    double obj = 0.0;
    for (int c = 0; c < m; ++c) {
      double x = a[c][m] / a[c][c];
      if (x < -1e-7) return;
      obj += cols[pick[c]].cost * x;
    }
    best = std::min(best, obj);
  };
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      try_basis();
      return;
    }
    for (int c = start; c < n; ++c) {
      pick[depth] = c;
      self(self, c + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace ta_test
