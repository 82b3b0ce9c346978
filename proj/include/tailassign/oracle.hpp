#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailassign/core.hpp"

// Brute-force reference implementations for testing: exhaustive route
// enumeration per tail and the exact set-partitioning optimum by
// enumerating one-route-or-none choices. Deliberately independent of the
// network and pricing modules; every rule is re-derived from the instance
// so the two code paths can check each other.

namespace tailassign {

struct OracleGuards {
  int max_activities_per_tail = 20;
  long max_routes = 200000;
  long max_nodes = 100000000;  // solve_exact search nodes
};

namespace oracle_detail {

struct TailContext {
  const Instance* inst;
  const Tail* tail;
  std::vector<PreAssignment> pre;  // chronological
  std::vector<int> pre_activity;   // instance activity index per pre-assignment
  const std::set<std::pair<int, int>>* arc_filter;
};

inline Minutes mgt_at(const Instance& inst, const std::string& base) {
  const AirportInfo* ap = inst.airport(base);
  return ap ? ap->mgt : 0;
}

// First pre-assignment the activity can still precede, or one past the last.
inline int segment_of(const TailContext& ctx, const Activity& a) {
  for (int i = 0; i < static_cast<int>(ctx.pre.size()); ++i)
    if (a.arrival_time + mgt_at(*ctx.inst, ctx.pre[i].base) <= ctx.pre[i].latest_start)
      return i + 1;
  return static_cast<int>(ctx.pre.size()) + 1;
}

struct Transition {
  int activity;       // target instance activity index
  int pre_index;      // >= 0 when the target is a pre-assignment
  bool maintenance_possible;
};

// Whether the ground interval before `start_of_next` at `base`, released at
// `release`, can host a periodic check.
inline bool check_fits(const Instance& inst, const std::string& base, Minutes release,
                       Minutes start_of_next) {
  const AirportInfo* ap = inst.airport(base);
  if (!ap || !ap->is_maintenance_base) return false;
  return start_of_next - release >= ap->required_maintenance_time;
}

}  // namespace oracle_detail

// Every feasible route of one tail, including every legal pattern of
// exercised maintenance opportunities. `arc_filter`, when given, restricts
// flight-to-flight transitions to the listed activity pairs.
inline std::vector<Route> enumerate_routes(const Instance& inst, const Tail& tail,
                                           const std::set<std::pair<int, int>>* arc_filter = nullptr,
                                           const OracleGuards& guards = {}) {
  using namespace oracle_detail;
  TailContext ctx{&inst, &tail, tail.pre_assignments, {}, arc_filter};
  std::sort(ctx.pre.begin(), ctx.pre.end(),
            [](const PreAssignment& a, const PreAssignment& b) {
              return a.earliest_start < b.earliest_start;
            });
  for (const auto& p : ctx.pre) {
    int ai = inst.activity_index(p.activity_id);
    if (ai < 0) throw std::invalid_argument("pre-assignment references unknown activity");
    ctx.pre_activity.push_back(ai);
  }
  const int k_pre = static_cast<int>(ctx.pre.size());
  const int tail_idx = inst.tail_index(tail.id);

  // Assignable activities and their segments.
  std::vector<int> flights;
  std::vector<int> seg(inst.activities.size(), 0);
  for (int ai = 0; ai < static_cast<int>(inst.activities.size()); ++ai) {
    const Activity& a = inst.activities[ai];
    if (!a.is_flight()) continue;
    if (a.restricted_tails.count(tail.id)) continue;
    flights.push_back(ai);
    seg[ai] = segment_of(ctx, a);
  }
  if (static_cast<int>(flights.size()) + k_pre > guards.max_activities_per_tail)
    throw std::runtime_error("enumerate_routes: tail network exceeds the size guard");

  const Minutes fh_limit = tail.fh_limit_minutes();
  std::vector<Route> out;

  // All transitions from a state: either at the carry-in (last < 0) or after
  // element `last` (a flight, or pre-assignment `last_pre`).
  auto transitions = [&](int last, int last_pre, int next_pre) {
    std::vector<Transition> ts;
    std::string base;
    Minutes release = 0;
    if (last < 0) {
      base = tail.carry_in_base;
      release = tail.carry_in_ready_time;
    } else if (last_pre >= 0) {
      base = ctx.pre[last_pre].base;
      release = ctx.pre[last_pre].latest_finish();
    } else {
      base = inst.activities[last].arrival_base;
      release = inst.activities[last].arrival_time;
    }
    Minutes mgt = mgt_at(inst, base);
    const AirportInfo* ap = inst.airport(base);

    for (int f : flights) {
      const Activity& b = inst.activities[f];
      if (b.departure_base != base) continue;
      if (last < 0) {
        if (seg[f] != 1 || b.departure_time < tail.carry_in_ready_time) continue;
        ts.push_back({f, -1, false});
      } else if (last_pre >= 0) {
        if (seg[f] != last_pre + 2) continue;
        if (b.departure_time < release + mgt) continue;
        ts.push_back({f, -1, check_fits(inst, base, release, b.departure_time)});
      } else {
        if (seg[f] != seg[last]) continue;
        Minutes ground = b.departure_time - release;
        if (ground < mgt || (ap && ground > ap->mct)) continue;
        if (arc_filter && !arc_filter->count({last, f})) continue;
        ts.push_back({f, -1, check_fits(inst, base, release, b.departure_time)});
      }
    }

    if (next_pre < k_pre) {
      const PreAssignment& p = ctx.pre[next_pre];
      Minutes p_mgt = mgt_at(inst, p.base);
      if (last < 0) {
        if (p.base == base && tail.carry_in_ready_time <= p.latest_start)
          ts.push_back({ctx.pre_activity[next_pre], next_pre, false});
      } else if (p.base == base && release + p_mgt <= p.latest_start) {
        bool in_right_segment = last_pre >= 0 ? (next_pre == last_pre + 1)
                                              : (seg[last] == next_pre + 1);
        if (in_right_segment) {
          Minutes start = detail::preassignment_start(p, release + p_mgt);
          ts.push_back({ctx.pre_activity[next_pre], next_pre,
                        check_fits(inst, base, release, start)});
        }
      }
    }
    return ts;
  };

  auto can_end = [&](int last, int last_pre, int next_pre) {
    if (next_pre < k_pre) return false;  // mandatory work remains
    if (!tail.overnight_base) return true;
    if (last < 0) return tail.carry_in_base == *tail.overnight_base;
    if (last_pre >= 0) return ctx.pre[last_pre].base == *tail.overnight_base;
    return inst.activities[last].arrival_base == *tail.overnight_base;
  };

  struct Frame {
    std::vector<int> activities;
    std::vector<int> maintenance;
  };
  Frame frame;

  // Depth-first over (sequence, FH, FC, next pre-assignment).
  auto dfs = [&](auto&& self, int last, int last_pre, int next_pre, Minutes fh, int fc) -> void {
    if (can_end(last, last_pre, next_pre)) {
      Route r;
      r.tail = tail_idx;
      r.activities = frame.activities;
      r.maintenance_positions = frame.maintenance;
      r.cost = route_cost(inst, r);
      out.push_back(std::move(r));
      if (static_cast<long>(out.size()) > guards.max_routes)
        throw std::runtime_error("enumerate_routes: route count exceeds the size guard");
    }
    for (const Transition& t : transitions(last, last_pre, next_pre)) {
      const Activity& a = inst.activities[t.activity];
      int new_next = t.pre_index >= 0 ? next_pre + 1 : next_pre;
      for (int do_check = 0; do_check <= (t.maintenance_possible ? 1 : 0); ++do_check) {
        Minutes nfh = (do_check ? 0 : fh) + a.flying_minutes();
        int nfc = (do_check ? 0 : fc) + a.cycles;
        if (nfh > fh_limit || nfc > tail.fc_limit) continue;
        if (do_check) frame.maintenance.push_back(static_cast<int>(frame.activities.size()) - 1);
        frame.activities.push_back(t.activity);
        self(self, t.activity, t.pre_index, new_next, nfh, nfc);
        frame.activities.pop_back();
        if (do_check) frame.maintenance.pop_back();
      }
    }
  };
  dfs(dfs, -1, -1, 0, tail.fh_accumulated_minutes(), tail.fc_accumulated);

  // Deterministic order: by activity sequence, then maintenance pattern.
  std::sort(out.begin(), out.end(), [](const Route& a, const Route& b) {
    if (a.activities != b.activities) return a.activities < b.activities;
    return a.maintenance_positions < b.maintenance_positions;
  });
  return out;
}

// Exact optimum of the set-partitioning model by depth-first search over
// one-route-or-none choices per tail, with an admissible bound for pruning.
inline IntegralSolution solve_exact(const Instance& inst, const OracleGuards& guards = {}) {
  if (inst.tails.size() > 5)
    throw std::runtime_error("solve_exact: too many tails for exhaustive search");

  std::vector<std::vector<Route>> routes_per_tail;
  long total_routes = 0;
  for (const Tail& t : inst.tails) {
    routes_per_tail.push_back(enumerate_routes(inst, t, nullptr, guards));
    total_routes += static_cast<long>(routes_per_tail.back().size());
  }
  if (total_routes > 10000)
    throw std::runtime_error("solve_exact: route pool exceeds the size guard");

  const int n_act = static_cast<int>(inst.activities.size());
  const int n_tails = static_cast<int>(inst.tails.size());
  double base_penalty = 0.0;
  for (const Activity& a : inst.activities) base_penalty += a.uncovered_penalty;

  // delta of a route: its cost minus the penalties it saves.
  auto delta_of = [&](const Route& r) {
    double d = r.cost;
    for (int ai : r.activities) d -= inst.activities[ai].uncovered_penalty;
    return d;
  };

  // Best possible improvement from tail t onward, ignoring disjointness.
  std::vector<double> suffix_bound(n_tails + 1, 0.0);
  for (int t = n_tails - 1; t >= 0; --t) {
    double best = 0.0;
    for (const Route& r : routes_per_tail[t]) best = std::min(best, delta_of(r));
    suffix_bound[t] = suffix_bound[t + 1] + best;
  }

  std::vector<char> covered(n_act, 0);
  std::vector<const Route*> chosen(n_tails, nullptr);
  std::vector<const Route*> best_choice(n_tails, nullptr);
  double best_obj = std::numeric_limits<double>::infinity();
  long nodes = 0;

  auto dfs = [&](auto&& self, int t, double obj) -> void {
    if (++nodes > guards.max_nodes)
      throw std::runtime_error("solve_exact: search node guard exceeded");
    if (t == n_tails) {
      if (obj < best_obj - 1e-12) {
        best_obj = obj;
        best_choice = chosen;
      }
      return;
    }
    if (obj + suffix_bound[t] >= best_obj - 1e-12) return;

    // "none" first, then routes in their deterministic enumeration order;
    // the first solution found among ties wins.
    chosen[t] = nullptr;
    self(self, t + 1, obj);
    for (const Route& r : routes_per_tail[t]) {
      bool clash = false;
      for (int ai : r.activities)
        if (covered[ai]) {
          clash = true;
          break;
        }
      if (clash) continue;
      for (int ai : r.activities) covered[ai] = 1;
      chosen[t] = &r;
      self(self, t + 1, obj + delta_of(r));
      chosen[t] = nullptr;
      for (int ai : r.activities) covered[ai] = 0;
    }
  };
  dfs(dfs, 0, base_penalty);

  std::vector<Route> picked;
  for (int t = 0; t < n_tails; ++t)
    if (best_choice[t]) picked.push_back(*best_choice[t]);
  return evaluate_selection(inst, std::move(picked));
}

}  // namespace tailassign
