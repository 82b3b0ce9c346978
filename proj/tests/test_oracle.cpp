#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "tailassign/driver.hpp"
#include "tailassign/master.hpp"
#include "tailassign/oracle.hpp"
#include "test_helpers.hpp"

using namespace tailassign;
using ta_test::make_airport;
using ta_test::make_flight;
using ta_test::preassigned_instance;
using ta_test::two_tail_instance;

namespace {

std::set<std::vector<int>> activity_sets(const std::vector<Route>& routes) {
  std::set<std::vector<int>> out;
  for (const auto& r : routes) out.insert(r.activities);
  return out;
}

}  // namespace

TEST_CASE("enumeration over the four-flight chain, hand-counted") {
  Instance inst = two_tail_instance();

  // T1 from AAA: prefixes of F1>F2>F3>F4 plus the F3-start suffixes, plus
  // one maintenance variant for each route using the eligible F2->F3 gap.
  auto t1 = enumerate_routes(inst, inst.tails[0]);
  REQUIRE(t1.size() == 9);
  auto sets1 = activity_sets(t1);
  REQUIRE(sets1 ==
          std::set<std::vector<int>>{{}, {0}, {0, 1}, {0, 1, 2}, {0, 1, 2, 3}, {2}, {2, 3}});
  int with_maint = 0;
  for (const auto& r : t1) with_maint += !r.maintenance_positions.empty();
  REQUIRE(with_maint == 2);  // F1>F2>[m]F3 and F1>F2>[m]F3>F4

  // T2 from BBB: prefixes of F2>F3>F4 plus the same doubling.
  auto t2 = enumerate_routes(inst, inst.tails[1]);
  REQUIRE(t2.size() == 6);

  // Every enumerated route passes the independent route validation.
  for (const auto& r : t1) REQUIRE(route_violations(inst, r).empty());
  for (const auto& r : t2) REQUIRE(route_violations(inst, r).empty());
}

TEST_CASE("a maintenance-eligible arc doubles the routes through it") {
  Instance inst = two_tail_instance();
  auto routes = enumerate_routes(inst, inst.tails[0]);
  int through = 0, with_maint = 0;
  for (const auto& r : routes) {
    bool uses = false;
    for (std::size_t k = 0; k + 1 < r.activities.size(); ++k)
      if (r.activities[k] == 1 && r.activities[k + 1] == 2) uses = true;
    if (uses && r.maintenance_positions.empty()) ++through;
    if (!r.maintenance_positions.empty()) ++with_maint;
  }
  REQUIRE(through == with_maint);
}

TEST_CASE("fully restricted tail keeps only the carry-in route") {
  Instance inst = two_tail_instance();
  for (auto& a : inst.activities) a.restricted_tails.insert("T1");
  inst.rebuild_indices();
  auto routes = enumerate_routes(inst, inst.tails[0]);
  REQUIRE(routes.size() == 1);
  REQUIRE(routes[0].activities.empty());
  REQUIRE(routes[0].cost == 0.0);
}

TEST_CASE("size guard refuses oversized tails") {
  Instance inst;
  inst.horizon_days = 3;
  inst.airports["X"] = make_airport(25, 600, false, 0, 0);
  inst.airports["Y"] = make_airport(25, 600, false, 0, 0);
  for (int f = 0; f < 25; ++f)
    inst.activities.push_back(make_flight("F" + std::to_string(f), f % 2 ? "X" : "Y",
                                          f % 2 ? "Y" : "X", f * 100, f * 100 + 60));
  Tail t;
  t.id = "T1";
  t.carry_in_base = "X";
  t.fh_limit = 100;
  t.fc_limit = 100;
  inst.tails.push_back(t);
  inst.cost_params = {1.0, 1.0, 0.0};
  inst.rebuild_indices();
  REQUIRE_THROWS_WITH(enumerate_routes(inst, inst.tails[0]),
                      Catch::Matchers::ContainsSubstring("size guard"));
}

TEST_CASE("solve_exact with no usable routes pays every penalty") {
  Instance inst = two_tail_instance();
  for (auto& a : inst.activities) {
    a.restricted_tails.insert("T1");
    a.restricted_tails.insert("T2");
  }
  inst.rebuild_indices();
  auto sol = solve_exact(inst);
  REQUIRE(sol.routes.empty());
  REQUIRE(sol.uncovered.size() == 4);
  REQUIRE(sol.objective == Catch::Approx(40000.0));
}

TEST_CASE("hand-derived optimum of the two-tail instance") {
  // T1 flies F1 alone (cost 0), T2 takes F2>F3>F4 (two arcs, no bonus for
  // T2, exactly at its FH/FC limits): objective 20. Assigning everything
  // to T1 costs 24 even with the full retention bonus.
  Instance inst = two_tail_instance();
  auto sol = solve_exact(inst);
  REQUIRE(sol.objective == Catch::Approx(20.0));
  REQUIRE(sol.uncovered.empty());

  // Cross-check in both directions against the full solver.
  auto [driver_sol, report] = solve(inst, DriverConfig{});
  REQUIRE(driver_sol.objective == Catch::Approx(sol.objective));
}

TEST_CASE("pre-assignments are honored by enumeration and the exact solve") {
  Instance inst = preassigned_instance();
  int m1 = inst.activity_index("M1");
  auto routes = enumerate_routes(inst, inst.tails[0]);
  for (const auto& r : routes) {
    REQUIRE(std::count(r.activities.begin(), r.activities.end(), m1) == 1);
    REQUIRE(route_violations(inst, r).empty());
  }
  auto sol = solve_exact(inst);
  bool t1_has_m1 = false;
  for (const auto& r : sol.routes)
    if (r.tail == 0 && std::count(r.activities.begin(), r.activities.end(), m1)) t1_has_m1 = true;
  REQUIRE(t1_has_m1);
}

TEST_CASE("fractional LP sits strictly below the exact integer optimum") {
  // Two tails with overnight obligations and a tight FH limit produce an
  // odd-cycle coverage structure:
  //   T1 (X, overnight X, 2.5h):  [a,b] or [c,d]
  //   T2 (Y, overnight Y):        [b,c]
  // The LP covers three units of work at value one half each; any integer
  // choice leaves two activities uncovered.
  Instance inst;
  inst.horizon_days = 1;
  inst.airports["X"] = make_airport(25, 600, false, 0, 0);
  // Tight MCT at Y forbids the a->d connection that would otherwise give
  // T1 a third, integrality-restoring pairing.
  inst.airports["Y"] = make_airport(25, 100, false, 0, 0);
  inst.activities.push_back(make_flight("a", "X", "Y", 0, 60));
  inst.activities.push_back(make_flight("b", "Y", "X", 100, 160));
  inst.activities.push_back(make_flight("c", "X", "Y", 200, 260));
  inst.activities.push_back(make_flight("d", "Y", "X", 300, 360));

  Tail t1;
  t1.id = "T1";
  t1.carry_in_base = "X";
  t1.fh_limit = 2.5;
  t1.fc_limit = 4;
  t1.overnight_base = "X";
  inst.tails.push_back(t1);
  Tail t2;
  t2.id = "T2";
  t2.carry_in_base = "Y";
  t2.fh_limit = 10;
  t2.fc_limit = 4;
  t2.overnight_base = "Y";
  inst.tails.push_back(t2);
  inst.cost_params = {10.0, 50.0, 0.0};
  inst.rebuild_indices();
  REQUIRE(validate_instance(inst).ok());

  auto r1 = enumerate_routes(inst, inst.tails[0]);
  auto r2 = enumerate_routes(inst, inst.tails[1]);
  REQUIRE(activity_sets(r1) == std::set<std::vector<int>>{{}, {0, 1}, {2, 3}});
  REQUIRE(activity_sets(r2) == std::set<std::vector<int>>{{}, {1, 2}});

  // LP over every enumerable route.
  RmpState state = init_rmp(inst);
  std::vector<Route> all = r1;
  all.insert(all.end(), r2.begin(), r2.end());
  add_columns(state, all);
  LpSolution lp = solve_lp(state);
  REQUIRE(lp.status == LpStatus::optimal);
  REQUIRE(lp.objective == Catch::Approx(10015.0));

  auto exact = solve_exact(inst);
  REQUIRE(exact.objective == Catch::Approx(20010.0));
  REQUIRE(exact.objective > lp.objective + 1.0);
}

TEST_CASE("exact solve is deterministic") {
  Instance inst = two_tail_instance();
  auto a = solve_exact(inst);
  auto b = solve_exact(inst);
  REQUIRE(a.objective == b.objective);
  REQUIRE(a.routes.size() == b.routes.size());
  for (std::size_t i = 0; i < a.routes.size(); ++i) {
    REQUIRE(a.routes[i].tail == b.routes[i].tail);
    REQUIRE(a.routes[i].activities == b.routes[i].activities);
  }
}
