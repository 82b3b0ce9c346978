#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tailassign/simplex.hpp"
#include "test_helpers.hpp"

using namespace tailassign;
using ta_test::lp_brute_force_min;

namespace {

LinearProgram small_lp() {
  // min -x - 2y   s.t. x + y <= 4, x <= 3
  LinearProgram lp;
  lp.add_row(RowSense::less_equal, 4.0);
  lp.add_row(RowSense::less_equal, 3.0);
  lp.add_column(-1.0, {{0, 1.0}, {1, 1.0}});
  lp.add_column(-2.0, {{0, 1.0}});
  return lp;
}

}  // namespace

TEST_CASE("bounded LP with inequality rows") {
  auto sol = solve_simplex(small_lp());
  REQUIRE(sol.status == LpStatus::optimal);
  REQUIRE(sol.objective == Catch::Approx(-8.0));
  REQUIRE(sol.x[1] == Catch::Approx(4.0));
  // Dual of the binding row certifies the optimum: b^T y = objective.
  REQUIRE(4.0 * sol.duals[0] + 3.0 * sol.duals[1] == Catch::Approx(-8.0));
  REQUIRE(sol.duals[0] <= 1e-9);  // <= row in a minimization
}

TEST_CASE("equality rows go through phase 1") {
  // x - y = 1, x + y = 3  ->  x = 2, y = 1
  LinearProgram lp;
  lp.add_row(RowSense::equal, 1.0);
  lp.add_row(RowSense::equal, 3.0);
  lp.add_column(1.0, {{0, 1.0}, {1, 1.0}});   // x
  lp.add_column(1.0, {{0, -1.0}, {1, 1.0}});  // y
  auto sol = solve_simplex(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  REQUIRE(sol.x[0] == Catch::Approx(2.0));
  REQUIRE(sol.x[1] == Catch::Approx(1.0));
  REQUIRE(sol.objective == Catch::Approx(3.0));
}

TEST_CASE("negative right-hand sides are handled") {
  // -x <= -2 (i.e. x >= 2), min x  ->  2
  LinearProgram lp;
  lp.add_row(RowSense::less_equal, -2.0);
  lp.add_column(1.0, {{0, -1.0}});
  auto sol = solve_simplex(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  REQUIRE(sol.objective == Catch::Approx(2.0));
}

TEST_CASE("infeasibility is detected") {
  LinearProgram lp;
  lp.add_row(RowSense::equal, -1.0);
  lp.add_column(1.0, {{0, 1.0}});  // x = -1 with x >= 0
  REQUIRE(solve_simplex(lp).status == LpStatus::infeasible);

  LinearProgram lp2;  // x <= 1 and x = 2
  lp2.add_row(RowSense::less_equal, 1.0);
  lp2.add_row(RowSense::equal, 2.0);
  lp2.add_column(0.0, {{0, 1.0}, {1, 1.0}});
  REQUIRE(solve_simplex(lp2).status == LpStatus::infeasible);
}

TEST_CASE("unboundedness is detected") {
  LinearProgram lp;
  lp.add_row(RowSense::less_equal, 1.0);
  lp.add_column(-1.0, {});  // free fall, no constraint touches it
  REQUIRE(solve_simplex(lp).status == LpStatus::unbounded);

  LinearProgram no_rows;
  no_rows.add_column(-1.0, {});
  REQUIRE(solve_simplex(no_rows).status == LpStatus::unbounded);
}

TEST_CASE("empty problems are optimal at zero") {
  LinearProgram lp;
  REQUIRE(solve_simplex(lp).status == LpStatus::optimal);
  lp.add_column(2.0, {});
  auto sol = solve_simplex(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  REQUIRE(sol.objective == 0.0);
}

TEST_CASE("classic degenerate problem terminates at the optimum") {
  // Beale's cycling example; Dantzig pricing cycles on it without the
  // Bland fallback.
  LinearProgram lp;
  lp.add_row(RowSense::less_equal, 0.0);
  lp.add_row(RowSense::less_equal, 0.0);
  lp.add_row(RowSense::less_equal, 1.0);
  lp.add_column(-0.75, {{0, 0.25}, {1, 0.5}});
  lp.add_column(150.0, {{0, -60.0}, {1, -90.0}});
  lp.add_column(-0.02, {{0, -1.0 / 25.0}, {1, -1.0 / 50.0}, {2, 1.0}});
  lp.add_column(6.0, {{0, 9.0}, {1, 3.0}});
  SimplexOptions opt;
  opt.bland_after = 50;
  auto sol = solve_simplex(lp, opt);
  REQUIRE(sol.status == LpStatus::optimal);
  REQUIRE(sol.objective == Catch::Approx(lp_brute_force_min(lp)).margin(1e-9));
}

TEST_CASE("random LPs match brute-force vertex enumeration") {
  std::mt19937_64 rng(42);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + static_cast<int>(rng() % 3);
    int n = 3 + static_cast<int>(rng() % 4);
    LinearProgram lp;
    for (int i = 0; i < m; ++i) {
      RowSense sense = (rng() % 2) ? RowSense::less_equal : RowSense::equal;
      double rhs = static_cast<double>(rng() % 9) - 2.0;
      lp.add_row(sense, rhs);
    }
    for (int j = 0; j < n; ++j) {
      double cost = static_cast<double>(rng() % 11) - 3.0;
      std::vector<LinearProgram::Entry> entries;
      for (int i = 0; i < m; ++i)
        if (rng() % 3) entries.push_back({i, static_cast<double>(rng() % 7) - 3.0});
      lp.add_column(cost, std::move(entries));
    }

    auto sol = solve_simplex(lp);
    double brute = lp_brute_force_min(lp);
    if (sol.status == LpStatus::optimal) {
      ++solved;
      REQUIRE(sol.objective == Catch::Approx(brute).margin(1e-6));
      // Dual certificate: strong duality and dual feasibility.
      double by = 0.0;
      for (int i = 0; i < m; ++i) by += lp.rows[i].rhs * sol.duals[i];
      REQUIRE(by == Catch::Approx(sol.objective).margin(1e-6));
      for (const auto& col : lp.columns) {
        double rc = col.cost;
        for (const auto& e : col.entries) rc -= sol.duals[e.row] * e.coef;
        REQUIRE(rc >= -1e-7);
      }
      for (int i = 0; i < m; ++i)
        if (lp.rows[i].sense == RowSense::less_equal) REQUIRE(sol.duals[i] <= 1e-7);
    } else if (sol.status == LpStatus::infeasible) {
      REQUIRE(std::isinf(brute));
    }
    // Unbounded cases cannot be cross-checked by vertex enumeration.
  }
  REQUIRE(solved > 50);  // the sample must actually exercise the solver
}

TEST_CASE("a feasible basis hint skips phase 1 and changes nothing") {
  // Master-shaped LP: two equality rows with their own slack-like columns,
  // one <= row.
  LinearProgram lp;
  lp.add_row(RowSense::equal, 1.0);
  lp.add_row(RowSense::equal, 1.0);
  lp.add_row(RowSense::less_equal, 1.0);
  lp.add_column(100.0, {{0, 1.0}});                       // slack of row 0
  lp.add_column(80.0, {{1, 1.0}});                        // slack of row 1
  lp.add_column(30.0, {{0, 1.0}, {1, 1.0}, {2, 1.0}});    // covering column

  SimplexOptions opt;
  opt.basis_hint = {0, 1, -1};
  auto hinted = solve_simplex(lp, opt);
  auto plain = solve_simplex(lp);
  REQUIRE(hinted.status == LpStatus::optimal);
  REQUIRE(hinted.objective == Catch::Approx(30.0));
  REQUIRE(plain.objective == Catch::Approx(hinted.objective));
}
