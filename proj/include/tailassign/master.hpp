#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tailassign/core.hpp"
#include "tailassign/simplex.hpp"

// Restricted master problem: one coverage equality row per activity, one
// convexity row per tail, slack variables pricing uncovered activities at
// their penalty. Route columns arrive from pricing; variables can be fixed
// to one, which deactivates the tail. The final integer program is solved
// by branch and bound over the column pool.

namespace tailassign {

struct RmpState {
  const Instance* instance = nullptr;
  std::vector<Route> columns;   // route columns in addition order
  std::set<int> fixed_vars;     // fixed route variable ids
  std::set<int> inactive_tails;
  std::vector<std::string> warnings;

  // Variable ids: activity slacks first, then route columns by position.
  int n_activities() const { return static_cast<int>(instance->activities.size()); }
  int n_tails() const { return static_cast<int>(instance->tails.size()); }
  int route_var(int position) const { return n_activities() + position; }
  bool is_slack(int var) const { return var < n_activities(); }
  const Route& route_of(int var) const { return columns[var - n_activities()]; }

  bool has_column(const Route& r) const {
    return signatures_.count(signature(r)) > 0;
  }
  void register_column(const Route& r) { signatures_.insert(signature(r)); }

 private:
  static std::tuple<int, std::vector<int>, std::vector<int>> signature(const Route& r) {
    return {r.tail, r.activities, r.maintenance_positions};
  }
  std::set<std::tuple<int, std::vector<int>, std::vector<int>>> signatures_;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> primal;  // by variable id (slacks then routes)
  DualSolution duals;
  std::vector<int> conflicting_fixed;  // populated when fixing made the LP infeasible
  int simplex_iterations = 0;
};

inline RmpState init_rmp(const Instance& inst) {
  RmpState state;
  state.instance = &inst;
  return state;
}

// Number of routes actually added; duplicates and routes of inactive tails
// are skipped (the latter with a warning).
inline int add_columns(RmpState& state, const std::vector<Route>& routes) {
  int added = 0;
  for (const Route& r : routes) {
    if (state.inactive_tails.count(r.tail)) {
      state.warnings.push_back("skipped route for inactive tail " +
                               state.instance->tails[r.tail].id);
      continue;
    }
    if (state.has_column(r)) continue;
    state.register_column(r);
    state.columns.push_back(r);
    ++added;
  }
  return added;
}

inline void fix_variable(RmpState& state, int var) {
  if (var < state.n_activities())
    throw std::invalid_argument("cannot fix a slack variable");
  if (var >= state.n_activities() + static_cast<int>(state.columns.size()))
    throw std::invalid_argument("unknown variable id " + std::to_string(var));
  state.fixed_vars.insert(var);
  state.inactive_tails.insert(state.route_of(var).tail);
}

namespace detail {

// Shared LP builder for solve_lp and the branch-and-bound nodes. Variables
// forced to one are substituted out (their coverage moves into the rhs);
// variables forced to zero are omitted.
struct BuiltLp {
  LinearProgram lp;
  std::vector<int> var_of_lp_col;
  double objective_offset = 0.0;
  bool rhs_negative = false;
  std::vector<int> overcovered_rows;
};

inline BuiltLp build_master_lp(const RmpState& state, const std::set<int>& forced_one,
                               const std::set<int>& forced_zero) {
  const Instance& inst = *state.instance;
  const int n_act = state.n_activities();
  const int n_tails = state.n_tails();
  BuiltLp built;

  std::vector<double> rhs(n_act + n_tails, 1.0);
  for (int var : forced_one) {
    const Route& r = state.route_of(var);
    for (int ai : r.activities) rhs[ai] -= 1.0;
    rhs[n_act + r.tail] -= 1.0;
    built.objective_offset += r.cost;
  }
  for (int i = 0; i < n_act + n_tails; ++i) {
    if (rhs[i] < -0.5) {
      built.rhs_negative = true;
      built.overcovered_rows.push_back(i);
    }
  }
  if (built.rhs_negative) return built;

  for (int i = 0; i < n_act; ++i) built.lp.add_row(RowSense::equal, rhs[i]);
  for (int t = 0; t < n_tails; ++t) built.lp.add_row(RowSense::less_equal, rhs[n_act + t]);

  for (int i = 0; i < n_act; ++i) {
    built.lp.add_column(inst.activities[i].uncovered_penalty, {{i, 1.0}});
    built.var_of_lp_col.push_back(i);
  }
  for (int k = 0; k < static_cast<int>(state.columns.size()); ++k) {
    int var = state.route_var(k);
    if (forced_one.count(var) || forced_zero.count(var)) continue;
    const Route& r = state.columns[k];
    std::vector<LinearProgram::Entry> entries;
    for (int ai : r.activities) entries.push_back({ai, 1.0});
    entries.push_back({n_act + r.tail, 1.0});
    built.lp.add_column(r.cost, std::move(entries));
    built.var_of_lp_col.push_back(var);
  }
  return built;
}

// Warm-start cache: one entry per row, holding the basic variable id or
// -(row+2) for that row's own slack. Rows are stable across resolves, so a
// previous optimal basis restarts the simplex after columns were added.
inline LpSolution solve_master_lp(const RmpState& state, const std::set<int>& forced_one,
                                  const std::set<int>& forced_zero,
                                  std::vector<int>* basis_cache = nullptr) {
  const int n_act = state.n_activities();
  const int n_tails = state.n_tails();
  LpSolution out;
  out.primal.assign(n_act + state.columns.size(), 0.0);
  out.duals.activity_duals.assign(n_act, std::numeric_limits<double>::quiet_NaN());
  out.duals.tail_duals.assign(n_tails, std::numeric_limits<double>::quiet_NaN());

  BuiltLp built = build_master_lp(state, forced_one, forced_zero);
  if (built.rhs_negative) {
    out.status = LpStatus::infeasible;
    // Report the clashing fixed variables.
    for (int row : built.overcovered_rows) {
      for (int var : forced_one) {
        const Route& r = state.route_of(var);
        bool touches = row >= n_act ? (r.tail == row - n_act)
                                    : std::count(r.activities.begin(), r.activities.end(), row) > 0;
        if (touches) out.conflicting_fixed.push_back(var);
      }
    }
    std::sort(out.conflicting_fixed.begin(), out.conflicting_fixed.end());
    out.conflicting_fixed.erase(
        std::unique(out.conflicting_fixed.begin(), out.conflicting_fixed.end()),
        out.conflicting_fixed.end());
    return out;
  }

  std::vector<int> lp_col_of_var(n_act + state.columns.size(), -1);
  for (int c = 0; c < static_cast<int>(built.var_of_lp_col.size()); ++c)
    lp_col_of_var[built.var_of_lp_col[c]] = c;

  SimplexOptions opt;
  bool hinted = false;
  if (basis_cache && static_cast<int>(basis_cache->size()) == n_act + n_tails) {
    opt.basis_hint.assign(n_act + n_tails, -1);
    hinted = true;
    for (int i = 0; i < n_act + n_tails && hinted; ++i) {
      int entry = (*basis_cache)[i];
      if (entry >= 0) {
        if (entry >= static_cast<int>(lp_col_of_var.size()) || lp_col_of_var[entry] < 0)
          hinted = false;  // cached variable no longer in the LP
        else
          opt.basis_hint[i] = lp_col_of_var[entry];
      } else {
        opt.basis_hint[i] = entry;  // slack marker, rows are stable
      }
    }
    if (!hinted) opt.basis_hint.clear();
  }
  if (!hinted) {
    // Activity slacks form a feasible starting basis; tail rows use their
    // own row slack.
    opt.basis_hint.assign(n_act + n_tails, -1);
    for (int i = 0; i < n_act; ++i) opt.basis_hint[i] = i;
  }

  SimplexSolution sim = solve_simplex(built.lp, opt);
  out.simplex_iterations = sim.iterations;
  out.status = sim.status;
  if (sim.status != LpStatus::optimal) return out;

  out.objective = sim.objective + built.objective_offset;
  for (int c = 0; c < static_cast<int>(built.var_of_lp_col.size()); ++c)
    out.primal[built.var_of_lp_col[c]] = sim.x[c];
  for (int var : forced_one) out.primal[var] = 1.0;
  for (int i = 0; i < n_act; ++i) out.duals.activity_duals[i] = sim.duals[i];
  for (int t = 0; t < n_tails; ++t) out.duals.tail_duals[t] = sim.duals[n_act + t];

  if (basis_cache) {
    basis_cache->assign(n_act + n_tails, -1);
    for (int i = 0; i < n_act + n_tails; ++i) {
      int entry = sim.basis[i];
      (*basis_cache)[i] = entry >= 0 ? built.var_of_lp_col[entry] : entry;
    }
  }
  return out;
}

}  // namespace detail

// LP relaxation over the current pool with fixed variables at one. The
// optional cache warm-starts consecutive resolves.
inline LpSolution solve_lp(const RmpState& state, std::vector<int>* basis_cache = nullptr) {
  return detail::solve_master_lp(state, state.fixed_vars, {}, basis_cache);
}

struct IpStats {
  int nodes = 0;
  int branches = 0;
};

// Optimal integer solution over the existing column pool (plus slacks):
// branch on the most fractional route variable, explore best-bound first
// (depth-first among ties), prune on the LP bound. Exact for the pool.
inline IntegralSolution solve_ip(const RmpState& state, IpStats* stats = nullptr) {
  constexpr double kIntTol = 1e-6;
  constexpr long kNodeGuard = 1000000;

  struct Node {
    std::set<int> one;
    std::set<int> zero;
    double bound;  // parent LP value, a valid lower bound for the subtree
    long order;
  };
  struct NodeCompare {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
      return a.order < b.order;                          // LIFO among ties
    }
  };

  IpStats local;
  IpStats& st = stats ? *stats : local;

  double incumbent_value = std::numeric_limits<double>::infinity();
  std::vector<int> incumbent_vars;

  std::priority_queue<Node, std::vector<Node>, NodeCompare> open;
  long order_counter = 0;
  open.push({{}, {}, -std::numeric_limits<double>::infinity(), ++order_counter});

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent_value - 1e-9) continue;
    if (++st.nodes > kNodeGuard) throw std::runtime_error("solve_ip: node guard exceeded");

    std::set<int> one = state.fixed_vars;
    one.insert(node.one.begin(), node.one.end());
    LpSolution lp = detail::solve_master_lp(state, one, node.zero);
    if (lp.status != LpStatus::optimal) continue;  // infeasible subtree
    if (lp.objective >= incumbent_value - 1e-9) continue;

    // Most fractional route variable, ties to the lowest id.
    int branch_var = -1;
    double best_frac = kIntTol;
    for (int k = 0; k < static_cast<int>(state.columns.size()); ++k) {
      int var = state.route_var(k);
      double v = lp.primal[var];
      double frac = std::min(v, 1.0 - v);
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        branch_var = var;
      }
    }

    if (branch_var < 0) {
      incumbent_value = lp.objective;
      incumbent_vars.clear();
      for (int k = 0; k < static_cast<int>(state.columns.size()); ++k) {
        int var = state.route_var(k);
        if (lp.primal[var] > 0.5) incumbent_vars.push_back(var);
      }
      continue;
    }

    ++st.branches;
    for (int value : {1, 0}) {
      Node child;
      child.one = node.one;
      child.zero = node.zero;
      if (value == 1)
        child.one.insert(branch_var);
      else
        child.zero.insert(branch_var);
      child.bound = lp.objective;
      child.order = ++order_counter;
      open.push(std::move(child));
    }
  }

  std::vector<Route> picked;
  for (int var : state.fixed_vars) picked.push_back(state.route_of(var));
  for (int var : incumbent_vars)
    if (!state.fixed_vars.count(var)) picked.push_back(state.route_of(var));
  return evaluate_selection(*state.instance, std::move(picked));
}

// Dump of the current RMP in CPLEX LP text format for cross-checking with
// external solvers.
inline void write_lp_format(const RmpState& state, std::ostream& os) {
  const Instance& inst = *state.instance;
  auto slack_name = [&](int i) { return "f_" + inst.activities[i].id; };
  auto route_name = [&](int k) {
    return "x" + std::to_string(k) + "_" + inst.tails[state.columns[k].tail].id;
  };

  os << "Minimize\n obj:";
  for (int i = 0; i < state.n_activities(); ++i)
    os << " + " << inst.activities[i].uncovered_penalty << " " << slack_name(i);
  for (int k = 0; k < static_cast<int>(state.columns.size()); ++k) {
    double c = state.columns[k].cost;
    os << (c < 0 ? " - " : " + ") << std::fabs(c) << " " << route_name(k);
  }
  os << "\nSubject To\n";
  for (int i = 0; i < state.n_activities(); ++i) {
    os << " cover_" << inst.activities[i].id << ": " << slack_name(i);
    for (int k = 0; k < static_cast<int>(state.columns.size()); ++k) {
      const auto& acts = state.columns[k].activities;
      if (std::count(acts.begin(), acts.end(), i)) os << " + " << route_name(k);
    }
    os << " = 1\n";
  }
  for (int t = 0; t < state.n_tails(); ++t) {
    os << " tail_" << inst.tails[t].id << ":";
    bool any = false;
    for (int k = 0; k < static_cast<int>(state.columns.size()); ++k) {
      if (state.columns[k].tail == t) {
        os << (any ? " + " : " ") << route_name(k);
        any = true;
      }
    }
    if (!any) os << " 0 x_none";
    os << " <= 1\n";
  }
  os << "Bounds\n";
  for (int var : state.fixed_vars) os << " " << route_name(var - state.n_activities()) << " >= 1\n";
  os << "End\n";
}

}  // namespace tailassign
