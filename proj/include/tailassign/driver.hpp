#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "tailassign/core.hpp"
#include "tailassign/master.hpp"
#include "tailassign/network.hpp"
#include "tailassign/pricing.hpp"
#include "tailassign/propagation.hpp"

// Orchestration: column generation with pricing problems solved in
// parallel, the disjoint path selection heuristic over the pooled routes,
// the post-connection phase for the initial iterations, the threshold-driven
// variable fixing loop, and the final integer solve over the column pool.

namespace tailassign {

struct DriverConfig {
  double epsilon = 0.9;          // disjoint-selection penalization factor
  bool strict_disjoint = false;  // see select_disjoint_paths
  double fix_threshold_init = 0.95;
  double fix_threshold_floor = 0.80;
  double fix_threshold_step = 0.05;
  int cp_iterations = 10;  // iterations priced on post-connections
  int max_cg_iterations = 500;
  double convergence_tolerance = 1e-6;
  int parallel_workers = 4;
  bool serial_mode = false;  // sequential pricing with dual re-evaluation
  PricingConfig pricing;
  double time_limit_seconds = 0.0;  // 0 = unlimited

  // Live log sinks; the final report carries the same entries either way.
  std::function<void(const struct IterationLogEntry&)> on_iteration;
  std::function<void(const struct FixingLogEntry&)> on_fixing;
};

inline void validate_config(const DriverConfig& cfg) {
  if (cfg.epsilon < 0.8 || cfg.epsilon > 1.0)
    throw std::invalid_argument("epsilon must lie in [0.8, 1.0]");
  if (cfg.fix_threshold_floor >= cfg.fix_threshold_init)
    throw std::invalid_argument("fix threshold floor must be below the initial threshold");
  if (cfg.fix_threshold_step <= 0.0)
    throw std::invalid_argument("fix threshold step must be positive");
  if (cfg.max_cg_iterations <= 0)
    throw std::invalid_argument("max_cg_iterations must be positive");
  if (cfg.parallel_workers < 1)
    throw std::invalid_argument("parallel_workers must be at least 1");
  if (cfg.pricing.lex_sort_threshold >= cfg.pricing.max_labels_per_node)
    throw std::invalid_argument("lex_sort_threshold must be below max_labels_per_node");
}

struct IterationLogEntry {
  int iteration = 0;
  double lp_objective = 0.0;
  int columns_generated = 0;
  int columns_selected = 0;
  double min_reduced_cost = std::numeric_limits<double>::infinity();
  double wall_ms = 0.0;
  bool used_post_connections = false;
  bool exactness_check = false;  // uncapped verification round ran
  std::vector<std::string> selected;
};

struct FixingLogEntry {
  int threshold_pct = 0;  // threshold in hundredths (95, 90, ...)
  int candidates = 0;
  int fixed = 0;
  int deferred = 0;
  double lp_objective = 0.0;  // after the pass
  std::vector<std::string> fixed_routes;
};

struct RunReport {
  double lp_objective = 0.0;
  double ip_objective = 0.0;
  int cg_iterations = 0;
  long columns_generated_total = 0;
  long columns_selected_total = 0;
  std::vector<std::string> uncovered;  // activity ids
  double time_total_ms = 0.0;
  double time_propagation_ms = 0.0;
  double time_cg_ms = 0.0;
  double time_pricing_ms = 0.0;
  double time_lp_ms = 0.0;
  double time_fixing_ms = 0.0;
  double time_ip_ms = 0.0;
  std::vector<IterationLogEntry> iterations;
  std::vector<FixingLogEntry> fixing;
  std::vector<std::string> warnings;
  bool propagation_available = false;
  int pre_connections = 0;
  int post_connections = 0;
  int exit_threshold_pct = -1;  // fixing loop exit value, below the floor
  bool time_limit_reached = false;
  std::string remarks;
};

inline std::string route_to_string(const Instance& inst, const Route& r) {
  std::string s = inst.tails[r.tail].id + ":";
  if (r.activities.empty()) s += "-";
  for (std::size_t i = 0; i < r.activities.size(); ++i) {
    if (i) s += ">";
    s += inst.activities[r.activities[i]].id;
  }
  if (!r.maintenance_positions.empty()) {
    s += "[m@";
    for (std::size_t i = 0; i < r.maintenance_positions.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(r.maintenance_positions[i]);
    }
    s += "]";
  }
  return s;
}

// Disjoint path selection over a pooled batch of negative reduced cost
// routes. Paths are visited from most negative reduced cost upward (ties by
// tail id, then activities); a path is kept while its activities' actual
// duals still outweigh the accumulated penalties, and every kept path adds
// epsilon times the actual dual onto each activity it covers.
//
// strict mode tightens the test so that with epsilon = 1 and positive duals
// the output is pairwise activity-disjoint: besides the strict sum
// comparison, no positive-dual activity may be penalized at all.
// Zero-dual activities never influence either side.
inline std::vector<Route> select_disjoint_paths(const Instance& inst, const DualSolution& duals,
                                                const std::vector<Route>& paths, double epsilon,
                                                bool strict) {
  struct Item {
    const Route* route;
    double reduced_cost;
  };
  std::vector<Item> order;
  order.reserve(paths.size());
  for (const Route& r : paths) order.push_back({&r, route_reduced_cost(inst, r, duals)});
  std::stable_sort(order.begin(), order.end(), [&](const Item& a, const Item& b) {
    if (a.reduced_cost != b.reduced_cost) return a.reduced_cost < b.reduced_cost;
    if (a.route->tail != b.route->tail)
      return inst.tails[a.route->tail].id < inst.tails[b.route->tail].id;
    if (a.route->activities != b.route->activities) return a.route->activities < b.route->activities;
    return a.route->maintenance_positions < b.route->maintenance_positions;
  });

  std::vector<double> penalized(inst.activities.size(), 0.0);
  std::vector<Route> selected;
  for (const Item& item : order) {
    double sum_actual = 0.0, sum_pen = 0.0;
    bool fresh = true;  // no positive-dual activity of this path penalized yet
    for (int ai : item.route->activities) {
      double pi = duals.activity_duals[ai];
      sum_actual += pi;
      sum_pen += penalized[ai];
      if (pi > 0.0 && penalized[ai] >= pi) fresh = false;
    }
    bool take = strict ? (sum_actual > sum_pen && fresh) : (sum_actual >= sum_pen);
    if (!take) continue;
    selected.push_back(*item.route);
    for (int ai : item.route->activities) penalized[ai] += epsilon * duals.activity_duals[ai];
  }
  return selected;
}

namespace detail {

template <class Fn>
inline void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (count == 0) return;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

class Pipeline {
 public:
  Pipeline(const Instance& inst, const DriverConfig& cfg) : inst_(inst), cfg_(cfg) {
    validate_config(cfg);
    state_ = init_rmp(inst);
    for (int t = 0; t < static_cast<int>(inst.tails.size()); ++t) tail_order_.push_back(t);
    std::sort(tail_order_.begin(), tail_order_.end(),
              [&](int a, int b) { return inst.tails[a].id < inst.tails[b].id; });
    start_ = Clock::now();
  }

  void build() {
    pre_arcs_ = build_pre_connections(inst_);
    report_.pre_connections = static_cast<int>(pre_arcs_.size());

    if (cfg_.cp_iterations > 0) {
      auto t0 = Clock::now();
      prop_ = propagate_connections(inst_, pre_arcs_);
      report_.time_propagation_ms = ms_since(t0);
      report_.propagation_available = prop_.available;
      report_.post_connections = prop_.post_count;
      if (!prop_.available) add_warning("propagation unavailable: " + prop_.note);
    } else {
      prop_.available = false;
      report_.post_connections = report_.pre_connections;
    }

    nets_pre_.reserve(inst_.tails.size());
    for (const Tail& tail : inst_.tails) {
      nets_pre_.push_back(reachability_prune(build_pricing_network(inst_, tail, pre_arcs_)));
      for (const auto& note : nets_pre_.back().notes) add_warning(note);
    }
    if (prop_.available) {
      nets_post_.reserve(inst_.tails.size());
      for (const Tail& tail : inst_.tails)
        nets_post_.push_back(reachability_prune(build_pricing_network(inst_, tail, prop_.arcs)));
    }
  }

  void run_cg() {
    auto cg_start = Clock::now();
    bool post_phase_over = !prop_.available || cfg_.cp_iterations <= 0;
    bool converged = false;

    while (!converged && report_.cg_iterations < cfg_.max_cg_iterations) {
      if (time_up()) {
        report_.time_limit_reached = true;
        break;
      }
      ++report_.cg_iterations;
      const int iter = report_.cg_iterations;
      auto iter_start = Clock::now();

      lp_ = timed_lp();
      bool use_post = !post_phase_over && iter <= cfg_.cp_iterations;

      IterationLogEntry entry;
      entry.iteration = iter;
      entry.lp_objective = lp_.objective;
      entry.used_post_connections = use_post;

      std::vector<Route> pool;
      double min_rc = std::numeric_limits<double>::infinity();
      std::vector<Route> selected;

      if (cfg_.serial_mode) {
        serial_round(use_post, pool, selected, min_rc);
      } else {
        pool = price_round(lp_.duals, use_post, cfg_.pricing, min_rc);
      }

      // A quiet round on capped pricing is not yet a proof: re-price with
      // the caps off before declaring convergence on the full network.
      if (pool.empty() && !use_post && caps_enabled()) {
        PricingConfig uncapped = cfg_.pricing;
        uncapped.lex_sort_threshold = std::numeric_limits<int>::max() - 1;
        uncapped.max_labels_per_node = std::numeric_limits<int>::max();
        pool = price_round(lp_.duals, false, uncapped, min_rc);
        entry.exactness_check = true;
        if (cfg_.serial_mode && !pool.empty())
          selected = select_disjoint_paths(inst_, lp_.duals, pool, cfg_.epsilon,
                                           cfg_.strict_disjoint);
      }

      entry.columns_generated = static_cast<int>(pool.size());
      entry.min_reduced_cost = min_rc;

      if (pool.empty()) {
        if (use_post) {
          // The reduced network is exhausted; move to pre-connections.
          post_phase_over = true;
        } else {
          converged = true;
        }
        entry.wall_ms = ms_since(iter_start);
        report_.iterations.push_back(std::move(entry));
        if (cfg_.on_iteration) cfg_.on_iteration(report_.iterations.back());
        continue;
      }

      if (!cfg_.serial_mode)
        selected = select_disjoint_paths(inst_, lp_.duals, pool, cfg_.epsilon,
                                         cfg_.strict_disjoint);
      if (selected.empty()) {
        // The heuristic rejected everything; keep the single best column so
        // the loop cannot stall while improving columns exist.
        selected.push_back(best_of(pool));
      }
      int added = add_columns(state_, selected);
      entry.columns_selected = added;
      for (const Route& r : selected) entry.selected.push_back(route_to_string(inst_, r));
      report_.columns_generated_total += static_cast<long>(pool.size());
      report_.columns_selected_total += added;

      if (added == 0) {
        // Only duplicates at the tolerance boundary remain.
        if (use_post)
          post_phase_over = true;
        else
          converged = true;
      }
      entry.wall_ms = ms_since(iter_start);
      report_.iterations.push_back(std::move(entry));
      if (cfg_.on_iteration) cfg_.on_iteration(report_.iterations.back());
    }

    lp_ = timed_lp();
    report_.lp_objective = lp_.objective;
    report_.time_cg_ms = ms_since(cg_start);
  }

  void run_fixing() {
    auto fix_start = Clock::now();
    const int floor_pct = pct(cfg_.fix_threshold_floor);
    const int init_pct = pct(cfg_.fix_threshold_init);
    const int step_pct = pct(cfg_.fix_threshold_step);
    int threshold = init_pct;

    while (threshold >= floor_pct) {
      if (time_up()) {
        report_.time_limit_reached = true;
        break;
      }
      // Unfixed route variables at or above the threshold.
      struct Cand {
        int var;
        double value;
      };
      std::vector<Cand> cands;
      for (int k = 0; k < static_cast<int>(state_.columns.size()); ++k) {
        int var = state_.route_var(k);
        if (state_.fixed_vars.count(var)) continue;
        double v = lp_.primal[var];
        if (v >= threshold / 100.0 - 1e-9) cands.push_back({var, v});
      }

      FixingLogEntry entry;
      entry.threshold_pct = threshold;
      entry.candidates = static_cast<int>(cands.size());

      if (cands.empty()) {
        report_.fixing.push_back(std::move(entry));
        if (cfg_.on_fixing) cfg_.on_fixing(report_.fixing.back());
        threshold -= step_pct;
        continue;
      }

      // Fix by descending LP value; defer candidates clashing with a fix
      // made in this same pass.
      std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.var < b.var;
      });
      std::vector<char> covered_now(inst_.activities.size(), 0);
      for (const Cand& c : cands) {
        const Route& r = state_.route_of(c.var);
        bool clash = state_.inactive_tails.count(r.tail) > 0;
        for (int ai : r.activities)
          if (covered_now[ai]) clash = true;
        if (clash) {
          ++entry.deferred;
          continue;
        }
        fix_variable(state_, c.var);
        for (int ai : r.activities) covered_now[ai] = 1;
        ++entry.fixed;
        entry.fixed_routes.push_back(route_to_string(inst_, r));
      }

      threshold = init_pct;
      lp_ = timed_lp();
      if (lp_.status != LpStatus::optimal) {
        add_warning("LP infeasible after fixing; aborting the fixing loop");
        report_.fixing.push_back(std::move(entry));
        if (cfg_.on_fixing) cfg_.on_fixing(report_.fixing.back());
        break;
      }

      // One pricing round over the full network for the active tails.
      double min_rc = std::numeric_limits<double>::infinity();
      std::vector<Route> pool = price_round(lp_.duals, false, cfg_.pricing, min_rc);
      std::vector<Route> selected =
          select_disjoint_paths(inst_, lp_.duals, pool, cfg_.epsilon, cfg_.strict_disjoint);
      int added = add_columns(state_, selected);
      report_.columns_generated_total += static_cast<long>(pool.size());
      report_.columns_selected_total += added;
      lp_ = timed_lp();
      entry.lp_objective = lp_.objective;
      report_.fixing.push_back(std::move(entry));
      if (cfg_.on_fixing) cfg_.on_fixing(report_.fixing.back());
    }

    report_.exit_threshold_pct = threshold;
    report_.time_fixing_ms = ms_since(fix_start);
  }

  IntegralSolution finish() {
    auto ip_start = Clock::now();
    IntegralSolution sol = solve_ip(state_);
    report_.time_ip_ms = ms_since(ip_start);
    report_.ip_objective = sol.objective;

    // Post-hoc validation: every emitted route must stand on its own, and
    // hangar capacity is checked per base and day.
    for (const Route& r : sol.routes) {
      auto violations = route_violations(inst_, r);
      for (const auto& v : violations)
        add_warning("final route " + route_to_string(inst_, r) + ": " + v);
    }
    check_hangar_capacity(sol);

    for (int ai : sol.uncovered) report_.uncovered.push_back(inst_.activities[ai].id);
    if (sol.uncovered.empty()) {
      report_.remarks = "Complete Assignment";
    } else {
      report_.remarks = std::to_string(sol.uncovered.size()) + " uncovered flights:";
      for (std::size_t i = 0; i < report_.uncovered.size(); ++i)
        report_.remarks += (i ? ", " : " ") + report_.uncovered[i];
    }
    report_.time_total_ms = ms_since(start_);
    return sol;
  }

  RmpState& state() { return state_; }
  LpSolution& lp() { return lp_; }
  RunReport& report() { return report_; }

  void adopt(RmpState state, RunReport report) {
    state_ = std::move(state);
    report_ = std::move(report);
    lp_ = timed_lp();
  }

 private:
  using Clock = std::chrono::steady_clock;

  const Instance& inst_;
  DriverConfig cfg_;
  RmpState state_;
  LpSolution lp_;
  RunReport report_;
  std::vector<int> tail_order_;
  std::vector<ConnectionArc> pre_arcs_;
  PropagationResult prop_;
  std::vector<PricingNetwork> nets_pre_;
  std::vector<PricingNetwork> nets_post_;
  std::set<std::string> seen_warnings_;
  std::vector<int> lp_basis_cache_;
  Clock::time_point start_;

  static int pct(double v) { return static_cast<int>(std::llround(v * 100.0)); }

  double ms_since(Clock::time_point t0) const {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }

  bool time_up() const {
    if (cfg_.time_limit_seconds <= 0.0) return false;
    return std::chrono::duration<double>(Clock::now() - start_).count() > cfg_.time_limit_seconds;
  }

  bool caps_enabled() const {
    return cfg_.pricing.max_labels_per_node != std::numeric_limits<int>::max();
  }

  void add_warning(const std::string& w) {
    if (seen_warnings_.insert(w).second) report_.warnings.push_back(w);
  }

  LpSolution timed_lp() {
    auto t0 = Clock::now();
    LpSolution lp = solve_lp(state_, &lp_basis_cache_);
    report_.time_lp_ms += ms_since(t0);
    if (lp.status != LpStatus::optimal && state_.fixed_vars.empty())
      throw std::runtime_error("master LP failed to reach optimality");
    return lp;
  }

  Route best_of(const std::vector<Route>& pool) {
    const Route* best = &pool.front();
    double best_rc = route_reduced_cost(inst_, pool.front(), lp_.duals);
    for (const Route& r : pool) {
      double rc = route_reduced_cost(inst_, r, lp_.duals);
      if (rc < best_rc) {
        best_rc = rc;
        best = &r;
      }
    }
    return *best;
  }

  // One parallel pricing round over the active tails; results are merged in
  // ascending tail id order so worker scheduling cannot influence anything.
  std::vector<Route> price_round(const DualSolution& duals, bool use_post,
                                 const PricingConfig& pcfg, double& min_rc) {
    auto t0 = Clock::now();
    std::vector<int> active;
    for (int t : tail_order_)
      if (!state_.inactive_tails.count(t)) active.push_back(t);

    const auto& nets = use_post ? nets_post_ : nets_pre_;
    std::vector<PricingResult> results(active.size());
    parallel_for(active.size(), cfg_.parallel_workers, [&](std::size_t k) {
      results[k] = solve_pricing(nets[active[k]], duals, inst_.tails[active[k]], pcfg);
    });

    std::vector<Route> pool;
    for (std::size_t k = 0; k < results.size(); ++k) {
      min_rc = std::min(min_rc, results[k].min_reduced_cost);
      for (auto& r : results[k].routes) pool.push_back(std::move(r));
      for (const auto& note : results[k].notes) add_warning(note);
    }
    report_.time_pricing_ms += ms_since(t0);
    return pool;
  }

  // Serial baseline: price one tail at a time in tail id order, select its
  // disjoint paths immediately, then re-evaluate the working duals by
  // removing epsilon of the dual value of every activity just claimed.
  void serial_round(bool use_post, std::vector<Route>& pool, std::vector<Route>& selected,
                    double& min_rc) {
    auto t0 = Clock::now();
    DualSolution working = lp_.duals;
    for (int t : tail_order_) {
      if (state_.inactive_tails.count(t)) continue;
      const PricingNetwork& net = use_post ? nets_post_[t] : nets_pre_[t];
      PricingResult res = solve_pricing(net, working, inst_.tails[t], cfg_.pricing);
      for (const auto& note : res.notes) add_warning(note);
      min_rc = std::min(min_rc, res.min_reduced_cost);
      std::vector<Route> mine = select_disjoint_paths(inst_, working, res.routes, cfg_.epsilon,
                                                      cfg_.strict_disjoint);
      for (const Route& r : mine) {
        for (int ai : r.activities)
          working.activity_duals[ai] -= cfg_.epsilon * working.activity_duals[ai];
        selected.push_back(r);
      }
      for (auto& r : res.routes) pool.push_back(std::move(r));
    }
    report_.time_pricing_ms += ms_since(t0);
  }

  void check_hangar_capacity(const IntegralSolution& sol) {
    std::map<std::pair<std::string, int>, int> checks;  // (base, day) -> count
    for (const Route& r : sol.routes) {
      const Tail& tail = inst_.tails[r.tail];
      std::map<int, const PreAssignment*> pre_by_activity;
      for (const auto& p : tail.pre_assignments) {
        int ai = inst_.activity_index(p.activity_id);
        if (ai >= 0) pre_by_activity[ai] = &p;
      }
      for (int pos : r.maintenance_positions) {
        const Activity& at = inst_.activities[r.activities[pos]];
        ++checks[{at.arrival_base, at.arrival_time / kMinutesPerDay}];
      }
      for (std::size_t k = 0; k < r.activities.size(); ++k) {
        auto it = pre_by_activity.find(r.activities[k]);
        if (it == pre_by_activity.end()) continue;
        // Greedy-earliest start of the pre-assignment along this route.
        Minutes ready = tail.carry_in_ready_time;
        if (k > 0) {
          const Activity& prev = inst_.activities[r.activities[k - 1]];
          const AirportInfo* ap = inst_.airport(it->second->base);
          auto prev_pre = pre_by_activity.find(r.activities[k - 1]);
          Minutes release = prev_pre != pre_by_activity.end() ? prev_pre->second->latest_finish()
                                                              : prev.arrival_time;
          ready = release + (ap ? ap->mgt : 0);
        }
        Minutes start = detail::preassignment_start(*it->second, ready);
        ++checks[{it->second->base, start / kMinutesPerDay}];
      }
    }
    for (const auto& [key, count] : checks) {
      const AirportInfo* ap = inst_.airport(key.first);
      if (ap && count > ap->hangar_capacity)
        add_warning("hangar capacity exceeded at " + key.first + " on day " +
                    std::to_string(key.second) + ": " + std::to_string(count) + " checks against " +
                    std::to_string(ap->hangar_capacity));
    }
  }
};

}  // namespace detail

struct ColumnGenerationOutput {
  RmpState state;
  LpSolution lp;
  RunReport report;
};

// Column generation to convergence: solve the LP, broadcast the duals,
// price all active tails (concurrently unless serial_mode), pool, select
// disjoint paths, add, repeat. Post-connections feed the first
// cp_iterations rounds; termination requires a quiet full-network round.
inline ColumnGenerationOutput run_column_generation(const Instance& inst,
                                                    const DriverConfig& cfg) {
  detail::Pipeline pipeline(inst, cfg);
  pipeline.build();
  pipeline.run_cg();
  ColumnGenerationOutput out;
  out.lp = pipeline.lp();
  out.report = pipeline.report();
  out.state = std::move(pipeline.state());
  return out;
}

// Variable fixing after convergence: while the threshold stays at or above
// the floor, fix every unfixed route variable at or above it (threshold
// resets after a successful pass, steps down otherwise), deactivate the
// fixed tails, re-solve, re-price, and repeat until the threshold drops
// below the floor.
inline RunReport run_variable_fixing(RmpState& state, const DriverConfig& cfg,
                                     RunReport report = {}) {
  // Fixing prices on the full network only; skip the propagation pass.
  DriverConfig fixing_cfg = cfg;
  fixing_cfg.cp_iterations = 0;
  detail::Pipeline pipeline(*state.instance, fixing_cfg);
  pipeline.build();
  pipeline.adopt(std::move(state), std::move(report));
  pipeline.run_fixing();
  state = std::move(pipeline.state());
  return pipeline.report();
}

// Full pipeline: propagate, generate columns, fix variables, solve the
// integer program over the pool, and validate the outcome. The final pool
// state is handed back on request (e.g. for an LP-format dump).
inline std::pair<IntegralSolution, RunReport> solve(const Instance& inst, const DriverConfig& cfg,
                                                    RmpState* final_state = nullptr) {
  detail::Pipeline pipeline(inst, cfg);
  pipeline.build();
  pipeline.run_cg();
  if (!pipeline.report().time_limit_reached) pipeline.run_fixing();
  IntegralSolution sol = pipeline.finish();
  if (final_state) *final_state = std::move(pipeline.state());
  return {std::move(sol), std::move(pipeline.report())};
}

}  // namespace tailassign
