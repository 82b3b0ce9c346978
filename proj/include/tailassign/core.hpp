#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

// Domain model for aircraft tail assignment: activities (flights and
// maintenance events), tails with carry-in state and resource limits,
// connection arcs, and feasible routes with their cost arithmetic.
//
// Everything in this header is immutable after construction and safe to
// share read-only across concurrent pricing workers.

namespace tailassign {

// All cost comparisons in the project use this tolerance.
inline constexpr double kCostEps = 1e-6;

using Minutes = int;

inline constexpr int kMinutesPerDay = 24 * 60;

enum class ActivityKind { flight, maintenance_opportunity, pre_assigned_maintenance };

inline const char* to_string(ActivityKind k) {
  switch (k) {
    case ActivityKind::flight: return "flight";
    case ActivityKind::maintenance_opportunity: return "maintenance-opportunity";
    case ActivityKind::pre_assigned_maintenance: return "pre-assigned-maintenance";
  }
  return "?";
}

struct Activity {
  std::string id;
  ActivityKind kind = ActivityKind::flight;
  std::string departure_base;
  std::string arrival_base;
  Minutes departure_time = 0;
  Minutes arrival_time = 0;
  double flying_hours = 0.0;  // resource consumption, 0 for maintenance
  int cycles = 0;             // landings consumed, 1 per flight leg
  std::set<std::string> restricted_tails;
  double uncovered_penalty = 0.0;

  // FH is tracked in whole minutes internally to avoid fractional-hour
  // rounding between flights of minute granularity.
  Minutes flying_minutes() const { return static_cast<Minutes>(std::llround(flying_hours * 60.0)); }
  bool is_flight() const { return kind == ActivityKind::flight; }
};

struct PreAssignment {
  std::string activity_id;
  std::string base;
  Minutes earliest_start = 0;
  Minutes latest_start = 0;
  Minutes duration = 0;

  Minutes latest_finish() const { return latest_start + duration; }
};

struct Tail {
  std::string id;
  std::string carry_in_base;
  Minutes carry_in_ready_time = 0;
  double fh_limit = 0.0;        // hours allowed per check cycle
  int fc_limit = 0;             // cycles allowed per check cycle
  double fh_accumulated = 0.0;  // hours flown since the last check (carry-in)
  int fc_accumulated = 0;
  std::set<std::string> qualified_sector_tags;
  std::vector<PreAssignment> pre_assignments;
  std::optional<std::string> overnight_base;

  Minutes fh_limit_minutes() const { return static_cast<Minutes>(std::llround(fh_limit * 60.0)); }
  Minutes fh_accumulated_minutes() const {
    return static_cast<Minutes>(std::llround(fh_accumulated * 60.0));
  }
};

struct AirportInfo {
  Minutes mgt = 0;  // minimum ground time between consecutive legs
  Minutes mct = 0;  // maximum connection (idle) time
  bool is_maintenance_base = false;
  int hangar_capacity = 0;  // checks per day
  Minutes required_maintenance_time = 0;
};

struct CostParams {
  double connection_cost = 0.0;   // per arc flown
  double maintenance_cost = 0.0;  // per check performed en route
  double lof_bonus = 0.0;         // reduction per planned-rotation connection kept
};

struct Instance {
  std::vector<Activity> activities;
  std::vector<Tail> tails;
  std::map<std::string, AirportInfo> airports;
  std::map<std::string, std::vector<std::string>> lof_plan;  // tail id -> planned activity ids
  CostParams cost_params;
  int horizon_days = 0;

  // Index maps are part of the immutable state; creators call
  // rebuild_indices() once after filling the vectors.
  void rebuild_indices() {
    activity_index_.clear();
    tail_index_.clear();
    for (int i = 0; i < static_cast<int>(activities.size()); ++i)
      activity_index_.emplace(activities[i].id, i);
    for (int t = 0; t < static_cast<int>(tails.size()); ++t)
      tail_index_.emplace(tails[t].id, t);
  }

  int activity_index(const std::string& id) const {
    auto it = activity_index_.find(id);
    return it == activity_index_.end() ? -1 : it->second;
  }
  int tail_index(const std::string& id) const {
    auto it = tail_index_.find(id);
    return it == tail_index_.end() ? -1 : it->second;
  }
  const AirportInfo* airport(const std::string& code) const {
    auto it = airports.find(code);
    return it == airports.end() ? nullptr : &it->second;
  }
  Minutes horizon_end() const { return horizon_days * kMinutesPerDay; }

 private:
  std::unordered_map<std::string, int> activity_index_;
  std::unordered_map<std::string, int> tail_index_;
};

// A feasible connection between two activities. ground_time is measured at
// the connection airport (arrival base of `from`).
struct ConnectionArc {
  int from_activity = -1;
  int to_activity = -1;
  Minutes ground_time = 0;
  bool is_planned_lof = false;
  bool maintenance_eligible = false;
};

// One assignable sequence of activities for a tail. maintenance_positions
// holds indices i meaning a check is performed on the connection between
// activities[i] and activities[i+1].
struct Route {
  int tail = -1;
  std::vector<int> activities;
  std::vector<int> maintenance_positions;  // sorted
  double cost = 0.0;

  std::vector<int> coverage() const {
    std::vector<int> c = activities;
    std::sort(c.begin(), c.end());
    return c;
  }
  bool same_column(const Route& o) const {
    return tail == o.tail && activities == o.activities &&
           maintenance_positions == o.maintenance_positions;
  }
};

// Duals of the master problem: one value per activity (coverage rows) and
// per tail (convexity rows). NaN marks a missing entry.
struct DualSolution {
  std::vector<double> activity_duals;
  std::vector<double> tail_duals;

  static DualSolution zeros(const Instance& inst) {
    DualSolution d;
    d.activity_duals.assign(inst.activities.size(), 0.0);
    d.tail_duals.assign(inst.tails.size(), 0.0);
    return d;
  }
};

// A fully integral assignment: at most one route per tail plus the set of
// activities nobody covers.
struct IntegralSolution {
  std::vector<Route> routes;
  std::vector<int> uncovered;  // activity indices, sorted
  double objective = 0.0;
};

// Objective and uncovered set of a disjoint route selection. Throws if two
// routes cover the same activity or a tail appears twice.
inline IntegralSolution evaluate_selection(const Instance& inst, std::vector<Route> routes) {
  IntegralSolution sol;
  std::vector<char> covered(inst.activities.size(), 0);
  std::vector<char> tail_used(inst.tails.size(), 0);
  double objective = 0.0;
  for (const Route& r : routes) {
    if (r.tail < 0 || r.tail >= static_cast<int>(inst.tails.size()) || tail_used[r.tail])
      throw std::invalid_argument("selection assigns a tail twice");
    tail_used[r.tail] = 1;
    for (int ai : r.activities) {
      if (covered[ai]) throw std::invalid_argument("selection covers an activity twice");
      covered[ai] = 1;
    }
    objective += r.cost;
  }
  for (int i = 0; i < static_cast<int>(inst.activities.size()); ++i) {
    if (!covered[i]) {
      sol.uncovered.push_back(i);
      objective += inst.activities[i].uncovered_penalty;
    }
  }
  sol.routes = std::move(routes);
  sol.objective = objective;
  return sol;
}

struct Violation {
  std::string entity;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.entity << ": " << v.message << "\n";
    return os.str();
  }
};

namespace detail {

inline void add_violation(ValidationReport& r, const std::string& entity, std::string msg) {
  r.violations.push_back({entity, std::move(msg)});
}

}  // namespace detail

// Checks every instance invariant and cross-reference. Returns one entry
// per violation; an empty report means the instance is usable.
inline ValidationReport validate_instance(const Instance& inst) {
  using detail::add_violation;
  ValidationReport report;

  if (inst.horizon_days <= 0)
    add_violation(report, "instance", "horizon_days must be positive");

  for (const auto& [code, ap] : inst.airports) {
    if (ap.mgt < 0) add_violation(report, code, "MGT must be non-negative");
    if (ap.mct < ap.mgt) add_violation(report, code, "MCT must be at least MGT");
    if (ap.is_maintenance_base && ap.required_maintenance_time <= 0)
      add_violation(report, code, "maintenance base needs a positive required_maintenance_time");
    if (ap.hangar_capacity < 0) add_violation(report, code, "hangar_capacity must be non-negative");
  }

  std::unordered_set<std::string> activity_ids;
  double min_penalty = std::numeric_limits<double>::infinity();
  for (const auto& a : inst.activities) {
    if (!activity_ids.insert(a.id).second)
      add_violation(report, a.id, "duplicate activity id");
    if (a.is_flight()) {
      if (a.arrival_time <= a.departure_time)
        add_violation(report, a.id, "flight must have arrival_time > departure_time");
      if (a.cycles != 1) add_violation(report, a.id, "flight must consume exactly one cycle");
    } else {
      if (a.arrival_time < a.departure_time)
        add_violation(report, a.id, "maintenance must have arrival_time >= departure_time");
      if (a.cycles != 0) add_violation(report, a.id, "maintenance must consume zero cycles");
      if (a.flying_hours != 0.0)
        add_violation(report, a.id, "maintenance must consume zero flying hours");
    }
    if (a.flying_hours < 0.0) add_violation(report, a.id, "flying_hours must be non-negative");
    if (a.uncovered_penalty <= 0.0)
      add_violation(report, a.id, "uncovered_penalty must be positive");
    min_penalty = std::min(min_penalty, a.uncovered_penalty);
    if (!inst.airport(a.departure_base))
      add_violation(report, a.id, "unknown departure_base " + a.departure_base);
    if (!inst.airport(a.arrival_base))
      add_violation(report, a.id, "unknown arrival_base " + a.arrival_base);
    if (a.departure_time < 0 || a.arrival_time > inst.horizon_end())
      add_violation(report, a.id, "activity lies outside the planning horizon");
    for (const auto& t : a.restricted_tails)
      if (inst.tail_index(t) < 0)
        add_violation(report, a.id, "restricted_tails references unknown tail " + t);
  }

  std::unordered_set<std::string> tail_ids;
  std::unordered_map<std::string, std::string> preassigned_owner;  // activity -> tail
  for (const auto& t : inst.tails) {
    if (!tail_ids.insert(t.id).second) add_violation(report, t.id, "duplicate tail id");
    if (!inst.airport(t.carry_in_base))
      add_violation(report, t.id, "unknown carry_in_base " + t.carry_in_base);
    if (t.overnight_base && !inst.airport(*t.overnight_base))
      add_violation(report, t.id, "unknown overnight_base " + *t.overnight_base);
    if (t.fh_limit < 0 || t.fc_limit < 0)
      add_violation(report, t.id, "FH/FC limits must be non-negative");
    if (t.fh_accumulated < 0 || t.fh_accumulated > t.fh_limit)
      add_violation(report, t.id, "fh_accumulated must lie in [0, fh_limit]");
    if (t.fc_accumulated < 0 || t.fc_accumulated > t.fc_limit)
      add_violation(report, t.id, "fc_accumulated must lie in [0, fc_limit]");

    std::vector<std::pair<Minutes, Minutes>> spans;
    for (const auto& p : t.pre_assignments) {
      if (p.earliest_start > p.latest_start)
        add_violation(report, t.id, "pre-assignment " + p.activity_id +
                                        " has earliest_start > latest_start");
      if (p.duration <= 0)
        add_violation(report, t.id, "pre-assignment " + p.activity_id +
                                        " must have positive duration");
      const AirportInfo* ap = inst.airport(p.base);
      if (!ap) {
        add_violation(report, t.id, "pre-assignment " + p.activity_id + " at unknown base " + p.base);
      } else if (!ap->is_maintenance_base) {
        add_violation(report, t.id,
                      "pre-assignment " + p.activity_id + " at non-maintenance base " + p.base);
      }
      int ai = inst.activity_index(p.activity_id);
      if (ai < 0) {
        add_violation(report, t.id, "pre-assignment references unknown activity " + p.activity_id);
      } else {
        const Activity& a = inst.activities[ai];
        if (a.is_flight())
          add_violation(report, t.id, "pre-assignment " + p.activity_id + " must not be a flight");
        if (a.departure_base != p.base || a.arrival_base != p.base)
          add_violation(report, t.id,
                        "pre-assignment " + p.activity_id + " base mismatch with activity");
        if (a.arrival_time - a.departure_time != p.duration)
          add_violation(report, t.id,
                        "pre-assignment " + p.activity_id + " duration mismatch with activity");
        if (a.departure_time < p.earliest_start || a.departure_time > p.latest_start)
          add_violation(report, t.id, "pre-assignment " + p.activity_id +
                                          " nominal start outside its window");
        auto [it, inserted] = preassigned_owner.emplace(p.activity_id, t.id);
        if (!inserted && it->second != t.id)
          add_violation(report, p.activity_id,
                        "activity pre-assigned to both " + it->second + " and " + t.id);
      }
      spans.emplace_back(p.earliest_start, p.latest_finish());
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i)
      if (spans[i].first < spans[i - 1].second)
        add_violation(report, t.id, "pre-assignments overlap in time");
  }

  for (const auto& [tail_id, plan] : inst.lof_plan) {
    if (inst.tail_index(tail_id) < 0)
      add_violation(report, tail_id, "lof_plan references unknown tail");
    for (const auto& aid : plan)
      if (inst.activity_index(aid) < 0)
        add_violation(report, tail_id, "lof_plan references unknown activity " + aid);
  }

  if (inst.cost_params.connection_cost < 0)
    add_violation(report, "cost_params", "connection_cost must be non-negative");
  if (inst.cost_params.maintenance_cost < 0)
    add_violation(report, "cost_params", "maintenance_cost must be non-negative");
  if (inst.cost_params.lof_bonus < 0)
    add_violation(report, "cost_params", "lof_bonus must be non-negative");
  if (!inst.activities.empty() && inst.cost_params.lof_bonus >= min_penalty)
    add_violation(report, "cost_params",
                  "lof_bonus must stay below the smallest uncovered_penalty");

  return report;
}

// --- Route feasibility -----------------------------------------------------
//
// The checks below define route legality once, straight from the instance
// data; pricing and the enumeration oracle both have to agree with them.

namespace detail {

// Start time of a pre-assignment when entered with the aircraft available
// at `ready` (arrival + MGT of the base, or carry-in ready time).
inline Minutes preassignment_start(const PreAssignment& p, Minutes ready) {
  return std::max(p.earliest_start, ready);
}

}  // namespace detail

// Returns all invariant violations of `route`, empty when the route is
// legal for its tail: arc feasibility (bases, MGT/MCT), carry-in and
// overnight rules, restriction filters, FH/FC legality with maintenance
// resets, and pre-assignment windows.
inline std::vector<std::string> route_violations(const Instance& inst, const Route& route) {
  std::vector<std::string> out;
  if (route.tail < 0 || route.tail >= static_cast<int>(inst.tails.size())) {
    out.push_back("route references unknown tail index");
    return out;
  }
  const Tail& tail = inst.tails[route.tail];

  std::unordered_map<int, const PreAssignment*> pre_by_activity;
  for (const auto& p : tail.pre_assignments) {
    int ai = inst.activity_index(p.activity_id);
    if (ai >= 0) pre_by_activity[ai] = &p;
  }

  for (int ai : route.activities) {
    if (ai < 0 || ai >= static_cast<int>(inst.activities.size())) {
      out.push_back("route references unknown activity index");
      return out;
    }
  }

  if (route.activities.empty()) {
    if (!tail.pre_assignments.empty())
      out.push_back("route misses mandatory pre-assignments of tail " + tail.id);
    if (tail.overnight_base && *tail.overnight_base != tail.carry_in_base)
      out.push_back("empty route cannot end at overnight base " + *tail.overnight_base);
    if (!route.maintenance_positions.empty())
      out.push_back("empty route cannot perform maintenance");
    return out;
  }

  // Maintenance positions must point at arcs of the route.
  for (int pos : route.maintenance_positions)
    if (pos < 0 || pos + 1 >= static_cast<int>(route.activities.size()))
      out.push_back("maintenance position " + std::to_string(pos) + " has no following activity");

  auto activity_of = [&](int idx) -> const Activity& { return inst.activities[idx]; };
  auto is_maintenance_exercised = [&](int pos) {
    return std::find(route.maintenance_positions.begin(), route.maintenance_positions.end(),
                     pos) != route.maintenance_positions.end();
  };

  // Carry-in rule plus per-activity assignability.
  const Activity& first = activity_of(route.activities.front());
  Minutes first_ready = tail.carry_in_ready_time;
  if (first.is_flight()) {
    if (first.departure_base != tail.carry_in_base)
      out.push_back("first activity " + first.id + " does not depart from carry-in base");
    if (first.departure_time < first_ready)
      out.push_back("first activity " + first.id + " departs before carry-in ready time");
  } else {
    auto it = pre_by_activity.find(route.activities.front());
    if (it == pre_by_activity.end()) {
      out.push_back("maintenance activity " + first.id + " is not pre-assigned to tail " + tail.id);
    } else {
      if (it->second->base != tail.carry_in_base)
        out.push_back("pre-assignment " + first.id + " is not at the carry-in base");
      if (detail::preassignment_start(*it->second, first_ready) > it->second->latest_start)
        out.push_back("pre-assignment " + first.id + " cannot start within its window");
    }
  }

  for (int ai : route.activities) {
    const Activity& a = activity_of(ai);
    if (a.is_flight()) {
      if (a.restricted_tails.count(tail.id))
        out.push_back("flight " + a.id + " is restricted for tail " + tail.id);
    } else if (!pre_by_activity.count(ai)) {
      out.push_back("maintenance activity " + a.id + " is not pre-assigned to tail " + tail.id);
    }
  }

  // Arc-by-arc legality. `ready` is the minute the aircraft becomes
  // controllable after the previous element under greedy-earliest starts.
  for (std::size_t k = 0; k + 1 < route.activities.size(); ++k) {
    const Activity& a = activity_of(route.activities[k]);
    const Activity& b = activity_of(route.activities[k + 1]);
    const std::string base = a.arrival_base;
    const AirportInfo* ap = inst.airport(base);
    if (!ap) continue;  // reported by validate_instance

    auto pre_a = pre_by_activity.find(route.activities[k]);
    auto pre_b = pre_by_activity.find(route.activities[k + 1]);
    bool a_is_pre = !a.is_flight() && pre_a != pre_by_activity.end();
    bool b_is_pre = !b.is_flight() && pre_b != pre_by_activity.end();

    // Departure point of b, from a's side: flights free the aircraft at
    // arrival_time; a pre-assignment occupies it until its latest finish.
    Minutes release = a_is_pre ? pre_a->second->latest_finish() : a.arrival_time;

    if (b.is_flight()) {
      if (b.departure_base != base)
        out.push_back("arc " + a.id + "->" + b.id + " changes base without a flight");
      Minutes ground = b.departure_time - release;
      if (ground < ap->mgt)
        out.push_back("arc " + a.id + "->" + b.id + " violates MGT at " + base);
      if (!a_is_pre && ground > ap->mct)
        out.push_back("arc " + a.id + "->" + b.id + " exceeds MCT at " + base);
    } else if (b_is_pre) {
      const PreAssignment& p = *pre_b->second;
      if (p.base != base)
        out.push_back("arc " + a.id + "->" + b.id + " does not end at pre-assignment base");
      if (release + ap->mgt > p.latest_start)
        out.push_back("pre-assignment " + b.id + " cannot start within its window after " + a.id);
    }

    if (is_maintenance_exercised(static_cast<int>(k))) {
      if (!ap->is_maintenance_base)
        out.push_back("maintenance after " + a.id + " at non-maintenance base " + base);
      Minutes gap;
      if (b_is_pre) {
        const PreAssignment& p = *pre_b->second;
        gap = detail::preassignment_start(p, release + ap->mgt) - release;
      } else {
        gap = b.departure_time - release;
      }
      if (gap < ap->required_maintenance_time)
        out.push_back("maintenance after " + a.id + " does not fit the ground time at " + base);
    }
  }

  // FH/FC accumulation with resets at exercised positions.
  Minutes fh = tail.fh_accumulated_minutes();
  int fc = tail.fc_accumulated;
  for (std::size_t k = 0; k < route.activities.size(); ++k) {
    const Activity& a = activity_of(route.activities[k]);
    if (k > 0 && is_maintenance_exercised(static_cast<int>(k) - 1)) {
      fh = 0;
      fc = 0;
    }
    fh += a.flying_minutes();
    fc += a.cycles;
    if (fh > tail.fh_limit_minutes())
      out.push_back("FH limit exceeded at " + a.id + " (" + std::to_string(fh) + " min)");
    if (fc > tail.fc_limit)
      out.push_back("FC limit exceeded at " + a.id);
  }

  // Every pre-assignment of the tail must appear, in chronological order.
  {
    std::vector<int> want;
    for (const auto& p : tail.pre_assignments) {
      int ai = inst.activity_index(p.activity_id);
      if (ai >= 0) want.push_back(ai);
    }
    std::vector<int> got;
    for (int ai : route.activities)
      if (pre_by_activity.count(ai)) got.push_back(ai);
    std::sort(want.begin(), want.end(), [&](int x, int y) {
      return pre_by_activity[x]->earliest_start < pre_by_activity[y]->earliest_start;
    });
    if (want != got)
      out.push_back("route does not perform the tail's pre-assignments in order");
  }

  if (tail.overnight_base) {
    const Activity& last = activity_of(route.activities.back());
    if (last.arrival_base != *tail.overnight_base)
      out.push_back("route ends at " + last.arrival_base + " instead of overnight base " +
                    *tail.overnight_base);
  }

  return out;
}

// Cost of a route: connection cost on every arc, maintenance cost per
// exercised check, minus the retention bonus for every connection that the
// planned rotation of this tail already contained.
inline double route_cost(const Instance& inst, const Route& route) {
  auto violations = route_violations(inst, route);
  if (!violations.empty())
    throw std::invalid_argument("invalid route: " + violations.front());

  if (route.activities.empty()) return 0.0;

  const CostParams& cp = inst.cost_params;
  double cost = cp.connection_cost * static_cast<double>(route.activities.size() - 1);
  cost += cp.maintenance_cost * static_cast<double>(route.maintenance_positions.size());

  auto plan_it = inst.lof_plan.find(inst.tails[route.tail].id);
  if (plan_it != inst.lof_plan.end() && cp.lof_bonus > 0.0) {
    // Planned connections of this tail as (from, to) pairs.
    std::set<std::pair<int, int>> planned;
    const auto& plan = plan_it->second;
    for (std::size_t k = 0; k + 1 < plan.size(); ++k) {
      int u = inst.activity_index(plan[k]);
      int v = inst.activity_index(plan[k + 1]);
      if (u >= 0 && v >= 0) planned.emplace(u, v);
    }
    int kept = 0;
    for (std::size_t k = 0; k + 1 < route.activities.size(); ++k)
      if (planned.count({route.activities[k], route.activities[k + 1]})) ++kept;
    cost -= cp.lof_bonus * static_cast<double>(kept);
  }
  return cost;
}

// Reduced cost of a route under master duals:
//   cost - sum of activity duals covered - tail dual.
inline double route_reduced_cost(const Instance& inst, const Route& route,
                                 const DualSolution& duals) {
  if (route.tail < 0 || route.tail >= static_cast<int>(duals.tail_duals.size()))
    throw std::invalid_argument("missing tail dual for tail index " + std::to_string(route.tail));
  double value = route.cost;
  for (int ai : route.activities) {
    if (ai < 0 || ai >= static_cast<int>(duals.activity_duals.size()) ||
        std::isnan(duals.activity_duals[ai]))
      throw std::invalid_argument("missing activity dual for " +
                                  (ai >= 0 && ai < static_cast<int>(inst.activities.size())
                                       ? inst.activities[ai].id
                                       : std::to_string(ai)));
    value -= duals.activity_duals[ai];
  }
  if (std::isnan(duals.tail_duals[route.tail]))
    throw std::invalid_argument("missing tail dual for " + inst.tails[route.tail].id);
  value -= duals.tail_duals[route.tail];
  return value;
}

}  // namespace tailassign
