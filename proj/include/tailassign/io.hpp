#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailassign/core.hpp"
#include "tailassign/driver.hpp"

// Instance files (versioned JSON, strict about unknown fields), synthetic
// instance generation, and solution/report serialization.

namespace tailassign {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kInstanceFileVersion = 1;

namespace io_detail {

// Wrapper enforcing the schema: every field read is accounted for, anything
// left over is an error.
class StrictObject {
 public:
  StrictObject(const ordered_json& j, std::string context)
      : j_(j), context_(std::move(context)) {
    if (!j.is_object()) throw std::runtime_error(context_ + ": expected an object");
  }

  template <typename T>
  T require(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) throw std::runtime_error(context_ + ": missing field '" + key + "'");
    seen_.insert(key);
    return read<T>(it, key);
  }

  template <typename T>
  T optional(const std::string& key, T fallback) {
    auto it = j_.find(key);
    if (it == j_.end()) return fallback;
    seen_.insert(key);
    if (it->is_null()) return fallback;
    return read<T>(it, key);
  }

  bool has(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) return false;
    seen_.insert(key);
    return !it->is_null();
  }

  const ordered_json& raw(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) throw std::runtime_error(context_ + ": missing field '" + key + "'");
    seen_.insert(key);
    return *it;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw std::runtime_error(context_ + ": unknown field '" + it.key() + "'");
  }

 private:
  template <typename T>
  T read(ordered_json::const_iterator it, const std::string& key) {
    try {
      return it->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw std::runtime_error(context_ + "." + key + ": wrong type");
    }
  }

  const ordered_json& j_;
  std::string context_;
  std::set<std::string> seen_;
};

inline ActivityKind kind_from_string(const std::string& s, const std::string& context) {
  if (s == "flight") return ActivityKind::flight;
  if (s == "maintenance-opportunity") return ActivityKind::maintenance_opportunity;
  if (s == "pre-assigned-maintenance") return ActivityKind::pre_assigned_maintenance;
  throw std::runtime_error(context + ": unknown activity kind '" + s + "'");
}

}  // namespace io_detail

inline Instance parse_instance_json(const ordered_json& root) {
  using io_detail::StrictObject;
  Instance inst;

  StrictObject top(root, "instance");
  int version = top.require<int>("version");
  if (version != kInstanceFileVersion)
    throw std::runtime_error("unsupported instance file version " + std::to_string(version));
  inst.horizon_days = top.require<int>("horizon_days");

  const ordered_json& airports = top.raw("airports");
  if (!airports.is_object()) throw std::runtime_error("airports: expected an object");
  for (auto it = airports.begin(); it != airports.end(); ++it) {
    StrictObject a(*it, "airports." + it.key());
    AirportInfo info;
    info.mgt = a.require<int>("mgt");
    info.mct = a.require<int>("mct");
    info.is_maintenance_base = a.require<bool>("is_maintenance_base");
    info.hangar_capacity = a.require<int>("hangar_capacity");
    info.required_maintenance_time = a.require<int>("required_maintenance_time");
    a.finish();
    inst.airports[it.key()] = info;
  }

  const ordered_json& acts = top.raw("activities");
  if (!acts.is_array()) throw std::runtime_error("activities: expected an array");
  for (std::size_t i = 0; i < acts.size(); ++i) {
    StrictObject a(acts[i], "activities[" + std::to_string(i) + "]");
    Activity act;
    act.id = a.require<std::string>("id");
    act.kind = io_detail::kind_from_string(a.optional<std::string>("kind", "flight"),
                                           "activities[" + std::to_string(i) + "].kind");
    act.departure_base = a.require<std::string>("departure_base");
    act.arrival_base = a.require<std::string>("arrival_base");
    act.departure_time = a.require<int>("departure_time");
    act.arrival_time = a.require<int>("arrival_time");
    act.flying_hours = a.require<double>("flying_hours");
    act.cycles = a.require<int>("cycles");
    for (const auto& t : a.optional<std::vector<std::string>>("restricted_tails", {}))
      act.restricted_tails.insert(t);
    act.uncovered_penalty = a.require<double>("uncovered_penalty");
    a.finish();
    inst.activities.push_back(std::move(act));
  }

  const ordered_json& tails = top.raw("tails");
  if (!tails.is_array()) throw std::runtime_error("tails: expected an array");
  for (std::size_t i = 0; i < tails.size(); ++i) {
    StrictObject t(tails[i], "tails[" + std::to_string(i) + "]");
    Tail tail;
    tail.id = t.require<std::string>("id");
    tail.carry_in_base = t.require<std::string>("carry_in_base");
    tail.carry_in_ready_time = t.require<int>("carry_in_ready_time");
    tail.fh_limit = t.require<double>("fh_limit");
    tail.fc_limit = t.require<int>("fc_limit");
    tail.fh_accumulated = t.require<double>("fh_accumulated");
    tail.fc_accumulated = t.require<int>("fc_accumulated");
    for (const auto& tag : t.optional<std::vector<std::string>>("qualified_sector_tags", {}))
      tail.qualified_sector_tags.insert(tag);
    if (t.has("pre_assignments")) {
      const ordered_json& pres = t.raw("pre_assignments");
      for (std::size_t k = 0; k < pres.size(); ++k) {
        StrictObject p(pres[k],
                       "tails[" + std::to_string(i) + "].pre_assignments[" + std::to_string(k) + "]");
        PreAssignment pre;
        pre.activity_id = p.require<std::string>("activity_id");
        pre.base = p.require<std::string>("base");
        pre.earliest_start = p.require<int>("earliest_start");
        pre.latest_start = p.require<int>("latest_start");
        pre.duration = p.require<int>("duration");
        p.finish();
        tail.pre_assignments.push_back(std::move(pre));
      }
    }
    if (t.has("overnight_base")) tail.overnight_base = t.raw("overnight_base").get<std::string>();
    t.finish();
    inst.tails.push_back(std::move(tail));
  }

  if (top.has("lof_plan")) {
    const ordered_json& plan = top.raw("lof_plan");
    if (!plan.is_object()) throw std::runtime_error("lof_plan: expected an object");
    for (auto it = plan.begin(); it != plan.end(); ++it)
      inst.lof_plan[it.key()] = it->get<std::vector<std::string>>();
  }

  StrictObject cp(top.raw("cost_params"), "cost_params");
  inst.cost_params.connection_cost = cp.require<double>("connection_cost");
  inst.cost_params.maintenance_cost = cp.require<double>("maintenance_cost");
  inst.cost_params.lof_bonus = cp.require<double>("lof_bonus");
  cp.finish();
  top.finish();

  inst.rebuild_indices();
  return inst;
}

// Parses and validates. With `out_report` the violations are handed back
// and the (structurally sound) instance is returned anyway; without it any
// violation throws.
inline Instance parse_instance(const std::string& path, ValidationReport* out_report = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  ordered_json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": JSON parse error: " + e.what());
  }
  Instance inst = parse_instance_json(root);
  ValidationReport report = validate_instance(inst);
  if (out_report) {
    *out_report = report;
  } else if (!report.ok()) {
    throw std::runtime_error(path + ": invalid instance:\n" + report.to_string());
  }
  return inst;
}

inline ordered_json serialize_instance(const Instance& inst) {
  ordered_json root;
  root["version"] = kInstanceFileVersion;
  root["horizon_days"] = inst.horizon_days;

  ordered_json airports = ordered_json::object();
  for (const auto& [code, ap] : inst.airports) {
    airports[code] = {{"mgt", ap.mgt},
                      {"mct", ap.mct},
                      {"is_maintenance_base", ap.is_maintenance_base},
                      {"hangar_capacity", ap.hangar_capacity},
                      {"required_maintenance_time", ap.required_maintenance_time}};
  }
  root["airports"] = std::move(airports);

  ordered_json acts = ordered_json::array();
  for (const Activity& a : inst.activities) {
    ordered_json j;
    j["id"] = a.id;
    j["kind"] = to_string(a.kind);
    j["departure_base"] = a.departure_base;
    j["arrival_base"] = a.arrival_base;
    j["departure_time"] = a.departure_time;
    j["arrival_time"] = a.arrival_time;
    j["flying_hours"] = a.flying_hours;
    j["cycles"] = a.cycles;
    j["restricted_tails"] = std::vector<std::string>(a.restricted_tails.begin(),
                                                     a.restricted_tails.end());
    j["uncovered_penalty"] = a.uncovered_penalty;
    acts.push_back(std::move(j));
  }
  root["activities"] = std::move(acts);

  ordered_json tails = ordered_json::array();
  for (const Tail& t : inst.tails) {
    ordered_json j;
    j["id"] = t.id;
    j["carry_in_base"] = t.carry_in_base;
    j["carry_in_ready_time"] = t.carry_in_ready_time;
    j["fh_limit"] = t.fh_limit;
    j["fc_limit"] = t.fc_limit;
    j["fh_accumulated"] = t.fh_accumulated;
    j["fc_accumulated"] = t.fc_accumulated;
    j["qualified_sector_tags"] =
        std::vector<std::string>(t.qualified_sector_tags.begin(), t.qualified_sector_tags.end());
    ordered_json pres = ordered_json::array();
    for (const PreAssignment& p : t.pre_assignments) {
      pres.push_back({{"activity_id", p.activity_id},
                      {"base", p.base},
                      {"earliest_start", p.earliest_start},
                      {"latest_start", p.latest_start},
                      {"duration", p.duration}});
    }
    j["pre_assignments"] = std::move(pres);
    if (t.overnight_base)
      j["overnight_base"] = *t.overnight_base;
    else
      j["overnight_base"] = nullptr;
    tails.push_back(std::move(j));
  }
  root["tails"] = std::move(tails);

  ordered_json plan = ordered_json::object();
  for (const auto& [tail_id, ids] : inst.lof_plan) plan[tail_id] = ids;
  root["lof_plan"] = std::move(plan);

  root["cost_params"] = {{"connection_cost", inst.cost_params.connection_cost},
                         {"maintenance_cost", inst.cost_params.maintenance_cost},
                         {"lof_bonus", inst.cost_params.lof_bonus}};
  return root;
}

inline void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << serialize_instance(inst).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Synthetic instances

struct GeneratorParams {
  int tails = 4;
  int flights = 40;
  int horizon_days = 2;
  int bases = 5;
  double maintenance_base_fraction = 0.4;
  int mgt_min = 25;
  int mgt_max = 45;
  double preassignment_rate = 0.3;
  std::uint64_t seed = 1;
  bool guarantee_feasible = true;
};

namespace io_detail {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  // Bounded draws via modulo keep the stream identical across standard
  // library implementations.
  int range(int lo, int hi) { return lo + static_cast<int>(eng() % (hi - lo + 1)); }
  double unit() { return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0); }
  bool chance(double p) { return unit() < p; }
};

}  // namespace io_detail

// Builds one rotation per tail and decomposes the rotations into the flight
// list, recording them as the planned LOFs, so a complete assignment is
// known to exist. Pre-assignments and long maintenance-opportunity stops
// are scripted into the chains; the requested flight count is exact.
// Deterministic per seed.
inline Instance generate_instance(const GeneratorParams& params) {
  if (params.tails <= 0 || params.flights <= 0 || params.horizon_days <= 0 || params.bases <= 0)
    throw std::invalid_argument("generator counts must be positive");
  if (params.maintenance_base_fraction < 0 || params.maintenance_base_fraction > 1 ||
      params.preassignment_rate < 0 || params.preassignment_rate > 1)
    throw std::invalid_argument("generator ratios must lie in [0, 1]");

  io_detail::Rng rng(params.seed);
  Instance inst;
  inst.horizon_days = params.horizon_days;
  const Minutes horizon_end = inst.horizon_end();

  int n_maint = static_cast<int>(params.maintenance_base_fraction * params.bases + 0.999);
  if (params.preassignment_rate > 0 && n_maint == 0)
    throw std::invalid_argument(
        "pre-assignments requested but maintenance_base_fraction yields no maintenance base");

  std::vector<std::string> base_names;
  for (int b = 0; b < params.bases; ++b) {
    std::string name = "AP" + std::to_string(b);
    base_names.push_back(name);
    AirportInfo ap;
    ap.mgt = rng.range(params.mgt_min, params.mgt_max);
    ap.required_maintenance_time = rng.range(90, 150);
    ap.mct = rng.range(ap.required_maintenance_time + 120, 720);
    ap.is_maintenance_base = b < n_maint;
    ap.hangar_capacity = rng.range(1, 3);
    inst.airports[name] = ap;
  }
  auto any_maintenance_base = [&]() { return base_names[rng.range(0, n_maint - 1)]; };
  auto pick_other_base = [&](const std::string& current) {
    if (params.bases == 1) return current;
    int idx = rng.range(0, params.bases - 2);
    return base_names[idx] == current ? base_names[params.bases - 1] : base_names[idx];
  };

  inst.cost_params.connection_cost = 10.0;
  inst.cost_params.maintenance_cost = 50.0;
  inst.cost_params.lof_bonus = 2.0;

  struct ChainState {
    std::string base;
    Minutes time = 0;  // aircraft released for the next departure
    Minutes fh = 0;    // since last check, minutes
    int fc = 0;
    bool open = true;
    std::vector<std::string> plan;
    int flights_done = 0;
    int pre_after = -1;  // plant the pre-assignment after this many flights
    bool pre_planted = false;
    int stop_after = -1;  // plant a long maintenance-opportunity stop
    bool stop_planted = false;
    bool long_gap_pending = false;
  };
  std::vector<ChainState> chains(params.tails);

  int flight_serial = 0;
  int maint_serial = 0;
  const int est_per_tail = std::max(1, params.flights / params.tails);

  bool any_pre_scripted = false;
  for (int t = 0; t < params.tails; ++t) {
    Tail tail;
    tail.id = "T" + std::to_string(t + 1);
    tail.carry_in_base = base_names[rng.range(0, params.bases - 1)];
    tail.carry_in_ready_time = rng.range(0, 120);
    tail.fh_limit = rng.range(22, 40);  // hours
    tail.fc_limit = rng.range(8, 18);
    tail.fh_accumulated = rng.range(0, static_cast<int>(tail.fh_limit) / 4);
    tail.fc_accumulated = rng.range(0, tail.fc_limit / 4);
    inst.tails.push_back(tail);

    ChainState& c = chains[t];
    c.base = tail.carry_in_base;
    c.time = tail.carry_in_ready_time;
    c.fh = tail.fh_accumulated_minutes();
    c.fc = tail.fc_accumulated;
    if (rng.chance(params.preassignment_rate)) {
      c.pre_after = rng.range(1, std::max(1, est_per_tail / 2));
      any_pre_scripted = true;
    }
    if (n_maint > 0 && rng.chance(0.8))
      c.stop_after = rng.range(std::max(1, est_per_tail / 2), std::max(1, est_per_tail - 1));
  }
  if (params.preassignment_rate > 0 && !any_pre_scripted) chains[0].pre_after = 1;

  // Plants the pre-assigned maintenance event at the chain's current base
  // (a maintenance base). The chain resumes from the latest possible
  // finish, matching the conservative outbound rule.
  auto plant_pre = [&](int t) {
    ChainState& c = chains[t];
    Tail& tail = inst.tails[t];
    const AirportInfo& ap = inst.airports.at(c.base);
    Minutes start = c.time + ap.mgt;
    Minutes duration = rng.range(120, 300);
    Minutes slack_before = rng.range(0, 60);
    Minutes slack_after = rng.range(30, 120);
    if (start + slack_after + duration + 180 > horizon_end) {
      c.pre_planted = true;  // no room left; drop the script entry
      return;
    }
    Activity m;
    m.id = "M" + std::to_string(++maint_serial);
    m.kind = ActivityKind::pre_assigned_maintenance;
    m.departure_base = c.base;
    m.arrival_base = c.base;
    m.departure_time = start;
    m.arrival_time = start + duration;
    m.flying_hours = 0.0;
    m.cycles = 0;
    m.uncovered_penalty = 10000.0 + rng.range(0, 500);
    inst.activities.push_back(m);

    PreAssignment pre;
    pre.activity_id = m.id;
    pre.base = c.base;
    pre.earliest_start = std::max(0, start - slack_before);
    pre.latest_start = start + slack_after;
    pre.duration = duration;
    tail.pre_assignments.push_back(pre);

    c.plan.push_back(m.id);
    c.time = pre.latest_start + duration;
    c.pre_planted = true;
  };

  // Marks the next connection to be stretched so a periodic check fits in
  // its ground time while staying inside MCT.
  auto plant_stop = [&](int t) {
    chains[t].long_gap_pending = true;
    chains[t].stop_planted = true;
  };

  auto add_flight = [&](int t) -> bool {
    ChainState& c = chains[t];
    Tail& tail = inst.tails[t];
    if (!c.open) return false;

    bool pre_due = c.pre_after >= 0 && !c.pre_planted && c.flights_done >= c.pre_after;
    bool stop_due = c.stop_after >= 0 && !c.stop_planted && c.flights_done >= c.stop_after;
    const bool at_hangar = inst.airports.at(c.base).is_maintenance_base;
    if (pre_due && at_hangar) {
      plant_pre(t);
      pre_due = false;
    }
    if (stop_due && at_hangar && !pre_due) {
      plant_stop(t);
      stop_due = false;
    }

    const AirportInfo& here = inst.airports.at(c.base);
    Minutes duration = rng.range(45, 150);
    bool first_leg = c.plan.empty();
    Minutes gap;
    if (first_leg) {
      gap = rng.range(0, 60);
      c.long_gap_pending = false;
    } else if (c.long_gap_pending && here.is_maintenance_base) {
      gap = rng.range(here.required_maintenance_time + 10,
                      std::min(here.mct, here.required_maintenance_time + 120));
      c.long_gap_pending = false;
    } else {
      gap = rng.range(here.mgt, std::min(here.mct, here.mgt + 150));
    }

    // Stop for a check first when the next leg might not fit, keeping one
    // repositioning leg of slack.
    bool need_check =
        c.fh + duration + 150 > tail.fh_limit_minutes() || c.fc + 2 > tail.fc_limit;
    std::string dest;
    if (need_check && here.is_maintenance_base) {
      gap = std::max<Minutes>(gap, here.required_maintenance_time + rng.range(0, 30));
      c.fh = 0;
      c.fc = 0;
      dest = pick_other_base(c.base);
    } else if (need_check || pre_due || stop_due) {
      dest = any_maintenance_base();  // reposition toward a hangar
      if (dest == c.base) dest = pick_other_base(c.base);
    } else {
      dest = pick_other_base(c.base);
    }

    Minutes departure = c.time + gap;
    Minutes arrival = departure + duration;
    if (arrival > horizon_end - 60 || c.fh + duration > tail.fh_limit_minutes() ||
        c.fc + 1 > tail.fc_limit) {
      c.open = false;
      return false;
    }

    Activity a;
    a.id = "F" + std::to_string(++flight_serial);
    a.kind = ActivityKind::flight;
    a.departure_base = c.base;
    a.arrival_base = dest;
    a.departure_time = departure;
    a.arrival_time = arrival;
    a.flying_hours = duration / 60.0;
    a.cycles = 1;
    a.uncovered_penalty = 10000.0 + rng.range(0, 500);
    inst.activities.push_back(a);

    c.plan.push_back(a.id);
    c.base = dest;
    c.time = arrival;
    c.fh += duration;
    c.fc += 1;
    c.flights_done += 1;
    return true;
  };

  // Round-robin placement until the requested flight count is reached.
  int placed = 0;
  while (placed < params.flights) {
    bool progress = false;
    for (int t = 0; t < params.tails && placed < params.flights; ++t) {
      if (add_flight(t)) {
        ++placed;
        progress = true;
      }
    }
    if (!progress)
      throw std::runtime_error("generator cannot place " + std::to_string(params.flights) +
                               " flights into the horizon; extend horizon_days or add tails");
  }
  // Unplanted pre-assignment scripts fire now if the chain happens to sit
  // at a hangar base.
  for (int t = 0; t < params.tails; ++t) {
    ChainState& c = chains[t];
    if (c.pre_after >= 0 && !c.pre_planted && inst.airports.at(c.base).is_maintenance_base)
      plant_pre(t);
  }

  inst.rebuild_indices();

  // Planned rotations and overnight bases from the planted chains.
  for (int t = 0; t < params.tails; ++t) {
    inst.lof_plan[inst.tails[t].id] = chains[t].plan;
    if (!chains[t].plan.empty() && rng.chance(0.3))
      inst.tails[t].overnight_base = chains[t].base;
  }

  // Activity restrictions: never against the planted owner.
  std::map<std::string, int> owner_of;
  for (int t = 0; t < params.tails; ++t)
    for (const auto& id : chains[t].plan) owner_of[id] = t;
  for (Activity& a : inst.activities) {
    if (!a.is_flight() || !rng.chance(0.15)) continue;
    int owner = owner_of.count(a.id) ? owner_of[a.id] : -1;
    int count = rng.range(1, std::max(1, params.tails / 4));
    for (int k = 0; k < count; ++k) {
      int victim = rng.range(0, params.tails - 1);
      if (victim != owner) a.restricted_tails.insert(inst.tails[victim].id);
    }
  }

  if (!params.guarantee_feasible) {
    // Disruption scenario: scramble carry-in state so the plan no longer
    // fits; coverage may become partial.
    for (int t = 0; t + 1 < params.tails; t += 2) {
      std::swap(inst.tails[t].carry_in_base, inst.tails[t + 1].carry_in_base);
      inst.tails[t].carry_in_ready_time = rng.range(0, 240);
    }
    for (Activity& a : inst.activities) {
      if (a.is_flight() && rng.chance(0.05)) {
        for (int t = 0; t < params.tails; ++t)
          if (rng.chance(0.5)) a.restricted_tails.insert(inst.tails[t].id);
      }
    }
  }

  inst.rebuild_indices();
  ValidationReport report = validate_instance(inst);
  if (!report.ok())
    throw std::logic_error("generator produced an invalid instance:\n" + report.to_string());
  return inst;
}

// ---------------------------------------------------------------------------
// Reports

inline ordered_json report_to_json(const Instance& inst, const IntegralSolution& sol,
                                   const RunReport& report) {
  auto finite_or_null = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };

  ordered_json root;
  root["version"] = 1;
  root["objective"] = report.ip_objective;
  root["lp_objective"] = report.lp_objective;
  root["iterations"] = report.cg_iterations;
  root["columns_generated"] = report.columns_generated_total;
  root["columns_selected"] = report.columns_selected_total;
  root["remarks"] = report.remarks;
  root["uncovered"] = report.uncovered;

  ordered_json routes = ordered_json::array();
  for (const Route& r : sol.routes) {
    ordered_json j;
    j["tail"] = inst.tails[r.tail].id;
    std::vector<std::string> ids;
    for (int ai : r.activities) ids.push_back(inst.activities[ai].id);
    j["activities"] = ids;
    j["maintenance_positions"] = r.maintenance_positions;
    j["cost"] = r.cost;
    routes.push_back(std::move(j));
  }
  root["routes"] = std::move(routes);

  root["connections"] = {{"pre", report.pre_connections},
                         {"post", report.post_connections},
                         {"propagation_available", report.propagation_available}};

  root["times_ms"] = {{"total", report.time_total_ms},     {"propagation", report.time_propagation_ms},
                      {"cg", report.time_cg_ms},           {"pricing", report.time_pricing_ms},
                      {"lp", report.time_lp_ms},           {"fixing", report.time_fixing_ms},
                      {"ip", report.time_ip_ms}};

  ordered_json iters = ordered_json::array();
  for (const IterationLogEntry& e : report.iterations) {
    ordered_json j;
    j["iteration"] = e.iteration;
    j["lp_objective"] = e.lp_objective;
    j["generated"] = e.columns_generated;
    j["selected_count"] = e.columns_selected;
    j["min_reduced_cost"] = finite_or_null(e.min_reduced_cost);
    j["wall_ms"] = e.wall_ms;
    j["post_connections"] = e.used_post_connections;
    j["exactness_check"] = e.exactness_check;
    j["selected"] = e.selected;
    iters.push_back(std::move(j));
  }
  root["iteration_log"] = std::move(iters);

  ordered_json fixing = ordered_json::array();
  for (const FixingLogEntry& e : report.fixing) {
    fixing.push_back({{"threshold_pct", e.threshold_pct},
                      {"candidates", e.candidates},
                      {"fixed", e.fixed},
                      {"deferred", e.deferred},
                      {"lp_objective", e.lp_objective},
                      {"routes", e.fixed_routes}});
  }
  root["fixing_log"] = std::move(fixing);
  root["exit_threshold_pct"] = report.exit_threshold_pct;
  root["time_limit_reached"] = report.time_limit_reached;
  root["warnings"] = report.warnings;
  return root;
}

inline void write_report(const Instance& inst, const IntegralSolution& sol,
                         const RunReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file " + path);
  out << report_to_json(inst, sol, report).dump(2) << "\n";
}

inline ordered_json read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report file " + path);
  ordered_json root;
  in >> root;
  return root;
}

// Human-readable summary table.
inline void print_summary(const Instance& inst, const IntegralSolution& sol,
                          const RunReport& report, std::ostream& os) {
  os << "==== tail assignment summary ====\n";
  os << std::left;
  os << std::setw(24) << "objective" << report.ip_objective << "\n";
  os << std::setw(24) << "LP bound" << report.lp_objective << "\n";
  os << std::setw(24) << "CG iterations" << report.cg_iterations << "\n";
  os << std::setw(24) << "columns generated" << report.columns_generated_total << "\n";
  os << std::setw(24) << "columns selected" << report.columns_selected_total << "\n";
  os << std::setw(24) << "pre/post connections"
     << (std::to_string(report.pre_connections) + "/" + std::to_string(report.post_connections))
     << "\n";
  os << std::setw(24) << "remarks" << report.remarks << "\n";
  os << std::setw(24) << "time total"
     << (std::to_string(report.time_total_ms / 1000.0) + " s") << "\n";
  os << "routes:\n";
  for (const Route& r : sol.routes) os << "  " << route_to_string(inst, r) << "\n";
  if (!report.uncovered.empty()) {
    os << "uncovered:";
    for (const auto& id : report.uncovered) os << " " << id;
    os << "\n";
  }
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
}

}  // namespace tailassign
