#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tailassign/core.hpp"
#include "tailassign/network.hpp"

// Connection filtering under the assumption of full coverage, producing the
// reduced "post-connection" arc set used in early column-generation
// iterations. Three fixpoint rules:
//
//   (a) successor/predecessor channeling: a flight whose only possible
//       predecessor (successor) is one specific flight forces that pairing,
//       discarding the competing arcs of the partner;
//   (b) tail support: an arc survives only if some qualified tail can reach
//       its head from the carry-in and the sink from its tail, FH/FC
//       relaxed (per-tail reachability over the current arc set);
//   (c) pre-assignment windows enter through the per-tail segmented
//       networks used for (b).
//
// Full coverage is an approximation: if any flight loses every way to
// continue, the filter aborts and reports the original arcs unchanged.

namespace tailassign {

struct SuccessorDomains {
  // flight activity -> candidate successor activities (sink excluded)
  std::map<int, std::set<int>> domains;
  // flight activity -> tails whose network still contains it
  std::map<int, std::set<int>> assigned_tail_domains;
  std::vector<char> sink_allowed;   // some tail may end its route here
  std::vector<char> start_allowed;  // some tail may start its route here
};

struct PropagationResult {
  std::vector<ConnectionArc> arcs;
  bool available = false;
  int pre_count = 0;
  int post_count = 0;
  int rounds = 0;
  std::string note;

  std::string summary() const {
    return "pre-connections=" + std::to_string(pre_count) +
           " post-connections=" + std::to_string(post_count) +
           (available ? "" : " (propagation unavailable: " + note + ")");
  }
};

namespace detail {

// Static end-of-route availability: ignores reachability on purpose so an
// isolated flight keeps its sink option instead of poisoning the filter.
inline std::vector<char> static_sink_allowed(const Instance& inst) {
  std::vector<char> ok(inst.activities.size(), 0);
  for (int ai = 0; ai < static_cast<int>(inst.activities.size()); ++ai) {
    const Activity& a = inst.activities[ai];
    if (!a.is_flight()) continue;
    for (const Tail& t : inst.tails) {
      if (a.restricted_tails.count(t.id)) continue;
      if (t.overnight_base && *t.overnight_base != a.arrival_base) continue;
      ok[ai] = 1;
      break;
    }
  }
  return ok;
}

}  // namespace detail

// Domains induced by an arc set, used by the filter and exposed for tests.
inline SuccessorDomains compute_successor_domains(const Instance& inst,
                                                  const std::vector<ConnectionArc>& arcs) {
  SuccessorDomains doms;
  doms.sink_allowed = detail::static_sink_allowed(inst);
  doms.start_allowed.assign(inst.activities.size(), 0);
  for (int ai = 0; ai < static_cast<int>(inst.activities.size()); ++ai)
    if (inst.activities[ai].is_flight()) {
      doms.domains[ai];
      doms.assigned_tail_domains[ai];
    }
  for (const ConnectionArc& a : arcs) doms.domains[a.from_activity].insert(a.to_activity);

  for (int t = 0; t < static_cast<int>(inst.tails.size()); ++t) {
    PricingNetwork net = reachability_prune(build_pricing_network(inst, inst.tails[t], arcs));
    for (const NetworkNode& node : net.nodes)
      if (node.kind == NetworkNode::Kind::activity && inst.activities[node.activity].is_flight())
        doms.assigned_tail_domains[node.activity].insert(t);
    for (int arc_id : net.outgoing[net.source_node()]) {
      int to = net.arcs[arc_id].to;
      if (net.nodes[to].kind == NetworkNode::Kind::activity)
        doms.start_allowed[net.nodes[to].activity] = 1;
    }
  }
  return doms;
}

inline PropagationResult propagate_connections(const Instance& inst,
                                               const std::vector<ConnectionArc>& pre_arcs) {
  PropagationResult result;
  result.pre_count = static_cast<int>(pre_arcs.size());

  std::vector<ConnectionArc> current = pre_arcs;
  auto abort_with = [&](const std::string& why) {
    result.arcs = pre_arcs;
    result.available = false;
    result.post_count = result.pre_count;
    result.note = why;
    return result;
  };

  while (true) {
    ++result.rounds;
    SuccessorDomains doms = compute_successor_domains(inst, current);

    // (b)/(c): keep arcs some tail's pruned segmented network still carries.
    std::set<std::pair<int, int>> supported;
    for (int t = 0; t < static_cast<int>(inst.tails.size()); ++t) {
      PricingNetwork net = reachability_prune(build_pricing_network(inst, inst.tails[t], current));
      for (const NetworkArc& arc : net.arcs) {
        const NetworkNode& u = net.nodes[arc.from];
        const NetworkNode& v = net.nodes[arc.to];
        if (u.kind != NetworkNode::Kind::activity || v.kind != NetworkNode::Kind::activity)
          continue;
        if (inst.activities[u.activity].is_flight() && inst.activities[v.activity].is_flight())
          supported.emplace(u.activity, v.activity);
      }
    }

    std::vector<ConnectionArc> next;
    for (const ConnectionArc& a : current)
      if (supported.count({a.from_activity, a.to_activity})) next.push_back(a);

    // (a): channeling over the reduced arc set. Forced pairings must be
    // mutually consistent; two activities claiming the same partner is a
    // full-coverage contradiction and voids the whole filter.
    std::map<int, std::set<int>> succ, pred;
    for (const ConnectionArc& a : next) {
      succ[a.from_activity].insert(a.to_activity);
      pred[a.to_activity].insert(a.from_activity);
    }
    std::map<int, int> forced_succ_of, forced_pred_of;
    for (int f = 0; f < static_cast<int>(inst.activities.size()); ++f) {
      if (!inst.activities[f].is_flight()) continue;
      const auto& s = succ[f];
      if (s.empty() && !doms.sink_allowed[f])
        return abort_with("flight " + inst.activities[f].id + " has an empty successor domain");
      // f cannot start a route and u is its only inbound option: u must be
      // followed by f.
      const auto& p = pred[f];
      if (!doms.start_allowed[f] && p.size() == 1) {
        int u = *p.begin();
        auto [it, inserted] = forced_succ_of.emplace(u, f);
        if (!inserted && it->second != f)
          return abort_with("flights " + inst.activities[it->second].id + " and " +
                            inst.activities[f].id + " both require " + inst.activities[u].id +
                            " as their predecessor");
      }
      // f cannot end a route and w is its only outbound option: w must be
      // preceded by f.
      if (!doms.sink_allowed[f] && s.size() == 1) {
        int w = *s.begin();
        auto [it, inserted] = forced_pred_of.emplace(w, f);
        if (!inserted && it->second != f)
          return abort_with("flights " + inst.activities[it->second].id + " and " +
                            inst.activities[f].id + " both require " + inst.activities[w].id +
                            " as their successor");
      }
    }
    for (const auto& [u, f] : forced_succ_of) {
      auto it = forced_pred_of.find(f);
      if (it != forced_pred_of.end() && it->second != u)
        return abort_with("contradictory forced pairings around " + inst.activities[f].id);
    }
    std::set<std::pair<int, int>> forced_drop;
    for (const auto& [u, f] : forced_succ_of)
      for (int w : succ[u])
        if (w != f) forced_drop.emplace(u, w);
    for (const auto& [w, f] : forced_pred_of)
      for (int u : pred[w])
        if (u != f) forced_drop.emplace(u, w);
    if (!forced_drop.empty()) {
      std::vector<ConnectionArc> filtered;
      for (const ConnectionArc& a : next)
        if (!forced_drop.count({a.from_activity, a.to_activity})) filtered.push_back(a);
      next.swap(filtered);
    }

    if (next.size() == current.size()) break;
    current.swap(next);
  }

  result.arcs = std::move(current);
  result.available = true;
  result.post_count = static_cast<int>(result.arcs.size());
  return result;
}

}  // namespace tailassign
