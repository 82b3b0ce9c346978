#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tailassign/core.hpp"
#include "tailassign/network.hpp"

// Resource-constrained shortest path pricing, one problem per tail.
//
// Label setting over the topologically ordered pricing network. A label
// carries the reduced cost and the FH/FC consumed since the last check;
// only legal labels (within the tail's limits) exist. On a
// maintenance-eligible arc two labels are extended: one keeps the
// accumulation, one resets it to the target's own consumption and pays the
// maintenance cost. Nodes keep non-dominated labels, lex-sorted and capped
// when they pile up; the sink is never capped.

namespace tailassign {

struct Label {
  int node = -1;
  double reduced_cost = 0.0;
  Minutes fh_used = 0;
  int fc_used = 0;
  int pred_node = -1;   // node of the parent label
  int pred_index = -1;  // index into the parent node's final label list
  bool did_maintenance_here = false;
};

struct PricingConfig {
  int lex_sort_threshold = 12;  // lex-sort once a node holds more labels
  int max_labels_per_node = 20;
  int sink_pool_size = 100;
  double reduced_cost_tolerance = 1e-6;
  bool use_dominance = true;

  static PricingConfig uncapped() {
    PricingConfig c;
    c.lex_sort_threshold = std::numeric_limits<int>::max() - 1;
    c.max_labels_per_node = std::numeric_limits<int>::max();
    return c;
  }
};

// p dominates q when it is at least as good on cost and every resource.
inline bool dominates(const Label& p, const Label& q) {
  return p.reduced_cost <= q.reduced_cost && p.fh_used <= q.fh_used && p.fc_used <= q.fc_used;
}

struct LabelExtension {
  int count = 0;
  std::array<Label, 2> labels;
};

// Extends a label along one arc. Produces the accumulation child and, on a
// maintenance-eligible arc, the reset child; children beyond the tail's
// FH/FC limits are not produced. Sink arcs produce a single child and
// settle the tail dual.
inline LabelExtension extend_label(const PricingNetwork& net, const Label& label, int arc_id,
                                   const DualSolution& duals, const Tail& tail) {
  const NetworkArc& arc = net.arcs[arc_id];
  const NetworkNode& target = net.nodes[arc.to];
  LabelExtension ext;

  if (target.kind == NetworkNode::Kind::sink) {
    Label child = label;
    child.node = arc.to;
    child.pred_node = label.node;
    child.did_maintenance_here = false;
    child.reduced_cost = label.reduced_cost + arc.cost - duals.tail_duals[net.tail];
    ext.labels[ext.count++] = child;
    return ext;
  }

  double pi = duals.activity_duals[target.activity];
  if (std::isnan(pi))
    throw std::invalid_argument("missing activity dual for " +
                                net.instance->activities[target.activity].id);
  const Minutes fh_limit = tail.fh_limit_minutes();
  const int fc_limit = tail.fc_limit;

  Label keep = label;
  keep.node = arc.to;
  keep.pred_node = label.node;
  keep.did_maintenance_here = false;
  keep.reduced_cost = label.reduced_cost + arc.cost - pi;
  keep.fh_used = label.fh_used + target.fh_minutes;
  keep.fc_used = label.fc_used + target.cycles;
  if (keep.fh_used <= fh_limit && keep.fc_used <= fc_limit) ext.labels[ext.count++] = keep;

  if (arc.maintenance_eligible) {
    Label reset = keep;
    reset.did_maintenance_here = true;
    reset.reduced_cost += net.instance->cost_params.maintenance_cost;
    reset.fh_used = target.fh_minutes;
    reset.fc_used = target.cycles;
    if (reset.fh_used <= fh_limit && reset.fc_used <= fc_limit) ext.labels[ext.count++] = reset;
  }
  return ext;
}

// Dominance filter plus the lexicographic cap: once more labels survive
// than the threshold, sort by (reduced cost, FH, FC) and keep the best
// max_labels_per_node. Callers never apply this at the sink.
inline std::vector<Label> prune_node_labels(std::vector<Label> labels,
                                            const PricingConfig& config) {
  if (config.use_dominance && labels.size() > 1) {
    std::vector<char> dead(labels.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (dead[i]) continue;
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (i == j || dead[j]) continue;
        if (dominates(labels[j], labels[i]) && (!dominates(labels[i], labels[j]) || j < i)) {
          dead[i] = 1;
          break;
        }
      }
    }
    std::vector<Label> kept;
    kept.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (!dead[i]) kept.push_back(labels[i]);
    labels.swap(kept);
  }

  if (static_cast<int>(labels.size()) > config.lex_sort_threshold) {
    std::stable_sort(labels.begin(), labels.end(), [](const Label& a, const Label& b) {
      if (a.reduced_cost != b.reduced_cost) return a.reduced_cost < b.reduced_cost;
      if (a.fh_used != b.fh_used) return a.fh_used < b.fh_used;
      return a.fc_used < b.fc_used;
    });
    if (static_cast<int>(labels.size()) > config.max_labels_per_node)
      labels.resize(config.max_labels_per_node);
  }
  return labels;
}

namespace detail {

// Incremental dominance on append keeps per-node lists small during the
// sweep; the final set matches the batch filter.
inline void insert_label(std::vector<Label>& list, const Label& child, bool use_dominance) {
  if (use_dominance) {
    for (const Label& l : list)
      if (dominates(l, child)) return;
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](const Label& l) {
                                return dominates(child, l) && !dominates(l, child);
                              }),
               list.end());
  }
  list.push_back(child);
}

}  // namespace detail

struct PricingResult {
  std::vector<Route> routes;  // negative reduced cost, best first
  double min_reduced_cost = std::numeric_limits<double>::infinity();
  std::vector<std::string> notes;
};

// Solves the tail's pricing problem and decodes up to sink_pool_size routes
// with reduced cost below -tolerance. Reduced costs include the tail dual.
inline PricingResult solve_pricing(const PricingNetwork& net, const DualSolution& duals,
                                   const Tail& tail, const PricingConfig& config) {
  PricingResult result;
  result.notes = net.notes;
  const Instance& inst = *net.instance;
  const int n = static_cast<int>(net.nodes.size());
  const int sink = net.sink_node();

  std::vector<std::vector<Label>> labels(n);
  std::vector<Label> sink_labels;

  Label start;
  start.node = net.source_node();
  start.fh_used = tail.fh_accumulated_minutes();
  start.fc_used = tail.fc_accumulated;
  labels[net.source_node()].push_back(start);

  for (int u = 0; u < n; ++u) {
    if (u == sink) continue;
    labels[u] = prune_node_labels(std::move(labels[u]), config);
    if (labels[u].empty()) continue;
    for (int arc_id : net.outgoing[u]) {
      const bool to_sink = net.arcs[arc_id].to == sink;
      for (int li = 0; li < static_cast<int>(labels[u].size()); ++li) {
        LabelExtension ext = extend_label(net, labels[u][li], arc_id, duals, tail);
        for (int e = 0; e < ext.count; ++e) {
          Label child = ext.labels[e];
          child.pred_index = li;
          if (to_sink)
            sink_labels.push_back(child);
          else
            detail::insert_label(labels[child.node], child, config.use_dominance);
        }
      }
    }
  }

  if (sink_labels.empty()) {
    result.notes.push_back("no feasible route for tail " + tail.id);
    return result;
  }

  std::stable_sort(sink_labels.begin(), sink_labels.end(),
                   [](const Label& a, const Label& b) { return a.reduced_cost < b.reduced_cost; });
  result.min_reduced_cost = sink_labels.front().reduced_cost;

  for (const Label& sl : sink_labels) {
    if (static_cast<int>(result.routes.size()) >= config.sink_pool_size) break;
    if (sl.reduced_cost >= -config.reduced_cost_tolerance) break;

    // Walk the predecessor chain back to the source.
    std::vector<std::pair<int, bool>> chain;  // (node, maintenance on inbound arc)
    int node = sl.pred_node;
    int index = sl.pred_index;
    while (node != net.source_node()) {
      const Label& l = labels[node][index];
      chain.emplace_back(node, l.did_maintenance_here);
      node = l.pred_node;
      index = l.pred_index;
    }
    std::reverse(chain.begin(), chain.end());

    Route route;
    route.tail = net.tail;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      route.activities.push_back(net.nodes[chain[k].first].activity);
      if (chain[k].second) route.maintenance_positions.push_back(static_cast<int>(k) - 1);
    }
    route.cost = route_cost(inst, route);
    result.routes.push_back(std::move(route));
  }
  return result;
}

}  // namespace tailassign
