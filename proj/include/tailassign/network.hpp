#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "tailassign/core.hpp"

// Connection arc construction and per-tail pricing networks.
//
// A pricing network is a DAG: source (carry-in state), the activities the
// tail may serve ordered by start time, and a sink. Pre-assigned
// maintenance events become intermediate sinks: they partition the nodes
// into segments, and every arc stays within a segment or passes through
// the segment's intermediate sink, so any source->sink path performs all
// pre-assignments in order. Maintenance opportunities are flags on arcs
// with enough ground time at a maintenance base; pricing realizes the
// reset semantics on them.

namespace tailassign {

struct NetworkNode {
  enum class Kind { source, activity, sink };
  Kind kind = Kind::activity;
  int activity = -1;    // instance activity index, -1 for source/sink
  int segment = 1;      // 1-based segment between intermediate sinks
  Minutes sort_time = 0;
  Minutes fh_minutes = 0;  // consumption of the activity at this node
  int cycles = 0;
};

struct NetworkArc {
  int from = -1;
  int to = -1;
  double cost = 0.0;  // connection cost minus retention bonus
  Minutes ground_time = 0;
  bool maintenance_eligible = false;
  bool is_planned_lof = false;
};

struct PricingNetwork {
  const Instance* instance = nullptr;
  int tail = -1;
  std::vector<NetworkNode> nodes;  // topological: source first, sink last
  std::vector<NetworkArc> arcs;
  std::vector<std::vector<int>> outgoing;  // node -> arc ids
  std::vector<int> intermediate_sinks;     // node ids of pre-assigned activities
  int segment_count = 1;
  std::vector<std::string> notes;  // infeasibility diagnostics

  int source_node() const { return 0; }
  int sink_node() const { return static_cast<int>(nodes.size()) - 1; }
  std::size_t arc_count() const { return arcs.size(); }
};

// All feasible flight-to-flight connections of the instance: base match and
// MGT <= ground time <= MCT at the connection airport. The planned-LOF flag
// marks connections appearing consecutively in any tail's planned rotation.
inline std::vector<ConnectionArc> build_pre_connections(const Instance& inst) {
  std::set<std::pair<int, int>> planned;
  for (const auto& [tail_id, plan] : inst.lof_plan) {
    for (std::size_t k = 0; k + 1 < plan.size(); ++k) {
      int u = inst.activity_index(plan[k]);
      int v = inst.activity_index(plan[k + 1]);
      if (u >= 0 && v >= 0) planned.emplace(u, v);
    }
  }

  std::vector<ConnectionArc> arcs;
  const int n = static_cast<int>(inst.activities.size());
  for (int u = 0; u < n; ++u) {
    const Activity& a = inst.activities[u];
    if (!a.is_flight()) continue;
    const AirportInfo* ap = inst.airport(a.arrival_base);
    if (!ap) continue;
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const Activity& b = inst.activities[v];
      if (!b.is_flight()) continue;
      if (b.departure_base != a.arrival_base) continue;
      Minutes ground = b.departure_time - a.arrival_time;
      if (ground < ap->mgt || ground > ap->mct) continue;
      ConnectionArc arc;
      arc.from_activity = u;
      arc.to_activity = v;
      arc.ground_time = ground;
      arc.is_planned_lof = planned.count({u, v}) > 0;
      arc.maintenance_eligible = ap->is_maintenance_base && ground >= ap->required_maintenance_time;
      arcs.push_back(arc);
    }
  }
  return arcs;
}

namespace detail {

// Segment of an activity relative to the tail's pre-assignments: the first
// pre-assignment the activity could still precede, or one past the last.
inline int activity_segment(const Instance& inst, const Activity& a,
                            const std::vector<PreAssignment>& pre) {
  for (int i = 0; i < static_cast<int>(pre.size()); ++i) {
    const AirportInfo* ap = inst.airport(pre[i].base);
    Minutes mgt = ap ? ap->mgt : 0;
    if (a.arrival_time + mgt <= pre[i].latest_start) return i + 1;
  }
  return static_cast<int>(pre.size()) + 1;
}

inline bool planned_pair(const Instance& inst, const Tail& tail, int u, int v) {
  auto it = inst.lof_plan.find(tail.id);
  if (it == inst.lof_plan.end()) return false;
  const auto& plan = it->second;
  for (std::size_t k = 0; k + 1 < plan.size(); ++k)
    if (inst.activity_index(plan[k]) == u && inst.activity_index(plan[k + 1]) == v) return true;
  return false;
}

}  // namespace detail

// Pricing network of one tail over the given connection arcs (either the
// full pre-connections or a propagated subset).
inline PricingNetwork build_pricing_network(const Instance& inst, const Tail& tail,
                                            const std::vector<ConnectionArc>& connection_arcs) {
  PricingNetwork net;
  net.instance = &inst;
  net.tail = inst.tail_index(tail.id);

  std::vector<PreAssignment> pre = tail.pre_assignments;
  std::sort(pre.begin(), pre.end(),
            [](const PreAssignment& a, const PreAssignment& b) {
              return a.earliest_start < b.earliest_start;
            });
  const int k_pre = static_cast<int>(pre.size());
  net.segment_count = k_pre + 1;

  // Node set: allowed flights plus this tail's own pre-assigned activities.
  struct Cand {
    int activity;
    int segment;
    Minutes sort_time;
    int pre_index;  // >= 0 for pre-assigned nodes
  };
  std::vector<Cand> cands;
  std::vector<int> pre_activity(k_pre, -1);
  for (int i = 0; i < k_pre; ++i) pre_activity[i] = inst.activity_index(pre[i].activity_id);

  for (int ai = 0; ai < static_cast<int>(inst.activities.size()); ++ai) {
    const Activity& a = inst.activities[ai];
    if (a.is_flight()) {
      if (a.restricted_tails.count(tail.id)) continue;
      cands.push_back({ai, detail::activity_segment(inst, a, pre), a.departure_time, -1});
    }
  }
  for (int i = 0; i < k_pre; ++i) {
    if (pre_activity[i] < 0) {
      net.notes.push_back("pre-assignment " + pre[i].activity_id + " unknown for tail " + tail.id);
      continue;
    }
    // Ordered by latest_start so every inbound arc points forward in time.
    cands.push_back({pre_activity[i], i + 1, pre[i].latest_start, i});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.sort_time != y.sort_time) return x.sort_time < y.sort_time;
    return x.activity < y.activity;
  });

  net.nodes.push_back({NetworkNode::Kind::source, -1, 1, std::numeric_limits<Minutes>::min(), 0, 0});
  std::vector<int> node_of_activity(inst.activities.size(), -1);
  std::vector<int> node_of_pre(k_pre, -1);
  for (const Cand& c : cands) {
    const Activity& a = inst.activities[c.activity];
    NetworkNode node;
    node.kind = NetworkNode::Kind::activity;
    node.activity = c.activity;
    node.segment = c.segment;
    node.sort_time = c.sort_time;
    node.fh_minutes = a.flying_minutes();
    node.cycles = a.cycles;
    node_of_activity[c.activity] = static_cast<int>(net.nodes.size());
    if (c.pre_index >= 0) node_of_pre[c.pre_index] = static_cast<int>(net.nodes.size());
    net.nodes.push_back(node);
  }
  net.nodes.push_back({NetworkNode::Kind::sink, -1, net.segment_count,
                       std::numeric_limits<Minutes>::max(), 0, 0});
  for (int i = 0; i < k_pre; ++i)
    if (node_of_pre[i] >= 0) net.intermediate_sinks.push_back(node_of_pre[i]);

  const int sink = net.sink_node();
  net.outgoing.assign(net.nodes.size(), {});
  const CostParams& cp = inst.cost_params;

  auto add_arc = [&](int from, int to, double cost, Minutes ground, bool eligible, bool lof) {
    NetworkArc arc{from, to, cost, ground, eligible, lof};
    net.outgoing[from].push_back(static_cast<int>(net.arcs.size()));
    net.arcs.push_back(arc);
  };
  auto connection_cost_of = [&](int u, int v) {
    bool lof = detail::planned_pair(inst, tail, u, v);
    return std::pair<double, bool>(cp.connection_cost - (lof ? cp.lof_bonus : 0.0), lof);
  };

  // Flight-to-flight arcs: both endpoints present and in the same segment.
  for (const ConnectionArc& ca : connection_arcs) {
    int nu = node_of_activity[ca.from_activity];
    int nv = node_of_activity[ca.to_activity];
    if (nu < 0 || nv < 0) continue;
    if (net.nodes[nu].segment != net.nodes[nv].segment) continue;
    auto [cost, lof] = connection_cost_of(ca.from_activity, ca.to_activity);
    add_arc(nu, nv, cost, ca.ground_time, ca.maintenance_eligible, lof);
  }

  // Source arcs reach first-segment activities departing from the carry-in
  // base once the tail is ready.
  for (const Cand& c : cands) {
    int node = node_of_activity[c.activity];
    if (node < 0) continue;
    const Activity& a = inst.activities[c.activity];
    if (c.pre_index >= 0) {
      if (c.pre_index == 0 && pre[0].base == tail.carry_in_base &&
          tail.carry_in_ready_time <= pre[0].latest_start)
        add_arc(net.source_node(), node, 0.0, 0, false, false);
    } else if (c.segment == 1 && a.departure_base == tail.carry_in_base &&
               a.departure_time >= tail.carry_in_ready_time) {
      add_arc(net.source_node(), node, 0.0, 0, false, false);
    }
  }

  // Arcs around pre-assigned nodes. Inbound admits any start inside the
  // window; outbound leaves from the latest finish so every admissible
  // start stays feasible.
  for (int i = 0; i < k_pre; ++i) {
    int pnode = node_of_pre[i];
    if (pnode < 0) continue;
    const PreAssignment& p = pre[i];
    const AirportInfo* ap = inst.airport(p.base);
    if (!ap) continue;
    const int pact = pre_activity[i];

    for (const Cand& c : cands) {
      if (c.pre_index >= 0) continue;
      int fnode = node_of_activity[c.activity];
      if (fnode < 0) continue;
      const Activity& f = inst.activities[c.activity];

      // flight -> pre-assignment
      if (c.segment == i + 1 && f.arrival_base == p.base &&
          f.arrival_time + ap->mgt <= p.latest_start) {
        Minutes start = detail::preassignment_start(p, f.arrival_time + ap->mgt);
        Minutes gap = start - f.arrival_time;
        auto [cost, lof] = connection_cost_of(c.activity, pact);
        add_arc(fnode, pnode, cost, gap,
                ap->is_maintenance_base && gap >= ap->required_maintenance_time, lof);
      }
      // pre-assignment -> flight
      if (c.segment == i + 2 && f.departure_base == p.base &&
          f.departure_time >= p.latest_finish() + ap->mgt) {
        Minutes ground = f.departure_time - p.latest_finish();
        auto [cost, lof] = connection_cost_of(pact, c.activity);
        add_arc(pnode, fnode, cost, ground,
                ap->is_maintenance_base && ground >= ap->required_maintenance_time, lof);
      }
    }

    // pre-assignment -> next pre-assignment (empty segment between them)
    if (i + 1 < k_pre && node_of_pre[i + 1] >= 0) {
      const PreAssignment& q = pre[i + 1];
      if (q.base == p.base && p.latest_finish() + ap->mgt <= q.latest_start) {
        Minutes release = p.latest_finish();
        Minutes start = detail::preassignment_start(q, release + ap->mgt);
        auto [cost, lof] = connection_cost_of(pact, pre_activity[i + 1]);
        add_arc(pnode, node_of_pre[i + 1], cost, start - release,
                ap->is_maintenance_base && start - release >= ap->required_maintenance_time, lof);
      }
    }

    // last pre-assignment -> sink
    if (i == k_pre - 1 && (!tail.overnight_base || *tail.overnight_base == p.base))
      add_arc(pnode, sink, 0.0, 0, false, false);
  }

  // Sink arcs from last-segment flights, honoring the overnight base.
  for (const Cand& c : cands) {
    if (c.pre_index >= 0) continue;
    int node = node_of_activity[c.activity];
    if (node < 0 || c.segment != net.segment_count) continue;
    const Activity& a = inst.activities[c.activity];
    if (tail.overnight_base && a.arrival_base != *tail.overnight_base) continue;
    add_arc(node, sink, 0.0, 0, false, false);
  }

  // The do-nothing route: only when no pre-assignment forces the tail out.
  if (k_pre == 0 && (!tail.overnight_base || *tail.overnight_base == tail.carry_in_base))
    add_arc(net.source_node(), sink, 0.0, 0, false, false);

  // Diagnostics for pre-assignments that cannot be connected.
  for (int i = 0; i < k_pre; ++i) {
    int pnode = node_of_pre[i];
    if (pnode < 0) continue;
    bool has_in = false, has_out = false;
    for (const auto& arc : net.arcs) {
      if (arc.to == pnode) has_in = true;
      if (arc.from == pnode) has_out = true;
    }
    if (!has_in)
      net.notes.push_back("pre-assignment " + pre[i].activity_id +
                          " has no feasible inbound connection for tail " + tail.id);
    if (!has_out)
      net.notes.push_back("pre-assignment " + pre[i].activity_id +
                          " has no feasible outbound connection for tail " + tail.id);
  }

  return net;
}

// Drops every node without a source->node or node->sink path and renumbers
// the remainder. Solution-set preserving: no feasible route uses a dropped
// node.
inline PricingNetwork reachability_prune(const PricingNetwork& net) {
  const int n = static_cast<int>(net.nodes.size());
  std::vector<char> fwd(n, 0), bwd(n, 0);

  // Forward sweep from the source; nodes are topologically ordered.
  fwd[net.source_node()] = 1;
  for (int u = 0; u < n; ++u) {
    if (!fwd[u]) continue;
    for (int arc_id : net.outgoing[u]) fwd[net.arcs[arc_id].to] = 1;
  }
  // Backward sweep to the sink.
  bwd[net.sink_node()] = 1;
  for (int u = n - 1; u >= 0; --u) {
    for (int arc_id : net.outgoing[u])
      if (bwd[net.arcs[arc_id].to]) bwd[u] = 1;
  }

  std::vector<int> remap(n, -1);
  PricingNetwork out;
  out.instance = net.instance;
  out.tail = net.tail;
  out.segment_count = net.segment_count;
  out.notes = net.notes;
  for (int u = 0; u < n; ++u) {
    bool keep = (fwd[u] && bwd[u]) || u == net.source_node() || u == net.sink_node();
    if (!keep) continue;
    remap[u] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(net.nodes[u]);
  }
  out.outgoing.assign(out.nodes.size(), {});
  for (const auto& arc : net.arcs) {
    // An arc survives iff both endpoints lie on some source->sink path.
    if (!(fwd[arc.from] && bwd[arc.from] && fwd[arc.to] && bwd[arc.to])) continue;
    NetworkArc copy = arc;
    copy.from = remap[arc.from];
    copy.to = remap[arc.to];
    out.outgoing[copy.from].push_back(static_cast<int>(out.arcs.size()));
    out.arcs.push_back(copy);
  }
  for (int s : net.intermediate_sinks)
    if (remap[s] >= 0 && fwd[s] && bwd[s]) out.intermediate_sinks.push_back(remap[s]);
  if (static_cast<int>(out.intermediate_sinks.size()) != net.segment_count - 1 &&
      !net.intermediate_sinks.empty())
    out.notes.push_back("pre-assignment chain unreachable; tail has no feasible route");
  return out;
}

}  // namespace tailassign
