#include "warmflow/flow.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

namespace warmflow {

const char* to_string(FlowClass c) {
  switch (c) {
    case FlowClass::feasible:
      return "feasible";
    case FlowClass::preflow:
      return "pre-flow";
    case FlowClass::pseudoflow:
      return "pseudo-flow";
  }
  return "?";
}

FlowUnits FlowAccounting::total_excess() const {
  return std::accumulate(excess.begin(), excess.end(), FlowUnits{0});
}

FlowUnits FlowAccounting::total_deficit() const {
  return std::accumulate(deficit.begin(), deficit.end(), FlowUnits{0});
}

void check_capacities(const Network& net, const PseudoFlow& f) {
  if (f.size() != net.arc_count())
    throw InputError("flow has " + std::to_string(f.size()) +
                     " entries, network has " +
                     std::to_string(net.arc_count()) + " arcs");
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    if (f[a] < 0 || f[a] > net.arc(a).capacity)
      throw InputError("flow on arc " + std::to_string(a) +
                       " violates its capacity");
  }
}

FlowAccounting flow_accounting(const Network& net, const PseudoFlow& f) {
  check_capacities(net, f);
  std::vector<FlowUnits> balance(net.node_count(), 0);
  FlowAccounting acc;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    balance[arc.head] += f[a];
    balance[arc.tail] -= f[a];
    if (arc.tail == net.source()) acc.value += f[a];
    if (arc.head == net.source()) acc.value -= f[a];
  }
  acc.excess.assign(net.node_count(), 0);
  acc.deficit.assign(net.node_count(), 0);
  bool any_excess = false;
  bool any_deficit = false;
  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (net.is_terminal(u)) continue;
    if (balance[u] > 0) {
      acc.excess[u] = balance[u];
      any_excess = true;
    } else if (balance[u] < 0) {
      acc.deficit[u] = -balance[u];
      any_deficit = true;
    }
  }
  if (any_deficit)
    acc.classification = FlowClass::pseudoflow;
  else if (any_excess)
    acc.classification = FlowClass::preflow;
  else
    acc.classification = FlowClass::feasible;
  return acc;
}

PseudoFlow cap_prediction(const Network& net, std::span<const FlowUnits> raw) {
  if (raw.size() > static_cast<std::size_t>(net.arc_count()))
    throw InputError("prediction has more entries than the network has arcs");
  PseudoFlow f = PseudoFlow::zero(net);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 0)
      throw InputError("negative predicted flow on arc " + std::to_string(i));
    const ArcId a = static_cast<ArcId>(i);
    const ArcSpec& arc = net.arc(a);
    if (net.inert(arc.tail) || net.inert(arc.head)) continue;
    f[a] = std::min(raw[i], arc.capacity);
  }
  return f;
}

FlowUnits sink_inflow(const Network& net, const PseudoFlow& f) {
  FlowUnits in = 0;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    if (net.arc(a).head == net.sink()) in += f[a];
    if (net.arc(a).tail == net.sink()) in -= f[a];
  }
  return in;
}

std::vector<NodeId> CutPartition::sink_side_nodes() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < static_cast<NodeId>(side.size()); ++u)
    if (side[u] == Side::sink_side) out.push_back(u);
  return out;
}

std::vector<NodeId> CutPartition::source_side_nodes() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < static_cast<NodeId>(side.size()); ++u)
    if (side[u] == Side::source_side) out.push_back(u);
  return out;
}

CutPartition make_cut(const Network& net, std::vector<Side> side) {
  if (side.size() != static_cast<std::size_t>(net.node_count()))
    throw InputError("cut side map has the wrong size");
  if (side[net.source()] != Side::source_side ||
      side[net.sink()] != Side::sink_side)
    throw InputError("cut must separate source from sink");
  CutPartition cut;
  cut.side = std::move(side);
  for (const ArcSpec& a : net.arcs()) {
    if (cut.side[a.tail] == Side::source_side &&
        cut.side[a.head] == Side::sink_side)
      cut.capacity += a.capacity;
  }
  return cut;
}

bool is_saturated_cut(const Network& net, const PseudoFlow& f,
                      const std::vector<Side>& side) {
  if (side[net.source()] != Side::source_side ||
      side[net.sink()] != Side::sink_side)
    return false;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    const Side from = side[arc.tail];
    const Side to = side[arc.head];
    if (from == Side::source_side && to == Side::sink_side &&
        f[a] != arc.capacity)
      return false;
    if (from == Side::sink_side && to == Side::source_side && f[a] != 0)
      return false;
  }
  return true;
}

std::optional<CutPartition> residual_reachability_cut(const Network& net,
                                                      const PseudoFlow& f) {
  check_capacities(net, f);
  std::vector<Side> side(net.node_count(), Side::source_side);
  std::deque<NodeId> queue{net.sink()};
  side[net.sink()] = Side::sink_side;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const SlotId e : net.out_slots(v)) {
      // Twin of e runs head(e) -> v.
      const SlotId back = Network::twin(e);
      if (residual_capacity(net, f, back) <= 0) continue;
      const NodeId u = net.slot_head(e);
      if (side[u] == Side::source_side) {
        side[u] = Side::sink_side;
        queue.push_back(u);
      }
    }
  }
  if (side[net.source()] == Side::sink_side) return std::nullopt;
  CutPartition cut = make_cut(net, std::move(side));
  cut.saturated = true;
  return cut;
}

PseudoFlow remove_flow_cycles(const Network& net, PseudoFlow f) {
  check_capacities(net, f);
  enum : std::uint8_t { unseen, open, closed };
  const NodeId n = net.node_count();
  std::vector<std::uint8_t> state(n, unseen);
  std::vector<std::int32_t> cursor(n, 0);
  std::vector<ArcId> via(n, -1);
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (state[root] != unseen) continue;
    stack.assign(1, root);
    state[root] = open;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      const auto out = net.out_slots(u);
      ArcId next = -1;
      for (auto& i = cursor[u]; i < static_cast<std::int32_t>(out.size()); ++i) {
        const SlotId e = out[i];
        if (!Network::is_forward(e) || f[Network::arc_of(e)] == 0) continue;
        if (state[net.slot_head(e)] == closed) continue;
        next = Network::arc_of(e);
        break;
      }
      if (next < 0) {
        state[u] = closed;
        stack.pop_back();
        continue;
      }
      const NodeId v = net.arc(next).head;
      if (state[v] == unseen) {
        via[v] = next;
        state[v] = open;
        stack.push_back(v);
        continue;
      }
      // v is on the stack: the arcs via[] from v up to u plus `next` close a
      // cycle.
      FlowUnits delta = f[next];
      for (NodeId w = u; w != v; w = net.arc(via[w]).tail)
        delta = std::min(delta, f[via[w]]);
      f[next] -= delta;
      for (NodeId w = u; w != v; w = net.arc(via[w]).tail) f[via[w]] -= delta;
      // Unwind to the deepest node whose path from v is still intact.
      std::size_t keep = stack.size();
      for (std::size_t k = stack.size(); k-- > 0 && stack[k] != v;)
        if (f[via[stack[k]]] == 0) keep = k;
      while (stack.size() > keep) {
        state[stack.back()] = unseen;
        stack.pop_back();
      }
    }
  }
  return f;
}

ReversedNetwork reverse_network(const Network& net, const PseudoFlow& f) {
  std::vector<ArcSpec> arcs(net.arcs().begin(), net.arcs().end());
  for (ArcSpec& a : arcs) std::swap(a.tail, a.head);
  return {Network::build(net.node_count(), arcs, net.sink(), net.source()), f};
}

ResidualSubgraph induced_residual_subgraph(const Network& net,
                                           const PseudoFlow& f,
                                           std::span<const NodeId> nodes) {
  if (nodes.empty()) throw InputError("induced subgraph needs a node");
  check_capacities(net, f);
  ResidualSubgraph sub;
  sub.to_local.assign(net.node_count(), kNoNode);
  for (const NodeId u : nodes) {
    if (u < 0 || u >= net.node_count())
      throw InputError("node id out of range in induced subgraph");
    if (sub.to_local[u] != kNoNode) continue;
    sub.to_local[u] = sub.node_count();
    sub.to_parent.push_back(u);
  }
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    const NodeId lt = sub.to_local[arc.tail];
    const NodeId lh = sub.to_local[arc.head];
    if (lt == kNoNode || lh == kNoNode) continue;
    if (const FlowUnits fwd = arc.capacity - f[a]; fwd > 0) {
      sub.arcs.push_back({lt, lh, fwd});
      sub.origin.push_back({a, true});
    }
    if (const FlowUnits bwd = f[a]; bwd > 0) {
      sub.arcs.push_back({lh, lt, bwd});
      sub.origin.push_back({a, false});
    }
  }
  return sub;
}

void add_subgraph_flow(const Network& parent, const ResidualSubgraph& sub,
                       std::span<const FlowUnits> local_arc_flow,
                       PseudoFlow& f) {
  for (std::size_t i = 0; i < sub.arcs.size(); ++i) {
    const FlowUnits x = local_arc_flow[i];
    if (x == 0) continue;
    const ArcOrigin& o = sub.origin[i];
    f[o.parent_arc] += o.forward ? x : -x;
  }
  for (std::size_t i = 0; i < sub.arcs.size(); ++i) {
    const ArcId a = sub.origin[i].parent_arc;
    if (f[a] < 0 || f[a] > parent.arc(a).capacity)
      throw InvariantViolation("auxiliary flow pushed arc " +
                               std::to_string(a) + " out of bounds");
  }
}

}  // namespace warmflow
