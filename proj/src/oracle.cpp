#include "warmflow/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace warmflow {

OracleResult reference_maxflow(const Network& net) {
  const NodeId n = net.node_count();
  const NodeId s = net.source();
  const NodeId t = net.sink();
  std::vector<FlowUnits> residual(net.slot_count());
  for (SlotId e = 0; e < net.slot_count(); ++e)
    residual[e] = net.slot_capacity(e);

  OracleResult r;
  std::vector<SlotId> via(n);
  while (true) {
    std::fill(via.begin(), via.end(), -1);
    std::vector<char> seen(n, 0);
    seen[s] = 1;
    std::deque<NodeId> queue{s};
    while (!queue.empty() && !seen[t]) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (const SlotId e : net.out_slots(u)) {
        const NodeId v = net.slot_head(e);
        if (seen[v] || residual[e] <= 0) continue;
        seen[v] = 1;
        via[v] = e;
        queue.push_back(v);
      }
    }
    if (!seen[t]) break;
    FlowUnits delta = std::numeric_limits<FlowUnits>::max();
    for (NodeId v = t; v != s; v = net.slot_tail(via[v]))
      delta = std::min(delta, residual[via[v]]);
    for (NodeId v = t; v != s; v = net.slot_tail(via[v])) {
      residual[via[v]] -= delta;
      residual[Network::twin(via[v])] += delta;
    }
    r.value += delta;
  }

  r.flow = PseudoFlow(net.arc_count());
  for (ArcId a = 0; a < net.arc_count(); ++a)
    r.flow[a] = residual[Network::twin(Network::forward_slot(a))];

  // Source side: everything still reachable from s.
  std::vector<Side> side(n, Side::sink_side);
  side[s] = Side::source_side;
  std::deque<NodeId> queue{s};
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (const SlotId e : net.out_slots(u)) {
      const NodeId v = net.slot_head(e);
      if (side[v] == Side::source_side || residual[e] <= 0) continue;
      side[v] = Side::source_side;
      queue.push_back(v);
    }
  }
  r.cut = make_cut(net, std::move(side));
  r.cut.saturated = true;
  return r;
}

FlowUnits brute_force_mincut(const Network& net) {
  const NodeId n = net.node_count();
  if (n > kBruteForceMaxNodes)
    throw InputError("brute-force min cut limited to " +
                     std::to_string(kBruteForceMaxNodes) + " nodes");
  std::vector<NodeId> free_nodes;
  for (NodeId u = 0; u < n; ++u)
    if (!net.is_terminal(u)) free_nodes.push_back(u);

  FlowUnits best = std::numeric_limits<FlowUnits>::max();
  std::vector<char> in_source(n, 0);
  in_source[net.source()] = 1;
  const std::uint32_t masks = 1u << free_nodes.size();
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      in_source[free_nodes[i]] = (mask >> i) & 1u;
    FlowUnits cap = 0;
    for (const ArcSpec& a : net.arcs())
      if (in_source[a.tail] && !in_source[a.head]) cap += a.capacity;
    best = std::min(best, cap);
  }
  return best;
}

}  // namespace warmflow
