#include "warmflow/network.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace warmflow {

namespace {

std::vector<std::uint8_t> reach(const Network& net, NodeId start,
                                bool forward) {
  std::vector<std::uint8_t> seen(net.node_count(), 0);
  std::deque<NodeId> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (const SlotId e : net.out_slots(u)) {
      // Forward search follows real arcs out of u; backward search follows
      // real arcs into u, which appear at u as twin slots.
      if (Network::is_forward(e) != forward) continue;
      if (net.arc(Network::arc_of(e)).capacity <= 0) continue;
      const NodeId v = net.slot_head(e);
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

Network Network::build(NodeId node_count, std::span<const ArcSpec> arcs,
                       NodeId source, NodeId sink) {
  if (node_count < 2) throw InputError("network needs at least two nodes");
  auto in_range = [&](NodeId u) { return u >= 0 && u < node_count; };
  if (!in_range(source) || !in_range(sink))
    throw InputError("terminal id out of range");
  if (source == sink) throw InputError("source and sink must differ");
  if (arcs.size() > static_cast<std::size_t>(INT32_MAX / 2))
    throw InputError("too many arcs");

  Network net;
  net.node_count_ = node_count;
  net.source_ = source;
  net.sink_ = sink;
  net.arcs_.assign(arcs.begin(), arcs.end());

  FlowUnits total = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const ArcSpec& a = arcs[i];
    const std::string where = "arc " + std::to_string(i);
    if (!in_range(a.tail) || !in_range(a.head))
      throw InputError(where + ": node id out of range");
    if (a.tail == a.head) throw InputError(where + ": self-loop");
    if (a.capacity < 0) throw InputError(where + ": negative capacity");
    if (a.capacity > kMaxTotalCapacity - total)
      throw InputError(where + ": capacity total overflows");
    total += a.capacity;
  }
  net.total_capacity_ = total;

  // CSR adjacency over slots, stable in arc order.
  net.first_slot_.assign(node_count + 1, 0);
  const SlotId slots = net.slot_count();
  for (SlotId e = 0; e < slots; ++e) ++net.first_slot_[net.slot_tail(e) + 1];
  for (NodeId u = 0; u < node_count; ++u)
    net.first_slot_[u + 1] += net.first_slot_[u];
  net.slots_.resize(slots);
  std::vector<std::int32_t> fill(net.first_slot_.begin(),
                                 net.first_slot_.end() - 1);
  for (SlotId e = 0; e < slots; ++e) net.slots_[fill[net.slot_tail(e)]++] = e;

  const auto from_source = reach(net, source, true);
  const auto to_sink = reach(net, sink, false);
  net.to_sink_.assign(to_sink.begin(), to_sink.end());
  net.inert_.assign(node_count, 0);
  for (NodeId u = 0; u < node_count; ++u) {
    if (net.is_terminal(u)) continue;
    net.inert_[u] = (from_source[u] && to_sink[u]) ? 0 : 1;
  }
  return net;
}

NodeId Network::inert_count() const {
  return static_cast<NodeId>(std::count(inert_.begin(), inert_.end(), 1));
}

}  // namespace warmflow
