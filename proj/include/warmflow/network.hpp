#pragma once

#include <span>
#include <vector>

#include "warmflow/types.hpp"

namespace warmflow {

struct ArcSpec {
  NodeId tail = 0;
  NodeId head = 0;
  FlowUnits capacity = 0;

  friend bool operator==(const ArcSpec&, const ArcSpec&) = default;
};

// Immutable directed network with integer capacities and paired residual
// slots. Every arc a owns two slots: 2a (tail -> head, capacity c_a) and
// 2a+1 (head -> tail, capacity 0). Parallel and anti-parallel arcs are kept
// distinct; each has its own twin.
//
// Nodes that are not both reachable from the source and able to reach the
// sink over positive-capacity arcs are marked inert. Solvers never route
// flow through them.
class Network {
 public:
  // Throws InputError on source == sink, ids out of range, negative
  // capacities, self-loops, or a capacity total above kMaxTotalCapacity.
  static Network build(NodeId node_count, std::span<const ArcSpec> arcs,
                       NodeId source, NodeId sink);

  Network() = default;

  NodeId node_count() const { return node_count_; }
  ArcId arc_count() const { return static_cast<ArcId>(arcs_.size()); }
  SlotId slot_count() const { return 2 * arc_count(); }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  bool is_terminal(NodeId u) const { return u == source_ || u == sink_; }

  const ArcSpec& arc(ArcId a) const { return arcs_[a]; }
  std::span<const ArcSpec> arcs() const { return arcs_; }

  static constexpr SlotId forward_slot(ArcId a) { return 2 * a; }
  static constexpr SlotId twin(SlotId e) { return e ^ 1; }
  static constexpr ArcId arc_of(SlotId e) { return e >> 1; }
  static constexpr bool is_forward(SlotId e) { return (e & 1) == 0; }

  NodeId slot_tail(SlotId e) const {
    const ArcSpec& a = arcs_[arc_of(e)];
    return is_forward(e) ? a.tail : a.head;
  }
  NodeId slot_head(SlotId e) const {
    const ArcSpec& a = arcs_[arc_of(e)];
    return is_forward(e) ? a.head : a.tail;
  }
  FlowUnits slot_capacity(SlotId e) const {
    return is_forward(e) ? arcs_[arc_of(e)].capacity : 0;
  }

  // Slots whose tail is u, in arc order.
  std::span<const SlotId> out_slots(NodeId u) const {
    return {slots_.data() + first_slot_[u],
            slots_.data() + first_slot_[u + 1]};
  }

  bool inert(NodeId u) const { return inert_[u] != 0; }
  NodeId inert_count() const;
  // Over positive-capacity arcs.
  bool reaches_sink(NodeId u) const { return to_sink_[u] != 0; }

  FlowUnits total_capacity() const { return total_capacity_; }

 private:
  NodeId node_count_ = 0;
  NodeId source_ = kNoNode;
  NodeId sink_ = kNoNode;
  FlowUnits total_capacity_ = 0;
  std::vector<ArcSpec> arcs_;
  std::vector<std::int32_t> first_slot_;
  std::vector<SlotId> slots_;
  std::vector<std::uint8_t> inert_;
  std::vector<std::uint8_t> to_sink_;
};

}  // namespace warmflow
