#pragma once

#include <optional>
#include <span>
#include <vector>

#include "warmflow/network.hpp"

namespace warmflow {

// Per-arc flow obeying capacity constraints only. Indexed by ArcId; twin
// slots never carry flow of their own.
class PseudoFlow {
 public:
  PseudoFlow() = default;
  explicit PseudoFlow(ArcId arc_count) : flow_(arc_count, 0) {}
  explicit PseudoFlow(std::vector<FlowUnits> values)
      : flow_(std::move(values)) {}

  static PseudoFlow zero(const Network& net) {
    return PseudoFlow(net.arc_count());
  }

  ArcId size() const { return static_cast<ArcId>(flow_.size()); }
  FlowUnits operator[](ArcId a) const { return flow_[a]; }
  FlowUnits& operator[](ArcId a) { return flow_[a]; }
  std::span<const FlowUnits> values() const { return flow_; }

  friend bool operator==(const PseudoFlow&, const PseudoFlow&) = default;

 private:
  std::vector<FlowUnits> flow_;
};

// Residual capacity of a slot under f: c - f on the arc, f on its twin.
inline FlowUnits residual_capacity(const Network& net, const PseudoFlow& f,
                                   SlotId e) {
  const ArcId a = Network::arc_of(e);
  return Network::is_forward(e) ? net.arc(a).capacity - f[a] : f[a];
}

enum class FlowClass { feasible, preflow, pseudoflow };

const char* to_string(FlowClass c);

struct FlowAccounting {
  // Terminals never carry excess or deficit.
  std::vector<FlowUnits> excess;
  std::vector<FlowUnits> deficit;
  FlowUnits value = 0;  // flow leaving the source minus flow entering it
  FlowClass classification = FlowClass::feasible;

  FlowUnits total_excess() const;
  FlowUnits total_deficit() const;
  FlowUnits imbalance() const { return total_excess() + total_deficit(); }
};

// Throws InputError when f has the wrong size, a negative value, or exceeds
// a capacity.
FlowAccounting flow_accounting(const Network& net, const PseudoFlow& f);

// Validates size and capacity bounds; throws InputError on violation.
void check_capacities(const Network& net, const PseudoFlow& f);

// f_a = min(raw_a, c_a); arcs past the end of raw are zero, as are arcs
// touching inert nodes. Negative raw values throw InputError.
PseudoFlow cap_prediction(const Network& net, std::span<const FlowUnits> raw);

// Net flow entering the sink.
FlowUnits sink_inflow(const Network& net, const PseudoFlow& f);

enum class Side : std::uint8_t { source_side = 0, sink_side = 1 };

struct CutPartition {
  std::vector<Side> side;
  FlowUnits capacity = 0;  // sum of capacities of source-side -> sink-side arcs
  bool saturated = false;

  bool on_sink_side(NodeId u) const { return side[u] == Side::sink_side; }
  std::vector<NodeId> sink_side_nodes() const;
  std::vector<NodeId> source_side_nodes() const;
};

// Builds a cut from a side map and computes its capacity. Throws InputError
// if the source is not on the source side or the sink not on the sink side.
CutPartition make_cut(const Network& net, std::vector<Side> side);

// Every source-side -> sink-side arc saturated and every sink-side ->
// source-side arc empty.
bool is_saturated_cut(const Network& net, const PseudoFlow& f,
                      const std::vector<Side>& side);

// Backward BFS from the sink over positive-residual slots. Returns nullopt
// when the source reaches the sink (f is not cut-saturating).
std::optional<CutPartition> residual_reachability_cut(const Network& net,
                                                      const PseudoFlow& f);

// Cancels every directed cycle of positive flow. Node balances, and hence
// the flow value and classification, are unchanged.
PseudoFlow remove_flow_cycles(const Network& net, PseudoFlow f);

struct ReversedNetwork {
  Network network;
  PseudoFlow flow;
};

// Mirror: arc a = (u, v) becomes arc a = (v, u) with the same capacity and
// flow; source and sink swap roles. Node and arc ids are preserved, so the
// mirror of the mirror is the original.
ReversedNetwork reverse_network(const Network& net, const PseudoFlow& f);

struct ArcOrigin {
  ArcId parent_arc = -1;
  bool forward = true;

  bool synthetic() const { return parent_arc < 0; }
};

// Positive-residual slots of G_f with both endpoints in a node subset,
// renumbered locally. Terminal-free: callers attach their own terminals.
struct ResidualSubgraph {
  std::vector<NodeId> to_parent;  // local -> parent id
  std::vector<NodeId> to_local;   // parent -> local id or kNoNode
  std::vector<ArcSpec> arcs;      // local endpoints, residual capacities
  std::vector<ArcOrigin> origin;  // parallel to arcs

  NodeId node_count() const { return static_cast<NodeId>(to_parent.size()); }
};

// Throws InputError on an empty node set or an out-of-range id.
ResidualSubgraph induced_residual_subgraph(const Network& net,
                                           const PseudoFlow& f,
                                           std::span<const NodeId> nodes);

// Adds a flow computed on (a network whose first arcs are) the subgraph's
// arcs back onto the parent flow. Forward copies add, backward copies
// subtract. Throws InvariantViolation if a parent arc leaves [0, c].
void add_subgraph_flow(const Network& parent, const ResidualSubgraph& sub,
                       std::span<const FlowUnits> local_arc_flow,
                       PseudoFlow& f);

}  // namespace warmflow
