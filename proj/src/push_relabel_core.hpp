#pragma once

#include <vector>

#include "warmflow/flow.hpp"
#include "warmflow/push_relabel.hpp"

namespace warmflow::detail {

// Mutable solver state over one immutable network: residual capacities per
// slot, signed node balances (inflow - outflow), heights and the current
// source/sink split. Each public phase is one of the loops the solvers are
// built from.
class PushRelabelCore {
 public:
  PushRelabelCore(const Network& net, const PseudoFlow& f,
                  const EngineOptions& options, SolverStats& stats);

  // Sink side = residual reachability of the sink, BFS distances there,
  // n elsewhere. Returns false (state untouched) if the source reaches the
  // sink.
  bool define_heights();
  // Explicit split: source side at n, sink side at 0.
  void set_cut_heights(const std::vector<Side>& side);
  // Arbitrary heights; every node is treated as one side (vanilla runs).
  void set_heights(const std::vector<Height>& heights);

  // Main loop of the gap algorithm: discharge sink-side excess, highest
  // label first, expelling nodes above the first empty height.
  void discharge_sink_side();
  // Recompute sink-side heights by BFS; unreached nodes leave the sink side.
  void global_relabel_sink_side();
  // Same BFS without touching the counters: moves every sink-side node that
  // cannot reach the sink to the source side.
  void tighten_sink_side();
  // Push source-side excess back to the source.
  void return_source_side_excess();
  // Plain highest-label push-relabel over the whole network.
  void run_vanilla();
  void global_relabel_whole_graph();

  // Raise the capacity of arc a by delta and saturate the increase.
  void inject(ArcId a, FlowUnits delta);

  PseudoFlow flow() const;
  CutPartition cut() const;
  std::vector<Side> sides() const;
  const std::vector<Height>& heights() const { return height_; }
  bool on_sink_side(NodeId u) const { return sink_side_[u] != 0; }
  FlowUnits balance(NodeId u) const { return balance_[u]; }
  bool sink_side_monotone() const { return monotone_; }

  bool heights_valid() const;
  // Judged on residuals, so arcs raised by inject() count correctly.
  bool cut_saturated() const;

 private:
  enum class Scope { sink_side, source_side, whole };

  bool eligible(NodeId u) const;
  void enqueue(NodeId u);
  NodeId pop_highest();
  void clear_buckets();
  void rebuild_active();

  void layer_add(NodeId u);
  void layer_remove(NodeId u);
  void rebuild_layers();
  void expel(NodeId u);

  void push(NodeId u, SlotId e);
  void discharge(NodeId u);
  Height min_neighbor_height(NodeId u) const;
  void relabel_sink_side(NodeId u);
  void relabel_free(NodeId u);
  void maybe_global_relabel();
  void sink_side_bfs();
  void check_invariants() const;

  // BFS backwards from root over positive-residual slots, restricted to
  // nodes for which `allowed` holds. Distances are -1 where unreached.
  template <typename Allowed>
  std::vector<Height> residual_distances_to(NodeId root,
                                            Allowed allowed) const;

  const Network& net_;
  const EngineOptions& options_;
  SolverStats& stats_;
  NodeId n_;
  Scope scope_ = Scope::whole;
  std::int64_t period_;
  std::int64_t relabels_since_global_ = 0;

  std::vector<FlowUnits> residual_;
  std::vector<FlowUnits> balance_;
  std::vector<Height> height_;
  std::vector<std::uint8_t> sink_side_;
  std::vector<std::uint8_t> expelled_;
  std::vector<std::int32_t> current_;
  bool monotone_ = true;

  // FIFO buckets of active nodes per height.
  std::vector<NodeId> bucket_head_;
  std::vector<NodeId> bucket_tail_;
  std::vector<NodeId> next_active_;
  std::vector<std::uint8_t> queued_;
  Height max_active_ = -1;

  // Sink-side nodes per height, for gap detection.
  std::vector<NodeId> layer_head_;
  std::vector<std::int32_t> layer_count_;
  std::vector<NodeId> layer_next_;
  std::vector<NodeId> layer_prev_;
  Height max_sink_height_ = 0;
};

}  // namespace warmflow::detail
