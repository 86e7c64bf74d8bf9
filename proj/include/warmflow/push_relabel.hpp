#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "warmflow/flow.hpp"
#include "warmflow/network.hpp"

namespace warmflow {

using Height = std::int32_t;

// Per-node heights. Valid for a flow f when h(u) <= h(v) + 1 over every
// positive-residual slot (u, v) between non-inert nodes, h(source) = n and
// h(sink) = 0.
struct HeightLabels {
  std::vector<Height> height;

  NodeId n() const { return static_cast<NodeId>(height.size()); }
  Height operator[](NodeId u) const { return height[u]; }
};

bool heights_valid(const Network& net, const PseudoFlow& f,
                   const HeightLabels& h);

struct SolverStats {
  std::string phase;
  std::int64_t pushes_saturating = 0;
  std::int64_t pushes_nonsaturating = 0;
  std::int64_t relabels = 0;
  std::int64_t gap_events = 0;    // relabels that expelled sink-side nodes
  std::int64_t gap_removals = 0;  // nodes expelled by those events
  std::int64_t global_relabels = 0;
  std::int64_t elapsed_ns = 0;

  std::int64_t pushes() const {
    return pushes_saturating + pushes_nonsaturating;
  }
  // Pushes plus relabels: the work measure used by benchmarks.
  std::int64_t operations() const { return pushes() + relabels; }

  SolverStats& operator+=(const SolverStats& other);
};

// "pushes_sat,pushes_unsat,relabels,gap_events,global_relabels,phase,elapsed_ns"
std::string stats_csv_header();
std::string to_csv_row(const SolverStats& s);

enum class SolveMode { full_flow, cut_only };

struct EngineOptions {
  bool global_relabel = true;
  // Relabels between global relabels; 0 means the network's arc count.
  std::int64_t global_relabel_period = 0;
  // Re-verify height validity and cut saturation after every discharge.
  // Quadratic; meant for tests on small networks.
  bool check_invariants = false;
};

// Source arcs saturated (those into inert nodes excepted), everything else 0.
PseudoFlow init_cold_preflow(const Network& net);

struct VanillaResult {
  PseudoFlow flow;
  HeightLabels heights;
  SolverStats stats;
};

// Highest-label push-relabel from a pre-flow and valid heights. Throws
// InputError if f is not a pre-flow or the heights are invalid.
VanillaResult vanilla_push_relabel(const Network& net, const PseudoFlow& preflow,
                                   const HeightLabels& heights,
                                   const EngineOptions& options = {});

// Sink side = nodes reaching the sink in G_f, at their residual distance;
// every other node at height n. Throws InputError if f saturates no cut.
std::pair<HeightLabels, CutPartition> define_heights(const Network& net,
                                                     const PseudoFlow& f);

// Splits at the smallest positive height theta not in use: source side above,
// sink side below. Throws InputError if no such theta <= n exists.
CutPartition induced_cut_from_heights(const Network& net,
                                      const HeightLabels& h);

struct GapOptions {
  SolveMode mode = SolveMode::full_flow;
  EngineOptions engine;
};

struct GapResult {
  PseudoFlow flow;
  CutPartition cut;
  SolverStats stats;
  // False if any node expelled from the sink side was seen there again.
  bool sink_side_monotone = true;
};

// Gap-relabeling push-relabel seeded with a cut-saturating pre-flow. The
// sink side only shrinks; once it holds no excess its cut is minimum. In
// full_flow mode the remaining source-side excess is then returned to the
// source. Throws InputError if f is not a cut-saturating pre-flow.
GapResult gap_warm_push_relabel(const Network& net, const PseudoFlow& preflow,
                                const GapOptions& options = {});

// Cold start: gap_warm_push_relabel from init_cold_preflow.
GapResult solve_cold(const Network& net, const GapOptions& options = {});

// Given a cut saturated by f with no excess on its sink side, pushes all
// source-side excess back to the source without touching the cut.
GapResult return_source_side_excess(const Network& net, const PseudoFlow& f,
                                    const CutPartition& cut,
                                    const EngineOptions& options = {});

enum class BoundOutcome { solved, bound_exhausted };

struct BoundedResult {
  BoundOutcome outcome = BoundOutcome::solved;
  PseudoFlow flow;  // on the input network
  CutPartition cut;
  SolverStats stats;
  FlowUnits final_bound = 0;  // capacity of the super-source arc at exit
  int doublings = 0;
  bool sink_side_monotone = true;
};

// Max-flow through a super-source arc of capacity `bound` into the source.
// If the bound is too small to expose a cut of the input network the
// outcome is bound_exhausted and flow/cut are left empty.
BoundedResult bounded_maxflow(const Network& net, FlowUnits bound,
                              const GapOptions& options = {});

// Same, doubling the super-source arc while it is the only cut, reusing the
// flow and heights between rounds. Always solves.
BoundedResult bounded_maxflow_doubling(const Network& net,
                                       FlowUnits initial_bound = 1,
                                       const GapOptions& options = {});

enum class RelabelScope { whole_graph, sink_side };

// Exact BFS heights. whole_graph: residual distance to the sink, else
// n + distance to the source, else n. sink_side: distance to the sink inside
// the cut's sink side, n for everything else. Heights never decrease.
HeightLabels global_relabel(const Network& net, const PseudoFlow& f,
                            const HeightLabels& heights, RelabelScope scope,
                            const CutPartition* cut = nullptr);

}  // namespace warmflow
