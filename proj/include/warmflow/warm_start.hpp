#pragma once

#include <optional>
#include <string>
#include <vector>

#include "warmflow/flow.hpp"
#include "warmflow/push_relabel.hpp"

namespace warmflow {

enum class PipelinePhase { saturate, excess_t_side, deficit_s_side, restore };

const char* to_string(PipelinePhase p);

struct PipelinePhaseReport {
  PipelinePhase phase = PipelinePhase::saturate;
  SolverStats stats;
  FlowUnits total_excess = 0;
  FlowUnits total_deficit = 0;
  FlowUnits cut_capacity = 0;
  // Value of the auxiliary flow routed in this phase (saturate: the residual
  // max-flow added to the prediction).
  FlowUnits auxiliary_value = 0;

  FlowUnits imbalance() const { return total_excess + total_deficit; }
};

enum class SeedStrategy {
  // Max-flow on the prediction's residual network, through a bounded
  // super-source arc.
  saturate_residual,
  // Saturate every forward arc of a supplied cut and empty every backward
  // arc; the error moves into excess and deficit.
  saturate_predicted_cut,
};

struct WarmStartOptions {
  std::optional<FlowUnits> eta;  // nullopt: unknown, found by doubling
  SolveMode mode = SolveMode::full_flow;
  // Stop every auxiliary solve once its cut is known.
  bool early_termination = false;
  SeedStrategy strategy = SeedStrategy::saturate_residual;
  // Required by saturate_predicted_cut.
  std::optional<std::vector<Side>> predicted_cut;
  EngineOptions engine;
};

struct Solution {
  PseudoFlow flow;  // feasible in full_flow mode
  CutPartition cut;
  SolveMode mode = SolveMode::full_flow;
  std::vector<PipelinePhaseReport> phases;
  // Every gap push-relabel run inside the pipeline kept its sink side
  // shrinking.
  bool sink_side_monotone = true;
  // Nodes that left the sink side in the excess phase and were put back on
  // it by the deficit phase.
  std::vector<NodeId> regained_sink_side;

  FlowUnits value() const { return cut.capacity; }
  SolverStats total_stats() const;
};

struct PhaseResult {
  PseudoFlow flow;
  CutPartition cut;
  SolverStats stats;
  FlowUnits auxiliary_value = 0;
  bool sink_side_monotone = true;
};

// Adds a max-flow of the prediction's residual network to the prediction.
// The result saturates a cut. With early termination the auxiliary flow is
// only a pre-flow and may add up to eta units of excess.
PhaseResult saturate_cut(const Network& net, const PseudoFlow& prediction,
                         std::optional<FlowUnits> eta,
                         bool early_termination = false,
                         const EngineOptions& engine = {});

// Saturates the forward arcs of `side` and empties its backward arcs.
PhaseResult saturate_predicted_cut(const Network& net,
                                   const PseudoFlow& prediction,
                                   const std::vector<Side>& side);

// Routes sink-side excess to sink-side deficits and the sink inside the
// residual network; whatever cannot be routed ends on the source side of the
// returned cut. Throws InputError if f saturates no cut.
PhaseResult move_excess_to_s_side(const Network& net, const PseudoFlow& f,
                                  std::optional<FlowUnits> eta,
                                  bool early_termination = false,
                                  const EngineOptions& engine = {});

// Mirror image on the reversed network: source-side deficits are filled from
// source-side excess and the source; unfilled deficits end on the sink side.
// Throws InputError if `cut` is not saturated or has sink-side excess.
PhaseResult move_deficit_to_t_side(const Network& net, const PseudoFlow& f,
                                   const CutPartition& cut,
                                   std::optional<FlowUnits> eta,
                                   bool early_termination = false,
                                   const EngineOptions& engine = {});

// Returns source-side excess to the source and feeds sink-side deficits from
// the sink. Throws InputError unless f saturates `cut` with no sink-side
// excess and no source-side deficit.
PhaseResult restore_flow(const Network& net, const PseudoFlow& f,
                         const CutPartition& cut,
                         const EngineOptions& engine = {});

// cap_prediction, then the phases in order.
Solution warm_start_solve(const Network& net,
                          std::span<const FlowUnits> raw_prediction,
                          const WarmStartOptions& options = {});

// One row per phase: phase,total_excess,total_deficit,cut_capacity,
// auxiliary_value followed by the solver stats columns.
std::string phase_csv_header();
std::string to_csv_rows(const Solution& s);
std::string summary(const Solution& s);

}  // namespace warmflow
