#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "warmflow/flow.hpp"

namespace warmflow {

struct PredictionErrorReport {
  FlowUnits sigma = 0;      // max-flow value of the residual network
  FlowUnits imbalance = 0;  // total excess + total deficit
  FlowUnits eta = 0;        // max(sigma, imbalance)
  std::optional<FlowUnits> l1_to_reference;
};

PredictionErrorReport prediction_error(const Network& net,
                                       const PseudoFlow& prediction);

// Same, with the l1 distance to a reference max-flow filled in.
PredictionErrorReport prediction_error(const Network& net,
                                       const PseudoFlow& prediction,
                                       const PseudoFlow& reference);

// Sum of |f_a - g_a|. Throws InputError on a size mismatch.
FlowUnits l1_distance(const PseudoFlow& f, const PseudoFlow& g);

// k unit edits on random arcs: a full arc loses a unit, an empty one gains
// one, anything in between flips a coin. Arcs of zero capacity or touching
// inert nodes are never picked. Deterministic for a given seed.
PseudoFlow perturb_flow(const Network& net, const PseudoFlow& flow, int k,
                        std::uint64_t seed);

// "sigma,imbalance,eta,l1"; l1 is empty when unknown.
std::string error_csv_header();
std::string to_csv_row(const PredictionErrorReport& r);

}  // namespace warmflow
