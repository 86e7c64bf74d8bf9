#pragma once

#include "warmflow/flow.hpp"
#include "warmflow/network.hpp"

namespace warmflow {

struct OracleResult {
  FlowUnits value = 0;
  PseudoFlow flow;
  CutPartition cut;
};

// Edmonds-Karp: BFS augmenting paths, slots scanned in arc order.
OracleResult reference_maxflow(const Network& net);

inline constexpr NodeId kBruteForceMaxNodes = 20;

// Minimum over every partition with the source on one side and the sink on
// the other. Throws InputError above kBruteForceMaxNodes nodes.
FlowUnits brute_force_mincut(const Network& net);

}  // namespace warmflow
