#pragma once

#include <cstdint>

#include "warmflow/network.hpp"

namespace warmflow {

struct RandomNetworkSpec {
  NodeId min_nodes = 4;
  NodeId max_nodes = 12;
  FlowUnits max_capacity = 10;
  double min_density = 0.3;
  double max_density = 0.7;
};

// Node 0 is the source, node n-1 the sink. Every ordered pair of distinct
// nodes gets an arc with probability equal to a density drawn per network;
// capacities are uniform in 1..max_capacity. Same seed, same network.
Network random_network(const RandomNetworkSpec& spec, std::uint64_t seed);

}  // namespace warmflow
