#include "warmflow/random_network.hpp"

#include <random>
#include <vector>

namespace warmflow {

Network random_network(const RandomNetworkSpec& spec, std::uint64_t seed) {
  if (spec.min_nodes < 2 || spec.max_nodes < spec.min_nodes ||
      spec.max_capacity < 1 || spec.min_density < 0.0 ||
      spec.max_density > 1.0 || spec.max_density < spec.min_density)
    throw InputError("bad random network spec");
  std::mt19937_64 rng(seed);
  const auto uniform01 = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const NodeId span = spec.max_nodes - spec.min_nodes + 1;
  const NodeId n = spec.min_nodes + static_cast<NodeId>(rng() % span);
  const double density =
      spec.min_density + (spec.max_density - spec.min_density) * uniform01();

  std::vector<ArcSpec> arcs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (uniform01() >= density) continue;
      const FlowUnits cap =
          1 + static_cast<FlowUnits>(rng() % static_cast<std::uint64_t>(
                                                 spec.max_capacity));
      arcs.push_back({u, v, cap});
    }
  }
  return Network::build(n, arcs, 0, n - 1);
}

}  // namespace warmflow
