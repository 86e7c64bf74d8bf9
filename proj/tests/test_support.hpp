#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "warmflow/flow.hpp"
#include "warmflow/network.hpp"
#include "warmflow/random_network.hpp"

namespace warmflow::testing {

// s=0, a=1, t=2: s->a 3, a->t 2.
inline Network net_a() {
  const std::vector<ArcSpec> arcs{{0, 1, 3}, {1, 2, 2}};
  return Network::build(3, arcs, 0, 2);
}

// Diamond. s=0, a=1, b=2, t=3: s->a 2, s->b 2, a->t 1, b->t 3, a->b 1.
inline Network net_b() {
  const std::vector<ArcSpec> arcs{
      {0, 1, 2}, {0, 2, 2}, {1, 3, 1}, {2, 3, 3}, {1, 2, 1}};
  return Network::build(4, arcs, 0, 3);
}

// Path. s=0, a=1, b=2, t=3: s->a 2, a->b 2, b->t 2.
inline Network net_c() {
  const std::vector<ArcSpec> arcs{{0, 1, 2}, {1, 2, 2}, {2, 3, 2}};
  return Network::build(4, arcs, 0, 3);
}

// s=0, a=1, t=2: s->a 2, a->t 2.
inline Network net_d() {
  const std::vector<ArcSpec> arcs{{0, 1, 2}, {1, 2, 2}};
  return Network::build(3, arcs, 0, 2);
}

// s=0, a=1, t=2: s->a 2, a->t 1.
inline Network net_f() {
  const std::vector<ArcSpec> arcs{{0, 1, 2}, {1, 2, 1}};
  return Network::build(3, arcs, 0, 2);
}

inline PseudoFlow flow_of(std::initializer_list<FlowUnits> values) {
  return PseudoFlow(std::vector<FlowUnits>(values));
}

inline std::vector<Side> sides(const Network& net,
                               std::initializer_list<NodeId> sink_side) {
  std::vector<Side> side(net.node_count(), Side::source_side);
  for (const NodeId u : sink_side) side[u] = Side::sink_side;
  return side;
}

// The acceptance workload family: 4..12 nodes, capacities 1..10,
// density 0.3..0.7.
inline Network small_random(std::uint64_t seed) {
  return random_network(RandomNetworkSpec{}, seed);
}

// Any pseudo-flow: each arc gets a value uniform in [0, c].
inline PseudoFlow random_pseudoflow(const Network& net, std::uint64_t seed) {
  std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + 1;
  PseudoFlow f = PseudoFlow::zero(net);
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    f[a] = static_cast<FlowUnits>(
        x % static_cast<std::uint64_t>(net.arc(a).capacity + 1));
  }
  return f;
}

}  // namespace warmflow::testing
