#include <gtest/gtest.h>

#include <vector>

#include "test_support.hpp"
#include "warmflow/oracle.hpp"
#include "warmflow/prediction_error.hpp"

namespace warmflow {
namespace {

using testing::flow_of;
using testing::net_a;
using testing::net_c;

TEST(PredictionError, ExactFlowHasNoError) {
  const PredictionErrorReport r = prediction_error(net_a(), flow_of({2, 2}));
  EXPECT_EQ(r.sigma, 0);
  EXPECT_EQ(r.imbalance, 0);
  EXPECT_EQ(r.eta, 0);
}

TEST(PredictionError, ZeroFlowOnNetA) {
  const PredictionErrorReport r = prediction_error(net_a(), flow_of({0, 0}));
  EXPECT_EQ(r.sigma, 2);
  EXPECT_EQ(r.imbalance, 0);
  EXPECT_EQ(r.eta, 2);
  EXPECT_FALSE(r.l1_to_reference.has_value());
}

TEST(PredictionError, PseudoflowOnNetC) {
  const PredictionErrorReport r = prediction_error(net_c(), flow_of({2, 0, 2}));
  EXPECT_EQ(r.sigma, 0);
  EXPECT_EQ(r.imbalance, 4);
  EXPECT_EQ(r.eta, 4);
}

TEST(PredictionError, EtaCanExceedL1) {
  // The same NET-C prediction is 2 away from the max-flow in l1 but has
  // eta 4: one missing unit on an internal arc leaves both an excess and a
  // deficit.
  const Network net = net_c();
  const PredictionErrorReport r =
      prediction_error(net, flow_of({2, 0, 2}), flow_of({2, 2, 2}));
  ASSERT_TRUE(r.l1_to_reference.has_value());
  EXPECT_EQ(*r.l1_to_reference, 2);
  EXPECT_EQ(r.eta, 4);
  EXPECT_LE(r.eta, 2 * *r.l1_to_reference);
}

TEST(PredictionError, SigmaIsResidualMaxFlow) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = testing::small_random(seed);
    const PseudoFlow f = cap_prediction(
        net, testing::random_pseudoflow(net, seed).values());
    std::vector<ArcSpec> residual;
    for (SlotId e = 0; e < net.slot_count(); ++e) {
      const FlowUnits r = residual_capacity(net, f, e);
      if (r > 0) residual.push_back({net.slot_tail(e), net.slot_head(e), r});
    }
    const Network g =
        Network::build(net.node_count(), residual, net.source(), net.sink());
    const PredictionErrorReport rep = prediction_error(net, f);
    EXPECT_EQ(rep.sigma, reference_maxflow(g).value) << "seed " << seed;
    EXPECT_EQ(rep.imbalance, flow_accounting(net, f).imbalance());
    EXPECT_EQ(rep.eta, std::max(rep.sigma, rep.imbalance));
  }
}

TEST(L1Distance, Basics) {
  EXPECT_EQ(l1_distance(flow_of({1, 2}), flow_of({1, 2})), 0);
  EXPECT_EQ(l1_distance(flow_of({0, 0}), flow_of({2, 2})), 4);
  EXPECT_EQ(l1_distance(flow_of({2, 0, 2}), flow_of({2, 2, 2})), 2);
  EXPECT_THROW(l1_distance(flow_of({1}), flow_of({1, 2})), InputError);
}

TEST(Perturb, ZeroEditsIsIdentity) {
  const Network net = net_a();
  EXPECT_EQ(perturb_flow(net, flow_of({2, 2}), 0, 9), flow_of({2, 2}));
  EXPECT_EQ(prediction_error(net, perturb_flow(net, flow_of({2, 2}), 0, 9)).eta, 0);
}

TEST(Perturb, SinkArcDecrementOnNetA) {
  // Removing a unit from a->t leaves one unit of excess at a. The sink is a
  // terminal, so it carries no deficit.
  const PredictionErrorReport r = prediction_error(net_a(), flow_of({2, 1}));
  EXPECT_EQ(r.imbalance, 1);
  EXPECT_EQ(r.eta, 1);
}

TEST(Perturb, StaysWithinCapacities) {
  const Network net = net_a();
  const PseudoFlow f = perturb_flow(net, flow_of({2, 2}), 1000, 3);
  EXPECT_NO_THROW(check_capacities(net, f));
}

TEST(Perturb, DeterministicUnderSeed) {
  const Network net = testing::small_random(42);
  const PseudoFlow exact = reference_maxflow(net).flow;
  EXPECT_EQ(perturb_flow(net, exact, 5, 77), perturb_flow(net, exact, 5, 77));
  EXPECT_NE(perturb_flow(net, exact, 5, 77), exact);
}

TEST(Perturb, EtaAtMostTwiceEdits) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Network net = testing::small_random(seed);
    const PseudoFlow exact = reference_maxflow(net).flow;
    for (const int k : {1, 2, 4, 8}) {
      const PseudoFlow p = perturb_flow(net, exact, k, seed);
      EXPECT_LE(l1_distance(p, exact), k);
      EXPECT_LE(prediction_error(net, p).eta, 2 * k) << "seed " << seed;
    }
  }
}

TEST(PredictionError, CsvRow) {
  EXPECT_EQ(error_csv_header(), "sigma,imbalance,eta,l1");
  PredictionErrorReport r;
  r.sigma = 1;
  r.imbalance = 4;
  r.eta = 4;
  EXPECT_EQ(to_csv_row(r), "1,4,4,");
  r.l1_to_reference = 2;
  EXPECT_EQ(to_csv_row(r), "1,4,4,2");
}

}  // namespace
}  // namespace warmflow
