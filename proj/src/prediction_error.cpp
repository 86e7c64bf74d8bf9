#include "warmflow/prediction_error.hpp"

#include <numeric>
#include <random>

#include "warmflow/push_relabel.hpp"

namespace warmflow {

PredictionErrorReport prediction_error(const Network& net,
                                       const PseudoFlow& prediction) {
  const FlowAccounting acc = flow_accounting(net, prediction);
  std::vector<NodeId> all(net.node_count());
  std::iota(all.begin(), all.end(), 0);
  const ResidualSubgraph sub = induced_residual_subgraph(net, prediction, all);
  const Network residual =
      Network::build(net.node_count(), sub.arcs, net.source(), net.sink());
  const BoundedResult b =
      bounded_maxflow_doubling(residual, 1, {SolveMode::cut_only, {}});

  PredictionErrorReport r;
  r.sigma = b.cut.capacity;
  r.imbalance = acc.imbalance();
  r.eta = std::max(r.sigma, r.imbalance);
  return r;
}

PredictionErrorReport prediction_error(const Network& net,
                                       const PseudoFlow& prediction,
                                       const PseudoFlow& reference) {
  PredictionErrorReport r = prediction_error(net, prediction);
  r.l1_to_reference = l1_distance(prediction, reference);
  return r;
}

FlowUnits l1_distance(const PseudoFlow& f, const PseudoFlow& g) {
  if (f.size() != g.size())
    throw InputError("flows belong to networks of different sizes");
  FlowUnits total = 0;
  for (ArcId a = 0; a < f.size(); ++a)
    total += f[a] > g[a] ? f[a] - g[a] : g[a] - f[a];
  return total;
}

PseudoFlow perturb_flow(const Network& net, const PseudoFlow& flow, int k,
                        std::uint64_t seed) {
  check_capacities(net, flow);
  std::vector<ArcId> editable;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    if (arc.capacity > 0 && !net.inert(arc.tail) && !net.inert(arc.head))
      editable.push_back(a);
  }
  PseudoFlow out = flow;
  if (editable.empty()) return out;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    const ArcId a = editable[rng() % editable.size()];
    const FlowUnits cap = net.arc(a).capacity;
    bool down = out[a] == cap;
    if (out[a] > 0 && out[a] < cap) down = (rng() & 1u) != 0;
    out[a] += down ? -1 : 1;
  }
  return out;
}

std::string error_csv_header() { return "sigma,imbalance,eta,l1"; }

std::string to_csv_row(const PredictionErrorReport& r) {
  std::string row = std::to_string(r.sigma) + ',' +
                    std::to_string(r.imbalance) + ',' + std::to_string(r.eta) +
                    ',';
  if (r.l1_to_reference) row += std::to_string(*r.l1_to_reference);
  return row;
}

}  // namespace warmflow
