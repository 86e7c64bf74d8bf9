#include "warmflow/warm_start.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

namespace warmflow {

namespace {

GapOptions aux_options(bool early_termination, const EngineOptions& engine) {
  return {early_termination ? SolveMode::cut_only : SolveMode::full_flow,
          engine};
}

std::vector<Side> swapped(const std::vector<Side>& side) {
  std::vector<Side> out(side.size());
  for (std::size_t i = 0; i < side.size(); ++i)
    out[i] = side[i] == Side::sink_side ? Side::source_side : Side::sink_side;
  return out;
}

CutPartition certified_cut(const Network& net, const PseudoFlow& f,
                           std::vector<Side> side) {
  CutPartition cut = make_cut(net, std::move(side));
  cut.saturated = is_saturated_cut(net, f, cut.side);
  if (!cut.saturated)
    throw InvariantViolation("phase output does not saturate its cut");
  return cut;
}

// Auxiliary max-flow inside the sink side of `cut`: a super-source feeds
// every sink-side excess, every sink-side deficit and the sink drain into a
// super-sink. Nodes cut off from the super-sink move to the source side.
PhaseResult route_within_sink_side(const Network& net, const PseudoFlow& f,
                                   const CutPartition& cut,
                                   std::optional<FlowUnits> eta,
                                   bool early_termination,
                                   const EngineOptions& engine) {
  const FlowAccounting acc = flow_accounting(net, f);
  const std::vector<NodeId> sink_side = cut.sink_side_nodes();
  FlowUnits excess = 0;
  for (const NodeId u : sink_side) excess += acc.excess[u];

  PhaseResult r;
  r.flow = f;
  r.cut = cut;
  if (excess == 0) return r;

  const ResidualSubgraph sub = induced_residual_subgraph(net, f, sink_side);
  const NodeId k = sub.node_count();
  const NodeId super_source = k;
  const NodeId super_sink = k + 1;
  const NodeId local_sink = sub.to_local[net.sink()];
  std::vector<ArcSpec> arcs = sub.arcs;
  FlowUnits into_sink = 0;
  for (const ArcSpec& a : sub.arcs)
    if (a.head == local_sink) into_sink += a.capacity;
  for (NodeId i = 0; i < k; ++i) {
    const NodeId u = sub.to_parent[i];
    if (acc.excess[u] > 0) arcs.push_back({super_source, i, acc.excess[u]});
  }
  for (NodeId i = 0; i < k; ++i) {
    const NodeId u = sub.to_parent[i];
    if (acc.deficit[u] > 0) arcs.push_back({i, super_sink, acc.deficit[u]});
  }
  // Larger than any cut the drain could belong to.
  const FlowUnits drain = eta ? std::max(*eta, excess) + 1
                              : std::min(excess, into_sink) + 1;
  arcs.push_back({local_sink, super_sink, drain});

  const Network aux = Network::build(k + 2, arcs, super_source, super_sink);
  const GapResult g = solve_cold(aux, aux_options(early_termination, engine));
  add_subgraph_flow(net, sub, g.flow.values(), r.flow);
  r.stats = g.stats;
  r.sink_side_monotone = g.sink_side_monotone;
  r.auxiliary_value = sink_inflow(aux, g.flow);

  std::vector<Side> side = cut.side;
  for (NodeId i = 0; i < k; ++i)
    if (!g.cut.on_sink_side(i)) side[sub.to_parent[i]] = Side::source_side;
  r.cut = certified_cut(net, r.flow, std::move(side));
  return r;
}

FlowUnits side_total(const std::vector<FlowUnits>& values,
                     const CutPartition& cut, Side which) {
  FlowUnits total = 0;
  for (std::size_t u = 0; u < values.size(); ++u)
    if (cut.side[u] == which) total += values[u];
  return total;
}

PipelinePhaseReport make_report(const Network& net, PipelinePhase phase,
                                const PhaseResult& r) {
  const FlowAccounting acc = flow_accounting(net, r.flow);
  PipelinePhaseReport rep;
  rep.phase = phase;
  rep.stats = r.stats;
  rep.stats.phase = to_string(phase);
  rep.total_excess = acc.total_excess();
  rep.total_deficit = acc.total_deficit();
  rep.cut_capacity = r.cut.capacity;
  rep.auxiliary_value = r.auxiliary_value;
  return rep;
}

}  // namespace

const char* to_string(PipelinePhase p) {
  switch (p) {
    case PipelinePhase::saturate:
      return "saturate";
    case PipelinePhase::excess_t_side:
      return "excess_t_side";
    case PipelinePhase::deficit_s_side:
      return "deficit_s_side";
    case PipelinePhase::restore:
      return "restore";
  }
  return "?";
}

SolverStats Solution::total_stats() const {
  SolverStats total;
  total.phase = "total";
  for (const auto& p : phases) total += p.stats;
  return total;
}

PhaseResult saturate_cut(const Network& net, const PseudoFlow& prediction,
                         std::optional<FlowUnits> eta, bool early_termination,
                         const EngineOptions& engine) {
  std::vector<NodeId> all(net.node_count());
  std::iota(all.begin(), all.end(), 0);
  const ResidualSubgraph sub = induced_residual_subgraph(net, prediction, all);
  const Network residual =
      Network::build(net.node_count(), sub.arcs, net.source(), net.sink());
  const BoundedResult b = bounded_maxflow_doubling(
      residual, eta.value_or(1), aux_options(early_termination, engine));

  PhaseResult r;
  r.flow = prediction;
  add_subgraph_flow(net, sub, b.flow.values(), r.flow);
  r.stats = b.stats;
  r.sink_side_monotone = b.sink_side_monotone;
  r.auxiliary_value = sink_inflow(residual, b.flow);
  r.cut = certified_cut(net, r.flow, b.cut.side);
  return r;
}

PhaseResult saturate_predicted_cut(const Network& net,
                                   const PseudoFlow& prediction,
                                   const std::vector<Side>& side) {
  check_capacities(net, prediction);
  if (side.size() != static_cast<std::size_t>(net.node_count()))
    throw InputError("predicted cut has the wrong node count");
  // Inert nodes carry no flow, so they go where no arc touching them crosses.
  std::vector<Side> placed = side;
  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (net.inert(u))
      placed[u] = net.reaches_sink(u) ? Side::sink_side : Side::source_side;
  }
  placed[net.source()] = Side::source_side;
  placed[net.sink()] = Side::sink_side;
  PhaseResult r;
  r.flow = prediction;
  CutPartition cut = make_cut(net, placed);
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    if (net.inert(arc.tail) || net.inert(arc.head)) continue;
    const Side from = placed[arc.tail];
    const Side to = placed[arc.head];
    if (from == Side::source_side && to == Side::sink_side)
      r.flow[a] = arc.capacity;
    else if (from == Side::sink_side && to == Side::source_side)
      r.flow[a] = 0;
  }
  r.cut = certified_cut(net, r.flow, std::move(cut.side));
  return r;
}

PhaseResult move_excess_to_s_side(const Network& net, const PseudoFlow& f,
                                  std::optional<FlowUnits> eta,
                                  bool early_termination,
                                  const EngineOptions& engine) {
  const auto cut = residual_reachability_cut(net, f);
  if (!cut) throw InputError("flow does not saturate any cut");
  return route_within_sink_side(net, f, *cut, eta, early_termination, engine);
}

PhaseResult move_deficit_to_t_side(const Network& net, const PseudoFlow& f,
                                   const CutPartition& cut,
                                   std::optional<FlowUnits> eta,
                                   bool early_termination,
                                   const EngineOptions& engine) {
  const FlowAccounting acc = flow_accounting(net, f);
  if (!is_saturated_cut(net, f, cut.side))
    throw InputError("flow does not saturate the given cut");
  if (side_total(acc.excess, cut, Side::sink_side) > 0)
    throw InputError("excess on the sink side; move it first");

  const ReversedNetwork rev = reverse_network(net, f);
  const CutPartition mirrored = make_cut(rev.network, swapped(cut.side));
  PhaseResult r = route_within_sink_side(rev.network, rev.flow, mirrored, eta,
                                         early_termination, engine);
  r.cut = certified_cut(net, r.flow, swapped(r.cut.side));
  return r;
}

PhaseResult restore_flow(const Network& net, const PseudoFlow& f,
                         const CutPartition& cut,
                         const EngineOptions& engine) {
  const FlowAccounting acc = flow_accounting(net, f);
  if (!is_saturated_cut(net, f, cut.side))
    throw InputError("flow does not saturate the given cut");
  PhaseResult r;
  r.flow = f;
  r.stats.phase = "restore";
  if (side_total(acc.excess, cut, Side::source_side) > 0) {
    const GapResult back = return_source_side_excess(net, r.flow, cut, engine);
    r.flow = back.flow;
    r.stats += back.stats;
  } else if (side_total(acc.excess, cut, Side::sink_side) > 0 ||
             side_total(acc.deficit, cut, Side::source_side) > 0) {
    throw InputError("cut has sink-side excess or source-side deficit");
  }
  if (side_total(acc.deficit, cut, Side::sink_side) > 0) {
    const ReversedNetwork rev = reverse_network(net, r.flow);
    const CutPartition mirrored = make_cut(rev.network, swapped(cut.side));
    const GapResult fed =
        return_source_side_excess(rev.network, rev.flow, mirrored, engine);
    r.flow = fed.flow;
    r.stats += fed.stats;
  }
  r.cut = certified_cut(net, r.flow, cut.side);
  if (flow_accounting(net, r.flow).classification != FlowClass::feasible)
    throw InvariantViolation("restore left excess or deficit behind");
  return r;
}

Solution warm_start_solve(const Network& net,
                          std::span<const FlowUnits> raw_prediction,
                          const WarmStartOptions& options) {
  const PseudoFlow prediction = cap_prediction(net, raw_prediction);
  const bool early = options.early_termination;
  Solution sol;
  sol.mode = options.mode;

  PhaseResult seeded;
  if (options.strategy == SeedStrategy::saturate_predicted_cut) {
    if (!options.predicted_cut)
      throw InputError("predicted-cut seeding needs a cut");
    seeded = saturate_predicted_cut(net, prediction, *options.predicted_cut);
  } else {
    seeded = saturate_cut(net, prediction, options.eta, early, options.engine);
  }
  sol.phases.push_back(make_report(net, PipelinePhase::saturate, seeded));

  const auto start_cut = residual_reachability_cut(net, seeded.flow);
  if (!start_cut)
    throw InvariantViolation("seeded flow does not saturate a cut");
  const PhaseResult excess_moved = move_excess_to_s_side(
      net, seeded.flow, options.eta, early, options.engine);
  sol.phases.push_back(
      make_report(net, PipelinePhase::excess_t_side, excess_moved));

  const PhaseResult deficit_moved =
      move_deficit_to_t_side(net, excess_moved.flow, excess_moved.cut,
                             options.eta, early, options.engine);
  sol.phases.push_back(
      make_report(net, PipelinePhase::deficit_s_side, deficit_moved));

  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (start_cut->on_sink_side(u) && !excess_moved.cut.on_sink_side(u) &&
        deficit_moved.cut.on_sink_side(u))
      sol.regained_sink_side.push_back(u);
  }
  sol.sink_side_monotone = seeded.sink_side_monotone &&
                           excess_moved.sink_side_monotone &&
                           deficit_moved.sink_side_monotone;

  if (options.mode == SolveMode::full_flow) {
    const PhaseResult restored = restore_flow(
        net, deficit_moved.flow, deficit_moved.cut, options.engine);
    sol.phases.push_back(make_report(net, PipelinePhase::restore, restored));
    sol.flow = restored.flow;
    sol.cut = restored.cut;
  } else {
    sol.flow = deficit_moved.flow;
    sol.cut = deficit_moved.cut;
  }

  const FlowAccounting acc = flow_accounting(net, sol.flow);
  if (side_total(acc.excess, sol.cut, Side::sink_side) > 0 ||
      side_total(acc.deficit, sol.cut, Side::source_side) > 0)
    throw InvariantViolation("final cut is not certified minimum");
  if (options.mode == SolveMode::full_flow &&
      (acc.classification != FlowClass::feasible ||
       acc.value != sol.cut.capacity))
    throw InvariantViolation("final flow does not match its cut");
  return sol;
}

std::string phase_csv_header() {
  return "phase,total_excess,total_deficit,cut_capacity,auxiliary_value,"
         "pushes_sat,pushes_unsat,relabels,gap_events,global_relabels,"
         "elapsed_ns";
}

std::string to_csv_rows(const Solution& s) {
  std::ostringstream out;
  for (const auto& p : s.phases) {
    out << to_string(p.phase) << ',' << p.total_excess << ','
        << p.total_deficit << ',' << p.cut_capacity << ','
        << p.auxiliary_value << ',' << p.stats.pushes_saturating << ','
        << p.stats.pushes_nonsaturating << ',' << p.stats.relabels << ','
        << p.stats.gap_events << ',' << p.stats.global_relabels << ','
        << p.stats.elapsed_ns << '\n';
  }
  return out.str();
}

std::string summary(const Solution& s) {
  std::ostringstream out;
  out << (s.mode == SolveMode::full_flow ? "max-flow " : "min-cut ")
      << s.value() << '\n';
  for (const auto& p : s.phases) {
    out << "  " << to_string(p.phase) << ": excess " << p.total_excess
        << " deficit " << p.total_deficit << " cut " << p.cut_capacity
        << " ops " << p.stats.operations() << '\n';
  }
  return out.str();
}

}  // namespace warmflow
