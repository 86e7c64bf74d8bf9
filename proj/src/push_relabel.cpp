#include "warmflow/push_relabel.hpp"

#include <chrono>
#include <deque>
#include <set>
#include <string>

#include "push_relabel_core.hpp"

namespace warmflow {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t nanos_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() -
                                                              start)
      .count();
}

void require_inert_clear(const Network& net, const PseudoFlow& f) {
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    if (f[a] != 0 && (net.inert(arc.tail) || net.inert(arc.head)))
      throw InputError("flow on arc " + std::to_string(a) +
                       " touches a node with no source-sink path");
  }
}

FlowAccounting require_preflow(const Network& net, const PseudoFlow& f) {
  FlowAccounting acc = flow_accounting(net, f);
  if (acc.classification == FlowClass::pseudoflow)
    throw InputError("input flow has deficits; a pre-flow is required");
  require_inert_clear(net, f);
  return acc;
}

// BFS backwards from root over positive-residual slots within `allowed`.
template <typename Allowed>
std::vector<Height> distances_to(const Network& net, const PseudoFlow& f,
                                 NodeId root, Allowed allowed) {
  std::vector<Height> dist(net.node_count(), -1);
  std::deque<NodeId> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const SlotId e : net.out_slots(v)) {
      if (residual_capacity(net, f, Network::twin(e)) <= 0) continue;
      const NodeId w = net.slot_head(e);
      if (dist[w] >= 0 || !allowed(w)) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

void finish_checks(const Network& net, const GapResult& r, SolveMode mode) {
  if (!r.cut.saturated)
    throw InvariantViolation("solver returned an unsaturated cut");
  const FlowAccounting acc = flow_accounting(net, r.flow);
  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (r.cut.on_sink_side(u) && acc.excess[u] > 0)
      throw InvariantViolation("excess left on the sink side");
  }
  if (mode == SolveMode::full_flow &&
      acc.classification != FlowClass::feasible)
    throw InvariantViolation("full-flow solve left excess behind");
}

}  // namespace

SolverStats& SolverStats::operator+=(const SolverStats& other) {
  pushes_saturating += other.pushes_saturating;
  pushes_nonsaturating += other.pushes_nonsaturating;
  relabels += other.relabels;
  gap_events += other.gap_events;
  gap_removals += other.gap_removals;
  global_relabels += other.global_relabels;
  elapsed_ns += other.elapsed_ns;
  return *this;
}

std::string stats_csv_header() {
  return "pushes_sat,pushes_unsat,relabels,gap_events,global_relabels,phase,"
         "elapsed_ns";
}

std::string to_csv_row(const SolverStats& s) {
  return std::to_string(s.pushes_saturating) + ',' +
         std::to_string(s.pushes_nonsaturating) + ',' +
         std::to_string(s.relabels) + ',' + std::to_string(s.gap_events) +
         ',' + std::to_string(s.global_relabels) + ',' + s.phase + ',' +
         std::to_string(s.elapsed_ns);
}

bool heights_valid(const Network& net, const PseudoFlow& f,
                   const HeightLabels& h) {
  if (h.n() != net.node_count()) return false;
  for (SlotId e = 0; e < net.slot_count(); ++e) {
    if (residual_capacity(net, f, e) <= 0) continue;
    const NodeId u = net.slot_tail(e);
    const NodeId v = net.slot_head(e);
    if (net.inert(u) || net.inert(v)) continue;
    if (h[u] > h[v] + 1) return false;
  }
  return true;
}

PseudoFlow init_cold_preflow(const Network& net) {
  PseudoFlow f = PseudoFlow::zero(net);
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    if (arc.tail == net.source() && !net.inert(arc.head)) f[a] = arc.capacity;
  }
  return f;
}

VanillaResult vanilla_push_relabel(const Network& net, const PseudoFlow& preflow,
                                   const HeightLabels& heights,
                                   const EngineOptions& options) {
  require_preflow(net, preflow);
  const NodeId n = net.node_count();
  if (heights.n() != n || heights[net.source()] != n ||
      heights[net.sink()] != 0)
    throw InputError("heights must have h(source) = n and h(sink) = 0");
  if (!heights_valid(net, preflow, heights))
    throw InputError("heights are not valid for the input pre-flow");

  VanillaResult r;
  r.stats.phase = "vanilla";
  const auto start = Clock::now();
  detail::PushRelabelCore core(net, preflow, options, r.stats);
  core.set_heights(heights.height);
  core.run_vanilla();
  r.stats.elapsed_ns = nanos_since(start);
  r.flow = core.flow();
  r.heights.height = core.heights();
  if (flow_accounting(net, r.flow).classification != FlowClass::feasible)
    throw InvariantViolation("vanilla push-relabel left excess behind");
  return r;
}

std::pair<HeightLabels, CutPartition> define_heights(const Network& net,
                                                     const PseudoFlow& f) {
  check_capacities(net, f);
  require_inert_clear(net, f);
  SolverStats scratch;
  const EngineOptions options;
  detail::PushRelabelCore core(net, f, options, scratch);
  if (!core.define_heights())
    throw InputError("flow does not saturate any cut");
  return {HeightLabels{core.heights()}, core.cut()};
}

CutPartition induced_cut_from_heights(const Network& net,
                                      const HeightLabels& h) {
  const NodeId n = net.node_count();
  if (h.n() != n) throw InputError("height vector has the wrong size");
  const std::set<Height> used(h.height.begin(), h.height.end());
  Height theta = 1;
  while (used.contains(theta)) ++theta;
  if (theta > n) throw InputError("no missing height in 1..n");
  std::vector<Side> side(n);
  for (NodeId u = 0; u < n; ++u)
    side[u] = h[u] > theta ? Side::source_side : Side::sink_side;
  return make_cut(net, std::move(side));
}

GapResult gap_warm_push_relabel(const Network& net, const PseudoFlow& preflow,
                                const GapOptions& options) {
  require_preflow(net, preflow);
  GapResult r;
  r.stats.phase = "gap";
  const auto start = Clock::now();
  detail::PushRelabelCore core(net, preflow, options.engine, r.stats);
  if (!core.define_heights())
    throw InputError("input pre-flow does not saturate any cut");
  core.discharge_sink_side();
  core.tighten_sink_side();
  if (options.mode == SolveMode::full_flow) core.return_source_side_excess();
  r.stats.elapsed_ns = nanos_since(start);
  r.flow = core.flow();
  r.cut = core.cut();
  r.sink_side_monotone = core.sink_side_monotone();
  finish_checks(net, r, options.mode);
  return r;
}

GapResult solve_cold(const Network& net, const GapOptions& options) {
  return gap_warm_push_relabel(net, init_cold_preflow(net), options);
}

GapResult return_source_side_excess(const Network& net, const PseudoFlow& f,
                                    const CutPartition& cut,
                                    const EngineOptions& options) {
  const FlowAccounting acc = flow_accounting(net, f);
  require_inert_clear(net, f);
  if (!is_saturated_cut(net, f, cut.side))
    throw InputError("flow does not saturate the given cut");
  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (cut.on_sink_side(u) && acc.excess[u] > 0)
      throw InputError("excess on the sink side of the cut");
    if (!cut.on_sink_side(u) && acc.deficit[u] > 0)
      throw InputError("deficit on the source side of the cut");
  }
  GapResult r;
  r.stats.phase = "return";
  const auto start = Clock::now();
  detail::PushRelabelCore core(net, f, options, r.stats);
  core.set_cut_heights(cut.side);
  core.return_source_side_excess();
  r.stats.elapsed_ns = nanos_since(start);
  r.flow = core.flow();
  r.cut = core.cut();
  if (!r.cut.saturated)
    throw InvariantViolation("returning excess broke the cut");
  const FlowAccounting after = flow_accounting(net, r.flow);
  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (!cut.on_sink_side(u) && after.excess[u] > 0)
      throw InvariantViolation("source-side excess could not be returned");
  }
  return r;
}

namespace {

BoundedResult run_bounded(const Network& net, FlowUnits bound, bool doubling,
                          const GapOptions& options) {
  if (bound < 0) throw InputError("flow bound must be nonnegative");
  const NodeId n = net.node_count();
  const ArcId m = net.arc_count();
  const NodeId super = n;
  // Arcs back into the source are useless for an s-t flow and, with the
  // source demoted to an ordinary node, would let flow circulate through it.
  std::vector<ArcSpec> arcs(net.arcs().begin(), net.arcs().end());
  for (ArcSpec& a : arcs)
    if (a.head == net.source()) a.capacity = 0;
  arcs.push_back({super, net.source(), bound});
  const Network lifted = Network::build(n + 1, arcs, super, net.sink());

  BoundedResult r;
  r.stats.phase = "bounded";
  const auto start = Clock::now();
  PseudoFlow f = PseudoFlow::zero(lifted);
  f[m] = bound;
  detail::PushRelabelCore core(lifted, f, options.engine, r.stats);
  if (!core.define_heights())
    throw InvariantViolation("super-source arc does not isolate the source");
  FlowUnits step = bound;
  r.final_bound = bound;
  while (true) {
    core.discharge_sink_side();
    core.tighten_sink_side();
    if (!core.on_sink_side(net.source())) break;
    if (!doubling) {
      r.outcome = BoundOutcome::bound_exhausted;
      r.stats.elapsed_ns = nanos_since(start);
      r.sink_side_monotone = core.sink_side_monotone();
      return r;
    }
    core.inject(m, step);
    r.final_bound += step;
    step = r.final_bound;
    ++r.doublings;
  }
  if (options.mode == SolveMode::full_flow) core.return_source_side_excess();
  r.stats.elapsed_ns = nanos_since(start);
  r.sink_side_monotone = core.sink_side_monotone();

  const PseudoFlow lifted_flow = core.flow();
  r.flow = PseudoFlow(m);
  for (ArcId a = 0; a < m; ++a) r.flow[a] = lifted_flow[a];
  std::vector<Side> side(n);
  for (NodeId u = 0; u < n; ++u)
    side[u] = core.on_sink_side(u) ? Side::sink_side : Side::source_side;
  r.cut = make_cut(net, std::move(side));
  r.cut.saturated = is_saturated_cut(net, r.flow, r.cut.side);
  if (!r.cut.saturated)
    throw InvariantViolation("bounded solve returned an unsaturated cut");
  if (options.mode == SolveMode::full_flow &&
      flow_accounting(net, r.flow).classification != FlowClass::feasible)
    throw InvariantViolation("bounded solve left excess behind");
  return r;
}

}  // namespace

BoundedResult bounded_maxflow(const Network& net, FlowUnits bound,
                              const GapOptions& options) {
  return run_bounded(net, bound, false, options);
}

BoundedResult bounded_maxflow_doubling(const Network& net,
                                       FlowUnits initial_bound,
                                       const GapOptions& options) {
  return run_bounded(net, std::max<FlowUnits>(initial_bound, 1), true,
                     options);
}

HeightLabels global_relabel(const Network& net, const PseudoFlow& f,
                            const HeightLabels& heights, RelabelScope scope,
                            const CutPartition* cut) {
  check_capacities(net, f);
  const NodeId n = net.node_count();
  if (heights.n() != n) throw InputError("height vector has the wrong size");
  const NodeId s = net.source();
  const NodeId t = net.sink();
  HeightLabels out = heights;
  if (scope == RelabelScope::sink_side) {
    if (cut == nullptr) throw InputError("sink-side relabel needs a cut");
    const auto dist = distances_to(
        net, f, t, [cut](NodeId w) { return cut->on_sink_side(w); });
    for (NodeId u = 0; u < n; ++u) {
      if (net.is_terminal(u)) continue;
      const Height h = dist[u] >= 0 ? dist[u] : n;
      out.height[u] = std::max(out.height[u], h);
    }
    return out;
  }
  const auto to_sink = distances_to(net, f, t, [s](NodeId w) { return w != s; });
  const auto to_source =
      distances_to(net, f, s, [t](NodeId w) { return w != t; });
  for (NodeId u = 0; u < n; ++u) {
    if (net.is_terminal(u)) continue;
    Height h = n;
    if (to_sink[u] >= 0)
      h = to_sink[u];
    else if (to_source[u] >= 0)
      h = n + to_source[u];
    out.height[u] = std::max(out.height[u], h);
  }
  return out;
}

}  // namespace warmflow
