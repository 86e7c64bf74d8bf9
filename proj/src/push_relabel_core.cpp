#include "push_relabel_core.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace warmflow::detail {

namespace {
constexpr Height kNoHeight = std::numeric_limits<Height>::max();
}

PushRelabelCore::PushRelabelCore(const Network& net, const PseudoFlow& f,
                                 const EngineOptions& options,
                                 SolverStats& stats)
    : net_(net),
      options_(options),
      stats_(stats),
      n_(net.node_count()),
      period_(options.global_relabel_period > 0
                  ? options.global_relabel_period
                  : std::max<std::int64_t>(net.arc_count(), 1)) {
  residual_.resize(net.slot_count());
  balance_.assign(n_, 0);
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    residual_[Network::forward_slot(a)] = arc.capacity - f[a];
    residual_[Network::twin(Network::forward_slot(a))] = f[a];
    balance_[arc.head] += f[a];
    balance_[arc.tail] -= f[a];
  }
  height_.assign(n_, 0);
  height_[net.source()] = n_;
  sink_side_.assign(n_, 0);
  expelled_.assign(n_, 0);
  current_.assign(n_, 0);

  const std::size_t levels = 2 * static_cast<std::size_t>(n_) + 2;
  bucket_head_.assign(levels, kNoNode);
  bucket_tail_.assign(levels, kNoNode);
  next_active_.assign(n_, kNoNode);
  queued_.assign(n_, 0);
  layer_head_.assign(levels, kNoNode);
  layer_count_.assign(levels, 0);
  layer_next_.assign(n_, kNoNode);
  layer_prev_.assign(n_, kNoNode);
}

template <typename Allowed>
std::vector<Height> PushRelabelCore::residual_distances_to(
    NodeId root, Allowed allowed) const {
  std::vector<Height> dist(n_, -1);
  std::deque<NodeId> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (const SlotId e : net_.out_slots(v)) {
      if (residual_[Network::twin(e)] <= 0) continue;
      const NodeId w = net_.slot_head(e);
      if (dist[w] >= 0 || !allowed(w)) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

bool PushRelabelCore::define_heights() {
  const auto dist = residual_distances_to(net_.sink(), [](NodeId) {
    return true;
  });
  if (dist[net_.source()] >= 0) return false;
  for (NodeId u = 0; u < n_; ++u) {
    const bool sink = dist[u] >= 0;
    if (sink && expelled_[u]) monotone_ = false;
    sink_side_[u] = sink ? 1 : 0;
    height_[u] = sink ? dist[u] : n_;
  }
  std::fill(current_.begin(), current_.end(), 0);
  rebuild_layers();
  return true;
}

void PushRelabelCore::set_cut_heights(const std::vector<Side>& side) {
  for (NodeId u = 0; u < n_; ++u) {
    const bool sink = side[u] == Side::sink_side;
    if (sink && expelled_[u]) monotone_ = false;
    sink_side_[u] = sink ? 1 : 0;
    height_[u] = sink ? 0 : n_;
  }
  std::fill(current_.begin(), current_.end(), 0);
  rebuild_layers();
}

void PushRelabelCore::set_heights(const std::vector<Height>& heights) {
  height_ = heights;
  std::fill(sink_side_.begin(), sink_side_.end(), 0);
  std::fill(current_.begin(), current_.end(), 0);
}

bool PushRelabelCore::eligible(NodeId u) const {
  if (balance_[u] <= 0 || net_.is_terminal(u) || net_.inert(u)) return false;
  switch (scope_) {
    case Scope::sink_side:
      return sink_side_[u] != 0;
    case Scope::source_side:
      return sink_side_[u] == 0;
    case Scope::whole:
      return true;
  }
  return false;
}

void PushRelabelCore::enqueue(NodeId u) {
  if (queued_[u]) return;
  const Height h = height_[u];
  if (h < 0 || static_cast<std::size_t>(h) >= bucket_head_.size())
    throw InvariantViolation("active node height " + std::to_string(h) +
                             " out of range");
  next_active_[u] = kNoNode;
  if (bucket_tail_[h] == kNoNode)
    bucket_head_[h] = u;
  else
    next_active_[bucket_tail_[h]] = u;
  bucket_tail_[h] = u;
  queued_[u] = 1;
  max_active_ = std::max(max_active_, h);
}

NodeId PushRelabelCore::pop_highest() {
  while (max_active_ >= 0) {
    const Height h = max_active_;
    const NodeId u = bucket_head_[h];
    if (u == kNoNode) {
      --max_active_;
      continue;
    }
    bucket_head_[h] = next_active_[u];
    if (bucket_head_[h] == kNoNode) bucket_tail_[h] = kNoNode;
    queued_[u] = 0;
    if (!eligible(u)) continue;
    if (height_[u] != h) {
      enqueue(u);
      continue;
    }
    return u;
  }
  return kNoNode;
}

void PushRelabelCore::clear_buckets() {
  std::fill(bucket_head_.begin(), bucket_head_.end(), kNoNode);
  std::fill(bucket_tail_.begin(), bucket_tail_.end(), kNoNode);
  std::fill(queued_.begin(), queued_.end(), 0);
  max_active_ = -1;
}

void PushRelabelCore::rebuild_active() {
  clear_buckets();
  for (NodeId u = 0; u < n_; ++u)
    if (eligible(u)) enqueue(u);
}

void PushRelabelCore::layer_add(NodeId u) {
  const Height h = height_[u];
  layer_prev_[u] = kNoNode;
  layer_next_[u] = layer_head_[h];
  if (layer_head_[h] != kNoNode) layer_prev_[layer_head_[h]] = u;
  layer_head_[h] = u;
  ++layer_count_[h];
  max_sink_height_ = std::max(max_sink_height_, h);
}

void PushRelabelCore::layer_remove(NodeId u) {
  const Height h = height_[u];
  if (layer_prev_[u] != kNoNode)
    layer_next_[layer_prev_[u]] = layer_next_[u];
  else
    layer_head_[h] = layer_next_[u];
  if (layer_next_[u] != kNoNode) layer_prev_[layer_next_[u]] = layer_prev_[u];
  --layer_count_[h];
}

void PushRelabelCore::rebuild_layers() {
  std::fill(layer_head_.begin(), layer_head_.end(), kNoNode);
  std::fill(layer_count_.begin(), layer_count_.end(), 0);
  max_sink_height_ = 0;
  for (NodeId u = 0; u < n_; ++u)
    if (sink_side_[u]) layer_add(u);
}

void PushRelabelCore::expel(NodeId u) {
  sink_side_[u] = 0;
  expelled_[u] = 1;
  height_[u] = n_;
}

void PushRelabelCore::push(NodeId u, SlotId e) {
  const NodeId v = net_.slot_head(e);
  const FlowUnits room = residual_[e];
  const FlowUnits delta = std::min(balance_[u], room);
  residual_[e] -= delta;
  residual_[Network::twin(e)] += delta;
  balance_[u] -= delta;
  const bool was_active = balance_[v] > 0;
  balance_[v] += delta;
  if (delta == room)
    ++stats_.pushes_saturating;
  else
    ++stats_.pushes_nonsaturating;
  if (!was_active && eligible(v)) enqueue(v);
}

Height PushRelabelCore::min_neighbor_height(NodeId u) const {
  Height best = kNoHeight;
  for (const SlotId e : net_.out_slots(u)) {
    if (residual_[e] <= 0) continue;
    const NodeId v = net_.slot_head(e);
    if (net_.inert(v)) continue;
    best = std::min(best, height_[v]);
  }
  return best;
}

void PushRelabelCore::discharge(NodeId u) {
  const auto out = net_.out_slots(u);
  const auto degree = static_cast<std::int32_t>(out.size());
  while (balance_[u] > 0) {
    std::int32_t& i = current_[u];
    for (; i < degree; ++i) {
      const SlotId e = out[i];
      if (residual_[e] <= 0) continue;
      const NodeId v = net_.slot_head(e);
      if (net_.inert(v) || height_[u] != height_[v] + 1) continue;
      if (scope_ == Scope::sink_side && !sink_side_[v]) continue;
      push(u, e);
      if (balance_[u] == 0) break;
    }
    if (balance_[u] == 0) break;
    if (scope_ == Scope::sink_side) {
      relabel_sink_side(u);
      if (!sink_side_[u]) return;
    } else {
      relabel_free(u);
    }
    current_[u] = 0;
  }
}

void PushRelabelCore::relabel_sink_side(NodeId u) {
  ++stats_.relabels;
  ++relabels_since_global_;
  const Height lowest = min_neighbor_height(u);
  const Height raised = lowest == kNoHeight ? n_ : lowest + 1;
  const Height old = height_[u];
  if (raised <= old)
    throw InvariantViolation("relabel did not raise node " +
                             std::to_string(u));
  layer_remove(u);
  if (layer_count_[old] == 0) {
    // Height `old` is now the smallest missing one: everything above leaves.
    std::int64_t removed = 1;
    expel(u);
    for (Height h = old + 1; h <= max_sink_height_; ++h) {
      for (NodeId w = layer_head_[h]; w != kNoNode; w = layer_next_[w]) {
        expel(w);
        ++removed;
      }
      layer_head_[h] = kNoNode;
      layer_count_[h] = 0;
    }
    max_sink_height_ = old - 1;
    ++stats_.gap_events;
    stats_.gap_removals += removed;
  } else if (raised > max_sink_height_ + 1) {
    expel(u);
    ++stats_.gap_events;
    ++stats_.gap_removals;
  } else {
    height_[u] = raised;
    layer_add(u);
  }
}

void PushRelabelCore::relabel_free(NodeId u) {
  ++stats_.relabels;
  ++relabels_since_global_;
  const Height lowest = min_neighbor_height(u);
  if (lowest == kNoHeight)
    throw InvariantViolation("node " + std::to_string(u) +
                             " holds excess but has no residual arc");
  const Height raised = lowest + 1;
  if (raised <= height_[u])
    throw InvariantViolation("relabel did not raise node " +
                             std::to_string(u));
  if (raised > 2 * n_)
    throw InvariantViolation("height of node " + std::to_string(u) +
                             " exceeds 2n");
  height_[u] = raised;
}

void PushRelabelCore::maybe_global_relabel() {
  if (!options_.global_relabel || relabels_since_global_ < period_) return;
  switch (scope_) {
    case Scope::sink_side:
      global_relabel_sink_side();
      break;
    case Scope::source_side: {
      // Source-side distances, offset by n.
      const auto dist = residual_distances_to(
          net_.source(), [this](NodeId w) { return sink_side_[w] == 0; });
      for (NodeId u = 0; u < n_; ++u) {
        if (sink_side_[u] || net_.is_terminal(u)) continue;
        const Height h = dist[u] < 0 ? 2 * n_ : n_ + dist[u];
        height_[u] = std::max(height_[u], h);
      }
      std::fill(current_.begin(), current_.end(), 0);
      ++stats_.global_relabels;
      relabels_since_global_ = 0;
      rebuild_active();
      break;
    }
    case Scope::whole:
      global_relabel_whole_graph();
      break;
  }
}

void PushRelabelCore::global_relabel_sink_side() {
  sink_side_bfs();
  ++stats_.global_relabels;
  relabels_since_global_ = 0;
  if (scope_ == Scope::sink_side) rebuild_active();
}

void PushRelabelCore::tighten_sink_side() { sink_side_bfs(); }

void PushRelabelCore::sink_side_bfs() {
  const auto dist = residual_distances_to(
      net_.sink(), [this](NodeId w) { return sink_side_[w] != 0; });
  for (NodeId u = 0; u < n_; ++u) {
    if (!sink_side_[u]) continue;
    if (dist[u] < 0) {
      expel(u);
      continue;
    }
    if (height_[u] > dist[u])
      throw InvariantViolation("height of node " + std::to_string(u) +
                               " above its residual distance");
    height_[u] = dist[u];
  }
  std::fill(current_.begin(), current_.end(), 0);
  rebuild_layers();
}

void PushRelabelCore::global_relabel_whole_graph() {
  const NodeId s = net_.source();
  const NodeId t = net_.sink();
  const auto to_sink =
      residual_distances_to(t, [s](NodeId w) { return w != s; });
  const auto to_source =
      residual_distances_to(s, [t](NodeId w) { return w != t; });
  for (NodeId u = 0; u < n_; ++u) {
    if (net_.is_terminal(u)) continue;
    Height h = n_;
    if (to_sink[u] >= 0)
      h = to_sink[u];
    else if (to_source[u] >= 0)
      h = n_ + to_source[u];
    height_[u] = std::max(height_[u], h);
  }
  std::fill(current_.begin(), current_.end(), 0);
  ++stats_.global_relabels;
  relabels_since_global_ = 0;
  rebuild_active();
}

void PushRelabelCore::discharge_sink_side() {
  scope_ = Scope::sink_side;
  rebuild_layers();
  rebuild_active();
  for (NodeId u = pop_highest(); u != kNoNode; u = pop_highest()) {
    discharge(u);
    if (options_.check_invariants) check_invariants();
    maybe_global_relabel();
  }
}

void PushRelabelCore::return_source_side_excess() {
  scope_ = Scope::source_side;
  if (options_.global_relabel) relabels_since_global_ = period_;
  maybe_global_relabel();
  rebuild_active();
  for (NodeId u = pop_highest(); u != kNoNode; u = pop_highest()) {
    discharge(u);
    if (options_.check_invariants) check_invariants();
    maybe_global_relabel();
  }
}

void PushRelabelCore::run_vanilla() {
  scope_ = Scope::whole;
  rebuild_active();
  for (NodeId u = pop_highest(); u != kNoNode; u = pop_highest()) {
    discharge(u);
    if (options_.check_invariants) check_invariants();
    maybe_global_relabel();
  }
}

void PushRelabelCore::inject(ArcId a, FlowUnits delta) {
  const ArcSpec& arc = net_.arc(a);
  residual_[Network::twin(Network::forward_slot(a))] += delta;
  balance_[arc.head] += delta;
  balance_[arc.tail] -= delta;
}

PseudoFlow PushRelabelCore::flow() const {
  PseudoFlow f(net_.arc_count());
  for (ArcId a = 0; a < net_.arc_count(); ++a)
    f[a] = residual_[Network::twin(Network::forward_slot(a))];
  return f;
}

std::vector<Side> PushRelabelCore::sides() const {
  std::vector<Side> side(n_);
  for (NodeId u = 0; u < n_; ++u)
    side[u] = sink_side_[u] ? Side::sink_side : Side::source_side;
  return side;
}

CutPartition PushRelabelCore::cut() const {
  CutPartition c = make_cut(net_, sides());
  c.saturated = cut_saturated();
  return c;
}

bool PushRelabelCore::cut_saturated() const {
  for (ArcId a = 0; a < net_.arc_count(); ++a) {
    const ArcSpec& arc = net_.arc(a);
    const bool from_sink = sink_side_[arc.tail] != 0;
    const bool to_sink = sink_side_[arc.head] != 0;
    if (!from_sink && to_sink && residual_[Network::forward_slot(a)] != 0)
      return false;
    if (from_sink && !to_sink &&
        residual_[Network::twin(Network::forward_slot(a))] != 0)
      return false;
  }
  return true;
}

bool PushRelabelCore::heights_valid() const {
  for (SlotId e = 0; e < net_.slot_count(); ++e) {
    if (residual_[e] <= 0) continue;
    const NodeId u = net_.slot_tail(e);
    const NodeId v = net_.slot_head(e);
    if (net_.inert(u) || net_.inert(v)) continue;
    if (height_[u] > height_[v] + 1) return false;
  }
  return true;
}

void PushRelabelCore::check_invariants() const {
  if (!heights_valid()) throw InvariantViolation("heights became invalid");
  if (scope_ != Scope::whole && !cut_saturated())
    throw InvariantViolation("maintained cut is no longer saturated");
}

}  // namespace warmflow::detail
