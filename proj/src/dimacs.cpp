#include "warmflow/dimacs.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <optional>
#include <utility>

namespace warmflow {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string_view> tokens;
};

// Calls `fn` for every non-blank line with its whitespace-separated tokens.
template <typename Fn>
int for_each_line(std::string_view text, Fn&& fn) {
  int number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r'))
        ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r')
        ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) fn(line);
  }
  return number;
}

[[noreturn]] void fail(const std::string& what, int line) {
  throw InputError(what + " at line " + std::to_string(line));
}

std::int64_t parse_int(std::string_view token, int line) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    fail("malformed number '" + std::string(token) + "'", line);
  return value;
}

NodeId parse_node(std::string_view token, std::int64_t n, int line) {
  const std::int64_t id = parse_int(token, line);
  if (id < 1 || id > n) fail("node id " + std::string(token) + " out of range", line);
  return static_cast<NodeId>(id - 1);
}

FlowUnits parse_amount(std::string_view token, const char* what, int line) {
  const std::int64_t v = parse_int(token, line);
  if (v < 0) fail(std::string("negative ") + what, line);
  return v;
}

}  // namespace

Network parse_dimacs(std::string_view text) {
  std::optional<std::int64_t> n;
  std::int64_t m = 0;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::vector<ArcSpec> arcs;

  const int last = for_each_line(text, [&](const Line& line) {
    const auto& tok = line.tokens;
    const std::string_view kind = tok[0];
    if (kind == "c") return;
    if (kind == "p") {
      if (n) fail("duplicate problem line", line.number);
      if (tok.size() != 4 || tok[1] != "max")
        fail("malformed problem line", line.number);
      const std::int64_t nodes = parse_int(tok[2], line.number);
      m = parse_int(tok[3], line.number);
      if (nodes < 2 || nodes > std::numeric_limits<NodeId>::max() / 2)
        fail("node count out of range", line.number);
      if (m < 0 || m > std::numeric_limits<ArcId>::max() / 2)
        fail("arc count out of range", line.number);
      n = nodes;
      arcs.reserve(static_cast<std::size_t>(m));
      return;
    }
    if (!n) fail("line before the problem line", line.number);
    if (kind == "n") {
      if (tok.size() != 3) fail("malformed node line", line.number);
      const NodeId id = parse_node(tok[1], *n, line.number);
      if (tok[2] == "s") {
        if (source) fail("duplicate source line", line.number);
        source = id;
      } else if (tok[2] == "t") {
        if (sink) fail("duplicate sink line", line.number);
        sink = id;
      } else {
        fail("malformed node line", line.number);
      }
      return;
    }
    if (kind == "a") {
      if (tok.size() != 4) fail("malformed arc line", line.number);
      if (static_cast<std::int64_t>(arcs.size()) == m)
        fail("arc count mismatch", line.number);
      const NodeId tail = parse_node(tok[1], *n, line.number);
      const NodeId head = parse_node(tok[2], *n, line.number);
      if (tail == head) fail("self-loop", line.number);
      arcs.push_back({tail, head, parse_amount(tok[3], "capacity", line.number)});
      return;
    }
    fail("unknown line type '" + std::string(kind) + "'", line.number);
  });

  if (!n) throw InputError("missing problem line");
  if (static_cast<std::int64_t>(arcs.size()) != m)
    fail("arc count mismatch", last);
  if (!source) throw InputError("missing source line");
  if (!sink) throw InputError("missing sink line");
  return Network::build(static_cast<NodeId>(*n), arcs, *source, *sink);
}

std::string emit_dimacs(const Network& net) {
  std::string out = "p max " + std::to_string(net.node_count()) + ' ' +
                    std::to_string(net.arc_count()) + '\n';
  out += "n " + std::to_string(net.source() + 1) + " s\n";
  out += "n " + std::to_string(net.sink() + 1) + " t\n";
  for (const ArcSpec& a : net.arcs()) {
    out += "a " + std::to_string(a.tail + 1) + ' ' + std::to_string(a.head + 1) +
           ' ' + std::to_string(a.capacity) + '\n';
  }
  return out;
}

std::vector<FlowUnits> parse_prediction(std::string_view text,
                                        const Network& net) {
  std::map<std::pair<NodeId, NodeId>, std::vector<ArcId>> parallel;
  for (ArcId a = 0; a < net.arc_count(); ++a)
    parallel[{net.arc(a).tail, net.arc(a).head}].push_back(a);
  std::map<std::pair<NodeId, NodeId>, std::size_t> seen;

  std::vector<FlowUnits> values(static_cast<std::size_t>(net.arc_count()), 0);
  for_each_line(text, [&](const Line& line) {
    const auto& tok = line.tokens;
    if (tok[0] == "c") return;
    if (tok[0] != "f" || tok.size() != 4)
      fail("malformed prediction line", line.number);
    const NodeId tail = parse_node(tok[1], net.node_count(), line.number);
    const NodeId head = parse_node(tok[2], net.node_count(), line.number);
    const auto it = parallel.find({tail, head});
    std::size_t& ordinal = seen[{tail, head}];
    if (it == parallel.end() || ordinal >= it->second.size())
      fail("no arc " + std::string(tok[1]) + " -> " + std::string(tok[2]),
           line.number);
    values[it->second[ordinal++]] =
        parse_amount(tok[3], "flow value", line.number);
  });
  return values;
}

std::string emit_prediction(const Network& net,
                            std::span<const FlowUnits> values) {
  if (values.size() != static_cast<std::size_t>(net.arc_count()))
    throw InputError("prediction size does not match the arc count");
  // Last arc of each (tail, head) group that carries a nonzero value.
  std::map<std::pair<NodeId, NodeId>, ArcId> last_nonzero;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    if (values[a] < 0) throw InputError("negative predicted flow");
    if (values[a] != 0) last_nonzero[{net.arc(a).tail, net.arc(a).head}] = a;
  }
  std::string out;
  for (ArcId a = 0; a < net.arc_count(); ++a) {
    const ArcSpec& arc = net.arc(a);
    const auto it = last_nonzero.find({arc.tail, arc.head});
    if (it == last_nonzero.end() || a > it->second) continue;
    out += "f " + std::to_string(arc.tail + 1) + ' ' +
           std::to_string(arc.head + 1) + ' ' + std::to_string(values[a]) +
           '\n';
  }
  return out;
}

}  // namespace warmflow
