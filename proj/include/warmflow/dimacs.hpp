#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warmflow/network.hpp"

namespace warmflow {

// DIMACS max-flow text. Node ids are 1-based in the file, 0-based in the
// Network. Errors are InputError with the offending line number.
Network parse_dimacs(std::string_view text);

// Canonical form: "p max n m", "n s s", "n t t", then one "a" line per arc
// in arc order. No comments.
std::string emit_dimacs(const Network& net);

// Prediction file: "f <tail> <head> <value>" lines, 1-based ids, "c"
// comments. The j-th line naming (tail, head) belongs to the j-th parallel
// arc from tail to head. Unlisted arcs predict 0. Values are not capped.
std::vector<FlowUnits> parse_prediction(std::string_view text,
                                        const Network& net);

// One line per arc with a nonzero value, in arc order. A zero line is kept
// for an earlier parallel sibling when a later one is nonzero, so the
// ordinals survive.
std::string emit_prediction(const Network& net,
                            std::span<const FlowUnits> values);

}  // namespace warmflow
