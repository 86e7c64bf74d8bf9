#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace warmflow {

using NodeId = std::int32_t;
using ArcId = std::int32_t;
// Residual arc slot. Slot 2a is arc a itself, slot 2a+1 its zero-capacity twin.
using SlotId = std::int32_t;
// Flow and capacity quantities. Always nonnegative at the API surface; the
// solver uses the sign internally for node balances.
using FlowUnits = std::int64_t;

inline constexpr NodeId kNoNode = -1;

// Largest capacity sum accepted for one network. Keeps every intermediate
// balance (sums of at most all capacities, doubled) inside int64.
inline constexpr FlowUnits kMaxTotalCapacity = FlowUnits{1} << 61;

// Malformed or out-of-contract input. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Maps to CLI exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace warmflow
