#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symq {

// Qubit-count (or mode-count) mismatch between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A stated precondition of an operation does not hold.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested dense object exceeds the configured dense limit.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg
                                : msg),
        line_number(line) {}
  std::size_t line_number;
};

// An eigenstate could not be assigned a clean symmetry label.
struct LabelingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spectrum comparison found unmatched target-sector levels.
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace symq
