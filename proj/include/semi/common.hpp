// common.hpp — shared constants, error types and small utilities.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace semi {

// Supported matrix dimensions; tables have q = 2^dim elements (4..64).
inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 6;
inline constexpr int kMaxQ = 64;

// A computed invariant failed a cross-check that can only be a bug, never bad
// input (CLI maps this to its own exit code).
struct InternalCheckError : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed user-supplied data (tuple lines, fixture rows).  `line` is
// 1-based, 0 when not tied to a line.
struct DataError : std::runtime_error {
  int line = 0;
  explicit DataError(const std::string& msg, int line_no = 0)
      : std::runtime_error(msg), line(line_no) {}
};

inline void check_dim(int dim) {
  if (dim < kMinDim || dim > kMaxDim)
    throw std::invalid_argument("dimension must be in 2..6, got " + std::to_string(dim));
}

inline int popcount8(uint8_t v) { return __builtin_popcount(v); }
inline int parity8(uint8_t v) { return __builtin_parity(v); }

}  // namespace semi
