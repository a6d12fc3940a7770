#pragma once

#include <cstdint>

#include "picpos/errors.hpp"

// Checked 64-bit arithmetic. Certificates and verdicts must be exact, so
// every add/sub/mul in the lattice layer goes through these helpers and
// overflow raises instead of wrapping.

namespace picpos {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in addition");
  }
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in subtraction");
  }
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in multiplication");
  }
  return out;
}

}  // namespace picpos
