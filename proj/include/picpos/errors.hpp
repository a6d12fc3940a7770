#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace picpos {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Exact integer arithmetic overflowed the 64-bit working width.
/// Raised instead of silently wrapping; results are never approximate.
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

/// Two divisor classes (or a class and a context) disagree on the number
/// of exceptional directions.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              " multiplicities, got " + std::to_string(actual)),
        expected(expected),
        actual(actual) {}

  std::size_t expected;
  std::size_t actual;
};

/// A precondition on the inputs does not hold (wrong degree, non-uniform
/// bundle where a uniform one is required, invalid indices, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// An enumeration request exceeded its node budget. `worst_case` is the
/// a-priori size of the requested search space (decimal string, or
/// "overflow" when it does not fit in 128 bits).
class EnumerationLimit : public Error {
 public:
  EnumerationLimit(std::uint64_t visited, std::string worst_case_count)
      : Error("enumeration budget exhausted after " + std::to_string(visited) +
              " nodes (requested bounds would require up to " +
              worst_case_count + " candidates)"),
        visited(visited),
        worst_case(std::move(worst_case_count)) {}

  std::uint64_t visited;
  std::string worst_case;
};

}  // namespace picpos
