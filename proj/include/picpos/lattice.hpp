#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picpos/errors.hpp"

// Exact integer arithmetic on the Picard lattice Z^{1+r} of the blow-up of
// the projective plane at r distinct smooth points of an irreducible plane
// curve of degree e. Basis: H (pullback of a line) and the exceptional
// classes E_1..E_r, with H^2 = 1, E_i^2 = -1 and mixed products 0.
//
// All types are immutable values and all operations are pure; everything is
// safe to share across threads.

namespace picpos {

enum class TriState { Yes, No, Unknown };

std::string to_string(TriState t);
std::optional<TriState> tri_state_from_string(const std::string& s);

/// Ambient data: the curve degree e, the number r of blown-up points, and
/// the two geometric hypotheses the lattice cannot see by itself.
struct BlowupContext {
  BlowupContext(std::int64_t e, std::int64_t r,
                TriState has_e_collinear = TriState::Unknown,
                TriState positive_genus = TriState::Unknown);

  std::int64_t e;
  std::int64_t r;
  /// Whether some e of the blown-up points lie on a line.
  TriState has_e_collinear;
  /// Whether the curve has positive genus (needed only by the
  /// restriction-degree lower bound for negative k-very-ampleness verdicts).
  TriState positive_genus;
};

/// A divisor class d*H - m_1*E_1 - ... - m_r*E_r.
///
/// `mults` stores the m_i of that expression, so E_i itself has d = 0 and
/// mults[i] = -1.
struct DivisorClass {
  std::int64_t d = 0;
  std::vector<std::int64_t> mults;

  std::size_t r() const { return mults.size(); }

  /// dH - m*(E_1 + ... + E_r).
  static DivisorClass uniform(std::int64_t d, std::int64_t m, std::size_t r);
  /// E_i for a 1-based index i.
  static DivisorClass exceptional(std::size_t i, std::size_t r);

  bool is_uniform() const;
  /// The common multiplicity of a uniform class; nullopt otherwise.
  std::optional<std::int64_t> uniform_m() const;
  bool is_zero() const;

  bool operator==(const DivisorClass&) const = default;
};

/// "dH - 3E1 + E4" style rendering, 1-based indices, runs of equal
/// multiplicities grouped as in m*(E2+...+E7).
std::string to_string(const DivisorClass& c);

void require_same_dimension(const DivisorClass& a, const DivisorClass& b);
void require_compatible(const DivisorClass& c, const BlowupContext& ctx);

/// Intersection product d_A d_B - sum_i m_{A,i} m_{B,i}.
std::int64_t intersect(const DivisorClass& a, const DivisorClass& b);
std::int64_t intersect(const DivisorClass& a, const DivisorClass& b,
                       const BlowupContext& ctx);
std::int64_t self_intersection(const DivisorClass& a);

/// Proper transform C_1 = eH - E_1 - ... - E_r of the degree-e curve.
DivisorClass curve_class(const BlowupContext& ctx);

/// Canonical class K = -3H + E_1 + ... + E_r.
DivisorClass canonical_class(const BlowupContext& ctx);

/// Adjoint N = L - K = (d+3)H - sum (m_i + 1) E_i.
DivisorClass adjoint_class(const DivisorClass& l, const BlowupContext& ctx);

// Exact (checked) module operations on classes.
DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator*(std::int64_t c, const DivisorClass& a);

/// Multiplicities in non-increasing order plus the permutation applied:
/// order[p] is the 0-based original index of the p-th largest entry, ties
/// broken by original index.
struct SortedMults {
  std::vector<std::int64_t> values;
  std::vector<std::size_t> order;
};

SortedMults sorted_multiplicities(const DivisorClass& l);

/// Sum of the e largest multiplicities, padding with zeros when r < e.
/// This is max over e distinct indices of L.(E_{i_1} + ... + E_{i_e}).
std::int64_t sum_of_largest(const DivisorClass& l, std::int64_t e);

}  // namespace picpos
