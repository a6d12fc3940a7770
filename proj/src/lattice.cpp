#include "picpos/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "picpos/checked.hpp"

namespace picpos {

std::string to_string(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    case TriState::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<TriState> tri_state_from_string(const std::string& s) {
  if (s == "yes") return TriState::Yes;
  if (s == "no") return TriState::No;
  if (s == "unknown") return TriState::Unknown;
  return std::nullopt;
}

BlowupContext::BlowupContext(std::int64_t e, std::int64_t r,
                             TriState has_e_collinear, TriState positive_genus)
    : e(e), r(r), has_e_collinear(has_e_collinear),
      positive_genus(positive_genus) {
  if (e < 1) throw DomainError("curve degree e must be >= 1, got " + std::to_string(e));
  if (r < 1) throw DomainError("point count r must be >= 1, got " + std::to_string(r));
}

DivisorClass DivisorClass::uniform(std::int64_t d, std::int64_t m, std::size_t r) {
  return DivisorClass{d, std::vector<std::int64_t>(r, m)};
}

DivisorClass DivisorClass::exceptional(std::size_t i, std::size_t r) {
  if (i < 1 || i > r) {
    throw DomainError("exceptional index " + std::to_string(i) +
                      " out of range 1.." + std::to_string(r));
  }
  DivisorClass c{0, std::vector<std::int64_t>(r, 0)};
  c.mults[i - 1] = -1;
  return c;
}

bool DivisorClass::is_uniform() const {
  return std::all_of(mults.begin(), mults.end(),
                     [&](std::int64_t m) { return m == mults.front(); });
}

std::optional<std::int64_t> DivisorClass::uniform_m() const {
  if (mults.empty() || !is_uniform()) return std::nullopt;
  return mults.front();
}

bool DivisorClass::is_zero() const {
  return d == 0 && std::all_of(mults.begin(), mults.end(),
                               [](std::int64_t m) { return m == 0; });
}

std::string to_string(const DivisorClass& c) {
  std::string out = std::to_string(c.d) + "H";
  std::size_t i = 0;
  while (i < c.mults.size()) {
    std::size_t j = i;
    while (j + 1 < c.mults.size() && c.mults[j + 1] == c.mults[i]) ++j;
    const std::int64_t m = c.mults[i];
    if (m != 0) {
      out += (m > 0) ? " - " : " + ";
      const std::int64_t a = m > 0 ? m : -m;
      std::string es = (i == j)
          ? "E" + std::to_string(i + 1)
          : "(E" + std::to_string(i + 1) + "+...+E" + std::to_string(j + 1) + ")";
      out += (a == 1) ? es : std::to_string(a) + es;
    }
    i = j + 1;
  }
  return out;
}

void require_same_dimension(const DivisorClass& a, const DivisorClass& b) {
  if (a.r() != b.r()) throw DimensionMismatch(a.r(), b.r());
}

void require_compatible(const DivisorClass& c, const BlowupContext& ctx) {
  if (c.r() != static_cast<std::size_t>(ctx.r)) {
    throw DimensionMismatch(static_cast<std::size_t>(ctx.r), c.r());
  }
}

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) {
  require_same_dimension(a, b);
  std::int64_t acc = checked_mul(a.d, b.d);
  for (std::size_t i = 0; i < a.r(); ++i) {
    acc = checked_sub(acc, checked_mul(a.mults[i], b.mults[i]));
  }
  return acc;
}

std::int64_t intersect(const DivisorClass& a, const DivisorClass& b,
                       const BlowupContext& ctx) {
  require_compatible(a, ctx);
  require_compatible(b, ctx);
  return intersect(a, b);
}

std::int64_t self_intersection(const DivisorClass& a) { return intersect(a, a); }

DivisorClass curve_class(const BlowupContext& ctx) {
  return DivisorClass::uniform(ctx.e, 1, static_cast<std::size_t>(ctx.r));
}

DivisorClass canonical_class(const BlowupContext& ctx) {
  return DivisorClass::uniform(-3, -1, static_cast<std::size_t>(ctx.r));
}

DivisorClass adjoint_class(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  return l - canonical_class(ctx);
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  require_same_dimension(a, b);
  DivisorClass out{checked_add(a.d, b.d), a.mults};
  for (std::size_t i = 0; i < b.r(); ++i) {
    out.mults[i] = checked_add(out.mults[i], b.mults[i]);
  }
  return out;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
  require_same_dimension(a, b);
  DivisorClass out{checked_sub(a.d, b.d), a.mults};
  for (std::size_t i = 0; i < b.r(); ++i) {
    out.mults[i] = checked_sub(out.mults[i], b.mults[i]);
  }
  return out;
}

DivisorClass operator*(std::int64_t c, const DivisorClass& a) {
  DivisorClass out{checked_mul(c, a.d), a.mults};
  for (auto& m : out.mults) m = checked_mul(c, m);
  return out;
}

SortedMults sorted_multiplicities(const DivisorClass& l) {
  SortedMults s;
  s.order.resize(l.r());
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  // Stable: ties keep original index order, so certificates are deterministic.
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return l.mults[i] > l.mults[j];
                   });
  s.values.reserve(l.r());
  for (std::size_t i : s.order) s.values.push_back(l.mults[i]);
  return s;
}

std::int64_t sum_of_largest(const DivisorClass& l, std::int64_t e) {
  if (e < 0) throw DomainError("sum_of_largest: e must be >= 0");
  SortedMults s = sorted_multiplicities(l);
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(e), s.values.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < take; ++i) acc = checked_add(acc, s.values[i]);
  return acc;
}

}  // namespace picpos
