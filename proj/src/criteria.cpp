#include "picpos/criteria.hpp"

#include <algorithm>

#include "picpos/checked.hpp"

namespace picpos {

namespace {

Inequality ineq(std::string label, std::int64_t lhs, Rel rel, std::int64_t rhs) {
  return Inequality{std::move(label), lhs, rel, rhs};
}

std::int64_t min_mult(const DivisorClass& l) {
  return *std::min_element(l.mults.begin(), l.mults.end());
}

std::int64_t require_uniform_m(const DivisorClass& l, const char* who) {
  const auto m = l.uniform_m();
  if (!m) {
    throw DomainError(std::string(who) +
                      " requires a uniform bundle dH - m*sum(E_i); "
                      "use check_ample / check_nef for general multiplicities");
  }
  return *m;
}

}  // namespace

Verdict check_ample(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  Verdict v;
  v.property = Property::Ample;

  const std::int64_t mmin = min_mult(l);
  const std::int64_t lc1 = intersect(l, curve_class(ctx));
  const std::int64_t l2 = self_intersection(l);
  const std::int64_t top = sum_of_largest(l, ctx.e);

  v.details = {
      ineq("min m_i", mmin, Rel::Gt, 0),
      ineq("L.C1", lc1, Rel::Gt, 0),
      ineq("L^2", l2, Rel::Gt, 0),
      ineq("d vs sum of e largest m_i", l.d, Rel::Gt, top),
  };

  if (mmin <= 0) {
    v.status = Status::Negative;
    v.justification = "necessary-condition L.Ei>0";
    v.annotations.push_back("some exceptional curve meets L non-positively");
    return v;
  }
  if (lc1 <= 0) {
    v.status = Status::Negative;
    v.justification = "necessary-condition L.C1>0";
    v.annotations.push_back("the proper transform of the degree-e curve meets L non-positively");
    return v;
  }
  if (l2 <= 0) {
    v.status = Status::Negative;
    v.justification = "necessary-condition L^2>0";
    return v;
  }
  if (l.d > top) {
    v.status = Status::Positive;
    v.justification = "ample-sufficient-criterion";
    if (ctx.has_e_collinear == TriState::Yes) {
      v.annotations.push_back(
          "with e collinear points the criterion is also necessary");
    }
    return v;
  }
  if (ctx.has_e_collinear == TriState::Yes) {
    v.status = Status::Negative;
    v.justification = "collinear-necessity";
    v.annotations.push_back(
        "e of the points are collinear, so the proper transform of the line "
        "through them meets L in d - (sum of e multiplicities) <= 0");
    return v;
  }
  v.status = Status::Unknown;
  v.justification = "inconclusive";
  v.annotations.push_back("hypothesis failed: d > sum of e largest m_i (" +
                          std::to_string(l.d) + " <= " + std::to_string(top) + ")");
  if (ctx.has_e_collinear == TriState::Unknown) {
    v.annotations.push_back(
        "the sum condition is necessary when e of the points are collinear; "
        "collinearity is not asserted here");
  }
  return v;
}

Verdict check_nef(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  Verdict v;
  v.property = Property::Nef;

  const std::int64_t mmin = min_mult(l);
  const std::int64_t lc1 = intersect(l, curve_class(ctx));
  const std::int64_t top = sum_of_largest(l, ctx.e);
  const bool big_r = ctx.r >= checked_mul(ctx.e, ctx.e);

  v.details = {
      ineq("min m_i", mmin, Rel::Ge, 0),
      ineq("L.C1", lc1, Rel::Ge, 0),
      ineq("d vs sum of e largest m_i", l.d, Rel::Ge, top),
  };

  if (lc1 < 0) {
    v.status = Status::Negative;
    v.justification = "necessary-condition L.C1>=0";
    return v;
  }
  if (mmin < 0) {
    v.status = Status::Negative;
    v.justification = "necessary-condition L.Ei>=0";
    return v;
  }
  if (l.d >= top) {
    v.status = Status::Positive;
    v.justification = (l.is_uniform() && big_r) ? "nef-uniform-iff"
                                                : "nef-sufficient-criterion";
    return v;
  }
  // Uniform with r >= e^2 cannot reach this point: L.C1 >= 0 already
  // forces d >= em there.
  v.status = Status::Unknown;
  v.justification = "inconclusive";
  v.annotations.push_back("hypothesis failed: d >= sum of e largest m_i (" +
                          std::to_string(l.d) + " < " + std::to_string(top) + ")");
  return v;
}

Verdict check_ample_uniform(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  const std::int64_t m = require_uniform_m(l, "check_ample_uniform");
  if (m < 0) {
    throw DomainError("check_ample_uniform requires m >= 0; use check_ample");
  }

  Verdict v;
  v.property = Property::Ample;
  const bool big_r = ctx.r >= checked_mul(ctx.e, ctx.e);

  if (m == 0) {
    // dH is pulled back from the plane and meets every E_i in 0, so it is
    // never ample regardless of L.C1.
    v.status = Status::Negative;
    v.justification = "necessary-condition L.Ei>0";
    v.details = {ineq("L.E_i (= m)", 0, Rel::Gt, 0)};
    v.annotations.push_back("m = 0: L meets every exceptional curve in 0");
    return v;
  }

  if (big_r) {
    const std::int64_t de = checked_mul(l.d, ctx.e);
    const std::int64_t rm = checked_mul(ctx.r, m);
    v.details = {ineq("d*e vs r*m (L.C1 > 0)", de, Rel::Gt, rm)};
    v.justification = "ample-uniform-iff";
    v.status = de > rm ? Status::Positive : Status::Negative;
    if (v.status == Status::Negative) {
      v.annotations.push_back("r >= e^2: ampleness is equivalent to L.C1 > 0");
    }
    return v;
  }

  const std::int64_t em = checked_mul(ctx.e, m);
  v.details = {ineq("d vs e*m", l.d, Rel::Gt, em)};
  if (l.d > em) {
    v.status = Status::Positive;
    v.justification = "ample-uniform-sufficient";
    return v;
  }
  if (ctx.has_e_collinear == TriState::Yes) {
    v.status = Status::Negative;
    v.justification = "collinear-necessity";
    v.annotations.push_back("d <= em is decisive when e points are collinear");
    return v;
  }
  v.status = Status::Unknown;
  v.justification = "inconclusive";
  v.annotations.push_back("r < e^2 and d <= e*m: the sufficient condition fails "
                          "and no necessary condition is violated");
  return v;
}

std::optional<EffectivityCertificate> effectivity_certificate(
    const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  EffectivityCertificate cert;
  const std::size_t r = l.r();

  // Peel negative multiplicities off as bare exceptional terms; each E_i is
  // effective, so this only strengthens the certificate.
  DivisorClass work = l;
  for (std::size_t i = 0; i < r; ++i) {
    if (work.mults[i] < 0) {
      cert.terms.push_back({DivisorClass::exceptional(i + 1, r), -work.mults[i]});
      work.mults[i] = 0;
    }
  }

  const SortedMults sorted = sorted_multiplicities(work);
  if (work.d < sum_of_largest(work, ctx.e)) return std::nullopt;

  std::vector<std::int64_t> vals = sorted.values;  // descending, all >= 0
  std::int64_t d_rem = work.d;

  auto prefix_generator = [&](std::int64_t degree, std::size_t count) {
    DivisorClass g{degree, std::vector<std::int64_t>(r, 0)};
    for (std::size_t t = 0; t < count; ++t) g.mults[sorted.order[t]] = 1;
    return g;
  };

  for (;;) {
    std::size_t s = vals.size();
    while (s > 0 && vals[s - 1] == 0) --s;
    if (s == 0) break;
    if (static_cast<std::int64_t>(s) <= ctx.e - 1) {
      // Telescoping tail: m_s (sH - E_1..E_s) + (m_{s-1} - m_s)((s-1)H - ...)
      // + ... + (m_1 - m_2)(H - E_1); leaves a pure multiple of H.
      for (std::size_t j = s; j >= 1; --j) {
        const std::int64_t coeff =
            (j == s) ? vals[j - 1] : checked_sub(vals[j - 1], vals[j]);
        if (coeff > 0) {
          cert.terms.push_back({prefix_generator(static_cast<std::int64_t>(j), j), coeff});
        }
      }
      for (std::size_t j = 0; j < s; ++j) d_rem = checked_sub(d_rem, vals[j]);
      break;
    }
    // s >= e: subtract m_s * (eH - E_1..E_s) and recurse on a strictly
    // smaller s; the degree condition is preserved.
    const std::int64_t c = vals[s - 1];
    cert.terms.push_back({prefix_generator(ctx.e, s), c});
    d_rem = checked_sub(d_rem, checked_mul(ctx.e, c));
    for (std::size_t j = 0; j < s; ++j) vals[j] = checked_sub(vals[j], c);
  }

  cert.terms.push_back({DivisorClass::uniform(1, 0, r), d_rem});
  return cert;
}

Verdict certify_effective(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  Verdict v;
  v.property = Property::Effective;

  DivisorClass peeled = l;
  for (auto& m : peeled.mults) m = std::max<std::int64_t>(m, 0);
  const std::int64_t top = sum_of_largest(peeled, ctx.e);
  v.details = {ineq("d vs sum of e largest max(m_i, 0)", l.d, Rel::Ge, top)};

  auto cert = effectivity_certificate(l, ctx);
  if (cert) {
    v.status = Status::Positive;
    v.justification = "standard-implies-effective";
    v.certificate = std::move(*cert);
  } else {
    v.status = Status::Unknown;
    v.justification = "inconclusive";
    v.annotations.push_back(
        "the degree condition is sufficient, not necessary; no certificate built");
  }
  return v;
}

namespace {

/// Shared core for global generation (k = 0) and k-very ampleness.
Verdict kva_core(const DivisorClass& l, const BlowupContext& ctx, std::int64_t k) {
  require_compatible(l, ctx);
  if (k < 0) throw DomainError("k must be >= 0");
  const std::int64_t m = require_uniform_m(l, "k-very-ampleness checks");

  Verdict v;
  const std::int64_t lhs = checked_mul(checked_add(l.d, 3), ctx.e);
  const std::int64_t rhs = checked_mul(ctx.r, checked_add(m, 1));
  const std::int64_t r_bound = checked_add(checked_mul(ctx.e, ctx.e), k + 1);

  v.details = {
      ineq("(d+3)*e vs r*(m+1)", lhs, Rel::Gt, rhs),
      ineq("r vs e^2+k+1", ctx.r, Rel::Ge, r_bound),
      ineq("m vs k", m, Rel::Ge, k),
  };

  if (k == 0 && m == 0 && l.d >= 0) {
    v.status = Status::Positive;
    v.justification = "gg-pullback";
    v.details.push_back(ineq("d", l.d, Rel::Ge, 0));
    v.annotations.push_back(
        "m = 0: L is pulled back from the plane, globally generated for d >= 0");
    return v;
  }

  if (m >= k && lhs > rhs && ctx.r >= r_bound) {
    v.status = Status::Positive;
    v.justification = (k == 0) ? "gg-sufficient-criterion" : "kva-sufficient-criterion";
    return v;
  }

  if (ctx.positive_genus == TriState::Yes) {
    const std::int64_t lc1 = intersect(l, curve_class(ctx));
    if (lc1 <= k + 1) {
      v.status = Status::Negative;
      v.justification = "restriction-degree-bound";
      v.details.push_back(ineq("deg(L|C) = L.C1", lc1, Rel::Lt, checked_add(k, 2)));
      v.annotations.push_back(
          "on a positive-genus curve a k-very ample bundle has degree >= k+2");
      return v;
    }
  }

  v.status = Status::Unknown;
  v.justification = "inconclusive";
  if (m < k) {
    v.annotations.push_back("hypothesis failed: m >= k (" + std::to_string(m) +
                            " < " + std::to_string(k) + ")");
  }
  if (lhs <= rhs) {
    v.annotations.push_back("hypothesis failed: (d+3)*e > r*(m+1) (" +
                            std::to_string(lhs) + " <= " + std::to_string(rhs) + ")");
    v.annotations.push_back("adjoint N = L - K meets C1 in " +
                            std::to_string(checked_sub(lhs, rhs)) +
                            " <= 0: N is not nef, so the criterion cannot apply");
  }
  if (ctx.r < r_bound) {
    v.annotations.push_back("hypothesis failed: r >= e^2+k+1 (" +
                            std::to_string(ctx.r) + " < " + std::to_string(r_bound) + ")");
  }
  return v;
}

}  // namespace

Verdict check_globally_generated(const DivisorClass& l, const BlowupContext& ctx) {
  const std::int64_t m = require_uniform_m(l, "check_globally_generated");
  if (m < 0) throw DomainError("check_globally_generated requires m >= 0");
  Verdict v = kva_core(l, ctx, 0);
  v.property = Property::GloballyGenerated;
  return v;
}

Verdict check_k_very_ample(const DivisorClass& l, const BlowupContext& ctx,
                           std::int64_t k) {
  Verdict v = kva_core(l, ctx, k);
  v.property = Property::KVeryAmple;
  v.k = k;
  return v;
}

Verdict negative_kva_certificate(const DivisorClass& l, const BlowupContext& ctx,
                                 std::int64_t k) {
  require_compatible(l, ctx);
  if (k < 0) throw DomainError("k must be >= 0");
  if (ctx.positive_genus != TriState::Yes) {
    throw DomainError(
        "the restriction-degree bound requires positive_genus = yes");
  }
  Verdict v;
  v.property = Property::KVeryAmple;
  v.k = k;
  const std::int64_t lc1 = intersect(l, curve_class(ctx));
  v.details = {ineq("deg(L|C) = L.C1", lc1, Rel::Lt, checked_add(k, 2))};
  if (lc1 <= k + 1) {
    v.status = Status::Negative;
    v.justification = "restriction-degree-bound";
    v.annotations.push_back(
        "on a positive-genus curve a k-very ample bundle has degree >= k+2");
  } else {
    v.status = Status::Unknown;
    v.justification = "inconclusive";
    v.annotations.push_back("degree bound not violated");
  }
  return v;
}

Verdict check_excellent_e3(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  if (ctx.e != 3) {
    throw DomainError("check_excellent_e3 applies to e = 3 contexts only");
  }
  if (min_mult(l) <= 0) {
    throw DomainError("check_excellent_e3 requires all m_i > 0");
  }

  ReductionTrace trace = reduce_to_standard_e3(l, ctx);
  // L.C1 is fixed by every quadratic transform when e = 3.
  const std::int64_t lc1 = intersect(l, curve_class(ctx));
  const std::int64_t final_top = sum_of_largest(trace.final_class, 3);

  Verdict v;
  v.property = Property::Ample;
  v.justification = "harbourne-excellent";
  v.details = {
      ineq("final d vs m1+m2+m3 (sorted)", trace.final_class.d, Rel::Ge, final_top),
      ineq("L.C1", lc1, Rel::Gt, 0),
  };
  switch (trace.outcome) {
    case ReductionOutcome::Excellent:
      v.status = Status::Positive;
      break;
    case ReductionOutcome::Standard:
      v.status = Status::Negative;
      v.annotations.push_back("standard form reached but L.C1 <= 0");
      break;
    case ReductionOutcome::NotStandardizable:
      v.status = Status::Negative;
      v.annotations.push_back(
          "degree became negative before any standard form was reached");
      break;
    case ReductionOutcome::DepthExhausted:
      v.status = Status::Unknown;  // unreachable: the reduction terminates
      break;
  }
  v.trace = std::move(trace);
  return v;
}

}  // namespace picpos
