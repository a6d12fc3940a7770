#pragma once

#include "picpos/verdict.hpp"

// Verdict-producing positivity checkers. Each sufficient criterion from the
// underlying intersection theory is paired with the cheap necessary
// conditions, so verdicts are three-valued: Positive and Negative are
// certified, Unknown means no applicable criterion decided.

namespace picpos {

/// Ampleness via the sufficient criterion: m_i > 0 for all i, L.C1 > 0 and
/// d > (sum of the e largest m_i). Negative when a necessary condition
/// fails: some L.E_i <= 0, L.C1 <= 0, L^2 <= 0, or -- when e of the points
/// are known collinear -- d <= sum of the e largest m_i.
Verdict check_ample(const DivisorClass& l, const BlowupContext& ctx);

/// Nefness: L.C1 >= 0, all m_i >= 0 and d >= sum of the e largest m_i.
/// For uniform bundles with r >= e^2 this is an if-and-only-if on
/// L.C1 >= 0 and m >= 0, so the verdict is always decided there.
Verdict check_nef(const DivisorClass& l, const BlowupContext& ctx);

/// Ampleness for uniform bundles dH - m*sum(E_i) with m >= 0 (rejects
/// anything else). For r >= e^2 the criterion is an iff on de > rm, except
/// that m = 0 is always Negative (dH meets every E_i in 0). For r < e^2,
/// Positive if d > em; Negative if e points are known collinear and
/// d <= em; Unknown otherwise.
Verdict check_ample_uniform(const DivisorClass& l, const BlowupContext& ctx);

/// The constructive effectivity certificate behind certify_effective, or
/// nullopt when d < sum of the e largest multiplicities (after peeling
/// negative multiplicities off as bare exceptional terms).
std::optional<EffectivityCertificate> effectivity_certificate(
    const DivisorClass& l, const BlowupContext& ctx);

/// Effectivity: Positive with an explicit nonnegative combination of the
/// generator classes when d >= sum of the e largest m_i; Unknown otherwise
/// (the condition is only sufficient).
Verdict certify_effective(const DivisorClass& l, const BlowupContext& ctx);

/// Global generation for uniform L = dH - m*sum(E_i), m >= 0:
/// Positive when (d+3)e > r(m+1) and r >= e^2 + 1 (or when m = 0, d >= 0);
/// Negative via the positive-genus restriction-degree bound when L.C1 < 2.
Verdict check_globally_generated(const DivisorClass& l, const BlowupContext& ctx);

/// k-very ampleness for uniform L: Positive when m >= k, (d+3)e > r(m+1)
/// and r >= e^2 + k + 1. Negative via the restriction-degree bound when
/// L.C1 <= k + 1 on a positive-genus curve. k = 0 coincides with global
/// generation.
Verdict check_k_very_ample(const DivisorClass& l, const BlowupContext& ctx,
                           std::int64_t k);

/// The restriction-degree lower bound (Beltrametti-Sommese): on a curve of
/// positive genus, a k-very ample bundle restricts to degree >= k + 2.
/// Negative when deg(L|C) = L.C1 <= k + 1; Unknown otherwise. Requires
/// ctx.positive_genus = yes.
Verdict negative_kva_certificate(const DivisorClass& l, const BlowupContext& ctx,
                                 std::int64_t k);

/// Harbourne's characterization for e = 3 and all m_i > 0: L is ample iff
/// its quadratic-transform reduction ends excellent (standard with
/// L.C1 > 0). Positive/Negative with the reduction trace attached.
Verdict check_excellent_e3(const DivisorClass& l, const BlowupContext& ctx);

}  // namespace picpos
