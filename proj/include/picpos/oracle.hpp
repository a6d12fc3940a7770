#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picpos/criteria.hpp"

// Brute-force and cross-check machinery: the Reider and
// Beltrametti-Francia-Sommese obstruction predicates, a bounded exhaustive
// scan for classes satisfying them, certificate verification, and a
// consistency cross-check between the ampleness routes.

namespace picpos {

/// True iff N.D - k - 1 <= D^2 < (N.D)/2 < k + 1, evaluated exactly (the
/// two strict inequalities are doubled instead of divided).
bool bfs_condition(const DivisorClass& n, const DivisorClass& d, std::int64_t k,
                   const BlowupContext& ctx);

/// True iff (N.D = 0 and D^2 = -1) or (N.D = 1 and D^2 = 0); the two
/// failure cases of Reider's global-generation criterion. Both embed into
/// bfs_condition at k = 0.
bool reider_obstruction(const DivisorClass& n, const DivisorClass& d,
                        const BlowupContext& ctx);

/// A class D = fH - sum n_i E_i satisfying the obstruction inequalities,
/// with its cached products against N and itself.
struct ObstructionCandidate {
  DivisorClass d_class;
  std::int64_t alpha = 0;  // N.D
  std::int64_t beta = 0;   // D^2
  std::int64_t n = 0;      // sum n_i
  bool n_ge_r = false;     // sum n_i >= r
  bool c1_nonneg = false;  // D.C1 >= 0
};

/// How candidates that cannot be effective were filtered out: when N is
/// certified ample every effective D != 0 has N.D > 0; when only nef,
/// N.D >= 0. Without a certificate no product filter applies.
enum class PositivityFilter { None, Nef, Ample };

std::string to_string(PositivityFilter f);

struct ObstructionScan {
  std::vector<ObstructionCandidate> candidates;
  std::uint64_t nodes_visited = 0;
  PositivityFilter filter = PositivityFilter::None;
  /// Whether the instance satisfies r >= e^2+k+1, (d+3)e > r(m+1), m >= k
  /// for L = N + K (evaluated only when N is uniform).
  bool hypotheses_hold = false;
  std::int64_t f_max = 0;
  std::int64_t n_max = 0;
};

struct EnumerationOptions {
  std::optional<std::int64_t> f_max;  // default 2e
  std::optional<std::int64_t> n_max;  // default r
  /// Hard budget on recursion nodes; exceeding it raises EnumerationLimit
  /// with the a-priori worst-case candidate count.
  std::uint64_t max_nodes = 100'000'000;
};

/// Exhaustively scans D = fH - sum n_i E_i with 0 <= f <= f_max and
/// n_i in [-1, n_max] (n_i in {-1, 0} when f = 0, where an effective D is a
/// nonnegative sum of exceptional curves) and returns every candidate
/// satisfying bfs_condition and the effectivity-necessary filters. For
/// uniform N only the multiset of the n_i matters, so the scan runs over
/// multisets and returns one sorted representative each. Results are sorted
/// by (f, multiplicity vector). A nonempty result is a list of candidates,
/// not counterexamples: true effectivity is geometric and not modeled here.
ObstructionScan enumerate_obstructions(const DivisorClass& n, std::int64_t k,
                                       const BlowupContext& ctx,
                                       const EnumerationOptions& options = {});

ObstructionScan enumerate_obstructions(const DivisorClass& n, std::int64_t k,
                                       const BlowupContext& ctx,
                                       std::int64_t f_max, std::int64_t n_max);

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> problems;

  explicit operator bool() const { return ok; }
};

/// True iff all coefficients are nonnegative, every generator is on the
/// allowed list for ctx (H, jH minus j distinct E's for j < e, eH minus
/// i distinct E's for e <= i <= r, single E_i) and the terms recompose to
/// `l` coordinatewise. Never throws; failures are described in `problems`.
CertificateCheck verify_certificate(const EffectivityCertificate& cert,
                                    const DivisorClass& l,
                                    const BlowupContext& ctx);

struct ConsistencyReport {
  Verdict ample;
  Verdict ample_uniform;
  Verdict nef;
  std::vector<std::string> inconsistencies;

  bool consistent() const { return inconsistencies.empty(); }
};

/// Runs check_ample, check_ample_uniform and check_nef on a uniform bundle
/// with m > 0 and r >= e^2 (the regime where ampleness is decidable) and
/// reports any logical disagreement between them.
ConsistencyReport cross_check_uniform(const DivisorClass& l, const BlowupContext& ctx);

}  // namespace picpos
