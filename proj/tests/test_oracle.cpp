#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "picpos/oracle.hpp"

using namespace picpos;

namespace {

/// Independent reference scan: plain odometer over all tuples, no pruning,
/// judged through the public bfs_condition. Returns canonicalized
/// (f, multiplicities) pairs for comparison with the engine's output.
std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> naive_scan(
    const DivisorClass& n, std::int64_t k, const BlowupContext& ctx,
    std::int64_t f_max, std::int64_t n_max, PositivityFilter filter) {
  std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> found;
  const std::size_t r = static_cast<std::size_t>(ctx.r);
  for (std::int64_t f = 0; f <= f_max; ++f) {
    const std::int64_t hi = (f == 0) ? 0 : n_max;
    std::vector<std::int64_t> tuple(r, -1);
    for (;;) {
      const DivisorClass d{f, tuple};
      const std::int64_t alpha = intersect(n, d);
      const bool filter_ok = filter == PositivityFilter::Ample ? alpha > 0
                             : filter == PositivityFilter::Nef ? alpha >= 0
                                                               : true;
      if (filter_ok && bfs_condition(n, d, k, ctx)) {
        std::vector<std::int64_t> canon = tuple;
        if (n.is_uniform()) {
          std::sort(canon.begin(), canon.end(), std::greater<>());
        }
        found.insert({f, canon});
      }
      std::size_t pos = 0;
      while (pos < r && tuple[pos] == hi) {
        tuple[pos] = -1;
        ++pos;
      }
      if (pos == r) break;
      ++tuple[pos];
    }
  }
  return found;
}

std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> scan_to_set(
    const ObstructionScan& scan) {
  std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> out;
  for (const ObstructionCandidate& c : scan.candidates) {
    out.insert({c.d_class.d, c.d_class.mults});
  }
  return out;
}

}  // namespace

TEST_CASE("bfs condition worked values") {
  const BlowupContext ctx(1, 2);
  // alpha = 1, beta = 0 at k = 0: N = 3H - 2E1 - E2 against D = H - E1.
  const DivisorClass n{3, {2, 1}};
  CHECK(intersect(n, DivisorClass{1, {1, 0}}) == 1);
  CHECK(bfs_condition(n, DivisorClass{1, {1, 0}}, 0, ctx));
  // alpha = 0, beta = -1 at k = 0: N = 3H - E2 against D = E1.
  const DivisorClass n2{3, {0, 1}};
  CHECK(intersect(n2, DivisorClass::exceptional(1, 2)) == 0);
  CHECK(bfs_condition(n2, DivisorClass::exceptional(1, 2), 0, ctx));
}

TEST_CASE("bfs condition rejects the quintic proper transform") {
  const BlowupContext ctx(5, 31);
  const DivisorClass n = DivisorClass::uniform(38, 6, 31);
  const DivisorClass c1 = curve_class(ctx);
  // N.C1 = 190 - 186 = 4, C1^2 = -6: 4 - 6 = -2 <= -6 fails.
  CHECK(intersect(n, c1) == 4);
  CHECK(self_intersection(c1) == -6);
  CHECK_FALSE(bfs_condition(n, c1, 5, ctx));
}

TEST_CASE("reider obstruction worked values") {
  const BlowupContext ctx(2, 5);
  const DivisorClass n = DivisorClass::uniform(8, 3, 5);  // (d+3)H - (m+1)sum E
  // D = E_i: alpha = m+1 = 3, beta = -1: neither case.
  CHECK_FALSE(reider_obstruction(n, DivisorClass::exceptional(1, 5), ctx));
  // alpha = 1, beta = 0 fires.
  const DivisorClass d{1, {1, 1, 1, 1, 1}};  // alpha = 8 - 15 = -7, beta = -4: no
  CHECK_FALSE(reider_obstruction(n, d, ctx));
  const DivisorClass good{1, {1, 0, 0, 0, 0}};  // alpha = 8 - 3 = 5: no
  CHECK_FALSE(reider_obstruction(n, good, ctx));
  const DivisorClass zero = DivisorClass::uniform(0, 0, 5);
  CHECK_FALSE(reider_obstruction(n, zero, ctx));

  const DivisorClass n2{3, {2, 1, 1, 0, 0}};
  // N2.D = 3 - 2 = 1 and D^2 = 0.
  CHECK(reider_obstruction(n2, DivisorClass{1, {1, 0, 0, 0, 0}}, ctx));
  // N2.E4 = 0 and E4^2 = -1.
  CHECK(reider_obstruction(n2, DivisorClass::exceptional(4, 5), ctx));
}

TEST_CASE("reider obstruction implies the k = 0 bfs condition, exhaustively") {
  const BlowupContext ctx(2, 2);
  int reider_hits = 0;
  for (std::int64_t nd = -3; nd <= 3; ++nd) {
    for (std::int64_t n1 = -3; n1 <= 3; ++n1) {
      for (std::int64_t n2 = -3; n2 <= 3; ++n2) {
        const DivisorClass n{nd, {n1, n2}};
        for (std::int64_t dd = -3; dd <= 3; ++dd) {
          for (std::int64_t d1 = -3; d1 <= 3; ++d1) {
            for (std::int64_t d2 = -3; d2 <= 3; ++d2) {
              const DivisorClass d{dd, {d1, d2}};
              if (reider_obstruction(n, d, ctx)) {
                ++reider_hits;
                CHECK(bfs_condition(n, d, 0, ctx));
              }
            }
          }
        }
      }
    }
  }
  CHECK(reider_hits > 0);  // the implication was not vacuous
}

TEST_CASE("enumeration: degenerate bounds give an empty scan") {
  const BlowupContext ctx(2, 3);
  const ObstructionScan scan =
      enumerate_obstructions(DivisorClass::uniform(5, 1, 3), 0, ctx, 0, 0);
  CHECK(scan.candidates.empty());
  CHECK(scan.nodes_visited > 0);
}

TEST_CASE("enumeration finds a hand-built candidate") {
  // N = 3H - 2E1 - E2 - E3 is not nef against C1 for e = 1 (3 - 4 < 0), so
  // no positivity filter applies; D = H - E1 has alpha = 1, beta = 0.
  const BlowupContext ctx(1, 3);
  const DivisorClass n{3, {2, 1, 1}};
  CHECK(check_nef(n, ctx).status != Status::Positive);
  const ObstructionScan scan = enumerate_obstructions(n, 0, ctx, 2, 2);
  CHECK(scan.filter == PositivityFilter::None);
  bool found = false;
  for (const ObstructionCandidate& c : scan.candidates) {
    if (c.d_class == DivisorClass{1, {1, 0, 0}}) {
      found = true;
      CHECK(c.alpha == 1);
      CHECK(c.beta == 0);
      CHECK(c.n == 1);
      CHECK_FALSE(c.n_ge_r);
      CHECK(c.c1_nonneg);  // D.C1 = 1 - 1 = 0
    }
  }
  CHECK(found);
}

TEST_CASE("enumeration agrees with the naive reference scan") {
  std::mt19937_64 rng(5500);
  std::uniform_int_distribution<std::int64_t> edist(1, 4), rdist(2, 5), ddist(-4, 12),
      mdist(-2, 4), kdist(0, 3), fdist(0, 3), ndist(0, 3);
  for (int t = 0; t < 60; ++t) {
    const std::int64_t r = rdist(rng);
    const BlowupContext ctx(edist(rng), r);
    DivisorClass n{ddist(rng), std::vector<std::int64_t>(static_cast<std::size_t>(r))};
    const bool uniform = t % 2 == 0;
    const std::int64_t m0 = mdist(rng);
    for (auto& m : n.mults) m = uniform ? m0 : mdist(rng);
    const std::int64_t k = kdist(rng);
    const std::int64_t f_max = fdist(rng);
    const std::int64_t n_max = ndist(rng);
    const ObstructionScan scan = enumerate_obstructions(n, k, ctx, f_max, n_max);
    CHECK(scan_to_set(scan) == naive_scan(n, k, ctx, f_max, n_max, scan.filter));
  }
}

TEST_CASE("instance check: e=2, r=7, m=1, d=5, k=1 with default bounds") {
  const BlowupContext ctx(2, 7);
  const DivisorClass l = DivisorClass::uniform(5, 1, 7);
  const DivisorClass n = adjoint_class(l, ctx);  // 8H - 2 sum E
  const ObstructionScan scan = enumerate_obstructions(n, 1, ctx);
  CHECK(scan.f_max == 4);
  CHECK(scan.n_max == 7);
  CHECK(scan.hypotheses_hold);
  CHECK(scan.filter == PositivityFilter::Ample);
  for (const ObstructionCandidate& c : scan.candidates) {
    CHECK_FALSE(c.n_ge_r);
    CHECK_FALSE(c.c1_nonneg);
  }
  // Cross-check against the unpruned reference at the same bounds.
  CHECK(scan_to_set(scan) == naive_scan(n, 1, ctx, 4, 7, scan.filter));
}

TEST_CASE("instance check: the quintic adjoint at desk-scale bounds") {
  const BlowupContext ctx(5, 31);
  const DivisorClass n = DivisorClass::uniform(38, 6, 31);  // adjoint of 35H - 5 sum E
  const ObstructionScan scan = enumerate_obstructions(n, 5, ctx, 5, 6);
  CHECK(scan.hypotheses_hold);
  for (const ObstructionCandidate& c : scan.candidates) {
    CHECK(c.n < 31);
    CHECK(intersect(c.d_class, curve_class(ctx)) < 0);
  }
}

TEST_CASE("enumeration budget failure is loud and structured") {
  const BlowupContext ctx(2, 12);
  const DivisorClass n = DivisorClass::uniform(9, 2, 12);
  EnumerationOptions options;
  options.f_max = 4;
  options.n_max = 12;
  options.max_nodes = 50;
  CHECK_THROWS_AS(enumerate_obstructions(n, 1, ctx, options), EnumerationLimit);
  try {
    enumerate_obstructions(n, 1, ctx, options);
  } catch (const EnumerationLimit& err) {
    CHECK(err.visited > 50);
    CHECK(!err.worst_case.empty());
  }
}

TEST_CASE("certificate verification") {
  const BlowupContext ctx(3, 10);
  const DivisorClass l = DivisorClass::uniform(7, 2, 10);
  const auto cert = effectivity_certificate(l, ctx);
  REQUIRE(cert.has_value());
  CHECK(bool(verify_certificate(*cert, l, ctx)));

  EffectivityCertificate negative = *cert;
  negative.terms[0].coefficient = -1;
  const CertificateCheck bad_coeff = verify_certificate(negative, l, ctx);
  CHECK_FALSE(bool(bad_coeff));
  CHECK(!bad_coeff.problems.empty());

  // Recomposing to L + H instead of L is reported with the coordinate.
  EffectivityCertificate shifted = *cert;
  shifted.terms.push_back({DivisorClass::uniform(1, 0, 10), 1});
  const CertificateCheck off = verify_certificate(shifted, l, ctx);
  CHECK_FALSE(bool(off));
  bool mentions_h = false;
  for (const std::string& p : off.problems) {
    if (p.find("H coordinate") != std::string::npos) mentions_h = true;
  }
  CHECK(mentions_h);

  // 2H - E1 is not on the generator list (2H needs exactly two E's for e=3).
  EffectivityCertificate bad_gen;
  DivisorClass g{2, std::vector<std::int64_t>(10, 0)};
  g.mults[0] = 1;
  bad_gen.terms.push_back({g, 1});
  CHECK_FALSE(bool(verify_certificate(bad_gen, DivisorClass{2, g.mults}, ctx)));
}

TEST_CASE("certify/verify round trip on random standard bundles") {
  std::mt19937_64 rng(5501);
  std::uniform_int_distribution<std::int64_t> edist(1, 6), rdist(1, 15), mdist(0, 20),
      pad(0, 25);
  for (int t = 0; t < 300; ++t) {
    const std::int64_t e = edist(rng), r = rdist(rng);
    const BlowupContext ctx(e, r);
    DivisorClass l{0, std::vector<std::int64_t>(static_cast<std::size_t>(r))};
    for (auto& m : l.mults) m = mdist(rng);
    l.d = sum_of_largest(l, e) + pad(rng);
    const auto cert = effectivity_certificate(l, ctx);
    REQUIRE(cert.has_value());
    CHECK(bool(verify_certificate(*cert, l, ctx)));
  }
}

TEST_CASE("uniform cross-check on worked examples") {
  const BlowupContext ctx(3, 10);
  CHECK(cross_check_uniform(DivisorClass::uniform(7, 2, 10), ctx).consistent());
  CHECK(cross_check_uniform(DivisorClass::uniform(6, 2, 10), ctx).consistent());
  const BlowupContext nine(3, 9);
  CHECK(cross_check_uniform(DivisorClass::uniform(20, 2, 9), nine).consistent());

  CHECK_THROWS_AS(cross_check_uniform(DivisorClass::uniform(5, 0, 10), ctx), DomainError);
  CHECK_THROWS_AS(cross_check_uniform(DivisorClass{5, {1, 2, 1, 1, 1, 1, 1, 1, 1, 1}}, ctx),
                  DomainError);
  const BlowupContext small(3, 8);
  CHECK_THROWS_AS(cross_check_uniform(DivisorClass::uniform(7, 2, 8), small), DomainError);
}

TEST_CASE("uniform cross-check stays consistent on random decidable inputs") {
  std::mt19937_64 rng(5502);
  std::uniform_int_distribution<std::int64_t> edist(1, 5), ddist(-10, 120), mdist(1, 9);
  for (int t = 0; t < 400; ++t) {
    const std::int64_t e = edist(rng);
    std::uniform_int_distribution<std::int64_t> rdist(e * e, e * e + 40);
    const std::int64_t r = rdist(rng);
    const BlowupContext ctx(e, r);
    const ConsistencyReport rep =
        cross_check_uniform(DivisorClass::uniform(ddist(rng), mdist(rng), r), ctx);
    CHECK(rep.consistent());
  }
}
