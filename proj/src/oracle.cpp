#include "picpos/oracle.hpp"

#include <algorithm>

#include "picpos/checked.hpp"

namespace picpos {

namespace {

bool bfs_raw(std::int64_t alpha, std::int64_t beta, std::int64_t k) {
  // N.D - k - 1 <= D^2  and  2 D^2 < N.D  and  N.D < 2(k+1).
  return checked_sub(alpha, checked_add(k, 1)) <= beta &&
         checked_mul(2, beta) < alpha &&
         alpha < checked_mul(2, checked_add(k, 1));
}

}  // namespace

bool bfs_condition(const DivisorClass& n, const DivisorClass& d, std::int64_t k,
                   const BlowupContext& ctx) {
  require_compatible(n, ctx);
  require_compatible(d, ctx);
  if (k < 0) throw DomainError("k must be >= 0");
  return bfs_raw(intersect(n, d), self_intersection(d), k);
}

bool reider_obstruction(const DivisorClass& n, const DivisorClass& d,
                        const BlowupContext& ctx) {
  require_compatible(n, ctx);
  require_compatible(d, ctx);
  const std::int64_t alpha = intersect(n, d);
  const std::int64_t beta = self_intersection(d);
  return (alpha == 0 && beta == -1) || (alpha == 1 && beta == 0);
}

std::string to_string(PositivityFilter f) {
  switch (f) {
    case PositivityFilter::None: return "none";
    case PositivityFilter::Nef: return "nef";
    case PositivityFilter::Ample: return "ample";
  }
  return "none";
}

namespace {

using u128 = unsigned __int128;
constexpr u128 kU128Max = ~static_cast<u128>(0);

u128 sat_add(u128 a, u128 b) { return (a > kU128Max - b) ? kU128Max : a + b; }

u128 sat_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  if (a > kU128Max / b) return kU128Max;
  return a * b;
}

std::string u128_to_string(u128 v) {
  if (v == kU128Max) return "more than 10^38";
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

/// Saturating binomial coefficient.
u128 sat_binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 res = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    res = sat_mul(res, n - k + i);
    if (res == kU128Max) return kU128Max;
    res /= i;
  }
  return res;
}

std::string worst_case_count(std::int64_t r, std::int64_t f_max,
                             std::int64_t n_max, bool uniform) {
  const std::uint64_t values = static_cast<std::uint64_t>(n_max) + 2;
  u128 per_f;
  if (uniform) {
    per_f = sat_binom(static_cast<std::uint64_t>(r) + values - 1, values - 1);
  } else {
    per_f = 1;
    for (std::int64_t i = 0; i < r; ++i) per_f = sat_mul(per_f, values);
  }
  // The f = 0 slice only uses values {-1, 0}; the per-f count bounds it too.
  return u128_to_string(sat_mul(per_f, static_cast<std::uint64_t>(f_max) + 1));
}

/// Depth-first scan over candidate classes with interval-based pruning on
/// (N.D, D^2) feasibility.
class ScanEngine {
 public:
  ScanEngine(const DivisorClass& n, std::int64_t k, const BlowupContext& ctx,
             std::int64_t f_max, std::int64_t n_max, std::uint64_t budget,
             PositivityFilter filter, std::string worst_case)
      : n_(n), ctx_(ctx), k_(k), f_max_(f_max), n_max_(n_max), budget_(budget),
        filter_(filter), worst_case_(std::move(worst_case)),
        r_(static_cast<std::size_t>(ctx.r)), c1_(curve_class(ctx)) {}

  void run() {
    const auto um = n_.uniform_m();
    for (f_ = 0; f_ <= f_max_; ++f_) {
      base_alpha_ = checked_mul(n_.d, f_);
      f_sq_ = checked_mul(f_, f_);
      hi_ = (f_ == 0) ? 0 : n_max_;
      if (um) {
        uniform_b_ = *um;
        stack_.clear();
        scan_multisets(hi_, r_, 0, 0);
      } else {
        build_suffix_bounds();
        current_.assign(r_, 0);
        scan_tuples(0, base_alpha_, 0, 0);
      }
    }
    std::sort(out_.begin(), out_.end(),
              [](const ObstructionCandidate& a, const ObstructionCandidate& b) {
                if (a.d_class.d != b.d_class.d) return a.d_class.d < b.d_class.d;
                return a.d_class.mults < b.d_class.mults;
              });
  }

  std::vector<ObstructionCandidate>& candidates() { return out_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void tick() {
    if (++nodes_ > budget_) throw EnumerationLimit(nodes_, worst_case_);
  }

  bool passes(std::int64_t alpha, std::int64_t beta) const {
    if (filter_ == PositivityFilter::Ample && alpha <= 0) return false;
    if (filter_ == PositivityFilter::Nef && alpha < 0) return false;
    return bfs_raw(alpha, beta, k_);
  }

  /// Can any completion with alpha in [a_lo, a_hi], beta in [b_lo, b_hi]
  /// satisfy the obstruction inequalities and the positivity filter?
  bool feasible(std::int64_t a_lo, std::int64_t a_hi, std::int64_t b_lo,
                std::int64_t b_hi) const {
    std::int64_t hi = std::min(a_hi, checked_add(checked_mul(2, k_), 1));
    hi = std::min(hi, checked_add(b_hi, checked_add(k_, 1)));
    std::int64_t lo = a_lo;
    if (filter_ == PositivityFilter::Ample) lo = std::max<std::int64_t>(lo, 1);
    if (filter_ == PositivityFilter::Nef) lo = std::max<std::int64_t>(lo, 0);
    if (lo > hi) return false;
    if (checked_mul(2, b_lo) >= hi) return false;
    return true;
  }

  void push_candidate(DivisorClass d_class, std::int64_t alpha, std::int64_t beta,
                      std::int64_t n_sum) {
    ObstructionCandidate cand;
    cand.alpha = alpha;
    cand.beta = beta;
    cand.n = n_sum;
    cand.n_ge_r = n_sum >= ctx_.r;
    cand.c1_nonneg = intersect(d_class, c1_) >= 0;
    cand.d_class = std::move(d_class);
    out_.push_back(std::move(cand));
  }

  // ---- uniform N: iterate over multisets of multiplicities ----

  void scan_multisets(std::int64_t v, std::size_t slots, std::int64_t n_p,
                      std::int64_t q_p) {
    tick();
    if (v == -1) {
      const std::int64_t n_sum = checked_sub(n_p, static_cast<std::int64_t>(slots));
      const std::int64_t q = checked_add(q_p, static_cast<std::int64_t>(slots));
      emit_multiset(n_sum, q, slots);
      return;
    }
    for (std::size_t c = 0; c <= slots; ++c) {
      const std::int64_t cc = static_cast<std::int64_t>(c);
      const std::int64_t n2 = checked_add(n_p, checked_mul(cc, v));
      const std::int64_t q2 = checked_add(q_p, checked_mul(cc, checked_mul(v, v)));
      const std::int64_t rest = static_cast<std::int64_t>(slots - c);
      const std::int64_t w = v - 1;  // remaining values live in [-1, w]
      const std::int64_t n_lo = checked_sub(n2, rest);
      const std::int64_t n_hi = checked_add(n2, checked_mul(rest, w));
      const std::int64_t q_lo = checked_add(q2, (w >= 0) ? 0 : rest);
      const std::int64_t q_hi = checked_add(
          q2, checked_mul(rest, std::max<std::int64_t>(checked_mul(w, w), 1)));
      const std::int64_t x = checked_sub(base_alpha_, checked_mul(uniform_b_, n_lo));
      const std::int64_t y = checked_sub(base_alpha_, checked_mul(uniform_b_, n_hi));
      if (feasible(std::min(x, y), std::max(x, y), checked_sub(f_sq_, q_hi),
                   checked_sub(f_sq_, q_lo))) {
        stack_.push_back({v, c});
        scan_multisets(v - 1, slots - c, n2, q2);
        stack_.pop_back();
      }
    }
  }

  void emit_multiset(std::int64_t n_sum, std::int64_t q, std::size_t neg_slots) {
    const std::int64_t alpha = checked_sub(base_alpha_, checked_mul(uniform_b_, n_sum));
    const std::int64_t beta = checked_sub(f_sq_, q);
    if (!passes(alpha, beta)) return;
    DivisorClass d_class{f_, {}};
    d_class.mults.reserve(r_);
    for (const auto& [value, count] : stack_) {
      d_class.mults.insert(d_class.mults.end(), count, value);
    }
    d_class.mults.insert(d_class.mults.end(), neg_slots, -1);
    push_candidate(std::move(d_class), alpha, beta, n_sum);
  }

  // ---- general N: iterate over tuples position by position ----

  void build_suffix_bounds() {
    suf_lo_.assign(r_ + 1, 0);
    suf_hi_.assign(r_ + 1, 0);
    for (std::size_t i = r_; i-- > 0;) {
      // contribution of position i to alpha is -B_i * n_i, n_i in [-1, hi]
      const std::int64_t b = n_.mults[i];
      const std::int64_t at_neg1 = b;
      const std::int64_t at_hi = checked_mul(-b, hi_);
      suf_lo_[i] = checked_add(suf_lo_[i + 1], std::min(at_neg1, at_hi));
      suf_hi_[i] = checked_add(suf_hi_[i + 1], std::max(at_neg1, at_hi));
    }
  }

  void scan_tuples(std::size_t pos, std::int64_t a_p, std::int64_t n_p,
                   std::int64_t q_p) {
    tick();
    if (pos == r_) {
      const std::int64_t beta = checked_sub(f_sq_, q_p);
      if (passes(a_p, beta)) {
        push_candidate(DivisorClass{f_, current_}, a_p, beta, n_p);
      }
      return;
    }
    const std::int64_t rest = static_cast<std::int64_t>(r_ - pos - 1);
    const std::int64_t q_slot_max = std::max<std::int64_t>(checked_mul(hi_, hi_), 1);
    for (std::int64_t v = hi_; v >= -1; --v) {
      const std::int64_t a2 = checked_sub(a_p, checked_mul(n_.mults[pos], v));
      const std::int64_t n2 = checked_add(n_p, v);
      const std::int64_t q2 = checked_add(q_p, checked_mul(v, v));
      const std::int64_t q_hi = checked_add(q2, checked_mul(rest, q_slot_max));
      if (feasible(checked_add(a2, suf_lo_[pos + 1]),
                   checked_add(a2, suf_hi_[pos + 1]),
                   checked_sub(f_sq_, q_hi), checked_sub(f_sq_, q2))) {
        current_[pos] = v;
        scan_tuples(pos + 1, a2, n2, q2);
      }
    }
    current_[pos] = 0;
  }

  const DivisorClass& n_;
  const BlowupContext& ctx_;
  std::int64_t k_;
  std::int64_t f_max_;
  std::int64_t n_max_;
  std::uint64_t budget_;
  PositivityFilter filter_;
  std::string worst_case_;
  std::size_t r_;
  DivisorClass c1_;

  std::uint64_t nodes_ = 0;
  std::vector<ObstructionCandidate> out_;

  std::int64_t f_ = 0;
  std::int64_t base_alpha_ = 0;
  std::int64_t f_sq_ = 0;
  std::int64_t hi_ = 0;
  std::int64_t uniform_b_ = 0;
  std::vector<std::pair<std::int64_t, std::size_t>> stack_;
  std::vector<std::int64_t> current_;
  std::vector<std::int64_t> suf_lo_, suf_hi_;
};

}  // namespace

ObstructionScan enumerate_obstructions(const DivisorClass& n, std::int64_t k,
                                       const BlowupContext& ctx,
                                       const EnumerationOptions& options) {
  require_compatible(n, ctx);
  if (k < 0) throw DomainError("k must be >= 0");
  const std::int64_t f_max = options.f_max.value_or(checked_mul(2, ctx.e));
  const std::int64_t n_max = options.n_max.value_or(ctx.r);
  if (f_max < 0) throw DomainError("f_max must be >= 0");
  if (n_max < 0) throw DomainError("n_max must be >= 0");

  ObstructionScan scan;
  scan.f_max = f_max;
  scan.n_max = n_max;

  // Effectivity-necessary product filter: when N is certified ample, every
  // effective D != 0 satisfies N.D > 0 (>= 0 when merely nef), so classes
  // failing it cannot be realized by an effective divisor.
  if (check_ample(n, ctx).status == Status::Positive) {
    scan.filter = PositivityFilter::Ample;
  } else if (check_nef(n, ctx).status == Status::Positive) {
    scan.filter = PositivityFilter::Nef;
  }

  if (const auto b = n.uniform_m()) {
    // N = L - K for L = (A-3)H - (B-1) sum E_i; the exclusion propositions
    // assume r >= e^2+k+1, (d+3)e > r(m+1) and m >= k.
    const std::int64_t r_bound = checked_add(checked_mul(ctx.e, ctx.e), checked_add(k, 1));
    scan.hypotheses_hold = ctx.r >= r_bound &&
                           checked_mul(n.d, ctx.e) > checked_mul(ctx.r, *b) &&
                           checked_sub(*b, 1) >= k;
  }

  ScanEngine engine(n, k, ctx, f_max, n_max, options.max_nodes, scan.filter,
                    worst_case_count(ctx.r, f_max, n_max, n.is_uniform()));
  engine.run();
  scan.candidates = std::move(engine.candidates());
  scan.nodes_visited = engine.nodes();
  return scan;
}

ObstructionScan enumerate_obstructions(const DivisorClass& n, std::int64_t k,
                                       const BlowupContext& ctx,
                                       std::int64_t f_max, std::int64_t n_max) {
  EnumerationOptions options;
  options.f_max = f_max;
  options.n_max = n_max;
  return enumerate_obstructions(n, k, ctx, options);
}

namespace {

bool allowed_generator(const DivisorClass& g, const BlowupContext& ctx) {
  if (g.d == 0) {
    // A bare exceptional class E_i.
    std::size_t negs = 0;
    for (const std::int64_t m : g.mults) {
      if (m == -1) ++negs;
      else if (m != 0) return false;
    }
    return negs == 1;
  }
  if (g.d < 1) return false;
  std::int64_t ones = 0;
  for (const std::int64_t m : g.mults) {
    if (m == 1) ++ones;
    else if (m != 0) return false;
  }
  if (ones == 0) return g.d == 1;                           // H
  if (g.d <= ctx.e - 1) return ones == g.d;                 // jH - (j E's)
  if (g.d == ctx.e) return ones >= ctx.e && ones <= ctx.r;  // eH - (e..r E's)
  return false;
}

}  // namespace

CertificateCheck verify_certificate(const EffectivityCertificate& cert,
                                    const DivisorClass& l,
                                    const BlowupContext& ctx) {
  CertificateCheck res;
  auto fail = [&res](std::string msg) {
    res.ok = false;
    res.problems.push_back(std::move(msg));
  };

  if (l.r() != static_cast<std::size_t>(ctx.r)) {
    fail("bundle has " + std::to_string(l.r()) + " multiplicities, context has r = " +
         std::to_string(ctx.r));
    return res;
  }

  DivisorClass sum{0, std::vector<std::int64_t>(l.r(), 0)};
  for (std::size_t i = 0; i < cert.terms.size(); ++i) {
    const auto& term = cert.terms[i];
    if (term.coefficient < 0) {
      fail("term #" + std::to_string(i + 1) + " has negative coefficient " +
           std::to_string(term.coefficient));
    }
    if (term.generator.r() != l.r()) {
      fail("term #" + std::to_string(i + 1) + " has wrong dimension");
      continue;
    }
    if (!allowed_generator(term.generator, ctx)) {
      fail("term #" + std::to_string(i + 1) + " generator not on the allowed list: " +
           to_string(term.generator));
    }
    try {
      sum = sum + term.coefficient * term.generator;
    } catch (const OverflowError&) {
      fail("term #" + std::to_string(i + 1) + " overflows the recomposition");
      return res;
    }
  }

  if (sum.d != l.d) {
    fail("recomposition differs in the H coordinate: got " + std::to_string(sum.d) +
         ", expected " + std::to_string(l.d));
  }
  for (std::size_t i = 0; i < l.r(); ++i) {
    if (sum.mults[i] != l.mults[i]) {
      fail("recomposition differs at m_" + std::to_string(i + 1) + ": got " +
           std::to_string(sum.mults[i]) + ", expected " + std::to_string(l.mults[i]));
    }
  }
  return res;
}

ConsistencyReport cross_check_uniform(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  const auto m = l.uniform_m();
  if (!m) throw DomainError("cross_check_uniform requires a uniform bundle");
  if (*m <= 0) throw DomainError("cross_check_uniform requires m > 0");
  if (ctx.r < checked_mul(ctx.e, ctx.e)) {
    throw DomainError("cross_check_uniform requires r >= e^2");
  }

  ConsistencyReport report;
  report.ample = check_ample(l, ctx);
  report.ample_uniform = check_ample_uniform(l, ctx);
  report.nef = check_nef(l, ctx);

  const std::int64_t de = checked_mul(l.d, ctx.e);
  const std::int64_t rm = checked_mul(ctx.r, *m);
  const Status ample_expected = de > rm ? Status::Positive : Status::Negative;
  const Status nef_expected = de >= rm ? Status::Positive : Status::Negative;

  auto complain = [&report](std::string msg) {
    report.inconsistencies.push_back(std::move(msg));
  };
  if (report.ample.status != ample_expected) {
    complain("check_ample disagrees with the de vs rm ground truth");
  }
  if (report.ample_uniform.status != ample_expected) {
    complain("check_ample_uniform disagrees with the de vs rm ground truth");
  }
  if (report.nef.status != nef_expected) {
    complain("check_nef disagrees with the de vs rm ground truth");
  }
  if (report.ample.status == Status::Positive && report.nef.status != Status::Positive) {
    complain("ample Positive but nef not Positive");
  }
  if (report.nef.status == Status::Negative && report.ample.status != Status::Negative) {
    complain("nef Negative but ample not Negative");
  }
  return report;
}

}  // namespace picpos
