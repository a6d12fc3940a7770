#include "picpos/cremona.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "picpos/checked.hpp"

namespace picpos {

namespace {

void validate_step(const CremonaStep& s, const BlowupContext& ctx) {
  if (ctx.r < 3) {
    throw DomainError("quadratic transforms need r >= 3, got r = " +
                      std::to_string(ctx.r));
  }
  const std::size_t r = static_cast<std::size_t>(ctx.r);
  for (std::size_t idx : {s.i, s.j, s.k}) {
    if (idx < 1 || idx > r) {
      throw DomainError("Cremona index " + std::to_string(idx) +
                        " out of range 1.." + std::to_string(r));
    }
  }
  if (s.i == s.j || s.i == s.k || s.j == s.k) {
    throw DomainError("Cremona indices must be distinct");
  }
}

/// 0-based positions of the three largest multiplicities, ties by index.
std::array<std::size_t, 3> top3_positions(const DivisorClass& l) {
  SortedMults s = sorted_multiplicities(l);
  return {s.order[0], s.order[1], s.order[2]};
}

}  // namespace

std::string to_string(ReductionOutcome o) {
  switch (o) {
    case ReductionOutcome::Standard: return "standard";
    case ReductionOutcome::Excellent: return "excellent";
    case ReductionOutcome::NotStandardizable: return "not-standardizable";
    case ReductionOutcome::DepthExhausted: return "depth-exhausted";
  }
  return "depth-exhausted";
}

DivisorClass apply_cremona(const DivisorClass& l, const CremonaStep& step,
                           const BlowupContext& ctx) {
  require_compatible(l, ctx);
  validate_step(step, ctx);
  const std::size_t a = step.i - 1, b = step.j - 1, c = step.k - 1;
  const std::int64_t ma = l.mults[a], mb = l.mults[b], mc = l.mults[c];
  DivisorClass out = l;
  // d' = 2d - ma - mb - mc, m_x' = d - (sum of the other two).
  out.d = checked_sub(checked_add(l.d, l.d), checked_add(ma, checked_add(mb, mc)));
  out.mults[a] = checked_sub(l.d, checked_add(mb, mc));
  out.mults[b] = checked_sub(l.d, checked_add(ma, mc));
  out.mults[c] = checked_sub(l.d, checked_add(ma, mb));
  return out;
}

DivisorClass replay(const ReductionTrace& trace, const BlowupContext& ctx) {
  DivisorClass cur = trace.initial;
  for (const CremonaStep& s : trace.steps) cur = apply_cremona(cur, s, ctx);
  return cur;
}

ReductionTrace reduce_to_standard_e3(const DivisorClass& l, const BlowupContext& ctx) {
  require_compatible(l, ctx);
  if (ctx.e != 3) {
    throw DomainError("standardization loop applies to e = 3 contexts only, got e = " +
                      std::to_string(ctx.e));
  }
  if (ctx.r < 3) {
    throw DomainError("standardization needs r >= 3, got r = " + std::to_string(ctx.r));
  }

  ReductionTrace trace;
  trace.initial = l;
  DivisorClass cur = l;
  for (;;) {
    const auto pos = top3_positions(cur);
    const std::int64_t top_sum = checked_add(
        cur.mults[pos[0]], checked_add(cur.mults[pos[1]], cur.mults[pos[2]]));
    if (cur.d >= top_sum) {
      trace.outcome = intersect(cur, curve_class(ctx)) > 0
                          ? ReductionOutcome::Excellent
                          : ReductionOutcome::Standard;
      break;
    }
    if (cur.d < 0) {
      // Non-standard with negative degree: no further step can recover
      // (d only decreases while non-standard).
      trace.outcome = ReductionOutcome::NotStandardizable;
      break;
    }
    // d < top_sum, so the step strictly decreases d; the loop terminates.
    CremonaStep step{pos[0] + 1, pos[1] + 1, pos[2] + 1};
    cur = apply_cremona(cur, step, ctx);
    trace.steps.push_back(step);
  }
  trace.final_class = cur;
  return trace;
}

namespace {

struct CanonKey {
  std::int64_t d;
  std::vector<std::int64_t> sorted_desc;

  bool operator<(const CanonKey& o) const {
    if (d != o.d) return d < o.d;
    return sorted_desc < o.sorted_desc;
  }
};

CanonKey canonical_key(const DivisorClass& c) {
  CanonKey k{c.d, c.mults};
  std::sort(k.sorted_desc.begin(), k.sorted_desc.end(), std::greater<>());
  return k;
}

bool is_standard_sorted(const CanonKey& k, std::int64_t e) {
  std::int64_t s = 0;
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(e),
                                                 k.sorted_desc.size());
  for (std::size_t i = 0; i < take; ++i) s = checked_add(s, k.sorted_desc[i]);
  return k.d >= s;
}

struct Node {
  CanonKey key;
  std::int64_t parent;          // index into the node pool, -1 for the root
  std::array<std::size_t, 3> step_positions;  // positions in the parent's sorted order
  std::int64_t depth;
};

}  // namespace

OrbitSearchResult orbit_search_standard(const DivisorClass& l,
                                        const BlowupContext& ctx,
                                        std::int64_t max_depth,
                                        std::int64_t max_degree) {
  require_compatible(l, ctx);
  if (ctx.r < 3) {
    throw DomainError("orbit search needs r >= 3, got r = " + std::to_string(ctx.r));
  }
  if (max_depth < 0) throw DomainError("max_depth must be >= 0");

  OrbitSearchResult result;
  std::vector<Node> pool;
  std::set<CanonKey> visited;
  std::deque<std::int64_t> frontier;

  auto finish_found = [&](std::int64_t node_idx) {
    // Reconstruct the chain of (sorted-position) steps root -> goal, then
    // re-derive concrete index triples on the actual (unsorted) classes.
    std::vector<std::array<std::size_t, 3>> chain;
    for (std::int64_t at = node_idx; pool[at].parent >= 0; at = pool[at].parent) {
      chain.push_back(pool[at].step_positions);
    }
    std::reverse(chain.begin(), chain.end());

    ReductionTrace trace;
    trace.initial = l;
    DivisorClass cur = l;
    for (const auto& positions : chain) {
      const SortedMults s = sorted_multiplicities(cur);
      CremonaStep step{s.order[positions[0]] + 1, s.order[positions[1]] + 1,
                       s.order[positions[2]] + 1};
      cur = apply_cremona(cur, step, ctx);
      trace.steps.push_back(step);
    }
    trace.final_class = cur;
    trace.outcome = ReductionOutcome::Standard;
    result.trace = std::move(trace);
  };

  const CanonKey root = canonical_key(l);
  if (is_standard_sorted(root, ctx.e)) {
    pool.push_back(Node{root, -1, {}, 0});
    finish_found(0);
    return result;
  }
  pool.push_back(Node{root, -1, {}, 0});
  visited.insert(root);
  frontier.push_back(0);

  const std::size_t r = static_cast<std::size_t>(ctx.r);
  while (!frontier.empty()) {
    const std::int64_t idx = frontier.front();
    frontier.pop_front();
    const std::int64_t depth = pool[idx].depth;
    if (depth >= max_depth) {
      // Depth cap reached with work remaining: the region was not closed.
      result.stats.frontier_exhausted = false;
      result.stats.depth_reached = std::max(result.stats.depth_reached, depth);
      return result;
    }
    result.stats.nodes_expanded++;

    // The node's class is sorted descending; steps at positions with equal
    // value triples coincide, so visit each distinct value triple once.
    const CanonKey parent_key = pool[idx].key;  // copy: pool may reallocate
    DivisorClass parent_class{parent_key.d, parent_key.sorted_desc};
    std::set<std::array<std::int64_t, 3>> seen_value_triples;
    for (std::size_t a = 0; a + 2 < r; ++a) {
      for (std::size_t b = a + 1; b + 1 < r; ++b) {
        for (std::size_t c = b + 1; c < r; ++c) {
          const std::array<std::int64_t, 3> vals{parent_key.sorted_desc[a],
                                                 parent_key.sorted_desc[b],
                                                 parent_key.sorted_desc[c]};
          if (!seen_value_triples.insert(vals).second) continue;
          const DivisorClass child =
              apply_cremona(parent_class, CremonaStep{a + 1, b + 1, c + 1}, ctx);
          CanonKey key = canonical_key(child);
          if (!visited.insert(key).second) continue;
          result.stats.nodes_generated++;
          result.stats.depth_reached = std::max(result.stats.depth_reached, depth + 1);
          if (is_standard_sorted(key, ctx.e)) {
            pool.push_back(Node{std::move(key), idx, {a, b, c}, depth + 1});
            finish_found(static_cast<std::int64_t>(pool.size()) - 1);
            return result;
          }
          if (key.d < 0) {
            result.stats.pruned_negative++;
            continue;
          }
          if (key.d > max_degree) {
            result.stats.pruned_degree++;
            continue;
          }
          pool.push_back(Node{std::move(key), idx, {a, b, c}, depth + 1});
          frontier.push_back(static_cast<std::int64_t>(pool.size()) - 1);
        }
      }
    }
  }
  result.stats.frontier_exhausted = true;
  return result;
}

OrbitSearchResult orbit_search_standard(const DivisorClass& l,
                                        const BlowupContext& ctx,
                                        std::int64_t max_depth) {
  return orbit_search_standard(l, ctx, max_depth, l.d);
}

}  // namespace picpos
