#pragma once

#include <cstdint>
#include <vector>

#include "picpos/lattice.hpp"

// Quadratic (Cremona) transformations of the Picard lattice, the greedy
// standardization loop for cubic-curve contexts, and a bounded breadth-first
// search for a standard form over arbitrary exceptional configurations.

namespace picpos {

/// A quadratic transform based at three distinct points, 1-based indices:
/// H -> 2H - E_i - E_j - E_k, E_i -> H - E_j - E_k (and cyclically),
/// all other E's fixed.
struct CremonaStep {
  std::size_t i = 0, j = 0, k = 0;

  bool operator==(const CremonaStep&) const = default;
};

enum class ReductionOutcome { Standard, Excellent, NotStandardizable, DepthExhausted };

std::string to_string(ReductionOutcome o);

/// A replayable sequence of Cremona steps: folding apply_cremona over
/// `steps` starting from `initial` yields `final_class` exactly.
struct ReductionTrace {
  DivisorClass initial;
  DivisorClass final_class;
  std::vector<CremonaStep> steps;
  ReductionOutcome outcome = ReductionOutcome::DepthExhausted;
};

/// Applies one quadratic transform. Requires r >= 3 and valid distinct
/// indices. The transform is an involution, preserves the intersection
/// form, and fixes the canonical class.
DivisorClass apply_cremona(const DivisorClass& l, const CremonaStep& step,
                           const BlowupContext& ctx);

/// Replays a trace from its initial class; used to validate traces.
DivisorClass replay(const ReductionTrace& trace, const BlowupContext& ctx);

/// Greedy standardization for e = 3: repeatedly applies the quadratic
/// transform at the three largest multiplicities until d >= m1+m2+m3
/// (outcome Standard, upgraded to Excellent when additionally L.C1 > 0)
/// or until d < 0 with the class still non-standard (NotStandardizable).
/// Terminates because each applied step strictly decreases d.
ReductionTrace reduce_to_standard_e3(const DivisorClass& l, const BlowupContext& ctx);

struct SearchStats {
  std::uint64_t nodes_expanded = 0;
  std::uint64_t nodes_generated = 0;
  std::uint64_t pruned_degree = 0;
  std::uint64_t pruned_negative = 0;
  std::int64_t depth_reached = 0;
  /// True when the frontier emptied before the depth cap: the orbit
  /// fragment reachable without leaving [0, max_degree] was explored
  /// completely.
  bool frontier_exhausted = false;
};

struct OrbitSearchResult {
  std::optional<ReductionTrace> trace;  // set iff a standard form was found
  SearchStats stats;

  bool found() const { return trace.has_value(); }
};

/// Breadth-first search over the orbit of `l` under quadratic transforms at
/// all index triples, canonicalizing by sorting multiplicities descending
/// (reindexing is part of exceptional-configuration equivalence). Stops as
/// soon as a node satisfies d >= sum of the e largest multiplicities and
/// returns the witnessing step sequence. Nodes with d < 0 or d > max_degree
/// are pruned after the goal test, so NotFound is a proof of nonexistence
/// only when stats.frontier_exhausted is set, and then only within the
/// degree window.
OrbitSearchResult orbit_search_standard(const DivisorClass& l,
                                        const BlowupContext& ctx,
                                        std::int64_t max_depth,
                                        std::int64_t max_degree);

/// Same, with max_degree defaulted to the input degree d: a step applied
/// where d already covers the three largest multiplicities cannot lower d,
/// so raising the cap above d only widens detours.
OrbitSearchResult orbit_search_standard(const DivisorClass& l,
                                        const BlowupContext& ctx,
                                        std::int64_t max_depth);

}  // namespace picpos
