#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picpos/cremona.hpp"
#include "picpos/lattice.hpp"

namespace picpos {

enum class Status { Positive, Negative, Unknown };

enum class Property { Ample, Nef, Effective, GloballyGenerated, KVeryAmple };

std::string to_string(Status s);
std::string to_string(Property p);
std::optional<Status> status_from_string(const std::string& s);
std::optional<Property> property_from_string(const std::string& s);

enum class Rel { Lt, Le, Gt, Ge, Eq, Ne };

std::string to_string(Rel r);

/// One evaluated comparison, recorded as values so that it can be
/// re-checked from the transcript alone.
struct Inequality {
  std::string label;
  std::int64_t lhs = 0;
  Rel rel = Rel::Eq;
  std::int64_t rhs = 0;

  bool holds() const;
  std::string render() const;  // e.g. "L.C1: 1 > 0"
};

/// A nonnegative integer combination of known-effective generator classes
/// summing to the certified bundle. Generators are H, jH - (j distinct E's)
/// for j < e, eH - (i distinct E's) for e <= i <= r, and single E_i.
struct EffectivityCertificate {
  struct Term {
    DivisorClass generator;
    std::int64_t coefficient = 0;
  };
  std::vector<Term> terms;
};

std::string to_string(const EffectivityCertificate& cert);

/// Outcome of one positivity check. Positive and Negative are licensed by
/// the named criterion in `justification`; Unknown lists the failed
/// hypotheses in `annotations`. `details` holds every inequality that was
/// evaluated while deciding.
struct Verdict {
  Status status = Status::Unknown;
  Property property = Property::Ample;
  std::optional<std::int64_t> k;  // set for KVeryAmple
  std::string justification;
  std::vector<Inequality> details;
  std::optional<EffectivityCertificate> certificate;
  std::optional<ReductionTrace> trace;
  std::vector<std::string> annotations;
};

}  // namespace picpos
