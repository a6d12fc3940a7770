#include "picpos/verdict.hpp"

namespace picpos {

std::string to_string(Status s) {
  switch (s) {
    case Status::Positive: return "positive";
    case Status::Negative: return "negative";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Property p) {
  switch (p) {
    case Property::Ample: return "ample";
    case Property::Nef: return "nef";
    case Property::Effective: return "effective";
    case Property::GloballyGenerated: return "globally_generated";
    case Property::KVeryAmple: return "k_very_ample";
  }
  return "ample";
}

std::optional<Status> status_from_string(const std::string& s) {
  if (s == "positive") return Status::Positive;
  if (s == "negative") return Status::Negative;
  if (s == "unknown") return Status::Unknown;
  return std::nullopt;
}

std::optional<Property> property_from_string(const std::string& s) {
  if (s == "ample") return Property::Ample;
  if (s == "nef") return Property::Nef;
  if (s == "effective") return Property::Effective;
  if (s == "globally_generated") return Property::GloballyGenerated;
  if (s == "k_very_ample") return Property::KVeryAmple;
  return std::nullopt;
}

std::string to_string(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Gt: return ">";
    case Rel::Ge: return ">=";
    case Rel::Eq: return "==";
    case Rel::Ne: return "!=";
  }
  return "==";
}

bool Inequality::holds() const {
  switch (rel) {
    case Rel::Lt: return lhs < rhs;
    case Rel::Le: return lhs <= rhs;
    case Rel::Gt: return lhs > rhs;
    case Rel::Ge: return lhs >= rhs;
    case Rel::Eq: return lhs == rhs;
    case Rel::Ne: return lhs != rhs;
  }
  return false;
}

std::string Inequality::render() const {
  return label + ": " + std::to_string(lhs) + " " + to_string(rel) + " " +
         std::to_string(rhs) + (holds() ? "" : "  [fails]");
}

std::string to_string(const EffectivityCertificate& cert) {
  if (cert.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < cert.terms.size(); ++i) {
    if (i) out += " + ";
    out += std::to_string(cert.terms[i].coefficient) + "*(" +
           to_string(cert.terms[i].generator) + ")";
  }
  return out;
}

}  // namespace picpos
