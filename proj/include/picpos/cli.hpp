#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "picpos/cremona.hpp"
#include "picpos/oracle.hpp"

// Request parsing, evaluation and report building behind the command-line
// tool. Everything here is a pure function of its inputs so the CLI surface
// can be tested without spawning processes. Reports are JSON documents with
// a top-level "schema": 1.

namespace picpos::cli {

inline constexpr int kSchemaVersion = 1;

struct CheckRequest {
  std::int64_t e = 1;
  std::int64_t r = 1;
  TriState collinear = TriState::Unknown;
  TriState positive_genus = TriState::Unknown;
  std::int64_t d = 0;
  std::vector<std::int64_t> mults;  // always expanded to length r
  std::vector<Property> properties;
  std::optional<std::int64_t> k;
  std::optional<std::int64_t> f_max;
  std::optional<std::int64_t> n_max;

  BlowupContext context() const;
  DivisorClass bundle() const;
};

/// Expands "3x13,1x4" / "3,3,2" style multiplicity lists.
std::vector<std::int64_t> parse_mults_spec(const std::string& spec);

/// Builds a request from a parsed document ({"e":..,"r":..,"d":..,"m" or
/// "mults":..,...}). The uniform shorthand {d, m, r} is expanded; when
/// "properties" is absent the default set is effective, nef and ample,
/// plus globally_generated for uniform m >= 0 and k_very_ample when k is
/// given. Enforces that k is present iff k_very_ample is requested.
CheckRequest check_request_from_json(const nlohmann::json& doc);

/// Loads a .json or .toml request file (format chosen by extension).
CheckRequest load_check_request(const std::string& path);

Verdict evaluate_property(Property p, const CheckRequest& req);

/// Full check report: {"schema":1,"command":"check","request":{...},
/// "verdicts":[...]}. Re-parsing the embedded request and re-running
/// reproduces the verdicts bit for bit.
nlohmann::json run_check(const CheckRequest& req);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json divisor_to_json(const DivisorClass& c);
nlohmann::json trace_to_json(const ReductionTrace& t);
nlohmann::json request_to_json(const CheckRequest& req);

std::string render_check_pretty(const nlohmann::json& report);

/// "property=status" assertions for CI fixtures; returns the failures
/// (empty means all expectations met).
std::vector<std::string> check_expectations(const nlohmann::json& report,
                                            const std::vector<std::string>& expects);

// ---- sweep ----

struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t step = 1;

  std::uint64_t count() const;
};

/// Parses "5", "30..40" or "30..40..2".
Range parse_range(const std::string& spec);

struct SweepRequest {
  Range d{0, 0, 1};
  Range m{0, 0, 1};
  Range r{1, 1, 1};
  Range e{1, 1, 1};
  std::optional<Range> k;
  TriState collinear = TriState::Unknown;
  TriState positive_genus = TriState::Unknown;
  std::uint64_t grid_cap = 0;  // 0 = use default_grid_cap()
  unsigned jobs = 0;           // 0 = auto
};

/// PICPOS_GRID_CAP, or 250000 when unset/invalid.
std::uint64_t default_grid_cap();

struct SweepRow {
  std::int64_t e = 0, r = 0, d = 0, m = 0;
  std::optional<std::int64_t> k;
  // Status strings per property; "n/a" when the property does not apply.
  std::string effective, nef, ample, globally_generated, k_very_ample;
  std::optional<std::string> error;
};

/// Evaluates the grid in lexicographic (d, m, r, e, k) order. Rows are
/// produced deterministically regardless of the worker count. Throws when
/// the grid exceeds the cap.
std::vector<SweepRow> run_sweep(const SweepRequest& req);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::string sweep_to_jsonl(const std::vector<SweepRow>& rows);

}  // namespace picpos::cli
