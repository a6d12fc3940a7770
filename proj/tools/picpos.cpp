// Command-line front end: positivity checks, effectivity certificates,
// standardization, orbit search, obstruction scans and parameter sweeps
// over bundles dH - sum(m_i E_i) on blow-ups of the plane at points of a
// degree-e curve. Machine-readable JSON by default, --pretty for text.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "picpos/cli.hpp"

namespace {

using nlohmann::json;
using namespace picpos;

struct BundleArgs {
  std::int64_t e = 0;
  std::int64_t r = 0;
  std::int64_t d = 0;
  std::optional<std::int64_t> m;
  std::string mults_spec;
  std::string collinear = "unknown";
  std::string genus = "unknown";
};

void add_bundle_options(CLI::App* cmd, BundleArgs& args, bool require_core) {
  auto* e = cmd->add_option("--e", args.e, "degree of the plane curve");
  auto* r = cmd->add_option("--r", args.r, "number of blown-up points");
  auto* d = cmd->add_option("--d", args.d, "coefficient of H");
  if (require_core) {
    e->required();
    r->required();
    d->required();
  }
  cmd->add_option("--m", args.m, "uniform multiplicity (shorthand for --mults mxr)");
  cmd->add_option("--mults", args.mults_spec,
                  "multiplicities, e.g. 3,3,2 or 3x13,1x4")
      ->excludes("--m");
  cmd->add_option("--collinear", args.collinear,
                  "are e of the points collinear: yes|no|unknown")
      ->check(CLI::IsMember({"yes", "no", "unknown"}));
  cmd->add_option("--positive-genus", args.genus,
                  "does the curve have positive genus: yes|no|unknown")
      ->check(CLI::IsMember({"yes", "no", "unknown"}));
}

json bundle_args_to_json(const BundleArgs& args) {
  json doc{{"e", args.e}, {"r", args.r}, {"d", args.d}};
  if (args.m) {
    doc["m"] = *args.m;
  } else if (!args.mults_spec.empty()) {
    doc["mults"] = args.mults_spec;
  } else {
    throw Error("one of --m or --mults is required");
  }
  doc["collinear"] = args.collinear;
  doc["positive_genus"] = args.genus;
  return doc;
}

/// Context + bundle for the non-check subcommands (no property list logic).
std::pair<BlowupContext, DivisorClass> parse_bundle(const BundleArgs& args) {
  const auto collinear = tri_state_from_string(args.collinear);
  const auto genus = tri_state_from_string(args.genus);
  BlowupContext ctx(args.e, args.r, *collinear, *genus);
  std::vector<std::int64_t> mults;
  if (args.m) {
    mults.assign(static_cast<std::size_t>(args.r), *args.m);
  } else if (!args.mults_spec.empty()) {
    mults = cli::parse_mults_spec(args.mults_spec);
  } else {
    throw Error("one of --m or --mults is required");
  }
  if (mults.size() != static_cast<std::size_t>(args.r)) {
    throw Error("--mults has " + std::to_string(mults.size()) +
                " entries but r = " + std::to_string(args.r));
  }
  return {ctx, DivisorClass{args.d, std::move(mults)}};
}

json request_echo(const BundleArgs& args, const DivisorClass& l) {
  return json{{"e", args.e},
              {"r", args.r},
              {"collinear", args.collinear},
              {"positive_genus", args.genus},
              {"d", l.d},
              {"mults", l.mults}};
}

void emit(const json& report, bool pretty, const std::string& pretty_text) {
  if (pretty) {
    std::cout << pretty_text;
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

int run_check_cmd(const std::string& file, const BundleArgs& args,
                  std::optional<std::int64_t> k, bool pretty,
                  const std::vector<std::string>& expects) {
  cli::CheckRequest req;
  if (!file.empty()) {
    req = cli::load_check_request(file);
  } else {
    json doc = bundle_args_to_json(args);
    if (k) doc["k"] = *k;
    req = cli::check_request_from_json(doc);
  }
  const json report = cli::run_check(req);
  emit(report, pretty, cli::render_check_pretty(report));
  const auto failures = cli::check_expectations(report, expects);
  if (!failures.empty()) {
    for (const std::string& f : failures) std::cerr << "expectation failed: " << f << "\n";
    return 3;
  }
  return 0;
}

int run_certify_cmd(const BundleArgs& args, bool pretty) {
  const auto [ctx, l] = parse_bundle(args);
  const Verdict v = certify_effective(l, ctx);
  json report{{"schema", cli::kSchemaVersion},
              {"command", "certify-effective"},
              {"request", request_echo(args, l)},
              {"verdict", cli::verdict_to_json(v)}};
  std::string text = "effective: " + to_string(v.status) + "\n";
  if (v.certificate) text += "  L = " + to_string(*v.certificate) + "\n";
  emit(report, pretty, text);
  return 0;
}

int run_standardize_cmd(const BundleArgs& args, bool pretty) {
  const auto [ctx, l] = parse_bundle(args);
  const ReductionTrace trace = reduce_to_standard_e3(l, ctx);
  json report{{"schema", cli::kSchemaVersion},
              {"command", "standardize"},
              {"request", request_echo(args, l)},
              {"trace", cli::trace_to_json(trace)}};
  std::string text = "outcome: " + to_string(trace.outcome) + "\n" +
                     "initial: " + to_string(trace.initial) + "\n";
  for (const CremonaStep& s : trace.steps) {
    text += "  step (" + std::to_string(s.i) + "," + std::to_string(s.j) + "," +
            std::to_string(s.k) + ")\n";
  }
  text += "final:   " + to_string(trace.final_class) + "\n";
  emit(report, pretty, text);
  return 0;
}

int run_orbit_cmd(const BundleArgs& args, std::int64_t depth,
                  std::optional<std::int64_t> degree_cap, bool pretty) {
  const auto [ctx, l] = parse_bundle(args);
  const OrbitSearchResult res =
      orbit_search_standard(l, ctx, depth, degree_cap.value_or(l.d));
  json stats{{"nodes_expanded", res.stats.nodes_expanded},
             {"nodes_generated", res.stats.nodes_generated},
             {"pruned_degree", res.stats.pruned_degree},
             {"pruned_negative", res.stats.pruned_negative},
             {"depth_reached", res.stats.depth_reached},
             {"frontier_exhausted", res.stats.frontier_exhausted}};
  json report{{"schema", cli::kSchemaVersion},
              {"command", "orbit-search"},
              {"request", request_echo(args, l)},
              {"depth", depth},
              {"degree_cap", degree_cap.value_or(l.d)},
              {"found", res.found()},
              {"stats", stats}};
  if (res.trace) report["trace"] = cli::trace_to_json(*res.trace);
  std::string text = res.found()
      ? "found a standard form in " + std::to_string(res.trace->steps.size()) + " step(s): " +
            to_string(res.trace->final_class) + "\n"
      : std::string("no standard form found") +
            (res.stats.frontier_exhausted ? " (orbit fragment within the degree cap exhausted)"
                                          : " (depth cap reached)") + "\n";
  emit(report, pretty, text);
  return 0;
}

int run_oracle_enumerate_cmd(const BundleArgs& args, std::int64_t k,
                             std::optional<std::int64_t> f_max,
                             std::optional<std::int64_t> n_max, bool pretty) {
  const auto [ctx, l] = parse_bundle(args);
  const DivisorClass n = adjoint_class(l, ctx);
  EnumerationOptions options;
  options.f_max = f_max;
  options.n_max = n_max;
  const ObstructionScan scan = enumerate_obstructions(n, k, ctx, options);
  json cands = json::array();
  for (const ObstructionCandidate& c : scan.candidates) {
    cands.push_back(json{{"d_class", cli::divisor_to_json(c.d_class)},
                         {"alpha", c.alpha},
                         {"beta", c.beta},
                         {"n", c.n},
                         {"n_ge_r", c.n_ge_r},
                         {"c1_nonneg", c.c1_nonneg}});
  }
  json report{{"schema", cli::kSchemaVersion},
              {"command", "oracle-enumerate"},
              {"request", request_echo(args, l)},
              {"k", k},
              {"f_max", scan.f_max},
              {"n_max", scan.n_max},
              {"adjoint", cli::divisor_to_json(n)},
              {"filter", to_string(scan.filter)},
              {"hypotheses_hold", scan.hypotheses_hold},
              {"nodes_visited", scan.nodes_visited},
              {"candidates", cands}};
  std::string text = "adjoint N = " + to_string(n) + "\n" +
                     "filter: " + to_string(scan.filter) +
                     ", hypotheses_hold: " + (scan.hypotheses_hold ? "yes" : "no") + "\n" +
                     std::to_string(scan.candidates.size()) + " candidate(s)\n";
  for (const ObstructionCandidate& c : scan.candidates) {
    text += "  D = " + to_string(c.d_class) + "  N.D=" + std::to_string(c.alpha) +
            " D^2=" + std::to_string(c.beta) + " n=" + std::to_string(c.n) +
            (c.n_ge_r ? " [n>=r]" : "") + (c.c1_nonneg ? " [D.C1>=0]" : "") + "\n";
  }
  emit(report, pretty, text);
  return 0;
}

int run_sweep_cmd(const std::string& e_spec, const std::string& r_spec,
                  const std::string& d_spec, const std::string& m_spec,
                  const std::string& k_spec, const std::string& collinear,
                  const std::string& genus, const std::string& format,
                  unsigned jobs) {
  cli::SweepRequest req;
  req.e = cli::parse_range(e_spec);
  req.r = cli::parse_range(r_spec);
  req.d = cli::parse_range(d_spec);
  req.m = cli::parse_range(m_spec);
  if (!k_spec.empty()) req.k = cli::parse_range(k_spec);
  req.collinear = *tri_state_from_string(collinear);
  req.positive_genus = *tri_state_from_string(genus);
  req.jobs = jobs;
  const auto rows = cli::run_sweep(req);
  std::cout << (format == "jsonl" ? cli::sweep_to_jsonl(rows) : cli::sweep_to_csv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positivity checks for line bundles on blow-ups of the plane "
               "at smooth points of a degree-e curve"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand(
      "check", "evaluate positivity properties of one bundle");
  std::string check_file;
  check->add_option("file", check_file, "request file (.json or .toml)")
      ->check(CLI::ExistingFile);
  BundleArgs check_args;
  add_bundle_options(check, check_args, /*require_core=*/false);
  std::optional<std::int64_t> check_k;
  check->add_option("--k", check_k, "k for k-very-ampleness");
  bool check_pretty = false;
  check->add_flag("--pretty", check_pretty, "human-readable output");
  std::vector<std::string> expects;
  check->add_option("--expect", expects,
                    "assert property=status (exit 3 on mismatch)");

  // certify-effective
  auto* certify = app.add_subcommand(
      "certify-effective", "build an explicit effectivity certificate");
  BundleArgs certify_args;
  add_bundle_options(certify, certify_args, true);
  bool certify_pretty = false;
  certify->add_flag("--pretty", certify_pretty, "human-readable output");

  // standardize
  auto* standardize = app.add_subcommand(
      "standardize", "reduce an e=3 bundle to standard form by quadratic transforms");
  BundleArgs std_args;
  add_bundle_options(standardize, std_args, true);
  bool std_pretty = false;
  standardize->add_flag("--pretty", std_pretty, "human-readable output");

  // orbit-search
  auto* orbit = app.add_subcommand(
      "orbit-search", "search the quadratic-transform orbit for a standard form");
  BundleArgs orbit_args;
  add_bundle_options(orbit, orbit_args, true);
  std::int64_t orbit_depth = 32;
  orbit->add_option("--depth", orbit_depth, "depth cap (default 32)");
  std::optional<std::int64_t> orbit_cap;
  orbit->add_option("--degree-cap", orbit_cap, "degree cap (default: input d)");
  bool orbit_pretty = false;
  orbit->add_flag("--pretty", orbit_pretty, "human-readable output");

  // oracle enumerate
  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  oracle->require_subcommand(1);
  auto* enumerate = oracle->add_subcommand(
      "enumerate", "scan for obstruction classes against the adjoint N = L - K");
  BundleArgs enum_args;
  add_bundle_options(enumerate, enum_args, true);
  std::int64_t enum_k = 0;
  enumerate->add_option("--k", enum_k, "separation order k")->required();
  std::optional<std::int64_t> enum_f_max, enum_n_max;
  enumerate->add_option("--f-max", enum_f_max, "degree bound on candidates (default 2e)");
  enumerate->add_option("--n-max", enum_n_max, "multiplicity bound on candidates (default r)");
  bool enum_pretty = false;
  enumerate->add_flag("--pretty", enum_pretty, "human-readable output");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "evaluate a grid of uniform bundles (ranges: INT, LO..HI or LO..HI..STEP)");
  std::string sw_e = "1", sw_r = "1", sw_d = "0", sw_m = "0", sw_k;
  sweep->add_option("--e", sw_e, "curve degree range")->required();
  sweep->add_option("--r", sw_r, "point count range")->required();
  sweep->add_option("--d", sw_d, "degree range")->required();
  sweep->add_option("--m", sw_m, "multiplicity range")->required();
  sweep->add_option("--k", sw_k, "k range (adds the k_very_ample column)");
  std::string sw_collinear = "unknown", sw_genus = "unknown";
  sweep->add_option("--collinear", sw_collinear)->check(CLI::IsMember({"yes", "no", "unknown"}));
  sweep->add_option("--positive-genus", sw_genus)->check(CLI::IsMember({"yes", "no", "unknown"}));
  std::string sw_format = "csv";
  sweep->add_option("--format", sw_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  unsigned sw_jobs = 0;
  sweep->add_option("--jobs", sw_jobs, "worker threads (default: auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      if (check_file.empty() && check->count("--e") == 0) {
        std::cerr << "error: provide a request file or --e/--r/--d flags\n";
        return 2;
      }
      return run_check_cmd(check_file, check_args, check_k, check_pretty, expects);
    }
    if (certify->parsed()) return run_certify_cmd(certify_args, certify_pretty);
    if (standardize->parsed()) return run_standardize_cmd(std_args, std_pretty);
    if (orbit->parsed()) {
      return run_orbit_cmd(orbit_args, orbit_depth, orbit_cap, orbit_pretty);
    }
    if (oracle->parsed() && enumerate->parsed()) {
      return run_oracle_enumerate_cmd(enum_args, enum_k, enum_f_max, enum_n_max,
                                      enum_pretty);
    }
    if (sweep->parsed()) {
      return run_sweep_cmd(sw_e, sw_r, sw_d, sw_m, sw_k, sw_collinear, sw_genus,
                           sw_format, sw_jobs);
    }
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
