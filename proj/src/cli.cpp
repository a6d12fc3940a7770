#include "picpos/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "picpos/checked.hpp"
#include "picpos/toml_lite.hpp"

namespace picpos::cli {

using nlohmann::json;

BlowupContext CheckRequest::context() const {
  return BlowupContext(e, r, collinear, positive_genus);
}

DivisorClass CheckRequest::bundle() const { return DivisorClass{d, mults}; }

std::vector<std::int64_t> parse_mults_spec(const std::string& spec) {
  std::vector<std::int64_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error("empty entry in multiplicity list '" + spec + "'");
    std::int64_t value = 0;
    std::int64_t repeat = 1;
    const std::size_t x = item.find('x');
    try {
      if (x == std::string::npos) {
        value = std::stoll(item);
      } else {
        value = std::stoll(item.substr(0, x));
        repeat = std::stoll(item.substr(x + 1));
      }
    } catch (...) {
      throw Error("invalid multiplicity entry '" + item + "' (expected INT or INTxCOUNT)");
    }
    if (repeat < 0) throw Error("negative repeat count in '" + item + "'");
    out.insert(out.end(), static_cast<std::size_t>(repeat), value);
  }
  return out;
}

namespace {

std::int64_t require_int(const json& doc, const std::string& field) {
  if (!doc.contains(field)) throw Error("missing required field '" + field + "'");
  if (!doc[field].is_number_integer()) {
    throw Error("field '" + field + "' must be an integer");
  }
  return doc[field].get<std::int64_t>();
}

std::optional<std::int64_t> optional_int(const json& doc, const std::string& field) {
  if (!doc.contains(field)) return std::nullopt;
  if (!doc[field].is_number_integer()) {
    throw Error("field '" + field + "' must be an integer");
  }
  return doc[field].get<std::int64_t>();
}

TriState tri_state_field(const json& doc, const std::string& field) {
  if (!doc.contains(field)) return TriState::Unknown;
  if (!doc[field].is_string()) {
    throw Error("field '" + field + "' must be one of \"yes\", \"no\", \"unknown\"");
  }
  const auto t = tri_state_from_string(doc[field].get<std::string>());
  if (!t) {
    throw Error("field '" + field + "' must be one of \"yes\", \"no\", \"unknown\"");
  }
  return *t;
}

}  // namespace

CheckRequest check_request_from_json(const json& doc) {
  if (!doc.is_object()) throw Error("request document must be an object");
  CheckRequest req;
  req.e = require_int(doc, "e");
  req.r = require_int(doc, "r");
  req.d = require_int(doc, "d");
  req.collinear = tri_state_field(doc, "collinear");
  req.positive_genus = tri_state_field(doc, "positive_genus");

  const bool has_m = doc.contains("m");
  const bool has_mults = doc.contains("mults");
  if (has_m == has_mults) {
    throw Error("exactly one of 'm' (uniform shorthand) or 'mults' is required");
  }
  if (has_m) {
    if (req.r < 1) throw Error("field 'r' must be >= 1");
    req.mults.assign(static_cast<std::size_t>(req.r), require_int(doc, "m"));
  } else {
    const json& arr = doc["mults"];
    if (arr.is_string()) {
      req.mults = parse_mults_spec(arr.get<std::string>());
    } else if (arr.is_array()) {
      for (const auto& v : arr) {
        if (!v.is_number_integer()) throw Error("field 'mults' must hold integers");
        req.mults.push_back(v.get<std::int64_t>());
      }
    } else {
      throw Error("field 'mults' must be an array or a spec string");
    }
    if (req.mults.size() != static_cast<std::size_t>(req.r)) {
      throw Error("'mults' has " + std::to_string(req.mults.size()) +
                  " entries but r = " + std::to_string(req.r));
    }
  }

  req.k = optional_int(doc, "k");
  if (req.k && *req.k < 0) throw Error("field 'k' must be >= 0");
  req.f_max = optional_int(doc, "f_max");
  req.n_max = optional_int(doc, "n_max");

  if (doc.contains("properties")) {
    if (!doc["properties"].is_array()) {
      throw Error("field 'properties' must be an array of property names");
    }
    for (const auto& p : doc["properties"]) {
      if (!p.is_string()) throw Error("field 'properties' must hold strings");
      const auto prop = property_from_string(p.get<std::string>());
      if (!prop) throw Error("unknown property '" + p.get<std::string>() + "'");
      req.properties.push_back(*prop);
    }
  } else {
    req.properties = {Property::Effective, Property::Nef, Property::Ample};
    const DivisorClass l = req.bundle();
    if (l.uniform_m().value_or(-1) >= 0) {
      req.properties.push_back(Property::GloballyGenerated);
    }
    if (req.k) req.properties.push_back(Property::KVeryAmple);
  }

  const bool wants_kva =
      std::find(req.properties.begin(), req.properties.end(), Property::KVeryAmple) !=
      req.properties.end();
  if (wants_kva && !req.k) {
    throw Error("property 'k_very_ample' requires field 'k'");
  }
  if (!wants_kva && req.k) {
    throw Error("field 'k' given but 'k_very_ample' is not among the requested properties");
  }

  req.context();  // validates e >= 1, r >= 1
  return req;
}

CheckRequest load_check_request(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open request file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  json doc;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") {
    doc = parse_toml_lite(text);
  } else if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& err) {
      throw Error("JSON parse error in '" + path + "': " + err.what());
    }
  } else {
    throw Error("request file '" + path + "' must end in .json or .toml");
  }
  return check_request_from_json(doc);
}

Verdict evaluate_property(Property p, const CheckRequest& req) {
  const BlowupContext ctx = req.context();
  const DivisorClass l = req.bundle();
  switch (p) {
    case Property::Effective: return certify_effective(l, ctx);
    case Property::Nef: return check_nef(l, ctx);
    case Property::Ample: return check_ample(l, ctx);
    case Property::GloballyGenerated: return check_globally_generated(l, ctx);
    case Property::KVeryAmple:
      if (!req.k) throw Error("k_very_ample requested without k");
      return check_k_very_ample(l, ctx, *req.k);
  }
  throw Error("unreachable property");
}

json divisor_to_json(const DivisorClass& c) {
  return json{{"d", c.d}, {"mults", c.mults}, {"display", to_string(c)}};
}

json trace_to_json(const ReductionTrace& t) {
  json steps = json::array();
  for (const CremonaStep& s : t.steps) {
    steps.push_back(json{{"i", s.i}, {"j", s.j}, {"k", s.k}});
  }
  return json{{"outcome", to_string(t.outcome)},
              {"initial", divisor_to_json(t.initial)},
              {"final", divisor_to_json(t.final_class)},
              {"steps", steps}};
}

json verdict_to_json(const Verdict& v) {
  json details = json::array();
  for (const Inequality& q : v.details) {
    details.push_back(json{{"label", q.label},
                           {"lhs", q.lhs},
                           {"rel", to_string(q.rel)},
                           {"rhs", q.rhs},
                           {"holds", q.holds()}});
  }
  json out{{"property", to_string(v.property)},
           {"status", to_string(v.status)},
           {"justification", v.justification},
           {"details", details},
           {"annotations", v.annotations}};
  if (v.k) out["k"] = *v.k;
  if (v.certificate) {
    json terms = json::array();
    for (const auto& term : v.certificate->terms) {
      terms.push_back(json{{"coefficient", term.coefficient},
                           {"generator", divisor_to_json(term.generator)}});
    }
    out["certificate"] = json{{"terms", terms},
                              {"display", to_string(*v.certificate)}};
  }
  if (v.trace) out["trace"] = trace_to_json(*v.trace);
  return out;
}

json request_to_json(const CheckRequest& req) {
  json props = json::array();
  for (Property p : req.properties) props.push_back(to_string(p));
  json out{{"e", req.e},
           {"r", req.r},
           {"collinear", to_string(req.collinear)},
           {"positive_genus", to_string(req.positive_genus)},
           {"d", req.d},
           {"mults", req.mults},
           {"properties", props}};
  if (req.k) out["k"] = *req.k;
  if (req.f_max) out["f_max"] = *req.f_max;
  if (req.n_max) out["n_max"] = *req.n_max;
  return out;
}

json run_check(const CheckRequest& req) {
  json verdicts = json::array();
  for (Property p : req.properties) {
    verdicts.push_back(verdict_to_json(evaluate_property(p, req)));
  }
  return json{{"schema", kSchemaVersion},
              {"command", "check"},
              {"request", request_to_json(req)},
              {"verdicts", verdicts}};
}

std::string render_check_pretty(const json& report) {
  std::ostringstream out;
  const json& req = report["request"];
  out << "bundle  L = " << req["d"].get<std::int64_t>() << "H - sum(m_i E_i), r = "
      << req["r"].get<std::int64_t>() << ", e = " << req["e"].get<std::int64_t>() << "\n";
  out << "flags   collinear = " << req["collinear"].get<std::string>()
      << ", positive_genus = " << req["positive_genus"].get<std::string>() << "\n\n";
  for (const json& v : report["verdicts"]) {
    std::string name = v["property"].get<std::string>();
    if (v.contains("k")) name += "(k=" + std::to_string(v["k"].get<std::int64_t>()) + ")";
    out << name << ": " << v["status"].get<std::string>() << "  ["
        << v["justification"].get<std::string>() << "]\n";
    for (const json& d : v["details"]) {
      out << "    " << d["label"].get<std::string>() << ": "
          << d["lhs"].get<std::int64_t>() << " " << d["rel"].get<std::string>() << " "
          << d["rhs"].get<std::int64_t>()
          << (d["holds"].get<bool>() ? "" : "  [fails]") << "\n";
    }
    for (const json& a : v["annotations"]) {
      out << "    note: " << a.get<std::string>() << "\n";
    }
    if (v.contains("certificate")) {
      out << "    certificate: " << v["certificate"]["display"].get<std::string>() << "\n";
    }
    if (v.contains("trace")) {
      out << "    reduction: " << v["trace"]["outcome"].get<std::string>() << " after "
          << v["trace"]["steps"].size() << " step(s)\n";
    }
  }
  return out.str();
}

std::vector<std::string> check_expectations(const json& report,
                                            const std::vector<std::string>& expects) {
  std::vector<std::string> failures;
  for (const std::string& expect : expects) {
    const std::size_t eq = expect.find('=');
    if (eq == std::string::npos) {
      failures.push_back("malformed expectation '" + expect + "' (want property=status)");
      continue;
    }
    const std::string prop = expect.substr(0, eq);
    const std::string status = expect.substr(eq + 1);
    if (!property_from_string(prop)) {
      failures.push_back("unknown property in expectation '" + expect + "'");
      continue;
    }
    if (!status_from_string(status)) {
      failures.push_back("unknown status in expectation '" + expect + "'");
      continue;
    }
    bool found = false;
    for (const json& v : report["verdicts"]) {
      if (v["property"].get<std::string>() == prop) {
        found = true;
        const std::string got = v["status"].get<std::string>();
        if (got != status) {
          failures.push_back("expected " + prop + "=" + status + ", got " + got);
        }
        break;
      }
    }
    if (!found) {
      failures.push_back("expected " + prop + "=" + status +
                         " but the property was not evaluated");
    }
  }
  return failures;
}

// ---- sweep ----

std::uint64_t Range::count() const {
  if (step < 1) throw Error("range step must be >= 1");
  if (hi < lo) return 0;
  return static_cast<std::uint64_t>((hi - lo) / step) + 1;
}

Range parse_range(const std::string& spec) {
  const std::size_t dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      const std::int64_t v = std::stoll(spec);
      return Range{v, v, 1};
    }
    Range rng;
    rng.lo = std::stoll(spec.substr(0, dots));
    const std::string rest = spec.substr(dots + 2);
    const std::size_t dots2 = rest.find("..");
    if (dots2 == std::string::npos) {
      rng.hi = std::stoll(rest);
    } else {
      rng.hi = std::stoll(rest.substr(0, dots2));
      rng.step = std::stoll(rest.substr(dots2 + 2));
    }
    if (rng.step < 1) throw Error("range step must be >= 1 in '" + spec + "'");
    return rng;
  } catch (const Error&) {
    throw;
  } catch (...) {
    throw Error("invalid range '" + spec + "' (want INT, LO..HI or LO..HI..STEP)");
  }
}

std::uint64_t default_grid_cap() {
  if (const char* env = std::getenv("PICPOS_GRID_CAP")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::uint64_t>(v);
    } catch (...) {
      // fall through to the default
    }
  }
  return 250000;
}

namespace {

SweepRow evaluate_point(std::int64_t e, std::int64_t r, std::int64_t d,
                        std::int64_t m, std::optional<std::int64_t> k,
                        TriState collinear, TriState genus) {
  SweepRow row;
  row.e = e;
  row.r = r;
  row.d = d;
  row.m = m;
  row.k = k;
  row.effective = row.nef = row.ample = row.globally_generated = row.k_very_ample = "n/a";
  try {
    const BlowupContext ctx(e, r, collinear, genus);
    const DivisorClass l = DivisorClass::uniform(d, m, static_cast<std::size_t>(r));
    row.effective = to_string(certify_effective(l, ctx).status);
    row.nef = to_string(check_nef(l, ctx).status);
    row.ample = to_string(check_ample(l, ctx).status);
    if (m >= 0) {
      row.globally_generated = to_string(check_globally_generated(l, ctx).status);
    }
    if (k && *k >= 0) {
      row.k_very_ample = to_string(check_k_very_ample(l, ctx, *k).status);
    }
  } catch (const Error& err) {
    row.error = err.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepRequest& req) {
  const std::uint64_t cap = req.grid_cap > 0 ? req.grid_cap : default_grid_cap();
  const std::uint64_t k_count = req.k ? req.k->count() : 1;
  // Grid size with overflow care: multiply stepwise against the cap.
  std::uint64_t total = 1;
  for (const std::uint64_t c : {req.d.count(), req.m.count(), req.r.count(),
                                req.e.count(), k_count}) {
    if (c == 0) { total = 0; break; }
    if (total > (std::numeric_limits<std::uint64_t>::max)() / c) {
      throw Error("sweep grid size overflows; narrow the ranges");
    }
    total *= c;
  }
  if (total > cap) {
    throw Error("sweep grid has " + std::to_string(total) + " points, cap is " +
                std::to_string(cap) + " (set PICPOS_GRID_CAP to raise it)");
  }

  // Materialize grid points in lexicographic (d, m, r, e, k) order.
  struct Point {
    std::int64_t d, m, r, e;
    std::optional<std::int64_t> k;
  };
  std::vector<Point> grid;
  grid.reserve(static_cast<std::size_t>(total));
  for (std::int64_t d = req.d.lo; d <= req.d.hi; d += req.d.step) {
    for (std::int64_t m = req.m.lo; m <= req.m.hi; m += req.m.step) {
      for (std::int64_t r = req.r.lo; r <= req.r.hi; r += req.r.step) {
        for (std::int64_t e = req.e.lo; e <= req.e.hi; e += req.e.step) {
          if (req.k) {
            for (std::int64_t k = req.k->lo; k <= req.k->hi; k += req.k->step) {
              grid.push_back(Point{d, m, r, e, k});
            }
          } else {
            grid.push_back(Point{d, m, r, e, std::nullopt});
          }
        }
      }
    }
  }

  std::vector<SweepRow> rows(grid.size());
  unsigned jobs = req.jobs;
  if (jobs == 0) {
    jobs = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  }
  if (grid.size() < jobs) jobs = static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1));

  if (jobs <= 1 || grid.size() < 2) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point& p = grid[i];
      rows[i] = evaluate_point(p.e, p.r, p.d, p.m, p.k, req.collinear, req.positive_genus);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= grid.size()) return;
          const Point& p = grid[i];
          rows[i] = evaluate_point(p.e, p.r, p.d, p.m, p.k, req.collinear,
                                   req.positive_genus);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "e,r,d,m,k,effective,nef,ample,globally_generated,k_very_ample,error\n";
  for (const SweepRow& row : rows) {
    out << row.e << ',' << row.r << ',' << row.d << ',' << row.m << ',';
    if (row.k) out << *row.k;
    out << ',' << row.effective << ',' << row.nef << ',' << row.ample << ','
        << row.globally_generated << ',' << row.k_very_ample << ','
        << (row.error ? *row.error : "") << "\n";
  }
  return out.str();
}

std::string sweep_to_jsonl(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  for (const SweepRow& row : rows) {
    json j{{"e", row.e},       {"r", row.r},
           {"d", row.d},       {"m", row.m},
           {"effective", row.effective},
           {"nef", row.nef},
           {"ample", row.ample},
           {"globally_generated", row.globally_generated},
           {"k_very_ample", row.k_very_ample}};
    if (row.k) j["k"] = *row.k;
    if (row.error) j["error"] = *row.error;
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace picpos::cli
