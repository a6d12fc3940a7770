#pragma once

#include <string>

#include <json.hpp>

namespace picpos::cli {

/// Parses the TOML subset used by request files into a JSON document:
/// `key = value` lines, `[table]` headers one level deep, integers,
/// booleans, double-quoted strings and single-line arrays of scalars.
/// Errors carry the offending line number.
nlohmann::json parse_toml_lite(const std::string& text);

}  // namespace picpos::cli
