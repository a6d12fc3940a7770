#include "picpos/toml_lite.hpp"

#include <cctype>
#include <sstream>

#include "picpos/errors.hpp"

namespace picpos::cli {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error("line " + std::to_string(line_no) + ": " + msg);
}

std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// Removes a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

nlohmann::json parse_scalar(const std::string& tok, std::size_t line_no) {
  if (tok.empty()) parse_fail(line_no, "empty value");
  if (tok == "true") return true;
  if (tok == "false") return false;
  if (tok.front() == '"') {
    if (tok.size() < 2 || tok.back() != '"') {
      parse_fail(line_no, "unterminated string");
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
      if (tok[i] == '\\' && i + 2 < tok.size()) {
        ++i;
        out.push_back(tok[i]);
      } else {
        out.push_back(tok[i]);
      }
    }
    return out;
  }
  // integer
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) parse_fail(line_no, "invalid value '" + tok + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    parse_fail(line_no, "invalid value '" + tok + "'");
  }
}

std::vector<std::string> split_top_level(const std::string& body, std::size_t line_no) {
  std::vector<std::string> parts;
  std::string cur;
  bool in_string = false;
  for (char ch : body) {
    if (ch == '"') in_string = !in_string;
    if (ch == ',' && !in_string) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (in_string) parse_fail(line_no, "unterminated string in array");
  if (!strip(cur).empty() || !parts.empty()) parts.push_back(cur);
  return parts;
}

nlohmann::json parse_value(const std::string& tok, std::size_t line_no) {
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') parse_fail(line_no, "unterminated array");
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& part : split_top_level(tok.substr(1, tok.size() - 2), line_no)) {
      const std::string p = strip(part);
      if (p.empty()) continue;  // tolerates a trailing comma
      arr.push_back(parse_scalar(p, line_no));
    }
    return arr;
  }
  return parse_scalar(tok, line_no);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char ch : k) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-') {
      return false;
    }
  }
  return true;
}

}  // namespace

nlohmann::json parse_toml_lite(const std::string& text) {
  nlohmann::json doc = nlohmann::json::object();
  nlohmann::json* target = &doc;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(line_no, "unterminated table header");
      const std::string name = strip(line.substr(1, line.size() - 2));
      if (!valid_key(name)) parse_fail(line_no, "invalid table name '" + name + "'");
      doc[name] = nlohmann::json::object();
      target = &doc[name];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
    const std::string key = strip(line.substr(0, eq));
    if (!valid_key(key)) parse_fail(line_no, "invalid key '" + key + "'");
    (*target)[key] = parse_value(strip(line.substr(eq + 1)), line_no);
  }
  return doc;
}

}  // namespace picpos::cli
