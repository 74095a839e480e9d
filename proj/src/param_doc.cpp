#include "ppcircuit/param_doc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "ppcircuit/errors.hpp"
#include "ppcircuit/traces.hpp"

namespace ppc {

namespace {

using nlohmann::json;

void flatten(const json& node, const std::string& prefix,
             std::map<std::string, ParamValue>& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (prefix.empty()) throw ConfigError("parameter document must be a JSON object");
  if (node.is_number()) {
    out[prefix] = node.get<double>();
  } else if (node.is_string()) {
    out[prefix] = node.get<std::string>();
  } else if (node.is_boolean()) {
    out[prefix] = node.get<bool>() ? 1.0 : 0.0;
  } else {
    throw ConfigError("parameter '" + prefix + "' must be a number or a string");
  }
}

// Line number of a byte offset into the text.
std::size_t line_of(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

bool read_number(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = first + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

ParamDoc ParamDoc::parse_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), line_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw ConfigError("parameter document must be a JSON object");
  ParamDoc out;
  flatten(doc, "", out.values_);
  return out;
}

ParamDoc ParamDoc::parse(std::istream& is) {
  const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  return parse_text(text);
}

void ParamDoc::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must look like KEY=VALUE");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  double number = 0.0;
  if (read_number(value, number)) {
    values_[key] = number;
  } else {
    values_[key] = value;
  }
}

bool ParamDoc::is_number(const std::string& key) const {
  const auto it = values_.find(key);
  return it != values_.end() && std::holds_alternative<double>(it->second);
}

double ParamDoc::number(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing parameter '" + key + "'");
  if (!std::holds_alternative<double>(it->second)) {
    throw ConfigError("parameter '" + key + "' must be a number, got '" +
                      std::get<std::string>(it->second) + "'");
  }
  return std::get<double>(it->second);
}

double ParamDoc::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::string ParamDoc::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing parameter '" + key + "'");
  if (!std::holds_alternative<std::string>(it->second)) {
    throw ConfigError("parameter '" + key + "' must be a string");
  }
  return std::get<std::string>(it->second);
}

std::string ParamDoc::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

void ParamDoc::merge(const ParamDoc& over) {
  for (const auto& [k, v] : over.values_) values_[k] = v;
}

std::vector<std::string> ParamDoc::keys() const {
  std::vector<std::string> out;
  for (const auto& kv : values_) out.push_back(kv.first);
  return out;
}

std::string ParamDoc::dump() const {
  // Hand-written so numbers use the shortest round-trip form.
  std::ostringstream os;
  os << "{\n";
  std::size_t i = 0;
  for (const auto& [k, v] : values_) {
    os << "  " << json(k).dump() << ": ";
    if (std::holds_alternative<double>(v)) {
      const double d = std::get<double>(v);
      if (std::isfinite(d)) {
        os << format_double(d);
      } else {
        os << "null";
      }
    } else {
      os << json(std::get<std::string>(v)).dump();
    }
    os << (++i < values_.size() ? ",\n" : "\n");
  }
  os << "}\n";
  return os.str();
}

}  // namespace ppc
