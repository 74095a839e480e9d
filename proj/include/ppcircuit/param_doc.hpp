#pragma once

// Flat key/value parameter documents with dotted keys ("squid.gamma_l").
// On disk they are JSON objects; nested objects are flattened on read.

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ppc {

using ParamValue = std::variant<double, std::string>;

class ParamDoc {
 public:
  ParamDoc() = default;
  ParamDoc(std::initializer_list<std::pair<const std::string, ParamValue>> init)
      : values_(init) {}

  /// Parses a JSON document; throws ParseError (with line) on bad syntax and
  /// ConfigError for values that are neither numbers nor strings.
  static ParamDoc parse(std::istream& is);
  static ParamDoc parse_text(const std::string& text);

  void set(const std::string& key, double value) { values_[key] = value; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  /// "key=value"; the value is stored as a number when it reads as one.
  void set_assignment(const std::string& assignment);
  void erase(const std::string& key) { values_.erase(key); }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  bool is_number(const std::string& key) const;
  /// Throws ConfigError naming the key when missing or not numeric.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;

  /// Keys of `over` replace ours.
  void merge(const ParamDoc& over);

  std::vector<std::string> keys() const;
  const std::map<std::string, ParamValue>& values() const { return values_; }

  /// Pretty JSON with sorted keys and round-trip number formatting.
  std::string dump() const;

 private:
  std::map<std::string, ParamValue> values_;
};

}  // namespace ppc
