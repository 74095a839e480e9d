#include "ppcircuit/traces.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ppcircuit/errors.hpp"

namespace ppc {

namespace {

void check_grid(const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError("frequency grid contains non-finite values");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("frequency grid must be strictly increasing");
    }
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("cannot read number '" + token + "'", line);
  }
  return value;
}

}  // namespace

std::string to_string(PsdUnit unit) {
  switch (unit) {
    case PsdUnit::photons: return "photons";
    case PsdUnit::watts_per_hz: return "W/Hz";
    case PsdUnit::amps2_per_hz: return "A^2/Hz";
    case PsdUnit::webers2_per_hz: return "Wb^2/Hz";
  }
  return "photons";
}

PsdUnit psd_unit_from_string(const std::string& name) {
  if (name == "photons") return PsdUnit::photons;
  if (name == "W/Hz") return PsdUnit::watts_per_hz;
  if (name == "A^2/Hz") return PsdUnit::amps2_per_hz;
  if (name == "Wb^2/Hz") return PsdUnit::webers2_per_hz;
  throw ParseError("unknown PSD unit '" + name + "'");
}

void ComplexTrace::validate() const {
  if (frequency_hz.size() != values.size()) {
    throw DomainError("trace grid and values differ in length");
  }
  check_grid(frequency_hz);
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("trace contains non-finite values");
    }
  }
}

void SpectrumTrace::validate() const {
  if (frequency_hz.size() != values.size()) {
    throw DomainError("trace grid and values differ in length");
  }
  check_grid(frequency_hz);
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("trace contains non-finite values");
  }
}

std::vector<double> linear_grid(double start, double stop, std::size_t points) {
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  if (!(start < stop)) throw ConfigError("grid start must be below stop");
  std::vector<double> grid(points);
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = start + step * static_cast<double>(i);
  grid.back() = stop;
  return grid;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_complex_trace(std::ostream& os, const ComplexTrace& trace,
                         const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "# frequency_hz re im\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_double(trace.frequency_hz[i]) << ' ' << format_double(trace.values[i].real())
       << ' ' << format_double(trace.values[i].imag()) << '\n';
  }
}

void write_spectrum_trace(std::ostream& os, const SpectrumTrace& trace,
                          const std::string& comment) {
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "# units: " << to_string(trace.unit) << '\n';
  os << "# frequency_hz value\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_double(trace.frequency_hz[i]) << ' ' << format_double(trace.values[i])
       << '\n';
  }
}

std::vector<std::vector<double>> read_columns(std::istream& is, std::size_t min_columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream fields(text);
    std::vector<double> row;
    std::string token;
    while (fields >> token) row.push_back(parse_number(token, number));
    if (row.size() < min_columns) {
      throw ParseError("expected " + std::to_string(min_columns) + " columns, found " +
                           std::to_string(row.size()),
                       number);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexTrace read_complex_trace(std::istream& is) {
  ComplexTrace trace;
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream fields(text);
    std::string a, b, c, extra;
    if (!(fields >> a >> b >> c) || (fields >> extra)) {
      throw ParseError("expected 3 columns (frequency_hz re im)", number);
    }
    const double f = parse_number(a, number);
    if (!trace.frequency_hz.empty() && !(f > trace.frequency_hz.back())) {
      throw ParseError("frequency column must be strictly increasing", number);
    }
    trace.frequency_hz.push_back(f);
    trace.values.emplace_back(parse_number(b, number), parse_number(c, number));
  }
  if (trace.frequency_hz.empty()) throw ParseError("no data rows");
  return trace;
}

SpectrumTrace read_spectrum_trace(std::istream& is) {
  SpectrumTrace trace;
  std::string line;
  std::size_t number = 0;
  while (std::getline(is, line)) {
    ++number;
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text[0] == '#') {
      const std::string body = trim(text.substr(1));
      if (body.rfind("units:", 0) == 0) {
        try {
          trace.unit = psd_unit_from_string(trim(body.substr(6)));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), number);
        }
      }
      continue;
    }
    std::istringstream fields(text);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("expected 2 columns (frequency_hz value)", number);
    }
    const double f = parse_number(a, number);
    if (!trace.frequency_hz.empty() && !(f > trace.frequency_hz.back())) {
      throw ParseError("frequency column must be strictly increasing", number);
    }
    trace.frequency_hz.push_back(f);
    trace.values.push_back(parse_number(b, number));
  }
  if (trace.frequency_hz.empty()) throw ParseError("no data rows");
  return trace;
}

}  // namespace ppc
