#pragma once

// Frequency-indexed data and the plain-text column formats used on disk:
//   complex traces: frequency_hz re im
//   spectra:        frequency_hz value
// Lines starting with '#' are comments. Spectrum files carry a
// "# units: NAME" header line.

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace ppc {

enum class PsdUnit { photons, watts_per_hz, amps2_per_hz, webers2_per_hz };

std::string to_string(PsdUnit unit);
PsdUnit psd_unit_from_string(const std::string& name);

struct ComplexTrace {
  std::vector<double> frequency_hz;
  std::vector<std::complex<double>> values;

  std::size_t size() const { return frequency_hz.size(); }
  /// Grid strictly increasing, sizes equal, values finite.
  void validate() const;
};

struct SpectrumTrace {
  std::vector<double> frequency_hz;
  std::vector<double> values;
  PsdUnit unit = PsdUnit::photons;

  std::size_t size() const { return frequency_hz.size(); }
  void validate() const;
};

/// Evenly spaced grid including both ends; requires points >= 2, start < stop.
std::vector<double> linear_grid(double start, double stop, std::size_t points);

/// Shortest text that reads back to the same double.
std::string format_double(double value);

void write_complex_trace(std::ostream& os, const ComplexTrace& trace,
                         const std::string& comment = {});
void write_spectrum_trace(std::ostream& os, const SpectrumTrace& trace,
                          const std::string& comment = {});

/// Throws ParseError naming the offending line.
ComplexTrace read_complex_trace(std::istream& is);
SpectrumTrace read_spectrum_trace(std::istream& is);

/// Rows of whitespace-separated numbers with at least min_columns each.
std::vector<std::vector<double>> read_columns(std::istream& is, std::size_t min_columns);

}  // namespace ppc
