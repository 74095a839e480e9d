#include "ppcircuit/noise_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "ppcircuit/constants.hpp"
#include "ppcircuit/errors.hpp"

namespace ppc {

namespace {

using cplx = std::complex<double>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be non-negative and finite");
  }
}

void require_stable(double c) {
  if (!(c < 1.0)) {
    throw InstabilityError("cooperativity " + std::to_string(c) +
                           " >= 1: blue-sideband self-oscillation regime");
  }
}

}  // namespace

void DetectionChain::validate() const {
  require_positive(hemt_noise_temperature, "hemt_noise_temperature");
  require_non_negative(hemt_added_photons, "hemt_added_photons");
  if (!(output_efficiency > 0.0 && output_efficiency <= 1.0)) {
    throw DomainError("output_efficiency must lie in (0, 1]");
  }
  require_positive(total_gain, "total_gain");
  require_positive(measurement_bandwidth, "measurement_bandwidth");
}

double DetectionChain::effective_added_photons() const {
  return ppc::effective_added_photons(hemt_added_photons, output_efficiency);
}

void BluePumpParams::validate() const {
  require_positive(kappa, "kappa");
  require_non_negative(external_rate, "external_rate");
  require_positive(lf_rate, "lf_rate");
  require_positive(lf_frequency, "lf_frequency");
  require_non_negative(lf_occupation, "lf_occupation");
  require_non_negative(cavity_occupation, "cavity_occupation");
  require_non_negative(added_photons, "added_photons");
  // A blue pump beyond C = 1 drives the LF mode into self-oscillation and
  // there is no stationary spectrum.
  if (detuning > 0.0 && cooperativity() >= 1.0) {
    throw InstabilityError("blue-pump cooperativity " + std::to_string(cooperativity()) +
                           " is at or above the self-oscillation threshold 1");
  }
}

double BluePumpParams::cooperativity() const {
  return 4.0 * coupling * coupling / (kappa * lf_rate);
}

double hemt_noise_power_dbm(double temperature, double bandwidth) {
  require_positive(temperature, "temperature");
  require_positive(bandwidth, "bandwidth");
  return 10.0 * std::log10(constants::boltzmann * temperature / 1e-3) +
         10.0 * std::log10(bandwidth);
}

double input_attenuation_estimate(double snr_db, double vna_power_dbm,
                                  double rt_attenuators_db, double hemt_to_sample_loss_db,
                                  double hemt_noise_dbm) {
  const double at_hemt = hemt_noise_dbm + snr_db;
  const double on_chip = at_hemt + hemt_to_sample_loss_db;
  const double into_fridge = vna_power_dbm - rt_attenuators_db;
  return on_chip - into_fridge;
}

AttenuationSummary summarize_attenuation(const std::vector<double>& estimates_db) {
  if (estimates_db.empty()) throw DomainError("no attenuation estimates given");
  AttenuationSummary s;
  double sum = 0.0;
  for (double e : estimates_db) sum += e;
  s.mean_db = sum / static_cast<double>(estimates_db.size());
  const auto [lo, hi] = std::minmax_element(estimates_db.begin(), estimates_db.end());
  s.spread_db = 0.5 * (*hi - *lo);
  return s;
}

double bose_occupation(double frequency, double temperature) {
  require_positive(frequency, "frequency");
  require_non_negative(temperature, "temperature");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * frequency / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double effective_added_photons(double n_add, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw DomainError("efficiency must lie in (0, 1]");
  }
  require_non_negative(n_add, "n_add");
  return n_add / efficiency + (1.0 - efficiency) / (2.0 * efficiency);
}

double psd_blue_pump(double omega, const BluePumpParams& p) {
  p.validate();
  const cplx chi_c = 1.0 / cplx(0.5 * p.kappa, omega + p.detuning);
  const cplx chi_0 = 1.0 / cplx(0.5 * p.lf_rate, omega + p.lf_frequency);
  const double g2 = p.coupling * p.coupling;
  const double cavity = std::norm(chi_c);
  const double numerator =
      p.external_rate * g2 * std::norm(chi_0) * cavity * p.lf_rate * (p.lf_occupation + 1.0) +
      p.external_rate * cavity * p.kappa * p.cavity_occupation;
  return 0.5 + p.added_photons + numerator / std::norm(1.0 - g2 * chi_c * chi_0);
}

double psd_on_sideband(double offset, double kappa, double external_rate, double c,
                       double lf_rate, double lf_rate_eff, double lf_occupation,
                       double added_photons) {
  require_positive(kappa, "kappa");
  require_positive(lf_rate, "lf_rate");
  require_positive(lf_rate_eff, "lf_rate_eff");
  return 0.5 + added_photons +
         4.0 * (external_rate / kappa) * c * lf_rate * lf_rate /
             (lf_rate_eff * lf_rate_eff + 4.0 * offset * offset) * (lf_occupation + 1.0);
}

double blue_lf_linewidth(double lf_rate, double c) {
  require_positive(lf_rate, "lf_rate");
  require_stable(c);
  return lf_rate * (1.0 - c);
}

double amplified_occupation(double n_th, double c) {
  require_stable(c);
  require_non_negative(n_th, "n_th");
  return (n_th + 1.0) / (1.0 - c) - 1.0;
}

double current_psd(double offset, double lf_rate, double lf_rate_eff,
                   double zero_point_current, double lf_occupation) {
  require_positive(lf_rate, "lf_rate");
  require_positive(lf_rate_eff, "lf_rate_eff");
  return 8.0 * lf_rate / (lf_rate_eff * lf_rate_eff + 4.0 * offset * offset) *
         zero_point_current * zero_point_current * (lf_occupation + 1.0);
}

double flux_psd(double offset, double lf_rate, double lf_rate_eff,
                double zero_point_current, double lf_occupation,
                double zero_point_flux_wb) {
  require_positive(zero_point_current, "zero_point_current");
  const double m = zero_point_flux_wb / zero_point_current;
  return current_to_flux_psd(
      current_psd(offset, lf_rate, lf_rate_eff, zero_point_current, lf_occupation), m);
}

double photons_to_watts_per_hz(double s_photons, double frequency) {
  require_positive(frequency, "frequency");
  return s_photons * constants::hbar * frequency;
}

double watts_per_hz_to_photons(double s_watts, double frequency) {
  require_positive(frequency, "frequency");
  return s_watts / (constants::hbar * frequency);
}

double current_to_flux_psd(double s_current, double mutual_inductance) {
  return s_current * mutual_inductance * mutual_inductance;
}

double flux_to_current_psd(double s_flux, double mutual_inductance) {
  if (mutual_inductance == 0.0) throw DomainError("mutual_inductance must be non-zero");
  return s_flux / (mutual_inductance * mutual_inductance);
}

namespace {

double extraction_factor(double added_photons, double kappa, double external_rate,
                         double c, double lf_rate, double zero_point_current) {
  require_positive(kappa, "kappa");
  require_positive(external_rate, "external_rate");
  require_positive(lf_rate, "lf_rate");
  if (!(c > 0.0 && c <= 1.0)) throw DomainError("cooperativity must lie in (0, 1]");
  if (!(external_rate <= kappa)) throw DomainError("external_rate must not exceed kappa");
  return (0.5 + added_photons) * 2.0 * kappa / (c * external_rate * lf_rate) *
         zero_point_current * zero_point_current;
}

}  // namespace

std::vector<double> extract_current_psd(const std::vector<double>& s_v, double s_b,
                                        double added_photons, double kappa,
                                        double external_rate, double c, double lf_rate,
                                        double zero_point_current) {
  if (!(s_b > 0.0) || !std::isfinite(s_b)) {
    throw CalibrationError("background noise level must be positive");
  }
  const double factor = extraction_factor(added_photons, kappa, external_rate, c, lf_rate,
                                          zero_point_current);
  std::vector<double> out(s_v.size());
  for (std::size_t i = 0; i < s_v.size(); ++i) out[i] = (s_v[i] / s_b - 1.0) * factor;
  return out;
}

double forward_measured_psd(double s_current, double s_b, double added_photons,
                            double kappa, double external_rate, double c, double lf_rate,
                            double zero_point_current) {
  if (!(s_b > 0.0) || !std::isfinite(s_b)) {
    throw CalibrationError("background noise level must be positive");
  }
  const double factor = extraction_factor(added_photons, kappa, external_rate, c, lf_rate,
                                          zero_point_current);
  return s_b * (1.0 + s_current / factor);
}

double thermal_photons_from_peak(double peak_current_psd, double lf_rate,
                                 double lf_rate_eff, double zero_point_current) {
  require_positive(peak_current_psd, "peak_current_psd");
  require_positive(lf_rate, "lf_rate");
  require_positive(lf_rate_eff, "lf_rate_eff");
  require_positive(zero_point_current, "zero_point_current");
  return peak_current_psd * lf_rate_eff * lf_rate_eff /
             (8.0 * lf_rate * zero_point_current * zero_point_current) -
         1.0;
}

double backaction_free(double lf_occupation, double c) {
  require_stable(c);
  return (1.0 - c) * lf_occupation - c;
}

}  // namespace ppc
