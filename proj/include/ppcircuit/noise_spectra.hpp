#pragma once

// Blue-sideband output spectra, detection-chain calibration and the
// thermal-photon extraction chain. PSDs are kept in photon units (quanta
// per unit bandwidth, i.e. photons s) internally; converters below move to
// W/Hz, A^2/Hz and Wb^2/Hz.
//
// Offsets: the anti-Stokes line sits at Omega ~ -W0. It is indexed by the
// offset from the peak, offset = -Omega - W0, so offset 0 is the centre.

#include <vector>

namespace ppc {

struct DetectionChain {
  double hemt_noise_temperature = 5.5;  // K
  double hemt_added_photons = 20.0;     // n_add
  double output_efficiency = 0.7;       // eta in (0, 1]
  double total_gain = 1.0;              // G_m, power gain
  double input_attenuation_db = -61.0;
  double measurement_bandwidth = 200.0;  // Hz

  void validate() const;
  double effective_added_photons() const;
};

struct ThermalState {
  double bath_temperature = 0.0;   // K
  double cavity_occupation = 0.0;
  double lf_occupation = 0.0;        // n_th
  double amplified_occupation = 0.0;  // n_LF
  double cooperativity = 0.0;
};

struct BluePumpParams {
  double kappa = 0.0;
  double external_rate = 0.0;   // kappa_e
  double lf_rate = 0.0;         // Gamma0
  double lf_frequency = 0.0;    // W0
  double coupling = 0.0;        // g
  double detuning = 0.0;        // Delta, W0 + delta_b
  double lf_occupation = 0.0;   // n_LF in the numerator
  double cavity_occupation = 0.0;
  double added_photons = 0.0;   // n_add'

  void validate() const;
  double cooperativity() const;
};

/// 10 log10(kB T / 1 mW) + 10 log10(df / Hz).
double hemt_noise_power_dbm(double temperature, double bandwidth);

/// Line attenuation from the SNR of a VNA tone over the HEMT noise floor:
/// on-chip power (noise + SNR + output loss) minus source power after the
/// room-temperature attenuators.
double input_attenuation_estimate(double snr_db, double vna_power_dbm,
                                  double rt_attenuators_db, double hemt_to_sample_loss_db,
                                  double hemt_noise_dbm);

struct AttenuationSummary {
  double mean_db = 0.0;
  double spread_db = 0.0;  // half the range of the individual estimates
};

/// Combines estimates repeated over several frequency ranges.
AttenuationSummary summarize_attenuation(const std::vector<double>& estimates_db);

/// 1 / (exp(hbar w / kB T) - 1); zero at T = 0.
double bose_occupation(double frequency, double temperature);

/// n_add / eta + (1 - eta) / (2 eta).
double effective_added_photons(double n_add, double efficiency);

/// Full blue-pump output PSD in photon units at probe offset Omega.
double psd_blue_pump(double omega, const BluePumpParams& p);

/// Lorentzian approximation valid on the exact blue sideband.
double psd_on_sideband(double offset, double kappa, double external_rate, double c,
                       double lf_rate, double lf_rate_eff, double lf_occupation,
                       double added_photons);

/// Gamma0' = Gamma0 (1 - C) for a blue pump.
double blue_lf_linewidth(double lf_rate, double c);

/// (n_th + 1) / (1 - C) - 1. Throws InstabilityError for C >= 1.
double amplified_occupation(double n_th, double c);

/// S_I = 8 Gamma0 / (Gamma0'^2 + 4 offset^2) I_zpf^2 (n_LF + 1).
double current_psd(double offset, double lf_rate, double lf_rate_eff,
                   double zero_point_current, double lf_occupation);

/// S_Phi = (Phi_zpf / I_zpf)^2 S_I = M^2 S_I, with Phi_zpf in Wb.
double flux_psd(double offset, double lf_rate, double lf_rate_eff,
                double zero_point_current, double lf_occupation,
                double zero_point_flux_wb);

double photons_to_watts_per_hz(double s_photons, double frequency);
double watts_per_hz_to_photons(double s_watts, double frequency);
double current_to_flux_psd(double s_current, double mutual_inductance);
double flux_to_current_psd(double s_flux, double mutual_inductance);

/// Current noise from a measured PSD normalised by its background:
/// S_I = (S_V / S_b - 1)(1/2 + n_add') 2 kappa / (C kappa_e Gamma0) I_zpf^2.
std::vector<double> extract_current_psd(const std::vector<double>& s_v, double s_b,
                                        double added_photons, double kappa,
                                        double external_rate, double c, double lf_rate,
                                        double zero_point_current);

/// Inverse of the above for one value (S_I -> S_V).
double forward_measured_psd(double s_current, double s_b, double added_photons,
                            double kappa, double external_rate, double c, double lf_rate,
                            double zero_point_current);

/// n_LF = S_I0 Gamma0'^2 / (8 Gamma0 I_zpf^2) - 1.
double thermal_photons_from_peak(double peak_current_psd, double lf_rate,
                                 double lf_rate_eff, double zero_point_current);

/// n_th = (1 - C) n_LF - C. Throws InstabilityError for C >= 1.
double backaction_free(double lf_occupation, double c);

}  // namespace ppc
