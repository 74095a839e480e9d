#pragma once

// Geometry/material inputs -> lumped circuit parameters, the flux-tunable
// SQUID cavity model, and the quantities that set the photon-pressure
// coupling. All rates and frequencies are angular (rad/s) unless a name says
// otherwise; flux biases are passed as ppc::Flux.

#include <optional>

#include "ppcircuit/flux.hpp"

namespace ppc {

/// Parallel-plate LC resonator with a capacitive feedline coupler.
struct LumpedResonatorSpec {
  double plate_area = 0.0;             // m^2
  double dielectric_thickness = 0.0;   // m
  double relative_permittivity = 1.0;
  double coupling_capacitance = 0.0;   // F
  double feedline_impedance = 50.0;    // Ohm
  std::optional<double> total_inductance;    // H, when known directly
  double kinetic_inductance_per_square = 0.0;  // H/sq, informational

  void validate() const;
};

/// Interdigitated capacitor (conformal-mapping model).
struct IdcSpec {
  int finger_count = 3;
  double finger_length = 0.0;      // m
  double finger_width = 0.0;       // m
  double gap_width = 0.0;          // m
  double effective_permittivity = 1.0;
  int parallel_count = 1;

  void validate() const;
};

/// Electrical description of one LC mode.
struct ResonatorParams {
  double resonance_frequency = 0.0;   // rad/s
  double internal_rate = 0.0;         // rad/s
  double external_rate = 0.0;         // rad/s
  double total_inductance = 0.0;      // H
  double total_capacitance = 0.0;     // F (without the coupler)
  double coupling_capacitance = 0.0;  // F

  double total_rate() const { return internal_rate + external_rate; }
};

/// Flux-tunable SQUID cavity.
///
/// The frequency model is the phenomenological arch
///   w0(phi) = w0(0) / sqrt(Lambda + (1 - Lambda) / cos(pi gamma_L phi / Phi0))
/// with inductance dilution Lambda = (L_HF - L_J0/2) / L_HF and the
/// arch-widening factor gamma_L.
struct SquidSpec {
  double sweet_spot_frequency = 0.0;        // rad/s
  double dilution = 0.0;                    // Lambda, in (0, 1)
  double arch_widening = 1.0;               // gamma_L > 0
  double single_junction_inductance = 0.0;  // L_J0, H
  double critical_current = 0.0;            // I_c, A
  double loop_inductance = 0.0;             // L_l, H
  double screening = 0.0;                   // beta_L
  double total_inductance = 0.0;            // L_HF, H

  void validate() const;

  /// Builds the spec from fitted arch parameters: L_J0 = 2 (1 - Lambda) L_HF,
  /// I_c = Phi0 / (2 pi L_J0), beta_L = 2 L_l I_c / Phi0.
  static SquidSpec from_arch(double sweet_spot_frequency, double dilution,
                             double arch_widening, double total_inductance,
                             double loop_inductance);
};

/// LF wire running along three sides of the SQUID loop.
struct LoopGeometry {
  double loop_side = 0.0;      // D, m
  double near_distance = 0.0;  // d1, m (wire centre to near loop wire)
  double far_distance = 0.0;   // d2, m (wire centre to far loop wire)
};

struct CouplingGeometry {
  LoopGeometry loop;
  double mutual_inductance = 0.0;   // M, H
  double zero_point_current = 0.0;  // I_zpf, A
  Flux zero_point_flux;             // Phi_zpf = M I_zpf
};

/// Photon-number dependence of the SQUID cavity.
struct PowerDependence {
  double kerr_per_photon = 0.0;    // chi, rad/s
  double tls_rate = 0.0;           // kappa_TLS, rad/s
  double critical_photons = 1.0;   // n_crit
  double residual_internal = 0.0;  // kappa_1, rad/s

  void validate() const;
};

// --- capacitances and LC relations -----------------------------------------

double parallel_plate_capacitance(const LumpedResonatorSpec& spec);

/// Capacitance of one IDC times parallel_count.
double idc_capacitance(const IdcSpec& spec);

/// Partial capacitance C_i = 2 eps0 eps_eff l K(k_i)/K(k_i') of one finger
/// pair; index 1 is the inner-finger modulus, 2 the outer one.
double idc_unit_capacitance(const IdcSpec& spec, int index);

double lc_frequency(double inductance, double total_capacitance);
double infer_inductance(double frequency, double total_capacitance);

/// Z0 Cc^2 / (L (C + Cc)^2).
double external_linewidth(double feedline_impedance, double coupling_capacitance,
                          double inductance, double capacitance);

/// Assembles ResonatorParams for a lumped LF resonator given its measured
/// resonance frequency; L is taken from the spec when present, otherwise
/// inferred from the frequency.
ResonatorParams lumped_resonator(const LumpedResonatorSpec& spec, double frequency,
                                 double internal_rate);

// --- zero-point fluctuations and mutual coupling ---------------------------

/// sqrt(hbar W0 / (2 L)).
double zero_point_current(double inductance, double frequency);

/// Phi_zpf = 3 (mu0 / 2pi) I_zpf D ln(d2/d1), M = Phi_zpf / I_zpf.
CouplingGeometry mutual_inductance(const LoopGeometry& loop, double zero_point_current);

/// gamma = M / L_LF.
double flux_fraction(double mutual_inductance, double lf_inductance);

/// 2 L_l I_c / Phi0.
double screening_parameter(double loop_inductance, double critical_current);

/// Phi0 / (2 pi I_c).
double junction_inductance(double critical_current);

// --- SQUID flux dependence --------------------------------------------------

double squid_frequency(Flux bias, const SquidSpec& spec);

/// L_J0 / (2 cos(pi gamma_L phi)).
double josephson_inductance(Flux bias, const SquidSpec& spec);

/// Signed d w0 / d Phi in rad/s per flux quantum.
double flux_responsivity(Flux bias, const SquidSpec& spec);

/// Pull parameter G = -d w0 / d Phi in rad/(s Wb), returned as a magnitude.
double pull_parameter(Flux bias, const SquidSpec& spec);

/// g0 = |d w0 / d Phi| Phi_zpf.
double single_photon_coupling(Flux bias, const SquidSpec& spec, Flux zero_point_flux);

/// Largest |bias| with cos(pi gamma_L phi) > 0, i.e. Phi0 / (2 gamma_L).
double arch_half_width(const SquidSpec& spec);

// --- drive and power dependence ---------------------------------------------

/// (4 P / hbar wp) kappa_e / (kappa^2 + 4 Delta^2).
double intracavity_photons(double input_power, double pump_frequency, double kappa,
                           double external_rate, double detuning);

/// kappa_e + kappa_1 + kappa_TLS / sqrt(1 + n / n_crit).
double total_linewidth(double photons, const PowerDependence& dep, double external_rate);

/// Linear Kerr shift -chi n (toward lower frequency).
double kerr_shift(double photons, double kerr_per_photon);

/// Power in watts for a level in dBm.
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace ppc
