#pragma once

// Steady-state solutions of the linearized coupled equations of motion.
// Probe quantities are offsets from the pump, Omega = w_probe - w_pump, and
// the pump detuning is Delta = w_pump - w0. Everything is in rad/s.
//
// Reflection convention: every S11 returned here uses the fitting form
// 1 - 2 ke / (k + 2i(w - w0)). The pumped responses are derived in the
// opposite phase convention and conjugated on the way out, so that they
// reduce to s11_bare exactly when g = 0.

#include <complex>

namespace ppc {

using cplx = std::complex<double>;

enum class Sideband { red, blue };

struct OperatingPoint {
  double flux_bias = 0.0;          // Phi0 units
  double pump_frequency = 0.0;     // w_p
  double pump_detuning = 0.0;      // Delta = w_p - w0
  double sideband_offset = 0.0;    // delta_r = Delta + W0 or delta_b = Delta - W0
  double intracavity_photons = 0.0;
  double single_photon_rate = 0.0;  // g0
  double multi_photon_rate = 0.0;   // g = sqrt(n_c) g0
  double effective_cavity_linewidth = 0.0;  // kappa tilde
};

/// Fills g from n_c and g0 and the sideband offset from Delta and W0.
OperatingPoint make_operating_point(double flux_bias, double cavity_frequency,
                                    double pump_detuning, double lf_frequency,
                                    Sideband sideband, double photons,
                                    double single_photon_rate,
                                    double effective_cavity_linewidth);

struct BackactionResult {
  double frequency_shift = 0.0;  // delta W0
  double damping_shift = 0.0;    // delta Gamma0
};

struct HybridModes {
  cplx upper;
  cplx lower;
  double splitting = 0.0;         // Re(w+ - w-), zero below threshold
  double upper_linewidth = 0.0;   // -2 Im(w+)
  double lower_linewidth = 0.0;   // -2 Im(w-)
  bool resolved = false;          // g > |kappa - Gamma0| / 4
};

/// Cavity with a pump at detuning Delta from w0, coupled to the LF mode.
struct PumpedCavity {
  double cavity_frequency = 0.0;  // w0
  double internal_rate = 0.0;     // kappa_i
  double external_rate = 0.0;     // kappa_e
  double lf_frequency = 0.0;      // W0
  double lf_rate = 0.0;           // Gamma0
  double coupling = 0.0;          // g
  double detuning = 0.0;          // Delta

  double kappa() const { return internal_rate + external_rate; }
  double pump_frequency() const { return cavity_frequency + detuning; }
};

/// LF resonator probed directly while the cavity is pumped.
struct PumpedLf {
  double lf_frequency = 0.0;           // W0
  double lf_internal_rate = 0.0;       // Gamma_i
  double lf_external_rate = 0.0;       // Gamma_e
  double coupling = 0.0;               // g
  double detuning = 0.0;               // Delta
  double kappa = 0.0;                  // cavity linewidth

  double lf_rate() const { return lf_internal_rate + lf_external_rate; }
};

/// chi_c(Omega) = 1 / (kappa/2 - i(Delta + Omega)).
cplx cavity_susceptibility(double omega, double detuning, double kappa);

/// chi_c*(-Omega) continued analytically: 1 / (kappa/2 + i(Delta - Omega)).
cplx cavity_susceptibility_conj_mirror(double omega, double detuning, double kappa);

/// 1 / (W0^2 - Omega^2 - i Omega Gamma0 - 2i W0 g^2 [chi_c(Omega) - chi_c*(-Omega)]).
cplx effective_lf_susceptibility(double omega, double lf_frequency, double lf_rate,
                                 double coupling, double detuning, double kappa);

/// Same, for complex Omega (used for pole searches).
cplx effective_lf_susceptibility(cplx omega, double lf_frequency, double lf_rate,
                                 double coupling, double detuning, double kappa);

/// 1 - 2 ke / (ki + ke + 2i(w - w0)). Also the LF response with (W0, Gi, Ge).
cplx s11_bare(double frequency, double resonance, double internal_rate,
              double external_rate);

/// Pumped cavity reflection at absolute probe frequency w_pr.
cplx s11_pumped(double probe_frequency, const PumpedCavity& p);

/// LF reflection at probe frequency Omega with the cavity pumped at Delta,
/// using the high-Q self-energy -i g^2 [chi_c(Omega) - chi_c*(-Omega)].
cplx lf_s11_pumped(double omega, const PumpedLf& p);

/// Full expressions for the photon-pressure spring and damping.
BackactionResult backaction_exact(double detuning, double coupling, double kappa,
                                  double lf_frequency);

/// Resolved-sideband forms; delta is measured from the chosen sideband.
BackactionResult backaction_sideband(double delta, double coupling, double kappa_eff,
                                     Sideband sideband);

/// Eigenfrequencies of the coupled LF mode and pumped cavity fluctuations.
HybridModes normal_modes(double coupling, double kappa, double lf_rate,
                         double lf_frequency);

/// 4 g^2 / (kappa Gamma0).
double cooperativity(double coupling, double kappa, double lf_rate);

/// Coupling g that yields a given cooperativity.
double coupling_for_cooperativity(double c, double kappa, double lf_rate);

}  // namespace ppc
