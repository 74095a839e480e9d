#pragma once

// Parameter extraction from reflection traces, PSD traces, backaction
// curves and flux-arch points. Rates in results are angular (rad/s).

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppcircuit/dynamics.hpp"
#include "ppcircuit/least_squares.hpp"
#include "ppcircuit/traces.hpp"

namespace ppc {

/// (a0 + a1 (f - f_ref)) exp(i (b1 (f - f_ref) + b0)), plus the circle
/// rotation theta applied to the resonant part. Slopes are per Hz.
struct BackgroundModel {
  double reference_hz = 0.0;
  double amplitude_offset = 1.0;  // alpha0
  double amplitude_slope = 0.0;   // alpha1, 1/Hz
  double phase_offset = 0.0;      // beta0, rad
  double phase_slope = 0.0;       // beta1, rad/Hz
  double rotation = 0.0;          // theta, rad

  std::complex<double> factor(double frequency_hz) const;
  /// Applies background and rotation to an ideal response value.
  std::complex<double> apply(double frequency_hz, std::complex<double> ideal) const;
  /// Inverse of apply: 1 - (1 - S / bg) exp(-i theta).
  std::complex<double> remove(double frequency_hz, std::complex<double> measured) const;
};

struct FitResult {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> uncertainties;
  double residual_norm = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<double> cost_history;
  std::optional<BackgroundModel> background;
  std::optional<ComplexTrace> corrected;
  std::map<std::string, double> derived;

  double value(const std::string& name) const;
  double uncertainty(const std::string& name) const;
};

enum class ResonanceModel { bare, pumped };

/// Held-fixed quantities and starting values for the pumped model. The
/// free parameters are w0, kappa_i, g, W0 (plus background and theta).
struct PumpedFitSpec {
  double external_rate = 0.0;   // kappa_e, fixed
  double lf_rate = 0.0;         // Gamma0, fixed
  double pump_frequency = 0.0;  // w_p, fixed
  double lf_frequency = 0.0;    // W0 start
  double coupling = 0.0;        // g start
  std::optional<double> cavity_frequency;  // w0 start
  std::optional<double> internal_rate;     // kappa_i start
};

struct ResonanceFitOptions {
  ResonanceModel model = ResonanceModel::bare;
  double mask_linewidths = 2.0;
  double min_baseline_fraction = 0.25;
  std::optional<PumpedFitSpec> pumped;
  LeastSquaresOptions lsq;
};

/// Three-stage fit: background on the masked baseline, ideal response on the
/// background-divided trace, then a joint refit. Result names (bare):
/// resonance_frequency, internal_rate, external_rate, alpha0, alpha1, beta0,
/// beta1, theta. Pumped adds coupling and lf_frequency and keeps
/// external_rate fixed.
FitResult fit_resonance(const ComplexTrace& trace, const ResonanceFitOptions& options = {});

/// offset + A (w/2)^2 / ((f - f0)^2 + (w/2)^2), in the trace's units and Hz.
/// Names: offset, amplitude, center_hz, fwhm_hz.
FitResult fit_lorentzian(const SpectrumTrace& trace, const LeastSquaresOptions& lsq = {});

/// Simultaneous fit of the sideband spring and damping curves over (g,
/// kappa tilde). All arrays in rad/s. Names: coupling, kappa_eff.
FitResult fit_backaction(const std::vector<double>& delta,
                         const std::vector<double>& frequency_shift,
                         const std::vector<double>& damping_shift,
                         Sideband sideband = Sideband::red,
                         const LeastSquaresOptions& lsq = {});

struct ArchPoint {
  double flux_bias = 0.0;  // Phi0 units
  double frequency = 0.0;  // rad/s
};

struct ArchFitOptions {
  /// When set, L_J0 = 2 (1 - Lambda) L_HF and I_c are reported as derived.
  std::optional<double> total_inductance;
  std::optional<double> loop_inductance;
  LeastSquaresOptions lsq;
};

/// Fit of the flux arch. Names: sweet_spot_frequency, dilution, arch_widening.
/// Points must lie in the central flux period, |phi| <= 1/2.
FitResult fit_flux_arch(const std::vector<ArchPoint>& points,
                        const ArchFitOptions& options = {});

}  // namespace ppc
