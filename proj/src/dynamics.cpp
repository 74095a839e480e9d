#include "ppcircuit/dynamics.hpp"

#include <cmath>
#include <string>

#include "ppcircuit/errors.hpp"

namespace ppc {

namespace {

constexpr cplx I{0.0, 1.0};

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

}  // namespace

OperatingPoint make_operating_point(double flux_bias, double cavity_frequency,
                                    double pump_detuning, double lf_frequency,
                                    Sideband sideband, double photons,
                                    double single_photon_rate,
                                    double effective_cavity_linewidth) {
  require_non_negative(photons, "intracavity_photons");
  OperatingPoint op;
  op.flux_bias = flux_bias;
  op.pump_detuning = pump_detuning;
  op.pump_frequency = cavity_frequency + pump_detuning;
  op.sideband_offset = sideband == Sideband::red ? pump_detuning + lf_frequency
                                                 : pump_detuning - lf_frequency;
  op.intracavity_photons = photons;
  op.single_photon_rate = single_photon_rate;
  op.multi_photon_rate = std::sqrt(photons) * single_photon_rate;
  op.effective_cavity_linewidth = effective_cavity_linewidth;
  return op;
}

cplx cavity_susceptibility(double omega, double detuning, double kappa) {
  return 1.0 / cplx(0.5 * kappa, -(detuning + omega));
}

cplx cavity_susceptibility_conj_mirror(double omega, double detuning, double kappa) {
  return 1.0 / cplx(0.5 * kappa, detuning - omega);
}

cplx effective_lf_susceptibility(cplx omega, double lf_frequency, double lf_rate,
                                 double coupling, double detuning, double kappa) {
  const cplx chi = 1.0 / (0.5 * kappa - I * (detuning + omega));
  const cplx mirror = 1.0 / (0.5 * kappa + I * (detuning - omega));
  const double g2 = coupling * coupling;
  return 1.0 / (lf_frequency * lf_frequency - omega * omega - I * omega * lf_rate -
                2.0 * I * lf_frequency * g2 * (chi - mirror));
}

cplx effective_lf_susceptibility(double omega, double lf_frequency, double lf_rate,
                                 double coupling, double detuning, double kappa) {
  return effective_lf_susceptibility(cplx(omega, 0.0), lf_frequency, lf_rate, coupling,
                                     detuning, kappa);
}

cplx s11_bare(double frequency, double resonance, double internal_rate,
              double external_rate) {
  return 1.0 - 2.0 * external_rate /
                   cplx(internal_rate + external_rate, 2.0 * (frequency - resonance));
}

cplx s11_pumped(double probe_frequency, const PumpedCavity& p) {
  require_non_negative(p.internal_rate, "internal_rate");
  require_non_negative(p.external_rate, "external_rate");
  require_positive(p.kappa(), "kappa");
  const double kappa = p.kappa();
  // Delta + Omega is the probe detuning from w0; take it directly so the
  // g = 0 limit is not disturbed by cancellation against w_p.
  const double probe_detuning = probe_frequency - p.cavity_frequency;
  const double omega = probe_detuning - p.detuning;
  const cplx chi = 1.0 / cplx(0.5 * kappa, -probe_detuning);
  if (p.coupling == 0.0) return std::conj(1.0 - p.external_rate * chi);
  require_positive(p.lf_frequency, "lf_frequency");
  require_non_negative(p.lf_rate, "lf_rate");
  const cplx chi0 = effective_lf_susceptibility(omega, p.lf_frequency, p.lf_rate,
                                                p.coupling, p.detuning, kappa);
  const cplx s = 1.0 - p.external_rate * chi *
                           (1.0 + 2.0 * I * p.lf_frequency * p.coupling * p.coupling *
                                      chi * chi0);
  return std::conj(s);
}

cplx lf_s11_pumped(double omega, const PumpedLf& p) {
  require_non_negative(p.lf_internal_rate, "lf_internal_rate");
  require_non_negative(p.lf_external_rate, "lf_external_rate");
  require_positive(p.lf_rate(), "lf_rate");
  cplx self_energy = 0.0;
  if (p.coupling != 0.0) {
    require_positive(p.kappa, "kappa");
    const cplx chi = cavity_susceptibility(omega, p.detuning, p.kappa);
    const cplx mirror = cavity_susceptibility_conj_mirror(omega, p.detuning, p.kappa);
    self_energy = -I * p.coupling * p.coupling * (chi - mirror);
  }
  const cplx s = 1.0 - p.lf_external_rate /
                           (0.5 * p.lf_rate() - I * (omega - p.lf_frequency) +
                            I * self_energy);
  return std::conj(s);
}

BackactionResult backaction_exact(double detuning, double coupling, double kappa,
                                  double lf_frequency) {
  require_positive(kappa, "kappa");
  const double q = 0.25 * kappa * kappa;
  const double plus = detuning + lf_frequency;
  const double minus = detuning - lf_frequency;
  const double g2 = coupling * coupling;
  BackactionResult r;
  r.frequency_shift = g2 * (plus / (q + plus * plus) + minus / (q + minus * minus));
  r.damping_shift = g2 * kappa * (1.0 / (q + plus * plus) - 1.0 / (q + minus * minus));
  return r;
}

BackactionResult backaction_sideband(double delta, double coupling, double kappa_eff,
                                     Sideband sideband) {
  require_positive(kappa_eff, "kappa_eff");
  const double g2 = coupling * coupling;
  const double denom = kappa_eff * kappa_eff + 4.0 * delta * delta;
  BackactionResult r;
  r.frequency_shift = 4.0 * g2 * delta / denom;
  const double damping = 4.0 * g2 * kappa_eff / denom;
  r.damping_shift = sideband == Sideband::red ? damping : -damping;
  return r;
}

HybridModes normal_modes(double coupling, double kappa, double lf_rate,
                         double lf_frequency) {
  require_positive(kappa, "kappa");
  require_positive(lf_rate, "lf_rate");
  const double a = std::abs(kappa - lf_rate) / 4.0;
  const double g = std::abs(coupling);
  // (g - a)(g + a) keeps the sign exact at threshold.
  const double disc = (g - a) * (g + a);
  const cplx centre(lf_frequency, -(kappa + lf_rate) / 4.0);
  const cplx root = disc >= 0.0 ? cplx(std::sqrt(disc), 0.0) : cplx(0.0, std::sqrt(-disc));
  HybridModes m;
  m.upper = centre + root;
  m.lower = centre - root;
  m.splitting = (m.upper - m.lower).real();
  m.upper_linewidth = -2.0 * m.upper.imag();
  m.lower_linewidth = -2.0 * m.lower.imag();
  m.resolved = disc > 0.0;
  return m;
}

double cooperativity(double coupling, double kappa, double lf_rate) {
  require_positive(kappa, "kappa");
  require_positive(lf_rate, "lf_rate");
  return 4.0 * coupling * coupling / (kappa * lf_rate);
}

double coupling_for_cooperativity(double c, double kappa, double lf_rate) {
  require_non_negative(c, "cooperativity");
  require_positive(kappa, "kappa");
  require_positive(lf_rate, "lf_rate");
  return std::sqrt(c * kappa * lf_rate / 4.0);
}

}  // namespace ppc
