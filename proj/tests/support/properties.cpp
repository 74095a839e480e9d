#include "properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "ppcircuit/circuit_params.hpp"
#include "ppcircuit/constants.hpp"
#include "ppcircuit/dynamics.hpp"
#include "ppcircuit/errors.hpp"
#include "ppcircuit/fitting.hpp"
#include "ppcircuit/least_squares.hpp"
#include "ppcircuit/noise_spectra.hpp"
#include "ppcircuit/synth.hpp"
#include "ppcircuit/traces.hpp"

namespace props {

namespace {

using namespace ppc;
using oracle::tau;

std::string g3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Outcome verdict(bool pass, const std::string& detail) { return {pass, detail}; }

SquidSpec device_squid() {
  SquidSpec s = SquidSpec::from_arch(tau(5.844e9), 0.982, 0.59, 742e-12, 120e-12);
  return s;
}

bool non_increasing(const std::vector<double>& h) {
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i] > h[i - 1]) return false;
  }
  return true;
}

// Device HF cavity values with a linear background.
S11Params hf_params() {
  S11Params p;
  p.model = S11Model::bare;
  p.resonance = tau(5.844e9);
  p.internal_rate = tau(163e3);
  p.external_rate = tau(28e3);
  return p;
}

BackgroundModel hf_background(double reference_hz) {
  BackgroundModel bg;
  bg.reference_hz = reference_hz;
  bg.amplitude_offset = 0.9;
  bg.amplitude_slope = 2e-8;
  bg.phase_offset = 0.3;
  bg.phase_slope = 1.9e-6;
  bg.rotation = 0.05;
  return bg;
}

std::vector<double> hf_grid(std::size_t n) {
  const double f0 = 5.844e9;
  const double half = 5.0 * 191e3;
  return linear_grid(f0 - half, f0 + half, n);
}

// ------------------------------------------------------------ circuit-params

Outcome squid_symmetry() {
  const SquidSpec s = device_squid();
  std::mt19937_64 rng(11);
  const double edge = 0.5 / s.arch_widening;
  double even = 0.0, odd = 0.0, period = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double phi = uniform(rng, -0.95 * edge, 0.95 * edge);
    even = std::max(even, rel(squid_frequency(Flux::quanta(-phi), s),
                              squid_frequency(Flux::quanta(phi), s)));
    const double r = flux_responsivity(Flux::quanta(phi), s);
    odd = std::max(odd, std::abs(flux_responsivity(Flux::quanta(-phi), s) + r) /
                            std::max(std::abs(r), 1.0));
    period = std::max(period,
                      rel(squid_frequency(Flux::quanta(phi + 2.0 / s.arch_widening), s),
                          squid_frequency(Flux::quanta(phi), s)));
  }
  // Half a period on, the cosine is negative: that point is beyond the arch.
  bool half_period_beyond = false;
  try {
    squid_frequency(Flux::quanta(1.0 / s.arch_widening), s);
  } catch (const BeyondArchError&) {
    half_period_beyond = true;
  }
  return verdict(even <= 1e-15 && odd <= 1e-15 && period <= 1e-9 && half_period_beyond,
                 "even " + g3(even) + ", odd " + g3(odd) + ", period 2/gamma " + g3(period));
}

Outcome responsivity_vs_fd() {
  const SquidSpec s = device_squid();
  std::mt19937_64 rng(12);
  const double edge = 0.5 / s.arch_widening;
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    // The relative error of a difference quotient is unbounded at the zero
    // of the derivative, so keep away from the sweet spot.
    double phi = uniform(rng, 0.02, 0.95 * edge);
    if (rng() & 1) phi = -phi;
    const double fd = (squid_frequency(Flux::quanta(phi + h), s) -
                       squid_frequency(Flux::quanta(phi - h), s)) /
                      (2.0 * h);
    worst = std::max(worst, rel(flux_responsivity(Flux::quanta(phi), s), fd));
  }
  return verdict(worst <= 1e-6, "max relative deviation " + g3(worst));
}

Outcome scaling_laws() {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double z0 = log_uniform(rng, 1.0, 1e3);
    const double cc = log_uniform(rng, 1e-16, 1e-12);
    const double l = log_uniform(rng, 1e-12, 1e-8);
    const double c = log_uniform(rng, 1e-13, 1e-9);
    const double w = log_uniform(rng, 1e6, 1e11);
    const double k = external_linewidth(z0, cc, l, c);
    worst = std::max(worst, rel(external_linewidth(2.0 * z0, cc, l, c), 2.0 * k));
    worst = std::max(worst, rel(external_linewidth(z0, cc, 4.0 * l, c), k / 4.0));
    const double i0 = zero_point_current(l, w);
    worst = std::max(worst, rel(zero_point_current(4.0 * l, w), i0 / 2.0));
    worst = std::max(worst, rel(i0 * i0 * 2.0 * l, constants::hbar * w));
    worst = std::max(worst, rel(lc_frequency(4.0 * l, c), lc_frequency(l, c) / 2.0));
  }
  return verdict(worst <= 1e-14, "max relative deviation " + g3(worst));
}

Outcome lc_round_trip() {
  std::mt19937_64 rng(14);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double l = log_uniform(rng, 1e-13, 1e-6);
    const double c = log_uniform(rng, 1e-15, 1e-8);
    worst = std::max(worst, rel(infer_inductance(lc_frequency(l, c), c), l));
  }
  return verdict(worst <= 1e-12, "max relative deviation " + g3(worst));
}

Outcome idc_monotone() {
  IdcSpec spec;
  spec.finger_length = 100e-6;
  spec.finger_width = 1e-6;
  spec.gap_width = 1.5e-6;
  spec.effective_permittivity = 6.4;
  spec.parallel_count = 1;
  bool ok = true;
  double prev = 0.0;
  for (int n = 3; n <= 300; ++n) {
    spec.finger_count = n;
    const double c = idc_capacitance(spec);
    ok = ok && c > prev;
    prev = c;
  }
  spec.finger_count = 90;
  prev = 0.0;
  for (double l = 1e-6; l <= 1e-3; l *= 1.1) {
    spec.finger_length = l;
    const double c = idc_capacitance(spec);
    ok = ok && c > prev;
    prev = c;
  }
  return verdict(ok, ok ? "strictly increasing in N (3..300) and l (1 um..1 mm)"
                        : "monotonicity violated");
}

Outcome g0_zero_and_continuous() {
  const SquidSpec s = device_squid();
  const Flux zpf = Flux::quanta(145e-6);
  const double at_zero = single_photon_coupling(Flux::quanta(0.0), s, zpf);
  const double edge = 0.9 * 0.5 / s.arch_widening;
  auto max_jump = [&](double h) {
    double jump = 0.0;
    double prev = single_photon_coupling(Flux::quanta(-edge), s, zpf);
    for (double phi = -edge + h; phi <= edge; phi += h) {
      const double g = single_photon_coupling(Flux::quanta(phi), s, zpf);
      jump = std::max(jump, std::abs(g - prev));
      prev = g;
    }
    return jump;
  };
  const double coarse = max_jump(1e-3);
  const double fine = max_jump(1e-4);
  const double ratio = coarse / fine;
  return verdict(at_zero == 0.0 && ratio > 8.0 && ratio < 12.0,
                 "g0(0) = " + g3(at_zero) + ", jump ratio for 10x finer grid " + g3(ratio));
}

Outcome circuit_type_invariants() {
  LumpedResonatorSpec lf;
  lf.plate_area = 7.68e-7;
  lf.dielectric_thickness = 130e-9;
  lf.relative_permittivity = 11.8;
  lf.coupling_capacitance = 434e-15;
  lf.feedline_impedance = 50.0;
  const ResonatorParams r = lumped_resonator(lf, tau(391.18e6), tau(7.4e3));
  const double lc = r.resonance_frequency * r.resonance_frequency * r.total_inductance *
                    (r.total_capacitance + r.coupling_capacitance);
  const SquidSpec s = device_squid();
  const double lj = rel(s.single_junction_inductance,
                        constants::flux_quantum / (constants::two_pi * s.critical_current));
  const double beta =
      rel(s.screening, 2.0 * s.loop_inductance * s.critical_current / constants::flux_quantum);
  LoopGeometry loop{10e-6, 1e-6, 11e-6};
  const CouplingGeometry geo = mutual_inductance(loop, 21e-9);
  const double phi = rel(geo.zero_point_flux.in_weber(), geo.mutual_inductance * 21e-9);
  const double worst = std::max({std::abs(lc - 1.0), lj, beta, phi,
                                 rel(r.total_rate(), r.internal_rate + r.external_rate)});
  return verdict(worst <= 1e-12, "max relative deviation " + g3(worst));
}

// ------------------------------------------------------------ dynamics

Outcome backaction_symmetry() {
  std::mt19937_64 rng(21);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double w0 = tau(log_uniform(rng, 1e6, 1e9));
    const double kappa = tau(log_uniform(rng, 1e3, 1e6));
    const double g = tau(log_uniform(rng, 1e2, 1e5));
    const double d = uniform(rng, -3.0, 3.0) * w0;
    const BackactionResult a = backaction_exact(d, g, kappa, w0);
    const BackactionResult b = backaction_exact(-d, g, kappa, w0);
    const double scale = std::max(std::abs(a.frequency_shift), std::abs(a.damping_shift));
    worst = std::max(worst, std::abs(a.frequency_shift + b.frequency_shift) / scale);
    worst = std::max(worst, std::abs(a.damping_shift + b.damping_shift) / scale);
    const double delta = uniform(rng, -5.0, 5.0) * kappa;
    const BackactionResult red = backaction_sideband(delta, g, kappa, Sideband::red);
    const BackactionResult blue = backaction_sideband(delta, g, kappa, Sideband::blue);
    worst = std::max(worst, rel(blue.frequency_shift, red.frequency_shift));
    worst = std::max(worst, rel(-blue.damping_shift, red.damping_shift));
  }
  return verdict(worst <= 1e-12,
                 "spring and damping odd under D -> -D; red/blue swap flips damping only; "
                 "max deviation " + g3(worst));
}

Outcome backaction_resolved_limit() {
  std::mt19937_64 rng(22);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double w0 = tau(log_uniform(rng, 1e7, 1e9));
    const double kappa = w0 * log_uniform(rng, 1e-6, 1e-3);
    const double g = kappa * log_uniform(rng, 1e-3, 1.0);
    const bool red = rng() & 1;
    const double base = red ? -w0 : w0;
    double peak = 0.0;
    double err = 0.0;
    for (int k = -50; k <= 50; ++k) {
      const double delta = 0.1 * k * kappa;
      const BackactionResult ex = backaction_exact(base + delta, g, kappa, w0);
      const BackactionResult ap =
          backaction_sideband(delta, g, kappa, red ? Sideband::red : Sideband::blue);
      peak = std::max(peak, std::abs(ap.damping_shift));
      err = std::max({err, std::abs(ex.frequency_shift - ap.frequency_shift),
                      std::abs(ex.damping_shift - ap.damping_shift)});
    }
    worst = std::max(worst, err / peak);
  }
  return verdict(worst <= 0.01,
                 "max |exact - sideband| / peak damping over |delta| <= 5 kappa: " + g3(worst));
}

Outcome pumped_reduces_to_bare() {
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    PumpedCavity p;
    p.cavity_frequency = tau(log_uniform(rng, 1e9, 1e10));
    p.internal_rate = tau(log_uniform(rng, 1e3, 1e6));
    p.external_rate = tau(log_uniform(rng, 1e3, 1e6));
    p.lf_frequency = tau(log_uniform(rng, 1e7, 1e9));
    p.lf_rate = tau(log_uniform(rng, 1e3, 1e5));
    p.coupling = 0.0;
    p.detuning = uniform(rng, -1.5, 1.5) * p.lf_frequency;
    const double span = 5.0 * p.kappa();
    for (int k = 0; k <= 40; ++k) {
      const double w = p.cavity_frequency - span + k * span / 20.0;
      const cplx a = s11_pumped(w, p);
      const cplx b = s11_bare(w, p.cavity_frequency, p.internal_rate, p.external_rate);
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return verdict(worst <= 1e-12, "max |S11 pumped(g=0) - S11 bare| " + g3(worst));
}

Outcome poles_match_modes() {
  std::mt19937_64 rng(24);
  double worst = 0.0;
  double worst_g_ratio = 0.0;
  double worst_split = 0.0;
  const double w0 = tau(391.18e6);
  for (int i = 0; i < 100; ++i) {
    const double lf_rate = tau(log_uniform(rng, 5e3, 5e4));
    const double kappa = tau(log_uniform(rng, 5e4, 5e5));
    const double threshold = std::abs(kappa - lf_rate) / 4.0;
    const double g = log_uniform(rng, 2.0 * threshold, w0 / 10.0);
    const double detuning = -w0;
    const HybridModes m = normal_modes(g, kappa, lf_rate, w0);
    const cplx up = oracle::chi0_pole(m.upper, w0, lf_rate, g, detuning, kappa);
    const cplx lo = oracle::chi0_pole(m.lower, w0, lf_rate, g, detuning, kappa);
    const double err = std::max(std::abs(up - m.upper), std::abs(lo - m.lower)) / m.splitting;
    worst_split = std::max(worst_split, std::abs((up - lo) - (m.upper - m.lower)) / m.splitting);
    if (err > worst) {
      worst = err;
      worst_g_ratio = g / w0;
    }
  }
  // The counter-rotating terms move both poles together by about
  // g^2 / (2 W0); the difference of the poles stays close to the splitting.
  return verdict(worst <= 0.01, "max pole offset / splitting " + g3(worst) + " (at g/W0 = " +
                                    g3(worst_g_ratio) + "); pole difference vs splitting " +
                                    g3(worst_split));
}

Outcome trace_invariance() {
  std::mt19937_64 rng(25);
  double worst = 0.0;
  double worst_width = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double w0 = tau(log_uniform(rng, 1e6, 1e10));
    const double kappa = tau(log_uniform(rng, 1e2, 1e7));
    const double lf_rate = tau(log_uniform(rng, 1e2, 1e7));
    const double g = tau(log_uniform(rng, 1e1, 1e8));
    const HybridModes m = normal_modes(g, kappa, lf_rate, w0);
    const cplx sum = m.upper + m.lower;
    const cplx expect(2.0 * w0, -(kappa + lf_rate) / 2.0);
    worst = std::max(worst, std::abs(sum - expect) / std::abs(expect));
    worst_width = std::max(worst_width, rel(m.upper_linewidth + m.lower_linewidth,
                                            kappa + lf_rate));
  }
  return verdict(worst <= 1e-9 && worst_width <= 1e-9,
                 "10^4 draws: eigenvalue sum " + g3(worst) + ", linewidth sum " +
                     g3(worst_width));
}

Outcome transparency_depth() {
  std::mt19937_64 rng(26);
  double oracle_err = 0.0;
  double closed_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    PumpedCavity p;
    p.cavity_frequency = tau(5.8e9);
    p.lf_frequency = tau(391.18e6);
    p.lf_rate = tau(22e3);
    const double kappa = tau(uniform(rng, 1e5, 5e5));
    const double ratio = uniform(rng, 0.05, 0.95);
    p.external_rate = ratio * kappa;
    p.internal_rate = kappa - p.external_rate;
    const double c = log_uniform(rng, 0.1, 100.0);
    p.coupling = coupling_for_cooperativity(c, kappa, p.lf_rate);
    p.detuning = -p.lf_frequency;
    const cplx s = s11_pumped(p.cavity_frequency, p);
    const cplx o = oracle::s11_pumped(p.cavity_frequency, p.cavity_frequency, p.internal_rate,
                                      p.external_rate, p.lf_frequency, p.lf_rate, p.coupling,
                                      p.detuning);
    oracle_err = std::max(oracle_err, std::abs(s - o) / std::abs(o));
    closed_err = std::max(closed_err, std::abs(s - (1.0 - 2.0 * ratio / (1.0 + c))));
  }
  return verdict(oracle_err <= 1e-10 && closed_err <= 1e-3,
                 "vs direct evaluation " + g3(oracle_err) + ", vs 1 - 2ke/k/(1+C) " +
                     g3(closed_err));
}

Outcome operating_point_invariant() {
  std::mt19937_64 rng(27);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double n = log_uniform(rng, 1e-2, 1e4);
    const double g0 = tau(log_uniform(rng, 1e2, 1e5));
    const OperatingPoint op = make_operating_point(0.1, tau(5.8e9), -tau(391e6), tau(391e6),
                                                   Sideband::red, n, g0, tau(1e5));
    worst = std::max(worst, rel(op.multi_photon_rate * op.multi_photon_rate, n * g0 * g0));
  }
  return verdict(worst <= 1e-12, "g^2 vs n g0^2: " + g3(worst));
}

// ------------------------------------------------------------ noise-spectra

BluePumpParams random_blue(std::mt19937_64& rng, double c) {
  BluePumpParams p;
  p.kappa = tau(uniform(rng, 1e5, 5e5));
  p.external_rate = p.kappa * uniform(rng, 0.05, 0.9);
  p.lf_rate = tau(uniform(rng, 5e3, 5e4));
  p.lf_frequency = tau(391.18e6);
  p.coupling = coupling_for_cooperativity(c, p.kappa, p.lf_rate);
  p.detuning = p.lf_frequency;
  p.lf_occupation = uniform(rng, 0.0, 100.0);
  p.cavity_occupation = 0.0;
  p.added_photons = uniform(rng, 0.5, 40.0);
  return p;
}

Outcome psd_excess_non_negative() {
  std::mt19937_64 rng(31);
  double lowest = 0.0;
  for (int i = 0; i < 100; ++i) {
    BluePumpParams p = random_blue(rng, uniform(rng, 0.0, 0.99));
    p.detuning = p.lf_frequency + uniform(rng, -2.0, 2.0) * p.kappa;
    p.cavity_occupation = uniform(rng, 0.0, 1.0);
    const double bg = 0.5 + p.added_photons;
    for (int k = -400; k <= 400; ++k) {
      const double omega = -p.lf_frequency + k * (p.kappa / 40.0);
      lowest = std::min(lowest, (psd_blue_pump(omega, p) - bg) / bg);
    }
  }
  return verdict(lowest >= -1e-14, "lowest relative excess " + g3(lowest));
}

Outcome lorentzian_area() {
  // The grid spans +-50 Gamma0'. A Lorentzian holds 1 - (2/pi) atan(100),
  // about 0.64%, of its area outside that window, so the numeric sum is
  // compared with the closed-form integral over the same window; the
  // untruncated value is reported alongside.
  std::mt19937_64 rng(32);
  double worst = 0.0;
  double tail = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double kappa = tau(uniform(rng, 1e5, 5e5));
    const double ke = kappa * uniform(rng, 0.05, 0.9);
    const double c = uniform(rng, 0.05, 0.95);
    const double g0r = tau(uniform(rng, 5e3, 5e4));
    const double g0p = blue_lf_linewidth(g0r, c);
    const double n = uniform(rng, 0.0, 50.0);
    const double nadd = 28.8;
    const std::size_t points = 20001;
    const double half = 50.0 * g0p;
    const double dx = 2.0 * half / static_cast<double>(points - 1);
    std::vector<double> y(points);
    for (std::size_t k = 0; k < points; ++k) {
      const double x = -half + static_cast<double>(k) * dx;
      y[k] = psd_on_sideband(x, kappa, ke, c, g0r, g0p, n, nadd) - (0.5 + nadd);
    }
    const double numeric = oracle::simpson(y, dx);
    const double full = oracle::kPi / 2.0 * 4.0 * (ke / kappa) * c * g0r * g0r / g0p * (n + 1.0);
    const double windowed = full * (2.0 / oracle::kPi) * std::atan(2.0 * half / g0p);
    worst = std::max(worst, rel(numeric, windowed));
    tail = std::max(tail, rel(numeric, full));
  }
  return verdict(worst <= 1e-3, "vs windowed closed form " + g3(worst) +
                                    "; vs untruncated integral " + g3(tail));
}

Outcome extraction_round_trip() {
  std::mt19937_64 rng(33);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double s_b = log_uniform(rng, 1e-20, 1e-12);
    const double nadd = uniform(rng, 0.0, 50.0);
    const double kappa = tau(log_uniform(rng, 1e4, 1e7));
    const double ke = kappa * uniform(rng, 0.01, 1.0);
    const double c = uniform(rng, 0.01, 1.0);
    const double g0 = tau(log_uniform(rng, 1e3, 1e6));
    const double izpf = log_uniform(rng, 1e-9, 1e-7);
    std::vector<double> s_i(20), s_v(20);
    // Draw the current noise through the excess it produces over the
    // background, S_V / S_b - 1 in [1e-3, 1e3]; much smaller excesses are
    // lost to cancellation in S_V / S_b - 1 rather than to the formulas.
    const double per_excess = (0.5 + nadd) * 2.0 * kappa / (c * ke * g0) * izpf * izpf;
    for (int k = 0; k < 20; ++k) {
      s_i[k] = log_uniform(rng, 1e-3, 1e3) * per_excess;
      s_v[k] = forward_measured_psd(s_i[k], s_b, nadd, kappa, ke, c, g0, izpf);
    }
    const auto back = extract_current_psd(s_v, s_b, nadd, kappa, ke, c, g0, izpf);
    for (int k = 0; k < 20; ++k) worst = std::max(worst, rel(back[k], s_i[k]));
  }
  return verdict(worst <= 1e-9, "max relative deviation " + g3(worst));
}

Outcome peak_inversion() {
  std::mt19937_64 rng(34);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double g0 = tau(log_uniform(rng, 1e3, 1e6));
    const double g0p = g0 * uniform(rng, 0.01, 1.0);
    const double izpf = log_uniform(rng, 1e-9, 1e-7);
    const double n = log_uniform(rng, 1e-3, 1e3);
    const double peak = current_psd(0.0, g0, g0p, izpf, n);
    worst = std::max(worst, rel(thermal_photons_from_peak(peak, g0, g0p, izpf), n));
  }
  return verdict(worst <= 1e-12, "max relative deviation " + g3(worst));
}

Outcome unit_closure() {
  std::mt19937_64 rng(35);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = log_uniform(rng, 1e-3, 1e6);
    const double w = tau(log_uniform(rng, 1e6, 1e11));
    worst = std::max(worst, rel(watts_per_hz_to_photons(photons_to_watts_per_hz(s, w), w), s));
    const double si = log_uniform(rng, 1e-30, 1e-15);
    const double m = log_uniform(rng, 1e-13, 1e-9);
    worst = std::max(worst, rel(flux_to_current_psd(current_to_flux_psd(si, m), m), si));
  }
  return verdict(worst <= 4e-16, "max relative deviation " + g3(worst));
}

Outcome noise_type_invariants() {
  std::mt19937_64 rng(36);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    DetectionChain d;
    d.hemt_added_photons = uniform(rng, 0.0, 50.0);
    d.output_efficiency = uniform(rng, 0.01, 1.0);
    worst = std::max(worst, rel(d.effective_added_photons(),
                                oracle::added_photons(d.hemt_added_photons,
                                                      d.output_efficiency)));
    const double c = uniform(rng, 0.0, 0.99);
    const double nth = uniform(rng, 0.0, 100.0);
    worst = std::max(worst, rel(amplified_occupation(nth, c) + 1.0, (nth + 1.0) / (1.0 - c)));
  }
  return verdict(worst <= 1e-12, "n_add' and n_LF relations: " + g3(worst));
}

// ------------------------------------------------------------ fitting

Outcome engine_quadratic() {
  LeastSquaresResult r = least_squares(
      [](const std::vector<double>& p, std::vector<double>& out) { out = {p[0] - 3.0}; },
      {0.5});
  const bool ok = r.converged && r.iterations <= 3 && std::abs(r.params[0] - 3.0) <= 1e-12;
  return verdict(ok, "iterations " + std::to_string(r.iterations) + ", error " +
                         g3(std::abs(r.params[0] - 3.0)));
}

Outcome noiseless_recovery() {
  std::ostringstream detail;
  double worst = 0.0;
  bool converged = true;

  // least_squares on a nonlinear decay model
  {
    std::vector<double> t(50), y(50);
    for (int i = 0; i < 50; ++i) {
      t[i] = 0.1 * i;
      y[i] = 2.5 * std::exp(-0.7 * t[i]) + 0.3;
    }
    auto r = least_squares(
        [&](const std::vector<double>& p, std::vector<double>& out) {
          out.resize(50);
          for (int i = 0; i < 50; ++i) out[i] = p[0] * std::exp(-p[1] * t[i]) + p[2] - y[i];
        },
        {1.0, 0.3, 0.0});
    const double e = std::max({rel(r.params[0], 2.5), rel(r.params[1], 0.7), rel(r.params[2], 0.3)});
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << "lsq " << g3(e);
  }
  // fit_resonance, bare, with background
  {
    const auto grid = hf_grid(2001);
    const S11Params p = hf_params();
    const ComplexTrace t = synth_s11(p, grid, hf_background(5.844e9));
    const FitResult r = fit_resonance(t);
    const double e = std::max({rel(r.value("resonance_frequency"), p.resonance),
                               rel(r.value("internal_rate"), p.internal_rate),
                               rel(r.value("external_rate"), p.external_rate)});
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << ", resonance " << g3(e);
  }
  // fit_lorentzian
  {
    SpectrumTrace s;
    s.frequency_hz = linear_grid(-1e5, 1e5, 2001);
    for (double f : s.frequency_hz) {
      const double w = 1e4;
      s.values.push_back(2.0 + 7.0 * (w / 2) * (w / 2) / ((f - 1.5e3) * (f - 1.5e3) + (w / 2) * (w / 2)));
    }
    const FitResult r = fit_lorentzian(s);
    const double e = std::max({rel(r.value("offset"), 2.0), rel(r.value("amplitude"), 7.0),
                               rel(r.value("center_hz"), 1.5e3), rel(r.value("fwhm_hz"), 1e4)});
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << ", lorentzian " << g3(e);
  }
  // fit_backaction
  {
    const double g = tau(std::sqrt(22e3 * 110e3 / 4.0));
    const double k = tau(110e3);
    std::vector<double> d, fs, ds;
    for (int i = -200; i <= 200; ++i) {
      d.push_back(i * 5.0 * k / 200.0);
      const BackactionResult b = backaction_sideband(d.back(), g, k, Sideband::red);
      fs.push_back(b.frequency_shift);
      ds.push_back(b.damping_shift);
    }
    const FitResult r = fit_backaction(d, fs, ds);
    const double e = std::max(rel(r.value("coupling"), g), rel(r.value("kappa_eff"), k));
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << ", backaction " << g3(e);
  }
  // fit_flux_arch
  {
    const SquidSpec s = device_squid();
    std::vector<ArchPoint> pts;
    for (int i = -30; i <= 30; ++i) {
      const double phi = 0.015 * i;
      pts.push_back({phi, squid_frequency(Flux::quanta(phi), s)});
    }
    const FitResult r = fit_flux_arch(pts);
    const double e = std::max({rel(r.value("sweet_spot_frequency"), s.sweet_spot_frequency),
                               rel(r.value("dilution"), s.dilution),
                               rel(r.value("arch_widening"), s.arch_widening)});
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << ", arch " << g3(e);
  }
  return verdict(converged && worst <= 1e-8, detail.str() + " (bound 1e-8)");
}

Outcome background_idempotence() {
  const auto grid = hf_grid(2001);
  const ComplexTrace t = synth_s11(hf_params(), grid, hf_background(5.844e9));
  const FitResult first = fit_resonance(t);
  const FitResult second = fit_resonance(*first.corrected);
  const double span = grid.back() - grid.front();
  const double worst = std::max({std::abs(second.value("alpha0") - 1.0),
                                 std::abs(second.value("alpha1")) * span,
                                 std::abs(second.value("beta0")),
                                 std::abs(second.value("beta1")) * span,
                                 std::abs(second.value("theta"))});
  return verdict(worst <= 1e-6,
                 "max |background - identity| (slopes times span) " + g3(worst));
}

Outcome monotone_cost() {
  bool ok = true;
  int histories = 0;
  // Rosenbrock valley: plenty of rejected steps.
  auto r = least_squares(
      [](const std::vector<double>& p, std::vector<double>& out) {
        out = {10.0 * (p[1] - p[0] * p[0]), 1.0 - p[0]};
      },
      {-1.2, 1.0});
  ok = ok && non_increasing(r.cost_history);
  ++histories;
  NoiseSpec noise{NoiseKind::additive, 0.02, 5, 0};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    noise.seed = seed;
    const ComplexTrace t = synth_s11(hf_params(), hf_grid(801), hf_background(5.844e9), noise);
    ok = ok && non_increasing(fit_resonance(t).cost_history);
    ++histories;
  }
  return verdict(ok, std::to_string(histories) + " cost histories, " +
                         (ok ? "none increasing" : "an accepted step increased the cost"));
}

Outcome uncertainty_scaling() {
  std::vector<double> unc[3];
  const char* names[3] = {"resonance_frequency", "internal_rate", "external_rate"};
  for (std::size_t n : {128u, 512u, 2048u}) {
    NoiseSpec noise{NoiseKind::additive, 0.01, 77, 0};
    const ComplexTrace t = synth_s11(hf_params(), hf_grid(n), hf_background(5.844e9), noise);
    const FitResult r = fit_resonance(t);
    for (int k = 0; k < 3; ++k) unc[k].push_back(r.uncertainty(names[k]));
  }
  double worst = 0.0;
  for (auto& u : unc) {
    worst = std::max(worst, std::abs(u[0] / u[1] / 2.0 - 1.0));
    worst = std::max(worst, std::abs(u[1] / u[2] / 2.0 - 1.0));
  }
  return verdict(worst <= 0.25, "max deviation of sigma(N)/sigma(4N) from 2: " + g3(worst));
}

// ------------------------------------------------------------ synth

PsdParams ppia_psd() {
  PsdParams p;
  p.pump.kappa = tau(250e3);
  p.pump.external_rate = tau(25e3);
  p.pump.lf_rate = tau(22e3);
  p.pump.lf_frequency = tau(391.18e6);
  p.pump.coupling = coupling_for_cooperativity(0.55, p.pump.kappa, p.pump.lf_rate);
  p.pump.detuning = p.pump.lf_frequency;
  p.pump.lf_occupation = amplified_occupation(4.0, 0.55);
  p.output_frequency = tau(5.8e9);
  return p;
}

Outcome determinism() {
  NoiseSpec noise{NoiseKind::additive, 0.01, 1234, 7};
  const auto grid = hf_grid(2001);
  const ComplexTrace a = synth_s11(hf_params(), grid, hf_background(5.844e9), noise);
  const ComplexTrace b = synth_s11(hf_params(), grid, hf_background(5.844e9), noise);
  noise.stream = 8;
  const ComplexTrace c = synth_s11(hf_params(), grid, hf_background(5.844e9), noise);
  const bool same = std::memcmp(a.values.data(), b.values.data(),
                                a.values.size() * sizeof(a.values[0])) == 0;
  const bool differs = std::memcmp(a.values.data(), c.values.data(),
                                   a.values.size() * sizeof(a.values[0])) != 0;
  DetectionChain det;
  NoiseSpec mult{NoiseKind::multiplicative, 0.03, 99, 0};
  const auto offs = linear_grid(-1e5, 1e5, 2001);
  const SpectrumTrace p1 = synth_psd(ppia_psd(), offs, det, mult);
  const SpectrumTrace p2 = synth_psd(ppia_psd(), offs, det, mult);
  const bool psd_same = std::memcmp(p1.values.data(), p2.values.data(),
                                    p1.values.size() * sizeof(double)) == 0;
  return verdict(same && differs && psd_same,
                 std::string("same seed bit-identical: ") + (same && psd_same ? "yes" : "no") +
                     ", other stream differs: " + (differs ? "yes" : "no"));
}

Outcome synth_closure() {
  std::ostringstream detail;
  double worst = 0.0;
  bool converged = true;
  {
    const auto grid = hf_grid(2001);
    const S11Params p = hf_params();
    const FitResult r = fit_resonance(synth_s11(p, grid));
    const double e = std::max({rel(r.value("resonance_frequency"), p.resonance),
                               rel(r.value("internal_rate"), p.internal_rate),
                               rel(r.value("external_rate"), p.external_rate)});
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << "bare " << g3(e);
  }
  {
    S11Params p;
    p.model = S11Model::pumped;
    p.pumped.cavity_frequency = tau(5.842e9);
    p.pumped.internal_rate = tau(163e3);
    p.pumped.external_rate = tau(28e3);
    p.pumped.lf_frequency = tau(391.18e6);
    p.pumped.lf_rate = tau(22e3);
    p.pumped.coupling = tau(34e3);
    p.pumped.detuning = -p.pumped.lf_frequency;
    const auto grid = linear_grid(5.842e9 - 955e3, 5.842e9 + 955e3, 2001);
    BackgroundModel bg = hf_background(5.842e9);
    ResonanceFitOptions opt;
    opt.model = ResonanceModel::pumped;
    PumpedFitSpec spec;
    spec.external_rate = p.pumped.external_rate;
    spec.lf_rate = p.pumped.lf_rate;
    spec.pump_frequency = p.pumped.pump_frequency();
    spec.lf_frequency = p.pumped.lf_frequency * (1.0 + 2e-6);
    spec.coupling = p.pumped.coupling * 1.05;
    opt.pumped = spec;
    const FitResult r = fit_resonance(synth_s11(p, grid, bg), opt);
    const double e = std::max({rel(r.value("resonance_frequency"), p.pumped.cavity_frequency),
                               rel(r.value("internal_rate"), p.pumped.internal_rate),
                               rel(r.value("coupling"), p.pumped.coupling),
                               rel(r.value("lf_frequency"), p.pumped.lf_frequency)});
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << ", pumped " << g3(e);
  }
  {
    PsdParams p = ppia_psd();
    p.model = PsdModel::on_sideband;
    DetectionChain det;
    const double g0p = blue_lf_linewidth(p.pump.lf_rate, 0.55) / constants::two_pi;
    const SpectrumTrace s = synth_psd(p, linear_grid(-10 * g0p, 10 * g0p, 2001), det);
    const FitResult r = fit_lorentzian(s);
    const double e = std::max(rel(r.value("fwhm_hz"), g0p),
                              std::abs(r.value("center_hz")) / g0p);
    worst = std::max(worst, e);
    converged = converged && r.converged;
    detail << ", psd " << g3(e);
  }
  return verdict(converged && worst <= 1e-8, detail.str() + " (bound 1e-8)");
}

Outcome noise_scaling() {
  const double sigmas[3] = {0.0125, 0.025, 0.05};
  double per_sigma[3];
  const auto grid = hf_grid(501);
  for (int s = 0; s < 3; ++s) {
    std::vector<double> ki;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      NoiseSpec noise{NoiseKind::additive, sigmas[s], seed, 0};
      const FitResult r = fit_resonance(synth_s11(hf_params(), grid, hf_background(5.844e9), noise));
      ki.push_back(r.value("internal_rate"));
    }
    per_sigma[s] = oracle::stddev(ki) / sigmas[s];
  }
  const double hi = *std::max_element(per_sigma, per_sigma + 3);
  const double lo = *std::min_element(per_sigma, per_sigma + 3);
  return verdict(hi / lo <= 1.3, "std(kappa_i)/sigma spread across sigma in {0.0125, 0.025, "
                                 "0.05}: max/min " + g3(hi / lo));
}

// ------------------------------------------------------------ cli

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("ppc_props_" + name);
  std::ofstream(path) << content;
  return path.string();
}

Outcome exit_codes() {
  const std::string bad = temp_file("bad.txt", "# f re im\n1 0 0\n2 zz 0\n");
  std::ostringstream flat;
  for (int i = 0; i < 20; ++i) flat << 0.01 * i << " 5.844e9\n";
  const std::string arch = temp_file("flat_arch.txt", flat.str());
  const int ok = run({"params"}).code;
  const int config = run({"params", "--set", "no.such_key=1"}).code;
  const int parse = run({"fit", "--input", bad}).code;
  const int domain = run({"respond", "--set", "pump.flux_bias=0.9"}).code;
  const int fit = run({"fit", "--model", "arch", "--input", arch}).code;
  const std::set<int> codes{ok, config, parse, domain, fit};
  const bool pass = ok == 0 && codes.size() == 5 && !codes.count(1);
  return verdict(pass, "ok " + std::to_string(ok) + ", config " + std::to_string(config) +
                           ", parse " + std::to_string(parse) + ", domain " +
                           std::to_string(domain) + ", fit " + std::to_string(fit));
}

const std::vector<std::vector<std::string>>& figure_commands() {
  static const std::vector<std::vector<std::string>> cmds{
      {"params"},
      {"respond", "--preset", "strong_coupling_D"},
      {"respond", "--preset", "backaction"},
      {"backaction", "--preset", "backaction"},
      {"nms", "--preset", "strong_coupling_D"},
      {"psd", "--preset", "thermal", "--temperatures", "0.015,0.05,0.09,0.13,0.175,0.22"},
      {"synth", "--preset", "hf", "--set", "synth.noise=additive", "--set", "synth.sigma=0.01",
       "--seed", "42"},
      {"synth", "--kind", "psd", "--preset", "ppia", "--set", "synth.noise=multiplicative",
       "--set", "synth.sigma=0.03", "--seed", "42"},
      {"sweep", "--preset", "strong_coupling_D", "--outer", "pump.offset_hz=-1e6:1e6:101",
       "--grid", "5.8083e9:5.8103e9:401"},
  };
  return cmds;
}

Outcome reproducible_output() {
  bool same = true;
  for (const auto& cmd : figure_commands()) {
    const Run a = run(cmd);
    const Run b = run(cmd);
    same = same && a.code == 0 && a.out == b.out && !a.out.empty();
  }
  std::vector<std::string> other = figure_commands()[6];
  other.back() = "43";
  const bool seed_matters = run(other).out != run(figure_commands()[6]).out;
  return verdict(same && seed_matters,
                 std::to_string(figure_commands().size()) + " commands byte-identical on rerun: " +
                     (same ? "yes" : "no") + ", new seed changes output: " +
                     (seed_matters ? "yes" : "no"));
}

Outcome command_runtime() {
  double slowest = 0.0;
  std::string which;
  std::vector<std::vector<std::string>> cmds = figure_commands();
  cmds.pop_back();
  // Full-size sweep: 2001 probe points by 201 detunings.
  cmds.push_back({"sweep", "--preset", "strong_coupling_D", "--outer",
                  "pump.offset_hz=-1e6:1e6:201"});
  for (const auto& cmd : cmds) {
    const auto t0 = std::chrono::steady_clock::now();
    const Run r = run(cmd);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.code != 0) return verdict(false, cmd.front() + " failed: " + r.err);
    if (dt > slowest) {
      slowest = dt;
      which = cmd.front();
    }
  }
  return verdict(slowest < 10.0, "slowest " + which + " " + g3(slowest) + " s");
}

}  // namespace

const std::vector<Property>& all_properties() {
  static const std::vector<Property> list{
      {"circuit-params", "squid_frequency even and periodic, responsivity odd", squid_symmetry},
      {"circuit-params", "responsivity matches central differences", responsivity_vs_fd},
      {"circuit-params", "scaling laws", scaling_laws},
      {"circuit-params", "inductance round trip", lc_round_trip},
      {"circuit-params", "idc capacitance monotone", idc_monotone},
      {"circuit-params", "g0 zero at sweet spot and continuous", g0_zero_and_continuous},
      {"circuit-params", "type invariants", circuit_type_invariants},
      {"dynamics", "backaction symmetry", backaction_symmetry},
      {"dynamics", "exact vs sideband backaction", backaction_resolved_limit},
      {"dynamics", "pumped response at g=0 is bare", pumped_reduces_to_bare},
      {"dynamics", "susceptibility poles match normal modes", poles_match_modes},
      {"dynamics", "normal mode trace invariance", trace_invariance},
      {"dynamics", "transparency depth", transparency_depth},
      {"dynamics", "operating point coupling", operating_point_invariant},
      {"noise-spectra", "blue psd excess non-negative", psd_excess_non_negative},
      {"noise-spectra", "integrated lorentzian excess", lorentzian_area},
      {"noise-spectra", "extraction round trip", extraction_round_trip},
      {"noise-spectra", "peak inversion", peak_inversion},
      {"noise-spectra", "unit conversion closure", unit_closure},
      {"noise-spectra", "type invariants", noise_type_invariants},
      {"fitting", "engine solves a quadratic", engine_quadratic},
      {"fitting", "noiseless recovery", noiseless_recovery},
      {"fitting", "background idempotence", background_idempotence},
      {"fitting", "monotone cost", monotone_cost},
      {"fitting", "uncertainty scaling", uncertainty_scaling},
      {"synth", "determinism", determinism},
      {"synth", "forward inverse closure", synth_closure},
      {"synth", "noise scaling", noise_scaling},
      {"cli", "exit codes", exit_codes},
      {"cli", "reproducible output", reproducible_output},
      {"cli", "runtime", command_runtime},
  };
  return list;
}

}  // namespace props
