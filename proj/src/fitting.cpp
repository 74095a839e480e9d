#include "ppcircuit/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ppcircuit/circuit_params.hpp"
#include "ppcircuit/constants.hpp"
#include "ppcircuit/errors.hpp"

namespace ppc {

using cplx = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) { return std::remainder(a, constants::two_pi); }

// Residual wrapper: model domain errors at trial points become infinite
// cost, so the engine simply rejects the step.
ResidualFunction guarded(std::size_t count, ResidualFunction fn) {
  return [count, fn = std::move(fn)](const std::vector<double>& p, std::vector<double>& r) {
    try {
      fn(p, r);
    } catch (const DomainError&) {
      r.assign(count, kInf);
    }
  };
}

void fill_result(FitResult& out, const LeastSquaresResult& lsq) {
  out.residual_norm = lsq.residual_norm;
  out.gradient_norm = lsq.gradient_norm;
  out.iterations = lsq.iterations;
  out.converged = lsq.converged;
  out.message = lsq.message;
  out.cost_history = lsq.cost_history;
}

void require_points(std::size_t n, std::size_t minimum, const char* what) {
  if (n < minimum) {
    throw DomainError(std::string(what) + ": need at least " + std::to_string(minimum) +
                      " points");
  }
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double m = *mid;
  if (v.size() % 2 == 0) m = 0.5 * (m + *std::max_element(v.begin(), mid));
  return m;
}

// Linear regression slope and intercept of y against x.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  return {slope, my - slope * mx};
}

std::vector<double> unwrapped_phase(const std::vector<cplx>& z, std::size_t first,
                                    std::size_t last) {
  std::vector<double> out;
  double prev = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    double a = std::arg(z[i]);
    if (!out.empty()) a = prev + wrap_angle(a - prev);
    out.push_back(a);
    prev = a;
  }
  return out;
}

// Half-maximum crossing width around index `peak` of a non-negative profile
// measured above `floor`. Returns 0 when no crossing exists on either side.
double half_width(const std::vector<double>& x, const std::vector<double>& y,
                  std::size_t peak, double floor) {
  const double half = floor + 0.5 * (y[peak] - floor);
  double left = std::numeric_limits<double>::quiet_NaN();
  double right = left;
  for (std::size_t i = peak; i > 0; --i) {
    if (y[i - 1] < half) {
      const double t = (half - y[i - 1]) / (y[i] - y[i - 1]);
      left = x[i - 1] + t * (x[i] - x[i - 1]);
      break;
    }
  }
  for (std::size_t i = peak; i + 1 < y.size(); ++i) {
    if (y[i + 1] < half) {
      const double t = (y[i] - half) / (y[i] - y[i + 1]);
      right = x[i] + t * (x[i + 1] - x[i]);
      break;
    }
  }
  if (std::isnan(left) && std::isnan(right)) return 0.0;
  if (std::isnan(left)) return 2.0 * (right - x[peak]);
  if (std::isnan(right)) return 2.0 * (x[peak] - left);
  return right - left;
}

// Kasa algebraic circle fit; returns centre and radius.
std::pair<cplx, double> circle_fit(const std::vector<cplx>& z) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(z.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    a(k, 0) = z[i].real();
    a(k, 1) = z[i].imag();
    a(k, 2) = 1.0;
    b(k) = -std::norm(z[i]);
  }
  const Eigen::Vector3d s = a.colPivHouseholderQr().solve(b);
  const cplx centre(-0.5 * s(0), -0.5 * s(1));
  const double r2 = std::norm(centre) - s(2);
  return {centre, r2 > 0.0 ? std::sqrt(r2) : 0.0};
}

// Frequencies normalised to the span around the trace centre.
struct Axis {
  double reference_hz = 0.0;
  double span_hz = 1.0;
  std::vector<double> u;
  std::vector<double> hz;
};

Axis make_axis(const std::vector<double>& f) {
  Axis ax;
  ax.hz = f;
  ax.reference_hz = 0.5 * (f.front() + f.back());
  ax.span_hz = f.back() - f.front();
  ax.u.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) ax.u[i] = (f[i] - ax.reference_hz) / ax.span_hz;
  return ax;
}

cplx background_factor(double u, double a0, double a1, double b0, double b1) {
  return (a0 + a1 * u) * std::polar(1.0, b1 * u + b0);
}

// Ideal response (no background, no rotation) for the resonance models.
struct IdealModel {
  ResonanceModel kind = ResonanceModel::bare;
  double centre = 0.0;     // rad/s, reference for the offset parameter
  double centre_hz = 0.0;  // same in Hz
  double width = 1.0;   // rad/s, scale of the rate parameters
  PumpedFitSpec pumped;

  // Free parameter counts, excluding theta.
  std::size_t count() const { return kind == ResonanceModel::bare ? 3 : 4; }

  // Parameters: bare (x, ki, ke); pumped (x, ki, g, w).
  cplx eval(double hz, double reference_hz, const double* p) const {
    const double w0 = centre + width * p[0];
    const double ki = width * p[1];
    if (kind == ResonanceModel::bare) {
      const double ke = width * p[2];
      if (ki < 0.0 || ke < 0.0) throw DomainError("negative rate");
      // Detuning built from offsets to the reference to keep precision.
      const double detuning = constants::two_pi * (hz - reference_hz) -
                              (constants::two_pi * (centre_hz - reference_hz) + width * p[0]);
      return 1.0 - 2.0 * ke / cplx(ki + ke, 2.0 * detuning);
    }
    PumpedCavity c;
    c.cavity_frequency = w0;
    c.internal_rate = ki;
    c.external_rate = pumped.external_rate;
    c.lf_rate = pumped.lf_rate;
    c.coupling = pumped.coupling * p[2];
    c.lf_frequency = pumped.lf_frequency + width * p[3];
    c.detuning = pumped.pump_frequency - w0;
    return s11_pumped(constants::two_pi * hz, c);
  }
};

}  // namespace

cplx BackgroundModel::factor(double frequency_hz) const {
  const double df = frequency_hz - reference_hz;
  return (amplitude_offset + amplitude_slope * df) *
         std::polar(1.0, phase_slope * df + phase_offset);
}

cplx BackgroundModel::apply(double frequency_hz, cplx ideal) const {
  return factor(frequency_hz) * (1.0 - (1.0 - ideal) * std::polar(1.0, rotation));
}

cplx BackgroundModel::remove(double frequency_hz, cplx measured) const {
  return 1.0 - (1.0 - measured / factor(frequency_hz)) * std::polar(1.0, -rotation);
}

double FitResult::value(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  const auto it = derived.find(name);
  if (it != derived.end()) return it->second;
  throw DomainError("fit result has no parameter '" + name + "'");
}

double FitResult::uncertainty(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return uncertainties[i];
  }
  throw DomainError("fit result has no parameter '" + name + "'");
}

FitResult fit_resonance(const ComplexTrace& trace, const ResonanceFitOptions& options) {
  trace.validate();
  const std::size_t n = trace.size();
  require_points(n, 16, "fit_resonance");
  if (options.model == ResonanceModel::pumped && !options.pumped) {
    throw ConfigError("pumped resonance fit needs PumpedFitSpec");
  }
  const Axis ax = make_axis(trace.frequency_hz);
  const auto& z = trace.values;

  // Rough background from the two edge blocks.
  const std::size_t edge = std::max<std::size_t>(3, n / 20);
  auto block_mean = [&](std::size_t first, std::size_t last, auto get) {
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += get(i);
    return s / static_cast<double>(last - first);
  };
  const double amp_l = block_mean(0, edge, [&](std::size_t i) { return std::abs(z[i]); });
  const double amp_r = block_mean(n - edge, n, [&](std::size_t i) { return std::abs(z[i]); });
  const double u_l = block_mean(0, edge, [&](std::size_t i) { return ax.u[i]; });
  const double u_r = block_mean(n - edge, n, [&](std::size_t i) { return ax.u[i]; });
  double a1 = (amp_r - amp_l) / (u_r - u_l);
  double a0 = amp_l - a1 * u_l;
  const std::vector<double> ul(ax.u.begin(), ax.u.begin() + static_cast<std::ptrdiff_t>(edge));
  const std::vector<double> ur(ax.u.end() - static_cast<std::ptrdiff_t>(edge), ax.u.end());
  const auto [slope_l, icpt_l] = linear_fit(ul, unwrapped_phase(z, 0, edge));
  const auto [slope_r, icpt_r] = linear_fit(ur, unwrapped_phase(z, n - edge, n));
  // The edge blocks are short, so their own slopes are noisy. Take the
  // slope across the whole span instead and use the local slopes only to
  // pick the 2 pi branch of the phase difference.
  const double phase_l = icpt_l + slope_l * u_l;
  const double phase_r = icpt_r + slope_r * u_r;
  const double local = 0.5 * (slope_l + slope_r) * (u_r - u_l);
  const double raw = phase_r - phase_l;
  const double turns = std::round((local - raw) / constants::two_pi);
  double b1 = (raw + constants::two_pi * turns) / (u_r - u_l);
  double b0 = wrap_angle(phase_l - b1 * u_l);
  if (!(a0 > 0.0)) throw BackgroundEstimationError("baseline amplitude is not positive");

  // Centre and width from |z / bg - 1|^2.
  std::vector<double> depth(n);
  for (std::size_t i = 0; i < n; ++i) {
    depth[i] = std::norm(z[i] / background_factor(ax.u[i], a0, a1, b0, b1) - 1.0);
  }
  // A short running mean keeps single noisy points from setting the width.
  const std::size_t run = std::max<std::size_t>(1, n / 200);
  if (run > 1) {
    std::vector<double> smooth(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i >= run ? i - run : 0;
      const std::size_t hi = std::min(n, i + run + 1);
      smooth[i] = block_mean(lo, hi, [&](std::size_t j) { return depth[j]; });
    }
    depth.swap(smooth);
  }
  std::size_t peak = static_cast<std::size_t>(
      std::max_element(depth.begin(), depth.end()) - depth.begin());
  double centre_hz = ax.hz[peak];
  double width_hz = half_width(ax.hz, depth, peak, 0.0);
  const double step_hz = ax.span_hz / static_cast<double>(n - 1);
  if (options.model == ResonanceModel::pumped) {
    const auto& ps = *options.pumped;
    if (ps.cavity_frequency) centre_hz = *ps.cavity_frequency / constants::two_pi;
    if (ps.internal_rate) {
      width_hz = (*ps.internal_rate + ps.external_rate) / constants::two_pi;
    }
  }
  width_hz = std::max(width_hz, 2.0 * step_hz);

  // Stage 1: background on the off-resonant baseline.
  std::vector<std::size_t> baseline;
  std::vector<std::size_t> resonant;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(ax.hz[i] - centre_hz) > options.mask_linewidths * width_hz) {
      baseline.push_back(i);
    } else {
      resonant.push_back(i);
    }
  }
  if (baseline.size() < 4 ||
      static_cast<double>(baseline.size()) < options.min_baseline_fraction * static_cast<double>(n)) {
    throw BackgroundEstimationError(
        "insufficient off-resonant baseline: " + std::to_string(baseline.size()) + " of " +
        std::to_string(n) + " points outside the resonance mask");
  }
  LeastSquaresOptions lsq1 = options.lsq;
  lsq1.scale = {a0, a0, 1.0, 1.0};
  const auto stage1 = least_squares(
      guarded(2 * baseline.size(),
              [&](const std::vector<double>& p, std::vector<double>& r) {
                r.resize(2 * baseline.size());
                for (std::size_t k = 0; k < baseline.size(); ++k) {
                  const std::size_t i = baseline[k];
                  const cplx d = z[i] - background_factor(ax.u[i], p[0], p[1], p[2], p[3]);
                  r[2 * k] = d.real();
                  r[2 * k + 1] = d.imag();
                }
              }),
      {a0, a1, b0, b1}, lsq1);
  a0 = stage1.params[0];
  a1 = stage1.params[1];
  b0 = stage1.params[2];
  b1 = stage1.params[3];

  // Stage 2: ideal response on the background-divided trace.
  std::vector<cplx> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = z[i] / background_factor(ax.u[i], a0, a1, b0, b1);

  IdealModel model;
  model.kind = options.model;
  model.centre = constants::two_pi * centre_hz;
  model.centre_hz = centre_hz;
  model.width = constants::two_pi * width_hz;
  std::vector<cplx> circle_points;
  for (std::size_t i : resonant) circle_points.push_back(y[i]);
  const auto [circle_centre, radius] = circle_fit(circle_points);
  double theta = std::abs(1.0 - circle_centre) > 0.0 ? std::arg(1.0 - circle_centre) : 0.0;
  (void)radius;

  std::vector<double> p2;
  if (options.model == ResonanceModel::bare) {
    double ratio = std::abs(1.0 - circle_centre);
    ratio = std::clamp(ratio, 0.02, 0.98);
    p2 = {0.0, 1.0 - ratio, ratio, theta};
  } else {
    model.pumped = *options.pumped;
    if (!(model.pumped.coupling > 0.0)) throw ConfigError("pumped fit needs a coupling start value");
    const double ki0 = model.pumped.internal_rate
                           ? *model.pumped.internal_rate
                           : std::max(model.width - model.pumped.external_rate, 0.1 * model.width);
    // Circle rotation from the far wings only makes sense for the bare case.
    theta = 0.0;
    p2 = {0.0, ki0 / model.width, 1.0, 0.0, theta};
  }
  const std::size_t free = model.count();
  LeastSquaresOptions lsq2 = options.lsq;
  lsq2.scale.assign(free + 1, 1.0);
  const auto stage2 = least_squares(
      guarded(2 * n,
              [&](const std::vector<double>& p, std::vector<double>& r) {
                r.resize(2 * n);
                const cplx rot = std::polar(1.0, p[free]);
                for (std::size_t i = 0; i < n; ++i) {
                  const cplx ideal = model.eval(ax.hz[i], ax.reference_hz, p.data());
                  const cplx d = y[i] - (1.0 - (1.0 - ideal) * rot);
                  r[2 * i] = d.real();
                  r[2 * i + 1] = d.imag();
                }
              }),
      p2, lsq2);

  // Stage 3: joint refit of response, rotation and background on raw data.
  std::vector<double> p3 = stage2.params;
  p3.insert(p3.end(), {a0, a1, b0, b1});
  LeastSquaresOptions lsq3 = options.lsq;
  lsq3.scale.assign(free + 1, 1.0);
  lsq3.scale.insert(lsq3.scale.end(), {std::abs(a0), std::abs(a0), 1.0, 1.0});
  const auto stage3 = least_squares(
      guarded(2 * n,
              [&](const std::vector<double>& p, std::vector<double>& r) {
                r.resize(2 * n);
                const cplx rot = std::polar(1.0, p[free]);
                for (std::size_t i = 0; i < n; ++i) {
                  const cplx ideal = model.eval(ax.hz[i], ax.reference_hz, p.data());
                  const cplx bg = background_factor(ax.u[i], p[free + 1], p[free + 2],
                                                    p[free + 3], p[free + 4]);
                  const cplx d = z[i] - bg * (1.0 - (1.0 - ideal) * rot);
                  r[2 * i] = d.real();
                  r[2 * i + 1] = d.imag();
                }
              }),
      p3, lsq3);

  FitResult out;
  fill_result(out, stage3);
  const auto& q = stage3.params;
  const auto& s = stage3.uncertainties;
  const double w = model.width;
  out.names = {"resonance_frequency", "internal_rate"};
  out.values = {model.centre + w * q[0], w * q[1]};
  out.uncertainties = {w * s[0], w * s[1]};
  if (options.model == ResonanceModel::bare) {
    out.names.push_back("external_rate");
    out.values.push_back(w * q[2]);
    out.uncertainties.push_back(w * s[2]);
  } else {
    out.names.insert(out.names.end(), {"coupling", "lf_frequency"});
    out.values.insert(out.values.end(),
                      {model.pumped.coupling * q[2], model.pumped.lf_frequency + w * q[3]});
    out.uncertainties.insert(out.uncertainties.end(),
                             {model.pumped.coupling * s[2], w * s[3]});
    out.derived["external_rate"] = model.pumped.external_rate;
  }
  BackgroundModel bg;
  bg.reference_hz = ax.reference_hz;
  bg.amplitude_offset = q[free + 1];
  bg.amplitude_slope = q[free + 2] / ax.span_hz;
  bg.phase_offset = wrap_angle(q[free + 3]);
  bg.phase_slope = q[free + 4] / ax.span_hz;
  bg.rotation = wrap_angle(q[free]);
  out.names.insert(out.names.end(), {"alpha0", "alpha1", "beta0", "beta1", "theta"});
  out.values.insert(out.values.end(), {bg.amplitude_offset, bg.amplitude_slope,
                                       bg.phase_offset, bg.phase_slope, bg.rotation});
  out.uncertainties.insert(out.uncertainties.end(),
                           {s[free + 1], s[free + 2] / ax.span_hz, s[free + 3],
                            s[free + 4] / ax.span_hz, s[free]});
  out.background = bg;

  // Stage 2 numbers, kept for comparison with the joint result.
  const auto& q2 = stage2.params;
  out.derived["stage2.resonance_frequency"] = model.centre + w * q2[0];
  out.derived["stage2.internal_rate"] = w * q2[1];
  if (options.model == ResonanceModel::bare) out.derived["stage2.external_rate"] = w * q2[2];
  out.derived["stage2.theta"] = wrap_angle(q2[free]);
  out.derived["stage1.converged"] = stage1.converged ? 1.0 : 0.0;
  out.derived["stage2.converged"] = stage2.converged ? 1.0 : 0.0;

  ComplexTrace corrected;
  corrected.frequency_hz = trace.frequency_hz;
  corrected.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) corrected.values[i] = bg.remove(ax.hz[i], z[i]);
  out.corrected = std::move(corrected);
  return out;
}

FitResult fit_lorentzian(const SpectrumTrace& trace, const LeastSquaresOptions& lsq) {
  trace.validate();
  const std::size_t n = trace.size();
  require_points(n, 16, "fit_lorentzian");
  const auto& f = trace.frequency_hz;
  const auto& v = trace.values;
  const double offset0 = median(v);
  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  const double amp0 = v[peak] - offset0;
  if (!(amp0 > 0.0)) throw DegenerateFitError("no peak above the spectrum offset");
  double width0 = half_width(f, v, peak, offset0);
  const double step = (f.back() - f.front()) / static_cast<double>(n - 1);
  if (!(width0 > 0.0)) width0 = 0.5 * (f.back() - f.front());
  width0 = std::max(width0, step);
  const double scale = std::max(std::abs(v[peak]), std::abs(offset0));
  const double f0 = f[peak];

  LeastSquaresOptions opts = lsq;
  opts.scale = {std::abs(offset0) / scale > 1e-3 ? std::abs(offset0) / scale : 1.0, 1.0, 1.0,
                1.0};
  const auto res = least_squares(
      [&](const std::vector<double>& p, std::vector<double>& r) {
        r.resize(n);
        const double hw = 0.5 * p[3];
        for (std::size_t i = 0; i < n; ++i) {
          const double x = (f[i] - f0) / width0 - p[2];
          r[i] = p[0] + p[1] * hw * hw / (x * x + hw * hw) - v[i] / scale;
        }
      },
      {offset0 / scale, amp0 / scale, 0.0, 1.0}, opts);

  const auto& q = res.params;
  if (!(q[3] > 0.0) || !(q[1] != 0.0)) {
    throw DegenerateFitError("fitted Lorentzian has non-positive width or zero amplitude");
  }
  FitResult out;
  fill_result(out, res);
  out.names = {"offset", "amplitude", "center_hz", "fwhm_hz"};
  out.values = {q[0] * scale, q[1] * scale, f0 + q[2] * width0, q[3] * width0};
  const auto& s = res.uncertainties;
  out.uncertainties = {s[0] * scale, s[1] * scale, s[2] * width0, s[3] * width0};
  return out;
}

FitResult fit_backaction(const std::vector<double>& delta,
                         const std::vector<double>& frequency_shift,
                         const std::vector<double>& damping_shift, Sideband sideband,
                         const LeastSquaresOptions& lsq) {
  const std::size_t n = delta.size();
  if (frequency_shift.size() != n || damping_shift.size() != n) {
    throw DomainError("fit_backaction: arrays must share the detuning grid");
  }
  require_points(n, 3, "fit_backaction");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(frequency_shift[i]), std::abs(damping_shift[i])});
  }
  if (!(scale > 0.0)) throw NonIdentifiableError("backaction data are identically zero");

  // Starting values: damping width gives kappa tilde, its peak gives g.
  const double sign = sideband == Sideband::red ? 1.0 : -1.0;
  std::vector<double> damp(n);
  for (std::size_t i = 0; i < n; ++i) damp[i] = sign * damping_shift[i];
  const std::size_t peak =
      static_cast<std::size_t>(std::max_element(damp.begin(), damp.end()) - damp.begin());
  double kappa0 = 0.0;
  double g0 = 0.0;
  if (damp[peak] > 0.0) {
    kappa0 = half_width(delta, damp, peak, 0.0);
    if (!(kappa0 > 0.0)) kappa0 = 0.5 * (delta.back() - delta.front());
    g0 = std::sqrt(damp[peak] * kappa0 / 4.0);
  } else {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(frequency_shift[i]) > std::abs(frequency_shift[imax])) imax = i;
    }
    kappa0 = std::max(2.0 * std::abs(delta[imax]), 1e-12 + std::abs(delta.back() - delta.front()) / n);
    g0 = std::sqrt(std::abs(frequency_shift[imax]) * kappa0);
  }
  if (!(g0 > 0.0) || !(kappa0 > 0.0)) {
    throw NonIdentifiableError("cannot seed the backaction fit from the data");
  }

  LeastSquaresOptions opts = lsq;
  opts.scale = {1.0, 1.0};
  const auto res = least_squares(
      guarded(2 * n,
              [&](const std::vector<double>& p, std::vector<double>& r) {
                r.resize(2 * n);
                const double g = g0 * p[0];
                const double k = kappa0 * p[1];
                for (std::size_t i = 0; i < n; ++i) {
                  const auto b = backaction_sideband(delta[i], g, k, sideband);
                  r[2 * i] = (b.frequency_shift - frequency_shift[i]) / scale;
                  r[2 * i + 1] = (b.damping_shift - damping_shift[i]) / scale;
                }
              }),
      {1.0, 1.0}, opts);

  FitResult out;
  fill_result(out, res);
  out.names = {"coupling", "kappa_eff"};
  out.values = {std::abs(g0 * res.params[0]), kappa0 * res.params[1]};
  out.uncertainties = {g0 * res.uncertainties[0], kappa0 * res.uncertainties[1]};
  out.derived["peak_damping_shift"] =
      4.0 * out.values[0] * out.values[0] / out.values[1];
  return out;
}

FitResult fit_flux_arch(const std::vector<ArchPoint>& points, const ArchFitOptions& options) {
  const std::size_t n = points.size();
  if (n < 5) throw NonIdentifiableError("flux-arch fit needs at least 5 points");
  double max_phi = 0.0;
  double w_max = 0.0;
  double w_min = kInf;
  for (const auto& pt : points) {
    if (!std::isfinite(pt.flux_bias) || !(pt.frequency > 0.0)) {
      throw DomainError("flux-arch points must be finite with positive frequency");
    }
    if (std::abs(pt.flux_bias) > 0.5) {
      throw AmbiguityError("flux bias " + std::to_string(pt.flux_bias) +
                           " Phi0 lies outside the central flux period; reduce the flux axis "
                           "to |phi| <= 1/2 first");
    }
    max_phi = std::max(max_phi, std::abs(pt.flux_bias));
    w_max = std::max(w_max, pt.frequency);
    w_min = std::min(w_min, pt.frequency);
  }
  if ((w_max - w_min) <= 1e-10 * w_max || max_phi == 0.0) {
    throw NonIdentifiableError("flat flux arch: dilution and arch widening are not identifiable");
  }

  // Seed: scan gamma, solve 1/w^2 = a + b / cos(pi gamma phi) linearly.
  const double gamma_limit = 0.5 / max_phi;
  double best_cost = kInf;
  double best[3] = {0.0, 0.0, 0.0};
  const int scan = 600;
  for (int k = 1; k < scan; ++k) {
    const double gamma = gamma_limit * static_cast<double>(k) / scan;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 1.0 / std::cos(constants::pi * gamma * points[i].flux_bias);
      y[i] = 1.0 / (points[i].frequency * points[i].frequency);
    }
    const auto [b, a] = linear_fit(x, y);
    if (!(a + b > 0.0) || !(b > 0.0) || !(a > 0.0)) continue;
    const double w0 = 1.0 / std::sqrt(a + b);
    const double lam = a / (a + b);
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double model = w0 / std::sqrt(lam + (1.0 - lam) * x[i]);
      cost += std::pow((model - points[i].frequency) / w_max, 2);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best[0] = w0;
      best[1] = lam;
      best[2] = gamma;
    }
  }
  if (!std::isfinite(best_cost)) {
    throw NonIdentifiableError("no admissible arch parameters reproduce the points");
  }

  LeastSquaresOptions opts = options.lsq;
  opts.scale = {1.0, 1.0, 1.0};
  const double ws = best[0];
  const auto res = least_squares(
      guarded(n,
              [&](const std::vector<double>& p, std::vector<double>& r) {
                r.resize(n);
                SquidSpec spec;
                spec.sweet_spot_frequency = ws * p[0];
                spec.dilution = p[1];
                spec.arch_widening = p[2];
                for (std::size_t i = 0; i < n; ++i) {
                  r[i] = (squid_frequency(Flux::quanta(points[i].flux_bias), spec) -
                          points[i].frequency) /
                         w_max;
                }
              }),
      {1.0, best[1], best[2]}, opts);

  const double dilution = res.params[1];
  if (!(1.0 - dilution > 1e-9)) {
    throw NonIdentifiableError("fitted dilution is 1: arch widening is not identifiable");
  }
  FitResult out;
  fill_result(out, res);
  out.names = {"sweet_spot_frequency", "dilution", "arch_widening"};
  out.values = {ws * res.params[0], dilution, res.params[2]};
  out.uncertainties = {ws * res.uncertainties[0], res.uncertainties[1], res.uncertainties[2]};
  if (options.total_inductance) {
    const double lj0 = 2.0 * (1.0 - dilution) * *options.total_inductance;
    const double ic = constants::flux_quantum / (constants::two_pi * lj0);
    out.derived["single_junction_inductance"] = lj0;
    out.derived["critical_current"] = ic;
    if (options.loop_inductance) {
      out.derived["screening"] = screening_parameter(*options.loop_inductance, ic);
    }
  }
  return out;
}

}  // namespace ppc
