#include "ppcircuit/synth.hpp"

#include <cmath>

#include "ppcircuit/constants.hpp"
#include "ppcircuit/errors.hpp"

namespace ppc {

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("noise sigma must be >= 0");
}

NoiseSource::NoiseSource(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double NoiseSource::normal() { return dist_(engine_); }

std::complex<double> s11_response(const S11Params& params, double frequency_hz) {
  const double w = constants::two_pi * frequency_hz;
  switch (params.model) {
    case S11Model::bare:
      return s11_bare(w, params.resonance, params.internal_rate, params.external_rate);
    case S11Model::pumped:
      return s11_pumped(w, params.pumped);
    case S11Model::lf_pumped:
      return lf_s11_pumped(w, params.lf);
  }
  return 1.0;
}

ComplexTrace synth_s11(const S11Params& params, const std::vector<double>& grid_hz,
                       const BackgroundModel& background, const NoiseSpec& noise) {
  noise.validate();
  ComplexTrace trace;
  trace.frequency_hz = grid_hz;
  trace.values.resize(grid_hz.size());
  NoiseSource rng(noise.seed, noise.stream);
  for (std::size_t i = 0; i < grid_hz.size(); ++i) {
    std::complex<double> v = background.apply(grid_hz[i], s11_response(params, grid_hz[i]));
    if (noise.kind != NoiseKind::none) {
      const double n1 = rng.normal();
      const double n2 = rng.normal();
      const std::complex<double> n(noise.sigma * n1, noise.sigma * n2);
      v = noise.kind == NoiseKind::additive ? v + n : v * (1.0 + n);
    }
    trace.values[i] = v;
  }
  trace.validate();
  return trace;
}

double psd_background_level(const DetectionChain& detection, double output_frequency) {
  detection.validate();
  return detection.total_gain *
         photons_to_watts_per_hz(0.5 + detection.effective_added_photons(), output_frequency);
}

SpectrumTrace synth_psd(const PsdParams& params, const std::vector<double>& offsets_hz,
                        const DetectionChain& detection, const NoiseSpec& noise) {
  noise.validate();
  detection.validate();
  BluePumpParams pump = params.pump;
  pump.added_photons = detection.effective_added_photons();
  pump.validate();
  const double c = pump.cooperativity();
  double lf_rate_eff = 0.0;
  if (params.model == PsdModel::on_sideband) lf_rate_eff = blue_lf_linewidth(pump.lf_rate, c);

  SpectrumTrace trace;
  trace.unit = PsdUnit::watts_per_hz;
  trace.frequency_hz = offsets_hz;
  trace.values.resize(offsets_hz.size());
  NoiseSource rng(noise.seed, noise.stream);
  for (std::size_t i = 0; i < offsets_hz.size(); ++i) {
    const double offset = constants::two_pi * offsets_hz[i];
    double photons = 0.0;
    if (params.model == PsdModel::full) {
      photons = psd_blue_pump(-pump.lf_frequency - offset, pump);
    } else {
      photons = psd_on_sideband(offset, pump.kappa, pump.external_rate, c, pump.lf_rate,
                                lf_rate_eff, pump.lf_occupation, pump.added_photons);
    }
    double v = detection.total_gain * photons_to_watts_per_hz(photons, params.output_frequency);
    if (noise.kind != NoiseKind::none) {
      const double n = rng.normal();
      v = noise.kind == NoiseKind::multiplicative ? v * (1.0 + noise.sigma * n)
                                                  : v + noise.sigma * n;
    }
    trace.values[i] = v;
  }
  trace.validate();
  return trace;
}

double mode_temperature(double bath_temperature, double residual_temperature) {
  if (!(bath_temperature >= 0.0) || !(residual_temperature >= 0.0)) {
    throw DomainError("temperatures must be non-negative");
  }
  const double b2 = bath_temperature * bath_temperature;
  const double r2 = residual_temperature * residual_temperature;
  return std::sqrt(std::sqrt(b2 * b2 + r2 * r2));
}

}  // namespace ppc
