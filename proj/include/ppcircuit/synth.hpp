#pragma once

// Synthetic reflection and PSD traces from known parameters.

#include <cstdint>
#include <random>
#include <vector>

#include "ppcircuit/dynamics.hpp"
#include "ppcircuit/fitting.hpp"
#include "ppcircuit/noise_spectra.hpp"
#include "ppcircuit/traces.hpp"

namespace ppc {

enum class NoiseKind { none, additive, multiplicative };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // independent substream for parallel generation

  void validate() const;
};

/// Normal deviates for one (seed, stream) pair. The engine is seeded from
/// both words, so distinct streams of one seed never share a sequence.
class NoiseSource {
 public:
  NoiseSource(std::uint64_t seed, std::uint64_t stream);
  double normal();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

enum class S11Model { bare, pumped, lf_pumped };

struct S11Params {
  S11Model model = S11Model::bare;
  // bare: cavity (or LF) mode
  double resonance = 0.0;
  double internal_rate = 0.0;
  double external_rate = 0.0;
  PumpedCavity pumped;
  PumpedLf lf;
};

/// Response on an absolute frequency grid (Hz) times the background, plus
/// noise. Additive noise adds sigma (n1 + i n2); multiplicative noise
/// scales each point by (1 + sigma (n1 + i n2)).
ComplexTrace synth_s11(const S11Params& params, const std::vector<double>& grid_hz,
                       const BackgroundModel& background = {}, const NoiseSpec& noise = {});

/// Ideal response value at one frequency (Hz), no background.
std::complex<double> s11_response(const S11Params& params, double frequency_hz);

enum class PsdModel { full, on_sideband };

struct PsdParams {
  BluePumpParams pump;       // added_photons is taken from the detection chain
  double output_frequency = 0.0;  // w of the detected tone, sets hbar w
  PsdModel model = PsdModel::full;
};

/// G_m hbar w (1/2 + n_add').
double psd_background_level(const DetectionChain& detection, double output_frequency);

/// S_V on a grid of offsets (Hz) from the anti-Stokes peak, in W/Hz.
/// Multiplicative noise (1 + sigma n) per bin mimics averaged periodograms.
SpectrumTrace synth_psd(const PsdParams& params, const std::vector<double>& offsets_hz,
                        const DetectionChain& detection, const NoiseSpec& noise = {});

/// (T_b^4 + T_res^4)^(1/4): the LF mode runs warmer than the bath at the
/// lowest temperatures and follows it above.
double mode_temperature(double bath_temperature, double residual_temperature);

}  // namespace ppc
