#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "ppcircuit/errors.hpp"
#include "ppcircuit/synth.hpp"

using namespace ppc;
using oracle::tau;

namespace {

S11Params hf() {
  S11Params p;
  p.resonance = tau(5.844e9);
  p.internal_rate = tau(163e3);
  p.external_rate = tau(28e3);
  return p;
}

TEST(Synth, NoiselessEqualsModel) {
  const auto grid = linear_grid(5.843e9, 5.845e9, 101);
  const ComplexTrace t = synth_s11(hf(), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(t.values[i], s11_bare(tau(grid[i]), tau(5.844e9), tau(163e3), tau(28e3)));
  }
}

TEST(Synth, BackgroundRoundTrip) {
  BackgroundModel bg;
  bg.reference_hz = 5.844e9;
  bg.amplitude_offset = 0.7;
  bg.amplitude_slope = 3e-8;
  bg.phase_offset = 2.0;
  bg.phase_slope = -1e-6;
  bg.rotation = 0.3;
  for (double f : {5.843e9, 5.844e9, 5.8451e9}) {
    const std::complex<double> ideal(0.3, -0.4);
    EXPECT_LT(std::abs(bg.remove(f, bg.apply(f, ideal)) - ideal), 1e-14);
  }
  EXPECT_NEAR(std::abs(bg.factor(5.844e9)), 0.7, 1e-15);
  EXPECT_NEAR(std::arg(bg.factor(5.844e9)), 2.0, 1e-15);
}

TEST(Synth, AdditiveNoiseStatistics) {
  const auto grid = linear_grid(5.0e9, 5.1e9, 20001);
  S11Params flat = hf();
  flat.resonance = tau(6e9);
  const ComplexTrace clean = synth_s11(flat, grid);
  const ComplexTrace noisy = synth_s11(flat, grid, {}, {NoiseKind::additive, 0.02, 3, 0});
  std::vector<double> re, im;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    re.push_back((noisy.values[i] - clean.values[i]).real());
    im.push_back((noisy.values[i] - clean.values[i]).imag());
  }
  EXPECT_NEAR(oracle::stddev(re), 0.02, 0.001);
  EXPECT_NEAR(oracle::stddev(im), 0.02, 0.001);
  EXPECT_NEAR(oracle::mean(re), 0.0, 0.001);
}

TEST(Synth, StreamsAreIndependent) {
  NoiseSource a(5, 0), b(5, 1), c(5, 0);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, c.normal());
    if (x == b.normal()) ++equal;
  }
  EXPECT_EQ(equal, 0);
}

TEST(Synth, NegativeSigmaRejected) {
  EXPECT_THROW((NoiseSpec{NoiseKind::additive, -1.0, 0, 0}.validate()), DomainError);
}

TEST(Synth, PsdBackgroundLevel) {
  DetectionChain d;
  d.total_gain = 1e8;
  const double w = tau(5.8e9);
  EXPECT_NEAR(psd_background_level(d, w),
              1e8 * oracle::kHbar * w * (0.5 + oracle::added_photons(20.0, 0.7)), 1e-30);
}

TEST(Synth, PsdIsOffsetIndexed) {
  PsdParams p;
  p.pump.kappa = tau(250e3);
  p.pump.external_rate = tau(25e3);
  p.pump.lf_rate = tau(22e3);
  p.pump.lf_frequency = tau(391.18e6);
  p.pump.coupling = coupling_for_cooperativity(0.3, p.pump.kappa, p.pump.lf_rate);
  p.pump.detuning = p.pump.lf_frequency;
  p.pump.lf_occupation = 5.0;
  p.output_frequency = tau(5.8e9);
  DetectionChain d;
  const SpectrumTrace s = synth_psd(p, linear_grid(-1e5, 1e5, 2001), d);
  EXPECT_EQ(s.unit, PsdUnit::watts_per_hz);
  const auto peak = std::max_element(s.values.begin(), s.values.end()) - s.values.begin();
  EXPECT_EQ(peak, 1000);
  // Full spectrum: peak value from the direct formula.
  BluePumpParams q = p.pump;
  q.added_photons = d.effective_added_photons();
  const double expect = psd_blue_pump(-q.lf_frequency, q) * oracle::kHbar * tau(5.8e9);
  EXPECT_NEAR(s.values[1000], expect, 1e-12 * expect);
}

}  // namespace
