#pragma once

// Typed view of a resolved parameter document, with the derived quantities
// every command needs (cavity frequency at the bias, g0, g, kappa, ...).
// All rates returned here are angular (rad/s).

#include <optional>
#include <string>

#include "ppcircuit/circuit_params.hpp"
#include "ppcircuit/dynamics.hpp"
#include "ppcircuit/fitting.hpp"
#include "ppcircuit/noise_spectra.hpp"
#include "ppcircuit/param_doc.hpp"
#include "ppcircuit/synth.hpp"

namespace ppc {

struct PumpSettings {
  double flux_bias = 0.0;
  Sideband sideband = Sideband::red;
  double offset = 0.0;  // delta from the chosen sideband, rad/s
  double photons = 0.0;
  std::optional<double> coupling;  // explicit g, rad/s
  std::optional<double> kappa;     // linewidth under drive, rad/s
};

struct ThermalSettings {
  double bath_temperature = 0.0;
  double residual_temperature = 0.0;
  double cavity_occupation = 0.0;
  std::optional<double> cooperativity;
};

struct Scenario {
  LumpedResonatorSpec lf_spec;
  double lf_frequency = 0.0;
  double lf_internal_rate = 0.0;
  double lf_external_rate = 0.0;

  IdcSpec idc;
  double hf_coupling_capacitance = 0.0;
  double hf_feedline_impedance = 50.0;
  double hf_frequency = 0.0;  // sweet spot
  double hf_internal_rate = 0.0;
  double hf_external_rate = 0.0;
  std::optional<double> hf_total_inductance;

  double dilution = 0.0;
  double gamma_l = 0.0;
  double loop_inductance = 0.0;
  double critical_current_estimate = 0.0;

  LoopGeometry loop;
  std::optional<double> zero_point_current_override;
  PowerDependence power;
  PumpSettings pump;
  DetectionChain detection;
  ThermalSettings thermal;

  std::string response_model;  // hf_bare | lf_bare | pumped | lf_pumped
  NoiseKind noise_kind = NoiseKind::none;
  double noise_sigma = 0.0;
  PsdModel psd_model = PsdModel::full;
  BackgroundModel background;  // reference set to the grid centre by callers

  // Derived circuit quantities.
  double lf_capacitance() const;
  double lf_inductance() const;
  double lf_rate() const { return lf_internal_rate + lf_external_rate; }
  double lf_external_linewidth() const;
  double hf_capacitance() const;
  double hf_inductance() const;
  double hf_external_linewidth() const;
  SquidSpec squid() const;
  double zero_point_current() const;
  CouplingGeometry coupling_geometry() const;

  // Derived operating point.
  double cavity_frequency() const;  // at the pump flux bias
  double single_photon_rate() const;
  double coupling() const;
  double kappa() const;
  double detuning() const;
  OperatingPoint operating_point() const;
  PumpedCavity pumped_cavity() const;
  PumpedLf pumped_lf() const;
  S11Params s11_params() const;

  // Blue-pump noise scene.
  double psd_cooperativity() const;
  double thermal_occupation() const;   // n_th at the mode temperature
  BluePumpParams blue_pump() const;
  PsdParams psd_params() const;
};

/// Builds a scenario from a document already merged over the defaults.
/// Unknown keys and ill-typed values raise ConfigError naming the key.
Scenario build_scenario(const ParamDoc& doc);

/// Throws ConfigError for keys outside the known schema.
void check_known_keys(const ParamDoc& doc);

}  // namespace ppc
