#include "ppcircuit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ppcircuit/constants.hpp"
#include "ppcircuit/errors.hpp"
#include "ppcircuit/presets.hpp"

namespace ppc {

namespace {

double hz(const ParamDoc& doc, const std::string& key) {
  return angular(doc.number(key));
}

std::optional<double> optional_number(const ParamDoc& doc, const std::string& key) {
  if (!doc.has(key)) return std::nullopt;
  return doc.number(key);
}

int integer(const ParamDoc& doc, const std::string& key) {
  const double v = doc.number(key);
  if (v != std::floor(v)) throw ConfigError("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

template <class Fn>
auto with_key(const std::string& key, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ConfigError("parameter '" + key + "': " + e.what());
  }
}

template <class Fn>
auto at_bias(Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw DomainError(std::string("parameter 'pump.flux_bias': ") + e.what());
  }
}

}  // namespace

void check_known_keys(const ParamDoc& doc) {
  std::set<std::string> known;
  for (const auto& k : default_parameters().keys()) known.insert(k);
  for (const auto& k : optional_parameter_keys()) known.insert(k);
  for (const auto& k : doc.keys()) {
    if (!known.count(k)) throw ConfigError("unknown parameter '" + k + "'");
  }
}

Scenario build_scenario(const ParamDoc& doc) {
  check_known_keys(doc);
  Scenario s;
  s.lf_spec.plate_area = doc.number("lf.plate_area");
  s.lf_spec.dielectric_thickness = doc.number("lf.dielectric_thickness");
  s.lf_spec.relative_permittivity = doc.number("lf.relative_permittivity");
  s.lf_spec.coupling_capacitance = doc.number("lf.coupling_capacitance");
  s.lf_spec.feedline_impedance = doc.number("lf.feedline_impedance");
  s.lf_spec.kinetic_inductance_per_square = doc.number("lf.kinetic_inductance_per_square");
  s.lf_spec.total_inductance = optional_number(doc, "lf.total_inductance");
  with_key("lf", [&] { s.lf_spec.validate(); });
  s.lf_frequency = hz(doc, "lf.frequency_hz");
  s.lf_internal_rate = hz(doc, "lf.internal_rate_hz");
  s.lf_external_rate = hz(doc, "lf.external_rate_hz");

  s.idc.finger_count = integer(doc, "hf.finger_count");
  s.idc.finger_length = doc.number("hf.finger_length");
  s.idc.finger_width = doc.number("hf.finger_width");
  s.idc.gap_width = doc.number("hf.gap_width");
  s.idc.effective_permittivity = doc.number("hf.effective_permittivity");
  s.idc.parallel_count = integer(doc, "hf.parallel_count");
  with_key("hf", [&] { s.idc.validate(); });
  s.hf_coupling_capacitance = doc.number("hf.coupling_capacitance");
  s.hf_feedline_impedance = doc.number("hf.feedline_impedance");
  s.hf_frequency = hz(doc, "hf.frequency_hz");
  s.hf_internal_rate = hz(doc, "hf.internal_rate_hz");
  s.hf_external_rate = hz(doc, "hf.external_rate_hz");
  s.hf_total_inductance = optional_number(doc, "hf.total_inductance");

  s.dilution = doc.number("squid.dilution");
  s.gamma_l = doc.number("squid.gamma_l");
  s.loop_inductance = doc.number("squid.loop_inductance");
  s.critical_current_estimate = doc.number("squid.critical_current");

  s.loop.loop_side = doc.number("coupling.loop_side");
  s.loop.near_distance = doc.number("coupling.near_distance");
  s.loop.far_distance = doc.number("coupling.far_distance");
  s.zero_point_current_override = optional_number(doc, "coupling.zero_point_current");

  s.power.kerr_per_photon = hz(doc, "power.kerr_hz");
  s.power.tls_rate = hz(doc, "power.tls_rate_hz");
  s.power.critical_photons = doc.number("power.critical_photons");
  s.power.residual_internal = hz(doc, "power.residual_internal_hz");
  with_key("power", [&] { s.power.validate(); });

  s.pump.flux_bias = doc.number("pump.flux_bias");
  const std::string sideband = doc.text("pump.sideband");
  if (sideband == "red") {
    s.pump.sideband = Sideband::red;
  } else if (sideband == "blue") {
    s.pump.sideband = Sideband::blue;
  } else {
    throw ConfigError("parameter 'pump.sideband' must be red or blue, got '" + sideband + "'");
  }
  s.pump.offset = hz(doc, "pump.offset_hz");
  s.pump.photons = doc.number("pump.photons");
  if (doc.has("pump.coupling_hz")) s.pump.coupling = hz(doc, "pump.coupling_hz");
  if (doc.has("pump.kappa_hz")) s.pump.kappa = hz(doc, "pump.kappa_hz");

  s.detection.hemt_noise_temperature = doc.number("detection.hemt_temperature");
  s.detection.hemt_added_photons = doc.number("detection.added_photons");
  s.detection.output_efficiency = doc.number("detection.efficiency");
  s.detection.total_gain = doc.number("detection.gain");
  s.detection.input_attenuation_db = doc.number("detection.attenuation_db");
  s.detection.measurement_bandwidth = doc.number("detection.bandwidth_hz");
  with_key("detection", [&] { s.detection.validate(); });

  s.thermal.bath_temperature = doc.number("thermal.bath_temperature");
  s.thermal.residual_temperature = doc.number("thermal.residual_temperature");
  s.thermal.cavity_occupation = doc.number("thermal.cavity_occupation");
  s.thermal.cooperativity = optional_number(doc, "thermal.cooperativity");

  s.response_model = doc.text("response.model");
  const std::set<std::string> models{"hf_bare", "lf_bare", "pumped", "lf_pumped"};
  if (!models.count(s.response_model)) {
    throw ConfigError("parameter 'response.model' must be one of hf_bare, lf_bare, pumped, "
                      "lf_pumped");
  }
  const std::string noise = doc.text("synth.noise");
  if (noise == "none") {
    s.noise_kind = NoiseKind::none;
  } else if (noise == "additive") {
    s.noise_kind = NoiseKind::additive;
  } else if (noise == "multiplicative") {
    s.noise_kind = NoiseKind::multiplicative;
  } else {
    throw ConfigError("parameter 'synth.noise' must be none, additive or multiplicative");
  }
  s.noise_sigma = doc.number("synth.sigma");
  if (!(s.noise_sigma >= 0.0)) throw ConfigError("parameter 'synth.sigma' must be >= 0");
  const std::string psd = doc.text("synth.psd_model");
  if (psd == "full") {
    s.psd_model = PsdModel::full;
  } else if (psd == "on_sideband") {
    s.psd_model = PsdModel::on_sideband;
  } else {
    throw ConfigError("parameter 'synth.psd_model' must be full or on_sideband");
  }
  s.background.amplitude_offset = doc.number("synth.background.alpha0");
  s.background.amplitude_slope = doc.number("synth.background.alpha1");
  s.background.phase_offset = doc.number("synth.background.beta0");
  s.background.phase_slope = doc.number("synth.background.beta1");
  s.background.rotation = doc.number("synth.background.theta");
  return s;
}

double Scenario::lf_capacitance() const { return parallel_plate_capacitance(lf_spec); }

double Scenario::lf_inductance() const {
  if (lf_spec.total_inductance) return *lf_spec.total_inductance;
  return infer_inductance(lf_frequency, lf_capacitance() + lf_spec.coupling_capacitance);
}

double Scenario::lf_external_linewidth() const {
  return external_linewidth(lf_spec.feedline_impedance, lf_spec.coupling_capacitance,
                            lf_inductance(), lf_capacitance());
}

double Scenario::hf_capacitance() const { return idc_capacitance(idc); }

double Scenario::hf_inductance() const {
  if (hf_total_inductance) return *hf_total_inductance;
  return infer_inductance(hf_frequency, hf_capacitance() + hf_coupling_capacitance);
}

double Scenario::hf_external_linewidth() const {
  return external_linewidth(hf_feedline_impedance, hf_coupling_capacitance, hf_inductance(),
                            hf_capacitance());
}

SquidSpec Scenario::squid() const {
  return with_key("squid", [&] {
    return SquidSpec::from_arch(hf_frequency, dilution, gamma_l, hf_inductance(),
                                loop_inductance);
  });
}

double Scenario::zero_point_current() const {
  if (zero_point_current_override) return *zero_point_current_override;
  return ppc::zero_point_current(lf_inductance(), lf_frequency);
}

CouplingGeometry Scenario::coupling_geometry() const {
  return with_key("coupling", [&] { return mutual_inductance(loop, zero_point_current()); });
}

double Scenario::cavity_frequency() const {
  const SquidSpec spec = squid();
  return at_bias([&] { return squid_frequency(Flux::quanta(pump.flux_bias), spec); });
}

double Scenario::single_photon_rate() const {
  const SquidSpec spec = squid();
  const Flux zpf = coupling_geometry().zero_point_flux;
  return at_bias([&] { return single_photon_coupling(Flux::quanta(pump.flux_bias), spec, zpf); });
}

double Scenario::coupling() const {
  if (pump.coupling) return *pump.coupling;
  if (!(pump.photons >= 0.0)) throw ConfigError("parameter 'pump.photons' must be >= 0");
  return std::sqrt(pump.photons) * single_photon_rate();
}

double Scenario::kappa() const {
  return pump.kappa ? *pump.kappa : hf_internal_rate + hf_external_rate;
}

double Scenario::detuning() const {
  return pump.sideband == Sideband::red ? -lf_frequency + pump.offset
                                        : lf_frequency + pump.offset;
}

OperatingPoint Scenario::operating_point() const {
  const double g0 = single_photon_rate();
  OperatingPoint op = make_operating_point(pump.flux_bias, cavity_frequency(), detuning(),
                                           lf_frequency, pump.sideband, pump.photons, g0,
                                           kappa());
  if (pump.coupling) op.multi_photon_rate = *pump.coupling;
  return op;
}

PumpedCavity Scenario::pumped_cavity() const {
  PumpedCavity p;
  p.cavity_frequency = cavity_frequency();
  p.external_rate = hf_external_rate;
  p.internal_rate = kappa() - hf_external_rate;
  if (!(p.internal_rate >= 0.0)) {
    throw ConfigError("parameter 'pump.kappa_hz' is below hf.external_rate_hz");
  }
  p.lf_frequency = lf_frequency;
  p.lf_rate = lf_rate();
  p.coupling = coupling();
  p.detuning = detuning();
  return p;
}

PumpedLf Scenario::pumped_lf() const {
  PumpedLf p;
  p.lf_frequency = lf_frequency;
  p.lf_internal_rate = lf_internal_rate;
  p.lf_external_rate = lf_external_rate;
  p.coupling = coupling();
  p.detuning = detuning();
  p.kappa = kappa();
  return p;
}

S11Params Scenario::s11_params() const {
  S11Params p;
  if (response_model == "hf_bare") {
    p.model = S11Model::bare;
    p.resonance = cavity_frequency();
    p.internal_rate = hf_internal_rate;
    p.external_rate = hf_external_rate;
  } else if (response_model == "lf_bare") {
    p.model = S11Model::bare;
    p.resonance = lf_frequency;
    p.internal_rate = lf_internal_rate;
    p.external_rate = lf_external_rate;
  } else if (response_model == "pumped") {
    p.model = S11Model::pumped;
    p.pumped = pumped_cavity();
  } else {
    p.model = S11Model::lf_pumped;
    p.lf = pumped_lf();
  }
  return p;
}

double Scenario::psd_cooperativity() const {
  if (thermal.cooperativity) return *thermal.cooperativity;
  return cooperativity(coupling(), kappa(), lf_rate());
}

double Scenario::thermal_occupation() const {
  return bose_occupation(lf_frequency,
                         mode_temperature(thermal.bath_temperature, thermal.residual_temperature));
}

BluePumpParams Scenario::blue_pump() const {
  BluePumpParams p;
  p.kappa = kappa();
  p.external_rate = hf_external_rate;
  p.lf_rate = lf_rate();
  p.lf_frequency = lf_frequency;
  const double c = psd_cooperativity();
  p.coupling = coupling_for_cooperativity(c, p.kappa, p.lf_rate);
  p.detuning = lf_frequency + pump.offset;
  p.lf_occupation = amplified_occupation(thermal_occupation(), c);
  p.cavity_occupation = thermal.cavity_occupation;
  p.added_photons = detection.effective_added_photons();
  return p;
}

PsdParams Scenario::psd_params() const {
  PsdParams p;
  p.pump = blue_pump();
  p.output_frequency = cavity_frequency();
  p.model = psd_model;
  return p;
}

}  // namespace ppc
