#include "ppcircuit/circuit_params.hpp"

#include <cmath>
#include <string>

#include "ppcircuit/constants.hpp"
#include "ppcircuit/elliptic.hpp"
#include "ppcircuit/errors.hpp"

namespace ppc {

namespace {

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

// cos(pi gamma_L phi), checked against the arch edge.
double arch_cosine(Flux bias, const SquidSpec& spec) {
  const double c = std::cos(constants::pi * spec.arch_widening * bias.in_quanta());
  if (!(c > 0.0)) throw BeyondArchError(bias.in_quanta());
  return c;
}

}  // namespace

void LumpedResonatorSpec::validate() const {
  require_non_negative(plate_area, "plate_area");
  require_positive(dielectric_thickness, "dielectric_thickness");
  if (!(relative_permittivity >= 1.0)) {
    throw DomainError("relative_permittivity must be >= 1");
  }
  require_non_negative(coupling_capacitance, "coupling_capacitance");
  require_positive(feedline_impedance, "feedline_impedance");
  if (total_inductance) require_positive(*total_inductance, "total_inductance");
}

void IdcSpec::validate() const {
  if (finger_count < 3) throw DomainError("idc finger_count must be >= 3");
  require_positive(finger_length, "finger_length");
  require_positive(finger_width, "finger_width");
  require_positive(gap_width, "gap_width");
  if (!(effective_permittivity >= 1.0)) {
    throw DomainError("effective_permittivity must be >= 1");
  }
  if (parallel_count < 1) throw DomainError("parallel_count must be >= 1");
}

void SquidSpec::validate() const {
  require_positive(sweet_spot_frequency, "sweet_spot_frequency");
  if (!(dilution > 0.0 && dilution < 1.0)) {
    throw DomainError("squid dilution must lie in (0, 1)");
  }
  require_positive(arch_widening, "arch_widening");
}

SquidSpec SquidSpec::from_arch(double sweet_spot_frequency, double dilution,
                               double arch_widening, double total_inductance,
                               double loop_inductance) {
  SquidSpec s;
  s.sweet_spot_frequency = sweet_spot_frequency;
  s.dilution = dilution;
  s.arch_widening = arch_widening;
  s.total_inductance = total_inductance;
  s.loop_inductance = loop_inductance;
  s.validate();
  s.single_junction_inductance = 2.0 * (1.0 - dilution) * total_inductance;
  if (s.single_junction_inductance > 0.0) {
    s.critical_current = constants::flux_quantum /
                         (constants::two_pi * s.single_junction_inductance);
    s.screening = screening_parameter(loop_inductance, s.critical_current);
  }
  return s;
}

void PowerDependence::validate() const {
  require_non_negative(tls_rate, "tls_rate");
  require_non_negative(residual_internal, "residual_internal");
  require_positive(critical_photons, "critical_photons");
}

double parallel_plate_capacitance(const LumpedResonatorSpec& spec) {
  spec.validate();
  return constants::vacuum_permittivity * spec.relative_permittivity * spec.plate_area /
         spec.dielectric_thickness;
}

double idc_unit_capacitance(const IdcSpec& spec, int index) {
  spec.validate();
  const double a = spec.finger_width;
  const double b = spec.gap_width;
  double modulus = 0.0;
  if (index == 1) {
    modulus = std::sin(0.5 * constants::pi * a / (a + b));
  } else if (index == 2) {
    modulus = 2.0 * std::sqrt(a * (a + b)) / (2.0 * a + b);
  } else {
    throw DomainError("idc_unit_capacitance: index must be 1 or 2");
  }
  return 2.0 * constants::vacuum_permittivity * spec.effective_permittivity *
         spec.finger_length * elliptic_k_ratio(modulus);
}

double idc_capacitance(const IdcSpec& spec) {
  const double c1 = idc_unit_capacitance(spec, 1);
  const double c2 = idc_unit_capacitance(spec, 2);
  const double single =
      0.5 * (spec.finger_count - 3) * c1 + 2.0 * c1 * c2 / (c1 + c2);
  return spec.parallel_count * single;
}

double lc_frequency(double inductance, double total_capacitance) {
  require_positive(inductance, "inductance");
  require_positive(total_capacitance, "capacitance");
  return 1.0 / std::sqrt(inductance * total_capacitance);
}

double infer_inductance(double frequency, double total_capacitance) {
  require_positive(frequency, "frequency");
  require_positive(total_capacitance, "capacitance");
  return 1.0 / (frequency * frequency * total_capacitance);
}

double external_linewidth(double feedline_impedance, double coupling_capacitance,
                          double inductance, double capacitance) {
  require_positive(feedline_impedance, "feedline_impedance");
  require_non_negative(coupling_capacitance, "coupling_capacitance");
  require_positive(inductance, "inductance");
  require_positive(capacitance, "capacitance");
  const double ctot = capacitance + coupling_capacitance;
  return feedline_impedance * coupling_capacitance * coupling_capacitance /
         (inductance * ctot * ctot);
}

ResonatorParams lumped_resonator(const LumpedResonatorSpec& spec, double frequency,
                                 double internal_rate) {
  ResonatorParams r;
  r.total_capacitance = parallel_plate_capacitance(spec);
  r.coupling_capacitance = spec.coupling_capacitance;
  const double ctot = r.total_capacitance + r.coupling_capacitance;
  if (spec.total_inductance) {
    r.total_inductance = *spec.total_inductance;
    r.resonance_frequency = lc_frequency(r.total_inductance, ctot);
  } else {
    r.resonance_frequency = frequency;
    r.total_inductance = infer_inductance(frequency, ctot);
  }
  require_non_negative(internal_rate, "internal_rate");
  r.internal_rate = internal_rate;
  r.external_rate = external_linewidth(spec.feedline_impedance, spec.coupling_capacitance,
                                       r.total_inductance, r.total_capacitance);
  return r;
}

double zero_point_current(double inductance, double frequency) {
  require_positive(inductance, "inductance");
  require_positive(frequency, "frequency");
  return std::sqrt(constants::hbar * frequency / (2.0 * inductance));
}

CouplingGeometry mutual_inductance(const LoopGeometry& loop, double zero_point_current) {
  require_positive(loop.loop_side, "loop_side");
  require_positive(loop.near_distance, "near_distance");
  if (!(loop.far_distance > loop.near_distance)) {
    throw DomainError("far_distance must exceed near_distance");
  }
  require_non_negative(zero_point_current, "zero_point_current");
  CouplingGeometry out;
  out.loop = loop;
  out.mutual_inductance = 3.0 * constants::vacuum_permeability / constants::two_pi *
                          loop.loop_side * std::log(loop.far_distance / loop.near_distance);
  out.zero_point_current = zero_point_current;
  out.zero_point_flux = Flux::weber(out.mutual_inductance * zero_point_current);
  return out;
}

double flux_fraction(double mutual_inductance, double lf_inductance) {
  require_positive(lf_inductance, "lf_inductance");
  return mutual_inductance / lf_inductance;
}

double screening_parameter(double loop_inductance, double critical_current) {
  return 2.0 * loop_inductance * critical_current / constants::flux_quantum;
}

double junction_inductance(double critical_current) {
  require_positive(critical_current, "critical_current");
  return constants::flux_quantum / (constants::two_pi * critical_current);
}

double squid_frequency(Flux bias, const SquidSpec& spec) {
  spec.validate();
  const double c = arch_cosine(bias, spec);
  return spec.sweet_spot_frequency / std::sqrt(spec.dilution + (1.0 - spec.dilution) / c);
}

double josephson_inductance(Flux bias, const SquidSpec& spec) {
  spec.validate();
  return spec.single_junction_inductance / (2.0 * arch_cosine(bias, spec));
}

double flux_responsivity(Flux bias, const SquidSpec& spec) {
  spec.validate();
  const double c = arch_cosine(bias, spec);
  const double x = constants::pi * spec.arch_widening * bias.in_quanta();
  const double s = spec.dilution + (1.0 - spec.dilution) / c;
  const double ds = (1.0 - spec.dilution) * constants::pi * spec.arch_widening *
                    std::sin(x) / (c * c);
  return -0.5 * spec.sweet_spot_frequency * ds / (s * std::sqrt(s));
}

double pull_parameter(Flux bias, const SquidSpec& spec) {
  return std::abs(flux_responsivity(bias, spec)) / constants::flux_quantum;
}

double single_photon_coupling(Flux bias, const SquidSpec& spec, Flux zero_point_flux) {
  return std::abs(flux_responsivity(bias, spec)) * std::abs(zero_point_flux.in_quanta());
}

double arch_half_width(const SquidSpec& spec) {
  spec.validate();
  return 0.5 / spec.arch_widening;
}

double intracavity_photons(double input_power, double pump_frequency, double kappa,
                           double external_rate, double detuning) {
  require_non_negative(input_power, "input_power");
  require_positive(pump_frequency, "pump_frequency");
  require_positive(kappa, "kappa");
  require_positive(external_rate, "external_rate");
  return 4.0 * input_power / (constants::hbar * pump_frequency) * external_rate /
         (kappa * kappa + 4.0 * detuning * detuning);
}

double total_linewidth(double photons, const PowerDependence& dep, double external_rate) {
  dep.validate();
  require_non_negative(photons, "photons");
  return external_rate + dep.residual_internal +
         dep.tls_rate / std::sqrt(1.0 + photons / dep.critical_photons);
}

double kerr_shift(double photons, double kerr_per_photon) {
  return -kerr_per_photon * photons;
}

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double watts_to_dbm(double watts) {
  require_positive(watts, "power");
  return 10.0 * std::log10(watts / 1e-3);
}

}  // namespace ppc
