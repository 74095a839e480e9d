#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ppcircuit/circuit_params.hpp"
#include "ppcircuit/constants.hpp"
#include "ppcircuit/dynamics.hpp"
#include "ppcircuit/errors.hpp"
#include "ppcircuit/fitting.hpp"
#include "ppcircuit/noise_spectra.hpp"
#include "ppcircuit/presets.hpp"
#include "ppcircuit/scenario.hpp"
#include "ppcircuit/synth.hpp"
#include "ppcircuit/traces.hpp"

namespace py = pybind11;
using namespace ppc;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <typename T>
std::vector<T> to_vector(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-d array");
  return std::vector<T>(a.data(), a.data() + a.size());
}

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

// Element-wise application of a scalar function over a real array.
template <typename F>
py::array_t<double> map_real(const RealArray& x, F&& f) {
  auto out = py::array_t<double>(x.request().shape);
  const double* in = x.data();
  double* o = out.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = f(in[i]);
  return out;
}

template <typename F>
py::array_t<cplx> map_complex(const RealArray& x, F&& f) {
  auto out = py::array_t<cplx>(x.request().shape);
  const double* in = x.data();
  cplx* o = out.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) o[i] = f(in[i]);
  return out;
}

ComplexTrace make_complex_trace(const RealArray& f, const ComplexArray& v) {
  ComplexTrace t{to_vector<double>(f), to_vector<cplx>(v)};
  t.validate();
  return t;
}

SpectrumTrace make_spectrum_trace(const RealArray& f, const RealArray& v, PsdUnit unit) {
  SpectrumTrace t{to_vector<double>(f), to_vector<double>(v), unit};
  t.validate();
  return t;
}

py::dict doc_to_dict(const ParamDoc& doc) {
  py::dict d;
  for (const auto& [k, v] : doc.values()) {
    if (std::holds_alternative<double>(v))
      d[py::str(k)] = std::get<double>(v);
    else
      d[py::str(k)] = std::get<std::string>(v);
  }
  return d;
}

ParamDoc dict_to_doc(const py::dict& d) {
  ParamDoc doc;
  for (const auto& item : d) {
    const auto key = py::cast<std::string>(item.first);
    if (py::isinstance<py::str>(item.second))
      doc.set(key, py::cast<std::string>(item.second));
    else
      doc.set(key, py::cast<double>(item.second));
  }
  return doc;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Photon-pressure circuit toolkit (compiled core)";

  // errors
  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<BeyondArchError>(m, "BeyondArchError", domain.ptr());
  py::register_exception<CalibrationError>(m, "CalibrationError", domain.ptr());
  py::register_exception<InstabilityError>(m, "InstabilityError", domain.ptr());
  auto fit = py::register_exception<FitError>(m, "FitError", error.ptr());
  py::register_exception<NonIdentifiableError>(m, "NonIdentifiableError", fit.ptr());
  py::register_exception<BackgroundEstimationError>(m, "BackgroundEstimationError", fit.ptr());
  py::register_exception<DegenerateFitError>(m, "DegenerateFitError", fit.ptr());
  py::register_exception<AmbiguityError>(m, "AmbiguityError", fit.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", fit.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  // constants
  m.attr("HBAR") = constants::hbar;
  m.attr("BOLTZMANN") = constants::boltzmann;
  m.attr("FLUX_QUANTUM") = constants::flux_quantum;
  m.attr("MU0") = constants::vacuum_permeability;
  m.attr("EPS0") = constants::vacuum_permittivity;

  // --- circuit parameters ---------------------------------------------------
  py::class_<LumpedResonatorSpec>(m, "LumpedResonatorSpec")
      .def(py::init<>())
      .def_readwrite("plate_area", &LumpedResonatorSpec::plate_area)
      .def_readwrite("dielectric_thickness", &LumpedResonatorSpec::dielectric_thickness)
      .def_readwrite("relative_permittivity", &LumpedResonatorSpec::relative_permittivity)
      .def_readwrite("coupling_capacitance", &LumpedResonatorSpec::coupling_capacitance)
      .def_readwrite("feedline_impedance", &LumpedResonatorSpec::feedline_impedance)
      .def_readwrite("total_inductance", &LumpedResonatorSpec::total_inductance)
      .def("validate", &LumpedResonatorSpec::validate);

  py::class_<IdcSpec>(m, "IdcSpec")
      .def(py::init<>())
      .def_readwrite("finger_count", &IdcSpec::finger_count)
      .def_readwrite("finger_length", &IdcSpec::finger_length)
      .def_readwrite("finger_width", &IdcSpec::finger_width)
      .def_readwrite("gap_width", &IdcSpec::gap_width)
      .def_readwrite("effective_permittivity", &IdcSpec::effective_permittivity)
      .def_readwrite("parallel_count", &IdcSpec::parallel_count)
      .def("validate", &IdcSpec::validate);

  py::class_<ResonatorParams>(m, "ResonatorParams")
      .def(py::init<>())
      .def_readwrite("resonance_frequency", &ResonatorParams::resonance_frequency)
      .def_readwrite("internal_rate", &ResonatorParams::internal_rate)
      .def_readwrite("external_rate", &ResonatorParams::external_rate)
      .def_readwrite("total_inductance", &ResonatorParams::total_inductance)
      .def_readwrite("total_capacitance", &ResonatorParams::total_capacitance)
      .def_readwrite("coupling_capacitance", &ResonatorParams::coupling_capacitance)
      .def_property_readonly("total_rate", &ResonatorParams::total_rate);

  py::class_<SquidSpec>(m, "SquidSpec")
      .def(py::init<>())
      .def_readwrite("sweet_spot_frequency", &SquidSpec::sweet_spot_frequency)
      .def_readwrite("dilution", &SquidSpec::dilution)
      .def_readwrite("arch_widening", &SquidSpec::arch_widening)
      .def_readwrite("single_junction_inductance", &SquidSpec::single_junction_inductance)
      .def_readwrite("critical_current", &SquidSpec::critical_current)
      .def_readwrite("loop_inductance", &SquidSpec::loop_inductance)
      .def_readwrite("screening", &SquidSpec::screening)
      .def_readwrite("total_inductance", &SquidSpec::total_inductance)
      .def("validate", &SquidSpec::validate)
      .def_static("from_arch", &SquidSpec::from_arch, py::arg("sweet_spot_frequency"),
                  py::arg("dilution"), py::arg("arch_widening"), py::arg("total_inductance"),
                  py::arg("loop_inductance"));

  py::class_<LoopGeometry>(m, "LoopGeometry")
      .def(py::init<>())
      .def(py::init([](double side, double d1, double d2) {
             return LoopGeometry{side, d1, d2};
           }),
           py::arg("loop_side"), py::arg("near_distance"), py::arg("far_distance"))
      .def_readwrite("loop_side", &LoopGeometry::loop_side)
      .def_readwrite("near_distance", &LoopGeometry::near_distance)
      .def_readwrite("far_distance", &LoopGeometry::far_distance);

  py::class_<CouplingGeometry>(m, "CouplingGeometry")
      .def_readonly("loop", &CouplingGeometry::loop)
      .def_readonly("mutual_inductance", &CouplingGeometry::mutual_inductance)
      .def_readonly("zero_point_current", &CouplingGeometry::zero_point_current)
      .def_property_readonly("zero_point_flux_quanta",
                             [](const CouplingGeometry& c) { return c.zero_point_flux.in_quanta(); });

  py::class_<PowerDependence>(m, "PowerDependence")
      .def(py::init<>())
      .def_readwrite("kerr_per_photon", &PowerDependence::kerr_per_photon)
      .def_readwrite("tls_rate", &PowerDependence::tls_rate)
      .def_readwrite("critical_photons", &PowerDependence::critical_photons)
      .def_readwrite("residual_internal", &PowerDependence::residual_internal);

  m.def("parallel_plate_capacitance", &parallel_plate_capacitance);
  m.def("idc_capacitance", &idc_capacitance);
  m.def("lc_frequency", &lc_frequency, py::arg("inductance"), py::arg("total_capacitance"));
  m.def("infer_inductance", &infer_inductance, py::arg("frequency"),
        py::arg("total_capacitance"));
  m.def("external_linewidth", &external_linewidth, py::arg("feedline_impedance"),
        py::arg("coupling_capacitance"), py::arg("inductance"), py::arg("capacitance"));
  m.def("lumped_resonator", &lumped_resonator, py::arg("spec"), py::arg("frequency"),
        py::arg("internal_rate"));
  m.def("zero_point_current", &zero_point_current, py::arg("inductance"),
        py::arg("frequency"));
  m.def("mutual_inductance", &mutual_inductance, py::arg("loop"),
        py::arg("zero_point_current"));
  m.def("screening_parameter", &screening_parameter);
  m.def("junction_inductance", &junction_inductance);

  // Flux biases cross the boundary as plain floats in flux quanta.
  m.def("squid_frequency",
        [](double phi, const SquidSpec& s) { return squid_frequency(Flux::quanta(phi), s); },
        py::arg("flux_bias"), py::arg("spec"));
  m.def("squid_frequency",
        [](const RealArray& phi, const SquidSpec& s) {
          return map_real(phi, [&](double x) { return squid_frequency(Flux::quanta(x), s); });
        },
        py::arg("flux_bias"), py::arg("spec"));
  m.def("flux_responsivity",
        [](double phi, const SquidSpec& s) { return flux_responsivity(Flux::quanta(phi), s); },
        py::arg("flux_bias"), py::arg("spec"));
  m.def("josephson_inductance",
        [](double phi, const SquidSpec& s) { return josephson_inductance(Flux::quanta(phi), s); },
        py::arg("flux_bias"), py::arg("spec"));
  m.def("single_photon_coupling",
        [](double phi, const SquidSpec& s, double zpf_quanta) {
          return single_photon_coupling(Flux::quanta(phi), s, Flux::quanta(zpf_quanta));
        },
        py::arg("flux_bias"), py::arg("spec"), py::arg("zero_point_flux_quanta"));
  m.def("arch_half_width", &arch_half_width);
  m.def("intracavity_photons", &intracavity_photons, py::arg("input_power"),
        py::arg("pump_frequency"), py::arg("kappa"), py::arg("external_rate"),
        py::arg("detuning"));
  m.def("total_linewidth", &total_linewidth, py::arg("photons"), py::arg("dependence"),
        py::arg("external_rate"));
  m.def("dbm_to_watts", &dbm_to_watts);
  m.def("watts_to_dbm", &watts_to_dbm);

  // --- dynamics -------------------------------------------------------------
  py::enum_<Sideband>(m, "Sideband").value("red", Sideband::red).value("blue", Sideband::blue);

  py::class_<PumpedCavity>(m, "PumpedCavity")
      .def(py::init<>())
      .def_readwrite("cavity_frequency", &PumpedCavity::cavity_frequency)
      .def_readwrite("internal_rate", &PumpedCavity::internal_rate)
      .def_readwrite("external_rate", &PumpedCavity::external_rate)
      .def_readwrite("lf_frequency", &PumpedCavity::lf_frequency)
      .def_readwrite("lf_rate", &PumpedCavity::lf_rate)
      .def_readwrite("coupling", &PumpedCavity::coupling)
      .def_readwrite("detuning", &PumpedCavity::detuning)
      .def_property_readonly("kappa", &PumpedCavity::kappa);

  py::class_<PumpedLf>(m, "PumpedLf")
      .def(py::init<>())
      .def_readwrite("lf_frequency", &PumpedLf::lf_frequency)
      .def_readwrite("lf_internal_rate", &PumpedLf::lf_internal_rate)
      .def_readwrite("lf_external_rate", &PumpedLf::lf_external_rate)
      .def_readwrite("coupling", &PumpedLf::coupling)
      .def_readwrite("detuning", &PumpedLf::detuning)
      .def_readwrite("kappa", &PumpedLf::kappa);

  py::class_<BackactionResult>(m, "BackactionResult")
      .def_readonly("frequency_shift", &BackactionResult::frequency_shift)
      .def_readonly("damping_shift", &BackactionResult::damping_shift);

  py::class_<HybridModes>(m, "HybridModes")
      .def_readonly("upper", &HybridModes::upper)
      .def_readonly("lower", &HybridModes::lower)
      .def_readonly("splitting", &HybridModes::splitting)
      .def_readonly("upper_linewidth", &HybridModes::upper_linewidth)
      .def_readonly("lower_linewidth", &HybridModes::lower_linewidth)
      .def_readonly("resolved", &HybridModes::resolved);

  m.def("s11_bare",
        [](const RealArray& f, double w0, double ki, double ke) {
          return map_complex(f, [&](double x) { return s11_bare(x, w0, ki, ke); });
        },
        py::arg("frequency"), py::arg("resonance"), py::arg("internal_rate"),
        py::arg("external_rate"));
  m.def("s11_pumped",
        [](const RealArray& f, const PumpedCavity& p) {
          return map_complex(f, [&](double x) { return s11_pumped(x, p); });
        },
        py::arg("probe_frequency"), py::arg("cavity"));
  m.def("lf_s11_pumped",
        [](const RealArray& w, const PumpedLf& p) {
          return map_complex(w, [&](double x) { return lf_s11_pumped(x, p); });
        },
        py::arg("omega"), py::arg("lf"));
  m.def("effective_lf_susceptibility",
        py::overload_cast<cplx, double, double, double, double, double>(
            &effective_lf_susceptibility),
        py::arg("omega"), py::arg("lf_frequency"), py::arg("lf_rate"), py::arg("coupling"),
        py::arg("detuning"), py::arg("kappa"));
  m.def("backaction_exact", &backaction_exact, py::arg("detuning"), py::arg("coupling"),
        py::arg("kappa"), py::arg("lf_frequency"));
  m.def("backaction_sideband", &backaction_sideband, py::arg("delta"), py::arg("coupling"),
        py::arg("kappa_eff"), py::arg("sideband") = Sideband::red);
  m.def("normal_modes", &normal_modes, py::arg("coupling"), py::arg("kappa"),
        py::arg("lf_rate"), py::arg("lf_frequency"));
  m.def("cooperativity", &cooperativity, py::arg("coupling"), py::arg("kappa"),
        py::arg("lf_rate"));
  m.def("coupling_for_cooperativity", &coupling_for_cooperativity, py::arg("c"),
        py::arg("kappa"), py::arg("lf_rate"));

  // --- noise spectra --------------------------------------------------------
  py::class_<DetectionChain>(m, "DetectionChain")
      .def(py::init<>())
      .def_readwrite("hemt_noise_temperature", &DetectionChain::hemt_noise_temperature)
      .def_readwrite("hemt_added_photons", &DetectionChain::hemt_added_photons)
      .def_readwrite("output_efficiency", &DetectionChain::output_efficiency)
      .def_readwrite("total_gain", &DetectionChain::total_gain)
      .def_readwrite("input_attenuation_db", &DetectionChain::input_attenuation_db)
      .def_readwrite("measurement_bandwidth", &DetectionChain::measurement_bandwidth)
      .def("effective_added_photons", &DetectionChain::effective_added_photons);

  py::class_<BluePumpParams>(m, "BluePumpParams")
      .def(py::init<>())
      .def_readwrite("kappa", &BluePumpParams::kappa)
      .def_readwrite("external_rate", &BluePumpParams::external_rate)
      .def_readwrite("lf_rate", &BluePumpParams::lf_rate)
      .def_readwrite("lf_frequency", &BluePumpParams::lf_frequency)
      .def_readwrite("coupling", &BluePumpParams::coupling)
      .def_readwrite("detuning", &BluePumpParams::detuning)
      .def_readwrite("lf_occupation", &BluePumpParams::lf_occupation)
      .def_readwrite("cavity_occupation", &BluePumpParams::cavity_occupation)
      .def_readwrite("added_photons", &BluePumpParams::added_photons)
      .def("validate", &BluePumpParams::validate)
      .def("cooperativity", &BluePumpParams::cooperativity);

  m.def("hemt_noise_power_dbm", &hemt_noise_power_dbm, py::arg("temperature"),
        py::arg("bandwidth"));
  m.def("bose_occupation", &bose_occupation, py::arg("frequency"), py::arg("temperature"));
  m.def("effective_added_photons", &effective_added_photons, py::arg("n_add"),
        py::arg("efficiency"));
  m.def("psd_blue_pump",
        [](const RealArray& w, const BluePumpParams& p) {
          return map_real(w, [&](double x) { return psd_blue_pump(x, p); });
        },
        py::arg("omega"), py::arg("pump"));
  m.def("blue_lf_linewidth", &blue_lf_linewidth, py::arg("lf_rate"), py::arg("c"));
  m.def("amplified_occupation", &amplified_occupation, py::arg("n_th"), py::arg("c"));
  m.def("extract_current_psd",
        [](const RealArray& s_v, double s_b, double n_add, double kappa, double ke, double c,
           double lf_rate, double izpf) {
          return to_array(extract_current_psd(to_vector<double>(s_v), s_b, n_add, kappa, ke, c,
                                              lf_rate, izpf));
        },
        py::arg("s_v"), py::arg("s_b"), py::arg("added_photons"), py::arg("kappa"),
        py::arg("external_rate"), py::arg("c"), py::arg("lf_rate"),
        py::arg("zero_point_current"));
  m.def("thermal_photons_from_peak", &thermal_photons_from_peak, py::arg("peak_current_psd"),
        py::arg("lf_rate"), py::arg("lf_rate_eff"), py::arg("zero_point_current"));
  m.def("backaction_free", &backaction_free, py::arg("lf_occupation"), py::arg("c"));
  m.def("photons_to_watts_per_hz", &photons_to_watts_per_hz);
  m.def("current_to_flux_psd", &current_to_flux_psd);

  // --- traces ---------------------------------------------------------------
  py::enum_<PsdUnit>(m, "PsdUnit")
      .value("photons", PsdUnit::photons)
      .value("watts_per_hz", PsdUnit::watts_per_hz)
      .value("amps2_per_hz", PsdUnit::amps2_per_hz)
      .value("webers2_per_hz", PsdUnit::webers2_per_hz);

  py::class_<ComplexTrace>(m, "ComplexTrace")
      .def(py::init(&make_complex_trace), py::arg("frequency_hz"), py::arg("values"))
      .def_property_readonly("frequency_hz",
                             [](const ComplexTrace& t) { return to_array(t.frequency_hz); })
      .def_property_readonly("values", [](const ComplexTrace& t) { return to_array(t.values); })
      .def("__len__", &ComplexTrace::size)
      .def("to_text", [](const ComplexTrace& t) {
        std::ostringstream os;
        write_complex_trace(os, t);
        return os.str();
      })
      .def_static("from_text", [](const std::string& s) {
        std::istringstream is(s);
        return read_complex_trace(is);
      });

  py::class_<SpectrumTrace>(m, "SpectrumTrace")
      .def(py::init(&make_spectrum_trace), py::arg("frequency_hz"), py::arg("values"),
           py::arg("unit") = PsdUnit::photons)
      .def_property_readonly("frequency_hz",
                             [](const SpectrumTrace& t) { return to_array(t.frequency_hz); })
      .def_property_readonly("values", [](const SpectrumTrace& t) { return to_array(t.values); })
      .def_readonly("unit", &SpectrumTrace::unit)
      .def("__len__", &SpectrumTrace::size);

  m.def("linear_grid", [](double a, double b, std::size_t n) { return to_array(linear_grid(a, b, n)); },
        py::arg("start"), py::arg("stop"), py::arg("points"));

  // --- fitting --------------------------------------------------------------
  py::class_<LeastSquaresOptions>(m, "LeastSquaresOptions")
      .def(py::init<>())
      .def_readwrite("max_iterations", &LeastSquaresOptions::max_iterations)
      .def_readwrite("step_tolerance", &LeastSquaresOptions::step_tolerance)
      .def_readwrite("cost_tolerance", &LeastSquaresOptions::cost_tolerance);

  py::class_<BackgroundModel>(m, "BackgroundModel")
      .def(py::init<>())
      .def_readwrite("reference_hz", &BackgroundModel::reference_hz)
      .def_readwrite("amplitude_offset", &BackgroundModel::amplitude_offset)
      .def_readwrite("amplitude_slope", &BackgroundModel::amplitude_slope)
      .def_readwrite("phase_offset", &BackgroundModel::phase_offset)
      .def_readwrite("phase_slope", &BackgroundModel::phase_slope)
      .def_readwrite("rotation", &BackgroundModel::rotation)
      .def("factor", &BackgroundModel::factor);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("names", &FitResult::names)
      .def_readonly("values", &FitResult::values)
      .def_readonly("uncertainties", &FitResult::uncertainties)
      .def_readonly("residual_norm", &FitResult::residual_norm)
      .def_readonly("gradient_norm", &FitResult::gradient_norm)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("message", &FitResult::message)
      .def_readonly("cost_history", &FitResult::cost_history)
      .def_readonly("background", &FitResult::background)
      .def_readonly("corrected", &FitResult::corrected)
      .def_readonly("derived", &FitResult::derived)
      .def("value", &FitResult::value)
      .def("uncertainty", &FitResult::uncertainty)
      .def("as_dict", [](const FitResult& r) {
        py::dict d;
        for (std::size_t i = 0; i < r.names.size(); ++i)
          d[py::str(r.names[i])] = py::make_tuple(r.values[i], r.uncertainties[i]);
        return d;
      });

  py::enum_<ResonanceModel>(m, "ResonanceModel")
      .value("bare", ResonanceModel::bare)
      .value("pumped", ResonanceModel::pumped);

  py::class_<PumpedFitSpec>(m, "PumpedFitSpec")
      .def(py::init<>())
      .def_readwrite("external_rate", &PumpedFitSpec::external_rate)
      .def_readwrite("lf_rate", &PumpedFitSpec::lf_rate)
      .def_readwrite("pump_frequency", &PumpedFitSpec::pump_frequency)
      .def_readwrite("lf_frequency", &PumpedFitSpec::lf_frequency)
      .def_readwrite("coupling", &PumpedFitSpec::coupling)
      .def_readwrite("cavity_frequency", &PumpedFitSpec::cavity_frequency)
      .def_readwrite("internal_rate", &PumpedFitSpec::internal_rate);

  py::class_<ResonanceFitOptions>(m, "ResonanceFitOptions")
      .def(py::init<>())
      .def_readwrite("model", &ResonanceFitOptions::model)
      .def_readwrite("mask_linewidths", &ResonanceFitOptions::mask_linewidths)
      .def_readwrite("min_baseline_fraction", &ResonanceFitOptions::min_baseline_fraction)
      .def_readwrite("pumped", &ResonanceFitOptions::pumped)
      .def_readwrite("lsq", &ResonanceFitOptions::lsq);

  m.def("fit_resonance", &fit_resonance, py::arg("trace"),
        py::arg("options") = ResonanceFitOptions{}, py::call_guard<py::gil_scoped_release>());
  m.def("fit_lorentzian", &fit_lorentzian, py::arg("trace"),
        py::arg("lsq") = LeastSquaresOptions{}, py::call_guard<py::gil_scoped_release>());
  m.def("fit_backaction",
        [](const RealArray& delta, const RealArray& shift, const RealArray& damping,
           Sideband sb) {
          return fit_backaction(to_vector<double>(delta), to_vector<double>(shift),
                                to_vector<double>(damping), sb);
        },
        py::arg("delta"), py::arg("frequency_shift"), py::arg("damping_shift"),
        py::arg("sideband") = Sideband::red);
  m.def("fit_flux_arch",
        [](const RealArray& phi, const RealArray& w, std::optional<double> l_hf,
           std::optional<double> l_loop) {
          const auto p = to_vector<double>(phi);
          const auto f = to_vector<double>(w);
          if (p.size() != f.size()) throw py::value_error("flux and frequency sizes differ");
          std::vector<ArchPoint> pts;
          for (std::size_t i = 0; i < p.size(); ++i) pts.push_back({p[i], f[i]});
          ArchFitOptions opt;
          opt.total_inductance = l_hf;
          opt.loop_inductance = l_loop;
          return fit_flux_arch(pts, opt);
        },
        py::arg("flux_bias"), py::arg("frequency"), py::arg("total_inductance") = py::none(),
        py::arg("loop_inductance") = py::none());

  // --- synthesis ------------------------------------------------------------
  py::enum_<NoiseKind>(m, "NoiseKind")
      .value("none", NoiseKind::none)
      .value("additive", NoiseKind::additive)
      .value("multiplicative", NoiseKind::multiplicative);

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init<>())
      .def(py::init([](NoiseKind k, double sigma, std::uint64_t seed, std::uint64_t stream) {
             return NoiseSpec{k, sigma, seed, stream};
           }),
           py::arg("kind"), py::arg("sigma"), py::arg("seed") = 0, py::arg("stream") = 0)
      .def_readwrite("kind", &NoiseSpec::kind)
      .def_readwrite("sigma", &NoiseSpec::sigma)
      .def_readwrite("seed", &NoiseSpec::seed)
      .def_readwrite("stream", &NoiseSpec::stream);

  py::enum_<S11Model>(m, "S11Model")
      .value("bare", S11Model::bare)
      .value("pumped", S11Model::pumped)
      .value("lf_pumped", S11Model::lf_pumped);

  py::class_<S11Params>(m, "S11Params")
      .def(py::init<>())
      .def_readwrite("model", &S11Params::model)
      .def_readwrite("resonance", &S11Params::resonance)
      .def_readwrite("internal_rate", &S11Params::internal_rate)
      .def_readwrite("external_rate", &S11Params::external_rate)
      .def_readwrite("pumped", &S11Params::pumped)
      .def_readwrite("lf", &S11Params::lf);

  py::enum_<PsdModel>(m, "PsdModel")
      .value("full", PsdModel::full)
      .value("on_sideband", PsdModel::on_sideband);

  py::class_<PsdParams>(m, "PsdParams")
      .def(py::init<>())
      .def_readwrite("pump", &PsdParams::pump)
      .def_readwrite("output_frequency", &PsdParams::output_frequency)
      .def_readwrite("model", &PsdParams::model);

  m.def("synth_s11",
        [](const S11Params& p, const RealArray& grid, const BackgroundModel& bg,
           const NoiseSpec& noise) { return synth_s11(p, to_vector<double>(grid), bg, noise); },
        py::arg("params"), py::arg("grid_hz"), py::arg("background") = BackgroundModel{},
        py::arg("noise") = NoiseSpec{});
  m.def("synth_psd",
        [](const PsdParams& p, const RealArray& offsets, const DetectionChain& d,
           const NoiseSpec& noise) { return synth_psd(p, to_vector<double>(offsets), d, noise); },
        py::arg("params"), py::arg("offsets_hz"), py::arg("detection"),
        py::arg("noise") = NoiseSpec{});
  m.def("psd_background_level", &psd_background_level, py::arg("detection"),
        py::arg("output_frequency"));
  m.def("mode_temperature", &mode_temperature, py::arg("bath_temperature"),
        py::arg("residual_temperature"));

  // --- presets and scenarios ------------------------------------------------
  m.def("preset_names", &preset_names);
  m.def("default_parameters", [] { return doc_to_dict(default_parameters()); });
  m.def("resolve_preset", [](const std::string& n) { return doc_to_dict(resolve_preset(n)); },
        py::arg("name"));

  py::class_<Scenario>(m, "Scenario")
      .def_static("from_parameters",
                  [](const py::dict& d) { return build_scenario(dict_to_doc(d)); })
      .def_static("from_preset",
                  [](const std::string& name, const py::dict& overrides) {
                    auto doc = resolve_preset(name);
                    doc.merge(dict_to_doc(overrides));
                    return build_scenario(doc);
                  },
                  py::arg("name"), py::arg("overrides") = py::dict())
      .def("squid", &Scenario::squid)
      .def("coupling_geometry", &Scenario::coupling_geometry)
      .def("lf_inductance", &Scenario::lf_inductance)
      .def("lf_capacitance", &Scenario::lf_capacitance)
      .def("hf_capacitance", &Scenario::hf_capacitance)
      .def("hf_inductance", &Scenario::hf_inductance)
      .def("zero_point_current", &Scenario::zero_point_current)
      .def("cavity_frequency", &Scenario::cavity_frequency)
      .def("single_photon_rate", &Scenario::single_photon_rate)
      .def("coupling", &Scenario::coupling)
      .def("kappa", &Scenario::kappa)
      .def("detuning", &Scenario::detuning)
      .def("pumped_cavity", &Scenario::pumped_cavity)
      .def("pumped_lf", &Scenario::pumped_lf)
      .def("s11_params", &Scenario::s11_params)
      .def("blue_pump", &Scenario::blue_pump)
      .def("psd_params", &Scenario::psd_params)
      .def_readonly("detection", &Scenario::detection);
}
