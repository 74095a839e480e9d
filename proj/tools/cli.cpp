#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "ppcircuit/circuit_params.hpp"
#include "ppcircuit/constants.hpp"
#include "ppcircuit/dynamics.hpp"
#include "ppcircuit/errors.hpp"
#include "ppcircuit/fitting.hpp"
#include "ppcircuit/noise_spectra.hpp"
#include "ppcircuit/param_doc.hpp"
#include "ppcircuit/presets.hpp"
#include "ppcircuit/scenario.hpp"
#include "ppcircuit/synth.hpp"
#include "ppcircuit/traces.hpp"

namespace ppc::cli {

namespace {

using json = nlohmann::ordered_json;
constexpr std::size_t kDefaultPoints = 2001;

double to_hz(double angular_rate) { return angular_rate / constants::two_pi; }

struct Common {
  std::string preset = "device";
  std::string params_file;
  std::vector<std::string> sets;
  std::string grid;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
  std::string units = "si";
};

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = kDefaultPoints;
};

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Grid parse_grid(const std::string& spec, const std::string& what) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw ConfigError(what + " must be START:STOP:POINTS, got '" + spec + "'");
  Grid g;
  g.start = parse_number(parts[0], what + " start");
  g.stop = parse_number(parts[1], what + " stop");
  const double n = parse_number(parts[2], what + " points");
  if (n != std::floor(n) || n < 2) throw ConfigError(what + " needs an integer POINTS >= 2");
  if (!(g.start < g.stop)) throw ConfigError(what + " needs START < STOP");
  g.points = static_cast<std::size_t>(n);
  return g;
}

std::vector<double> grid_or(const Common& c, double start, double stop) {
  if (!c.grid.empty()) {
    const Grid g = parse_grid(c.grid, "--grid");
    return linear_grid(g.start, g.stop, g.points);
  }
  return linear_grid(start, stop, kDefaultPoints);
}

// Precedence: --set over --params file over preset over defaults.
ParamDoc load_document(const Common& c) {
  ParamDoc doc = resolve_preset(c.preset);
  if (!c.params_file.empty()) {
    std::ifstream is(c.params_file);
    if (!is) throw ConfigError("cannot open parameter file '" + c.params_file + "'");
    ParamDoc file = ParamDoc::parse(is);
    check_known_keys(file);
    doc.merge(file);
  }
  for (const auto& s : c.sets) {
    ParamDoc one;
    one.set_assignment(s);
    check_known_keys(one);
    doc.merge(one);
  }
  return doc;
}

void require_si(const Common& c, const std::string& command) {
  if (c.units != "si") {
    throw ConfigError("--units " + c.units + " does not apply to '" + command + "'");
  }
}

// Writes to --out when given, otherwise to the command's stdout.
void emit(const Common& c, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (c.out.empty()) {
    fn(out);
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw ConfigError("cannot write '" + c.out + "'");
  fn(os);
}

void write_rows(std::ostream& os, const std::vector<std::vector<double>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << ' ';
      os << format_double(row[j]);
    }
    os << '\n';
  }
}

// Centre and half-span (Hz) of the default probe window for a model.
std::pair<double, double> probe_window(const Scenario& s) {
  if (s.response_model == "hf_bare") {
    return {to_hz(s.cavity_frequency()), 5.0 * to_hz(s.hf_internal_rate + s.hf_external_rate)};
  }
  if (s.response_model == "lf_bare") return {to_hz(s.lf_frequency), 5.0 * to_hz(s.lf_rate())};
  const double g = s.coupling();
  const double kappa = s.kappa();
  if (s.response_model == "pumped") {
    return {to_hz(s.cavity_frequency()), to_hz(std::max(5.0 * kappa, 4.0 * g))};
  }
  return {to_hz(s.lf_frequency), 5.0 * to_hz(s.lf_rate() + 4.0 * g * g / kappa)};
}

std::vector<double> probe_grid(const Common& c, const Scenario& s) {
  if (!c.grid.empty()) return grid_or(c, 0.0, 1.0);
  const auto [centre, half] = probe_window(s);
  return linear_grid(centre - half, centre + half, kDefaultPoints);
}

// ---------------------------------------------------------------- params

json g0_row(const Scenario& s, double bias) {
  Scenario at = s;
  at.pump.flux_bias = bias;
  json row;
  row["flux_bias"] = bias;
  try {
    const SquidSpec spec = at.squid();
    row["cavity_frequency_hz"] = to_hz(squid_frequency(Flux::quanta(bias), spec));
    row["responsivity_hz_per_quanta"] = to_hz(flux_responsivity(Flux::quanta(bias), spec)) + 0.0;
    row["g0_hz"] = to_hz(at.single_photon_rate());
  } catch (const DomainError&) {
    row["cavity_frequency_hz"] = nullptr;
    row["responsivity_hz_per_quanta"] = nullptr;
    row["g0_hz"] = nullptr;
  }
  return row;
}

json params_report(const Scenario& s, const std::string& preset) {
  const SquidSpec sq = s.squid();
  const CouplingGeometry geo = s.coupling_geometry();
  json r;
  r["preset"] = preset;
  r["lf"] = {
      {"capacitance_f", s.lf_capacitance()},
      {"inductance_h", s.lf_inductance()},
      {"frequency_hz", to_hz(s.lf_frequency)},
      {"circuit_external_rate_hz", to_hz(s.lf_external_linewidth())},
      {"internal_rate_hz", to_hz(s.lf_internal_rate)},
      {"external_rate_hz", to_hz(s.lf_external_rate)},
  };
  r["hf"] = {
      {"idc_capacitance_f", s.hf_capacitance() / s.idc.parallel_count},
      {"capacitance_f", s.hf_capacitance()},
      {"inductance_h", s.hf_inductance()},
      {"sweet_spot_frequency_hz", to_hz(s.hf_frequency)},
      {"circuit_external_rate_hz", to_hz(s.hf_external_linewidth())},
      {"internal_rate_hz", to_hz(s.hf_internal_rate)},
      {"external_rate_hz", to_hz(s.hf_external_rate)},
  };
  r["squid"] = {
      {"dilution", sq.dilution},
      {"arch_widening", sq.arch_widening},
      {"single_junction_inductance_h", sq.single_junction_inductance},
      {"critical_current_a", sq.critical_current},
      {"loop_inductance_h", sq.loop_inductance},
      {"screening", sq.screening},
      {"design_screening", screening_parameter(s.loop_inductance, s.critical_current_estimate)},
      {"arch_half_width_quanta", arch_half_width(sq)},
  };
  r["coupling"] = {
      {"zero_point_current_a", geo.zero_point_current},
      {"mutual_inductance_h", geo.mutual_inductance},
      {"zero_point_flux_quanta", geo.zero_point_flux.in_quanta()},
      {"zero_point_flux_wb", geo.zero_point_flux.in_weber()},
      {"flux_fraction", flux_fraction(geo.mutual_inductance, s.lf_inductance())},
  };
  json table = json::array();
  for (double bias : {0.0, 0.14, 0.5}) table.push_back(g0_row(s, bias));
  r["g0_table"] = table;
  json pump;
  pump["flux_bias"] = s.pump.flux_bias;
  pump["sideband"] = s.pump.sideband == Sideband::red ? "red" : "blue";
  try {
    pump["cavity_frequency_hz"] = to_hz(s.cavity_frequency());
    pump["g0_hz"] = to_hz(s.single_photon_rate());
    pump["coupling_hz"] = to_hz(s.coupling());
    pump["kappa_hz"] = to_hz(s.kappa());
    pump["detuning_hz"] = to_hz(s.detuning());
    pump["cooperativity"] = cooperativity(s.coupling(), s.kappa(), s.lf_rate());
  } catch (const BeyondArchError& e) {
    pump["error"] = e.what();
  }
  r["pump"] = pump;
  return r;
}

// Every preset resolved over the defaults, one flat key/value object each.
json preset_catalog() {
  json cat = json::object();
  for (const auto& [name, doc] : experiment_presets()) cat[name] = json::parse(doc.dump());
  return cat;
}

int cmd_params(const Common& c, bool catalog, std::ostream& out) {
  require_si(c, "params");
  if (catalog) {
    const json cat = preset_catalog();
    emit(c, out, [&](std::ostream& os) { os << cat.dump(2) << '\n'; });
    return kOk;
  }
  const ParamDoc doc = load_document(c);
  const Scenario s = build_scenario(doc);
  const json r = params_report(s, c.preset);
  emit(c, out, [&](std::ostream& os) { os << r.dump(2) << '\n'; });
  return kOk;
}

// ---------------------------------------------------------------- respond

int cmd_respond(const Common& c, std::ostream& out) {
  require_si(c, "respond");
  const Scenario s = build_scenario(load_document(c));
  const auto grid = probe_grid(c, s);
  const ComplexTrace trace = synth_s11(s.s11_params(), grid);
  emit(c, out, [&](std::ostream& os) {
    write_complex_trace(os, trace, "model: " + s.response_model);
  });
  return kOk;
}

// ---------------------------------------------------------------- backaction

int cmd_backaction(const Common& c, std::ostream& out) {
  require_si(c, "backaction");
  const Scenario s = build_scenario(load_document(c));
  const double g = s.coupling();
  const double kappa = s.kappa();
  const auto grid = grid_or(c, -5.0 * to_hz(kappa), 5.0 * to_hz(kappa));
  const double base = s.pump.sideband == Sideband::red ? -s.lf_frequency : s.lf_frequency;
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double d_hz : grid) {
    const double delta = constants::two_pi * d_hz;
    const BackactionResult approx = backaction_sideband(delta, g, kappa, s.pump.sideband);
    const BackactionResult exact = backaction_exact(base + delta, g, kappa, s.lf_frequency);
    rows.push_back({d_hz, to_hz(approx.frequency_shift), to_hz(approx.damping_shift),
                    to_hz(exact.frequency_shift), to_hz(exact.damping_shift)});
  }
  emit(c, out, [&](std::ostream& os) {
    os << "# sideband: " << (s.pump.sideband == Sideband::red ? "red" : "blue") << '\n';
    os << "# delta_hz spring_hz damping_hz exact_spring_hz exact_damping_hz\n";
    write_rows(os, rows);
  });
  return kOk;
}

// ---------------------------------------------------------------- nms

int cmd_nms(const Common& c, std::ostream& out) {
  require_si(c, "nms");
  const Scenario s = build_scenario(load_document(c));
  const double kappa = s.kappa();
  const double lf_rate = s.lf_rate();
  const auto grid = grid_or(c, 0.0, 2.0 * to_hz(std::max(kappa, lf_rate)));
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double g_hz : grid) {
    const HybridModes m = normal_modes(constants::two_pi * g_hz, kappa, lf_rate, s.lf_frequency);
    rows.push_back({g_hz, to_hz(m.upper.real() - s.lf_frequency),
                    to_hz(m.lower.real() - s.lf_frequency), to_hz(m.upper_linewidth),
                    to_hz(m.lower_linewidth), to_hz(m.splitting), m.resolved ? 1.0 : 0.0});
  }
  emit(c, out, [&](std::ostream& os) {
    os << "# threshold_hz " << format_double(to_hz(std::abs(kappa - lf_rate) / 4.0)) << '\n';
    os << "# g_hz upper_offset_hz lower_offset_hz upper_linewidth_hz lower_linewidth_hz "
          "splitting_hz resolved\n";
    write_rows(os, rows);
  });
  return kOk;
}

// ---------------------------------------------------------------- psd

std::vector<double> psd_column(const Scenario& s, const std::vector<double>& offsets,
                               const std::string& quantity, const std::string& units,
                               PsdUnit& unit) {
  const PsdParams p = s.psd_params();
  if (quantity == "output") {
    const SpectrumTrace t = synth_psd(p, offsets, s.detection);
    std::vector<double> v = t.values;
    unit = PsdUnit::watts_per_hz;
    if (units == "photon") {
      unit = PsdUnit::photons;
      for (auto& x : v) x = watts_per_hz_to_photons(x / s.detection.total_gain, p.output_frequency);
    } else if (units == "dbm") {
      for (auto& x : v) x = watts_to_dbm(x);
    }
    return v;
  }
  if (units != "si") throw ConfigError("--units " + units + " applies to --quantity output only");
  const double c = s.psd_cooperativity();
  const double lf_rate_eff = blue_lf_linewidth(s.lf_rate(), c);
  const double i_zpf = s.zero_point_current();
  std::vector<double> v(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const double w = constants::two_pi * offsets[i];
    if (quantity == "current") {
      v[i] = current_psd(w, s.lf_rate(), lf_rate_eff, i_zpf, p.pump.lf_occupation);
    } else {
      v[i] = flux_psd(w, s.lf_rate(), lf_rate_eff, i_zpf, p.pump.lf_occupation,
                      s.coupling_geometry().zero_point_flux.in_weber());
    }
  }
  unit = quantity == "current" ? PsdUnit::amps2_per_hz : PsdUnit::webers2_per_hz;
  return v;
}

int cmd_psd(const Common& c, const std::string& quantity, const std::string& temperatures,
            std::ostream& out) {
  if (quantity != "output" && quantity != "current" && quantity != "flux") {
    throw ConfigError("--quantity must be output, current or flux");
  }
  if (c.units != "si" && c.units != "photon" && c.units != "dbm") {
    throw ConfigError("--units must be si, photon or dbm");
  }
  const Scenario s = build_scenario(load_document(c));
  const double lf_rate_eff = blue_lf_linewidth(s.lf_rate(), s.psd_cooperativity());
  const auto offsets = grid_or(c, -10.0 * to_hz(lf_rate_eff), 10.0 * to_hz(lf_rate_eff));
  const std::string unit_label = [&] {
    if (quantity == "output" && c.units == "dbm") return std::string("dBm/Hz");
    return std::string();
  }();

  if (temperatures.empty()) {
    PsdUnit unit = PsdUnit::photons;
    SpectrumTrace t;
    t.frequency_hz = offsets;
    t.values = psd_column(s, offsets, quantity, c.units, unit);
    t.unit = unit;
    emit(c, out, [&](std::ostream& os) {
      if (!unit_label.empty()) {
        os << "# units: " << unit_label << "\n# frequency_hz value\n";
        write_rows(os, [&] {
          std::vector<std::vector<double>> rows;
          for (std::size_t i = 0; i < offsets.size(); ++i) rows.push_back({offsets[i], t.values[i]});
          return rows;
        }());
      } else {
        write_spectrum_trace(os, t, "quantity: " + quantity);
      }
    });
    return kOk;
  }

  std::vector<double> temps;
  for (const auto& item : split(temperatures, ',')) {
    const double t = parse_number(item, "--temperatures");
    if (t < 0.0) throw ConfigError("--temperatures must be >= 0");
    temps.push_back(t);
  }
  std::vector<std::vector<double>> columns;
  PsdUnit unit = PsdUnit::photons;
  for (double t : temps) {
    Scenario at = s;
    at.thermal.bath_temperature = t;
    columns.push_back(psd_column(at, offsets, quantity, c.units, unit));
  }
  emit(c, out, [&](std::ostream& os) {
    os << "# units: " << (unit_label.empty() ? to_string(unit) : unit_label) << '\n';
    os << "# quantity: " << quantity << '\n';
    os << "# columns: frequency_hz";
    for (double t : temps) os << " T=" << format_double(t);
    os << '\n';
    std::vector<std::vector<double>> rows(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      rows[i].push_back(offsets[i]);
      for (const auto& col : columns) rows[i].push_back(col[i]);
    }
    write_rows(os, rows);
  });
  return kOk;
}

// ---------------------------------------------------------------- synth

NoiseSpec noise_spec(const Common& c, const Scenario& s) {
  NoiseSpec n;
  n.kind = s.noise_kind;
  n.sigma = s.noise_sigma;
  n.seed = c.seed;
  n.stream = c.stream;
  return n;
}

double perturb(NoiseSource& rng, const NoiseSpec& n, double v) {
  if (n.kind == NoiseKind::none) return v;
  const double e = rng.normal();
  return n.kind == NoiseKind::additive ? v + n.sigma * e : v * (1.0 + n.sigma * e);
}

int cmd_synth(const Common& c, const std::string& kind, std::ostream& out) {
  const Scenario s = build_scenario(load_document(c));
  const NoiseSpec noise = noise_spec(c, s);
  if (kind == "s11") {
    require_si(c, "synth --kind s11");
    const auto grid = probe_grid(c, s);
    BackgroundModel bg = s.background;
    bg.reference_hz = 0.5 * (grid.front() + grid.back());
    const ComplexTrace t = synth_s11(s.s11_params(), grid, bg, noise);
    emit(c, out, [&](std::ostream& os) { write_complex_trace(os, t, "model: " + s.response_model); });
    return kOk;
  }
  if (kind == "psd") {
    if (c.units != "si") throw ConfigError("synth --kind psd writes W/Hz; use --units si");
    const double lf_rate_eff = blue_lf_linewidth(s.lf_rate(), s.psd_cooperativity());
    const auto offsets = grid_or(c, -10.0 * to_hz(lf_rate_eff), 10.0 * to_hz(lf_rate_eff));
    const SpectrumTrace t = synth_psd(s.psd_params(), offsets, s.detection, noise);
    emit(c, out, [&](std::ostream& os) {
      write_spectrum_trace(os, t,
                           "background_w_per_hz: " +
                               format_double(psd_background_level(s.detection,
                                                                  s.cavity_frequency())));
    });
    return kOk;
  }
  if (kind == "arch") {
    require_si(c, "synth --kind arch");
    noise.validate();
    const auto grid = grid_or(c, -0.45, 0.45);
    const SquidSpec spec = s.squid();
    NoiseSource rng(noise.seed, noise.stream);
    std::vector<std::vector<double>> rows;
    for (double phi : grid) {
      const double f = to_hz(squid_frequency(Flux::quanta(phi), spec));
      rows.push_back({phi, perturb(rng, noise, f)});
    }
    emit(c, out, [&](std::ostream& os) {
      os << "# flux_quanta frequency_hz\n";
      write_rows(os, rows);
    });
    return kOk;
  }
  if (kind == "backaction") {
    require_si(c, "synth --kind backaction");
    noise.validate();
    const double g = s.coupling();
    const double kappa = s.kappa();
    const auto grid = grid_or(c, -5.0 * to_hz(kappa), 5.0 * to_hz(kappa));
    NoiseSource rng(noise.seed, noise.stream);
    std::vector<std::vector<double>> rows;
    for (double d_hz : grid) {
      const BackactionResult r =
          backaction_sideband(constants::two_pi * d_hz, g, kappa, s.pump.sideband);
      const double spring = perturb(rng, noise, to_hz(r.frequency_shift));
      const double damping = perturb(rng, noise, to_hz(r.damping_shift));
      rows.push_back({d_hz, spring, damping});
    }
    emit(c, out, [&](std::ostream& os) {
      os << "# sideband: " << (s.pump.sideband == Sideband::red ? "red" : "blue") << '\n';
      os << "# delta_hz spring_hz damping_hz\n";
      write_rows(os, rows);
    });
    return kOk;
  }
  throw ConfigError("--kind must be s11, psd, arch or backaction");
}

// ---------------------------------------------------------------- fit

bool is_angular(const std::string& name) {
  static const std::vector<std::string> angular{
      "resonance_frequency", "internal_rate",        "external_rate",
      "coupling",            "lf_frequency",         "kappa_eff",
      "sweet_spot_frequency", "peak_damping_shift"};
  std::string base = name;
  if (base.rfind("stage2.", 0) == 0) base = base.substr(7);
  return std::find(angular.begin(), angular.end(), base) != angular.end();
}

json fit_report(const std::string& model, const FitResult& r) {
  json rep;
  rep["model"] = model;
  rep["converged"] = r.converged;
  rep["message"] = r.message;
  rep["iterations"] = r.iterations;
  rep["residual_norm"] = r.residual_norm;
  rep["gradient_norm"] = r.gradient_norm;
  json params = json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) {
    const bool hz = is_angular(r.names[i]);
    const double scale = hz ? 1.0 / constants::two_pi : 1.0;
    params[hz ? r.names[i] + "_hz" : r.names[i]] = {
        {"value", r.values[i] * scale}, {"uncertainty", r.uncertainties[i] * scale}};
  }
  rep["parameters"] = params;
  json derived = json::object();
  for (const auto& [k, v] : r.derived) {
    if (is_angular(k)) {
      derived[k + "_hz"] = to_hz(v);
    } else {
      derived[k] = v;
    }
  }
  rep["derived"] = derived;
  return rep;
}

std::ifstream open_input(const std::string& path) {
  if (path.empty()) throw ConfigError("fit needs --input FILE");
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open input '" + path + "'");
  return is;
}

int cmd_fit(const Common& c, const std::string& input, const std::string& model,
            const std::string& corrected, std::ostream& out, std::ostream& err) {
  require_si(c, "fit");
  const Scenario s = build_scenario(load_document(c));
  std::ifstream is = open_input(input);
  FitResult r;
  if (model == "bare" || model == "pumped") {
    const ComplexTrace trace = read_complex_trace(is);
    ResonanceFitOptions opt;
    if (model == "pumped") {
      opt.model = ResonanceModel::pumped;
      const PumpedCavity p = s.pumped_cavity();
      PumpedFitSpec spec;
      spec.external_rate = p.external_rate;
      spec.lf_rate = p.lf_rate;
      spec.pump_frequency = p.pump_frequency();
      spec.lf_frequency = p.lf_frequency;
      spec.coupling = p.coupling;
      spec.cavity_frequency = p.cavity_frequency;
      spec.internal_rate = p.internal_rate;
      opt.pumped = spec;
    }
    r = fit_resonance(trace, opt);
    if (!corrected.empty() && r.corrected) {
      std::ofstream os(corrected);
      if (!os) throw ConfigError("cannot write '" + corrected + "'");
      write_complex_trace(os, *r.corrected, "background removed");
    }
  } else if (model == "lorentzian") {
    r = fit_lorentzian(read_spectrum_trace(is));
  } else if (model == "arch") {
    std::vector<ArchPoint> pts;
    for (const auto& row : read_columns(is, 2)) {
      pts.push_back({row[0], constants::two_pi * row[1]});
    }
    ArchFitOptions opt;
    opt.total_inductance = s.hf_inductance();
    opt.loop_inductance = s.loop_inductance;
    r = fit_flux_arch(pts, opt);
  } else if (model == "backaction") {
    std::vector<double> d, spring, damping;
    for (const auto& row : read_columns(is, 3)) {
      d.push_back(constants::two_pi * row[0]);
      spring.push_back(constants::two_pi * row[1]);
      damping.push_back(constants::two_pi * row[2]);
    }
    r = fit_backaction(d, spring, damping, s.pump.sideband);
  } else {
    throw ConfigError("--model must be bare, pumped, lorentzian, arch or backaction");
  }
  const json rep = fit_report(model, r);
  emit(c, out, [&](std::ostream& os) { os << rep.dump(2) << '\n'; });
  if (!r.converged) {
    err << "fit did not converge: " << r.message << " (iterations " << r.iterations
        << ", gradient " << format_double(r.gradient_norm) << ")\n";
    return kFit;
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Common& c, const std::string& outer, const std::string& inner,
              const std::optional<double>& probe_hz, std::ostream& out) {
  require_si(c, "sweep");
  const auto eq = outer.find('=');
  if (outer.empty() || eq == std::string::npos) throw ConfigError("sweep needs --outer KEY=A:B:N");
  const std::string outer_key = outer.substr(0, eq);
  const Grid og = parse_grid(outer.substr(eq + 1), "--outer");
  if (outer_key == inner) {
    throw ConfigError("sweep axes collide: '" + outer_key + "' given for both --outer and --inner");
  }
  if (outer_key == "probe_hz") throw ConfigError("probe_hz can only be the inner axis");
  const ParamDoc base = load_document(c);
  check_known_keys(ParamDoc{{outer_key, 0.0}});
  if (!base.is_number(outer_key)) throw ConfigError("sweep key '" + outer_key + "' is not numeric");
  const bool probe_inner = inner == "probe_hz";
  if (!probe_inner) {
    check_known_keys(ParamDoc{{inner, 0.0}});
    if (!base.is_number(inner)) throw ConfigError("sweep key '" + inner + "' is not numeric");
    if (c.grid.empty()) throw ConfigError("--grid is required when --inner is a parameter");
  }
  const Scenario base_scenario = build_scenario(base);
  const std::vector<double> inner_grid =
      probe_inner ? probe_grid(c, base_scenario) : grid_or(c, 0.0, 1.0);
  const std::vector<double> outer_grid = linear_grid(og.start, og.stop, og.points);
  const double fixed_probe = probe_hz ? *probe_hz : probe_window(base_scenario).first;

  auto db = [](std::complex<double> z) { return 20.0 * std::log10(std::abs(z)); };
  std::vector<std::vector<double>> rows;
  rows.reserve(outer_grid.size());
  for (double ov : outer_grid) {
    ParamDoc doc = base;
    doc.set(outer_key, ov);
    std::vector<double> row{ov};
    if (probe_inner) {
      const S11Params p = build_scenario(doc).s11_params();
      for (double f : inner_grid) row.push_back(db(s11_response(p, f)));
    } else {
      for (double iv : inner_grid) {
        doc.set(inner, iv);
        row.push_back(db(s11_response(build_scenario(doc).s11_params(), fixed_probe)));
      }
    }
    rows.push_back(std::move(row));
  }
  emit(c, out, [&](std::ostream& os) {
    os << "# |S11| dB, outer=" << outer_key << " inner=" << inner
       << " model=" << base_scenario.response_model << '\n';
    os << "# inner";
    for (double v : inner_grid) os << ' ' << format_double(v);
    os << '\n';
    write_rows(os, rows);
  });
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool with_grid = true) {
  sub->add_option("--preset", c.preset, "Named parameter preset")->capture_default_str();
  sub->add_option("--params", c.params_file, "JSON parameter file");
  sub->add_option("--set", c.sets, "KEY=VALUE override (repeatable)");
  if (with_grid) sub->add_option("--grid", c.grid, "START:STOP:POINTS");
  sub->add_option("--seed", c.seed, "Noise seed");
  sub->add_option("--out", c.out, "Output path (default stdout)");
  sub->add_option("--units", c.units, "si, photon or dbm")->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-pressure circuit toolkit", "ppcircuit"};
  app.require_subcommand(1);
  Common c;

  auto* params = app.add_subcommand("params", "Report derived circuit quantities");
  add_common(params, c, false);
  bool catalog = false;
  params->add_flag("--catalog", catalog, "Emit every preset as a key/value document");
  auto* respond = app.add_subcommand("respond", "Reflection S11 on a probe grid (Hz)");
  add_common(respond, c);
  auto* backaction = app.add_subcommand("backaction", "Spring and damping vs sideband offset");
  add_common(backaction, c);
  auto* nms = app.add_subcommand("nms", "Normal-mode branches vs coupling g (Hz)");
  add_common(nms, c);

  auto* psd = app.add_subcommand("psd", "Blue-pump noise spectra vs offset (Hz)");
  add_common(psd, c);
  std::string quantity = "output";
  std::string temperatures;
  psd->add_option("--quantity", quantity, "output, current or flux")->capture_default_str();
  psd->add_option("--temperatures", temperatures, "Comma-separated bath temperatures (K)");

  auto* synth = app.add_subcommand("synth", "Synthetic data with background and noise");
  add_common(synth, c);
  std::string kind = "s11";
  synth->add_option("--kind", kind, "s11, psd, arch or backaction")->capture_default_str();
  synth->add_option("--stream", c.stream, "Independent noise substream");

  auto* fit = app.add_subcommand("fit", "Fit a trace file");
  add_common(fit, c, false);
  std::string input, model = "bare", corrected;
  fit->add_option("--input", input, "Input trace")->required();
  fit->add_option("--model", model, "bare, pumped, lorentzian, arch or backaction")
      ->capture_default_str();
  fit->add_option("--corrected", corrected, "Write the background-corrected trace here");

  auto* sweep = app.add_subcommand("sweep", "|S11| dB matrix over two axes");
  add_common(sweep, c);
  std::string outer, inner = "probe_hz";
  double probe = 0.0;
  sweep->add_option("--outer", outer, "KEY=START:STOP:POINTS")->required();
  sweep->add_option("--inner", inner, "Parameter key or probe_hz")->capture_default_str();
  auto* probe_opt = sweep->add_option("--probe", probe, "Probe frequency (Hz) for a parameter inner axis");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kConfig;
  }

  try {
    if (*params) return cmd_params(c, catalog, out);
    if (*respond) return cmd_respond(c, out);
    if (*backaction) return cmd_backaction(c, out);
    if (*nms) return cmd_nms(c, out);
    if (*psd) return cmd_psd(c, quantity, temperatures, out);
    if (*synth) return cmd_synth(c, kind, out);
    if (*fit) return cmd_fit(c, input, model, corrected, out, err);
    if (*sweep) {
      std::optional<double> p;
      if (*probe_opt) p = probe;
      return cmd_sweep(c, outer, inner, p, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << '\n';
    return kFit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUnexpected;
  }
  return kUnexpected;
}

}  // namespace ppc::cli
