// blochwave: strong-field electron dynamics in periodic potentials.
// Every computation is exposed as a subcommand; inputs come from inline
// flags or a JSON config (--config), outputs are CSV/JSON files written
// atomically into --out-dir. All quantities use eV / fs / A / V/A units.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blochwave/band.hpp"
#include "blochwave/constants.hpp"
#include "blochwave/errors.hpp"
#include "blochwave/geometry.hpp"
#include "blochwave/interband.hpp"
#include "blochwave/intraband.hpp"
#include "blochwave/ladders.hpp"
#include "blochwave/material.hpp"
#include "blochwave/pulse.hpp"
#include "blochwave/regimes.hpp"
#include "blochwave/resonant.hpp"
#include "blochwave/special_functions.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace blochwave;
namespace bc = blochwave::constants;

namespace {

// ---------------------------------------------------------------- output

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Collects files and writes them only once the whole run has succeeded.
struct OutputSink {
  fs::path dir;
  std::string config_hash;
  std::vector<std::pair<fs::path, std::string>> pending;

  void add(const std::string& name, std::string content) {
    pending.emplace_back(dir / name, std::move(content));
  }
  void commit() {
    if (!pending.empty()) fs::create_directories(dir);
    for (const auto& [path, content] : pending) {
      const fs::path tmp = path.string() + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NumericalError("cannot write " + tmp.string());
        out << content;
      }
      fs::rename(tmp, path);
    }
  }
};

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvBuilder {
 public:
  CsvBuilder(const std::string& title, const std::string& columns,
             const std::string& hash) {
    out_ << "# " << title << "\n";
    out_ << "# config_hash: " << hash << "\n";
    columns_ = columns;
  }
  void comment(const std::string& line) { out_ << "# " << line << "\n"; }
  template <typename... Ts>
  void row(Ts... vs) {
    flush_header();
    bool first = true;
    ((out_ << (first ? "" : ","), out_ << fmt(static_cast<double>(vs)), first = false), ...);
    out_ << "\n";
  }
  std::string str() {
    flush_header();
    return out_.str();
  }

 private:
  void flush_header() {
    if (!columns_.empty()) {
      out_ << columns_ << "\n";
      columns_.clear();
    }
  }
  std::ostringstream out_;
  std::string columns_;
};

// ---------------------------------------------------------------- config

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in, nullptr, true, true);  // allow comments
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(context + ": unknown key '" + key + "'");
    }
  }
}

double num(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ConfigError("missing required key '" + key + "'");
  if (!j[key].is_number()) throw ConfigError("key '" + key + "' must be a number");
  return j[key].get<double>();
}

double num_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? num(j, key) : fallback;
}

std::vector<double> num_list(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ConfigError("key '" + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ConfigError("key '" + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

PulseSpec pulse_from_json(const json& p) {
  require_keys(p, {"F0", "hbar_omega0", "lambda0_nm", "envelope", "cycles", "fwhm_fs",
                   "ramp_cycles", "cep", "beta", "t_start", "duration_fs"},
               "pulse");
  double hw0 = 0.0;
  if (p.contains("lambda0_nm")) {
    if (p.contains("hbar_omega0")) {
      throw ConfigError("pulse: give either hbar_omega0 or lambda0_nm, not both");
    }
    hw0 = PulseSpec::photon_energy_from_wavelength_nm(num(p, "lambda0_nm"));
  } else {
    hw0 = num_or(p, "hbar_omega0", 0.0);
  }
  const std::string env = p.value("envelope", "monochromatic");
  const double f0 = num(p, "F0");
  const double cep = num_or(p, "cep", 0.0);
  const double beta = num_or(p, "beta", 0.0);
  const double t_start = num_or(p, "t_start", 0.0);
  if (env == "monochromatic") {
    return PulseSpec::monochromatic_cycles(f0, hw0, num(p, "cycles"), cep, beta, t_start);
  }
  if (env == "sine_square") {
    return PulseSpec::sine_square_fwhm(f0, hw0, num(p, "fwhm_fs"), cep, beta, t_start);
  }
  if (env == "flat_top") {
    return PulseSpec::flat_top_cycles(f0, hw0, num(p, "cycles"),
                                      num_or(p, "ramp_cycles", 2.0), cep, beta, t_start);
  }
  if (env == "static") {
    return PulseSpec::static_field(f0, num(p, "duration_fs"), t_start);
  }
  throw ConfigError("pulse: unknown envelope '" + env + "'");
}

BandDispersion band_from_json(const json& b) {
  require_keys(b, {"type", "m", "Eg", "a", "eps"}, "band");
  const std::string type = b.value("type", "");
  if (type == "ema") return EffectiveMass{num(b, "m")};
  if (type == "kane") return KaneTwoBand{num(b, "Eg"), num(b, "m")};
  if (type == "tb") return TightBinding{num(b, "a"), num_list(b, "eps")};
  throw ConfigError("band: type must be one of ema, kane, tb");
}

TwoBandModel model_from_json(const json& b) {
  require_keys(b, {"type", "m", "Eg", "a", "eps_cv", "xi"}, "model");
  const std::string type = b.value("type", "");
  if (type == "kane") {
    auto model = TwoBandModel::kane(num(b, "Eg"), num(b, "m"), num(b, "a"));
    if (b.contains("xi")) {
      const double xi = num(b, "xi");
      model.xi_cv = [xi](double) { return std::complex<double>(xi, 0.0); };
    }
    return model;
  }
  if (type == "tb") {
    return TwoBandModel::tight_binding(TightBinding{num(b, "a"), num_list(b, "eps_cv")},
                                       num(b, "xi"));
  }
  throw ConfigError("model: type must be kane or tb");
}

MaterialRecord material_from_json(const json& cfg) {
  if (!cfg.contains("material")) throw ConfigError("missing 'material'");
  const auto& m = cfg["material"];
  if (m.is_string()) return material_lookup(m.get<std::string>());
  require_keys(m, {"name", "structure", "Eg", "a", "c", "xi_max", "m_reduced",
                   "wannier_extent", "bandwidth"},
               "material");
  MaterialRecord rec;
  rec.name = m.value("name", "inline");
  rec.structure = m.value("structure", "");
  rec.Eg = num(m, "Eg");
  rec.a = num(m, "a");
  if (m.contains("c")) rec.c = num(m, "c");
  rec.xi_max = num(m, "xi_max");
  if (m.contains("m_reduced")) rec.m_reduced = num(m, "m_reduced");
  if (m.contains("wannier_extent")) rec.wannier_extent = num(m, "wannier_extent");
  if (m.contains("bandwidth")) rec.bandwidth = num(m, "bandwidth");
  rec.validate();
  return rec;
}

std::vector<double> sweep_values(const json& s, const std::string& context) {
  require_keys(s, {"parameter", "start", "stop", "points", "scale"}, context);
  const double start = num(s, "start"), stop = num(s, "stop");
  const int n = static_cast<int>(num(s, "points"));
  if (n < 1) throw ConfigError(context + ": points must be >= 1");
  const std::string scale = s.value("scale", "linear");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    if (scale == "log") {
      if (!(start > 0) || !(stop > 0)) {
        throw ConfigError(context + ": log sweep needs positive bounds");
      }
      out.push_back(start * std::pow(stop / start, f));
    } else if (scale == "linear") {
      out.push_back(start + (stop - start) * f);
    } else {
      throw ConfigError(context + ": scale must be linear or log");
    }
  }
  return out;
}

KGrid kgrid_from_json(const json& cfg) {
  KGrid grid;
  if (cfg.contains("kgrid")) {
    require_keys(cfg["kgrid"], {"points", "fraction"}, "kgrid");
    grid.points[0] = static_cast<int>(num(cfg["kgrid"], "points"));
    grid.fraction[0] = num_or(cfg["kgrid"], "fraction", 1.0);
  }
  grid.validate();
  return grid;
}

OdeTolerances tolerances_from_json(const json& cfg) {
  OdeTolerances tol;
  if (cfg.contains("tolerances")) {
    require_keys(cfg["tolerances"], {"abs_tol", "rel_tol"}, "tolerances");
    tol.abs_tol = num_or(cfg["tolerances"], "abs_tol", tol.abs_tol);
    tol.rel_tol = num_or(cfg["tolerances"], "rel_tol", tol.rel_tol);
  }
  return tol;
}

// CSV input: '#' comments, comma- or whitespace-separated numbers.
std::vector<std::vector<double>> read_csv_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file '" + path + "'");
  std::vector<std::vector<double>> columns;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream row(line);
    std::vector<double> vals;
    double v;
    while (row >> v) vals.push_back(v);
    if (vals.empty()) continue;
    if (columns.empty()) columns.resize(vals.size());
    if (vals.size() != columns.size()) {
      throw ConfigError("ragged row in '" + path + "'");
    }
    for (std::size_t i = 0; i < vals.size(); ++i) columns[i].push_back(vals[i]);
  }
  if (columns.empty()) throw ConfigError("no data rows in '" + path + "'");
  return columns;
}

json material_to_json(const MaterialRecord& m) {
  json j;
  j["name"] = m.name;
  j["structure"] = m.structure;
  j["Eg"] = m.Eg;
  j["a"] = m.a;
  if (m.c) j["c"] = *m.c;
  j["xi_max"] = m.xi_max;
  if (m.m_reduced) j["m_reduced"] = *m.m_reduced;
  if (m.wannier_extent) j["wannier_extent"] = *m.wannier_extent;
  if (m.bandwidth) j["bandwidth"] = *m.bandwidth;
  return j;
}

json number_or_inf(double v) {
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

json report_to_json(const RegimeReport& r) {
  json j;
  j["N"] = r.N;
  j["gamma_K"] = number_or_inf(r.gamma_K);
  j["gamma_NP"] = r.gamma_NP;
  j["gamma_DL"] = r.gamma_DL;
  j["gamma_BH"] = r.gamma_BH;
  j["gamma_BP"] = number_or_inf(r.gamma_BP);
  j["gamma_RF0"] = r.gamma_RF0;
  j["gamma_RFg"] = r.gamma_RFg;
  j["gamma_RP"] = number_or_inf(r.gamma_RP);
  j["gamma_RB"] = r.gamma_RB;
  j["hbar_omegaB"] = r.hbar_omegaB;
  j["hbar_omegaR"] = r.hbar_omegaR;
  j["Up"] = r.Up;
  j["N_tilde"] = r.N_tilde;
  j["labels"] = r.labels;
  j["up_is_zero"] = r.up_is_zero;
  return j;
}

// default two-band gap model for a material: nonparabolic dispersion with
// the mass inferred from the tabulated dipole, xi = hbar / (2 sqrt(m Eg))
double mass_from_dipole(const MaterialRecord& m) {
  if (!(m.xi_max > 0)) throw ConfigError("material has no dipole to infer a mass from");
  return bc::hbar2_over_m0 / (4.0 * m.xi_max * m.xi_max * m.Eg);
}

// ------------------------------------------------------------- handlers

std::string run_materials(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"name", "list"}, "materials");
  if (cfg.value("list", false)) {
    json j = json::array();
    for (const auto& n : material_names()) j.push_back(material_to_json(material_lookup(n)));
    sink.add("materials.json", j.dump(2) + "\n");
    return "materials: listed " + std::to_string(j.size()) + " records";
  }
  if (!cfg.contains("name")) throw ConfigError("materials: --name or --list required");
  const auto& rec = material_lookup(cfg["name"].get<std::string>());
  const json j = material_to_json(rec);
  sink.add("material_" + rec.name + ".json", j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  std::ostringstream s;
  s << "material " << rec.name << ": Eg=" << rec.Eg << " eV, a=" << rec.a
    << " A, xi_max=" << rec.xi_max << " A";
  return s.str();
}

std::string run_regimes(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"material", "pulse", "band", "sweep"}, "regimes");
  const auto material = material_from_json(cfg);
  if (!cfg.contains("pulse")) throw ConfigError("regimes: missing 'pulse'");
  const auto pulse = pulse_from_json(cfg["pulse"]);

  BandDispersion band = KaneTwoBand{material.Eg, mass_from_dipole(material)};
  if (cfg.contains("band")) {
    band = band_from_json(cfg["band"]);
  } else if (material.m_reduced) {
    band = EffectiveMass{*material.m_reduced};
  }

  if (cfg.contains("sweep")) {
    const auto values = sweep_values(cfg["sweep"], "sweep");
    if (cfg["sweep"].value("parameter", "F0") != std::string("F0")) {
      throw ConfigError("regimes: only F0 sweeps are supported");
    }
    CsvBuilder csv("adiabaticity parameters vs field amplitude",
                   "F0_V_per_A,Up_eV,Up_ema_eV,gamma_K,gamma_NP,gamma_DL,gamma_BH,gamma_BP,"
                   "gamma_RF0,gamma_RFg,gamma_RP,gamma_RB,N_tilde",
                   sink.config_hash);
    for (double f0 : values) {
      PulseSpec p = pulse;
      p.F0 = f0;
      const auto r = adiabaticity_report(material, p, band);
      // parabolic reference alongside the band-model value
      double up_ema = r.Up;
      if (const auto* tb = std::get_if<TightBinding>(&band)) {
        up_ema = ponderomotive(p, EffectiveMass{curvature_mass(*tb)});
      } else if (const auto* kane = std::get_if<KaneTwoBand>(&band)) {
        up_ema = ponderomotive(p, EffectiveMass{kane->m});
      }
      csv.row(f0, r.Up, up_ema, r.gamma_K, r.gamma_NP, r.gamma_DL, r.gamma_BH, r.gamma_BP,
              r.gamma_RF0, r.gamma_RFg, r.gamma_RP, r.gamma_RB,
              static_cast<double>(r.N_tilde));
    }
    sink.add("regimes_sweep.csv", csv.str());
    return "regimes: swept " + std::to_string(values.size()) + " amplitudes";
  }

  const auto r = adiabaticity_report(material, pulse, band);
  json j = report_to_json(r);
  if (r.gamma_RF0 > 0) {
    j["resonant_relation_residual"] = crosscheck_resonant_relation(r, pulse.beta);
  }
  sink.add("regimes.json", j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  std::ostringstream s;
  s << "regimes: gamma_K=" << fmt(r.gamma_K) << " gamma_DL=" << fmt(r.gamma_DL)
    << " N_tilde=" << r.N_tilde;
  return s.str();
}

std::string run_keldysh_scan(const json& cfg, OutputSink& sink, int threads) {
  require_keys(cfg, {"model", "kgrid", "hbar_omega0", "cycles", "f0", "tolerances"},
               "keldysh-scan");
  if (!cfg.contains("model")) throw ConfigError("keldysh-scan: missing 'model'");
  const auto model = model_from_json(cfg["model"]);
  const auto grid = kgrid_from_json(cfg);
  const auto ks = grid.axis(0, model.a);
  const double hw0 = num(cfg, "hbar_omega0");
  const double cycles = num_or(cfg, "cycles", 10.0);
  if (!cfg.contains("f0")) throw ConfigError("keldysh-scan: missing 'f0' sweep");
  json sweep = cfg["f0"];
  sweep["parameter"] = "F0";
  const auto f0s = sweep_values(sweep, "f0");
  const auto rows = excitation_rate_scan(model, f0s, hw0, cycles, ks,
                                         tolerances_from_json(cfg), threads);
  CsvBuilder csv("cycle-averaged excitation rate scan",
                 "F0_V_per_A,rate_per_fs,N_tilde,closing_flag", sink.config_hash);
  csv.comment("rate: k-averaged final excited population per plateau time");
  int closings = 0;
  for (const auto& r : rows) {
    csv.row(r.F0, r.rate, static_cast<double>(r.N_tilde), r.closing ? 1.0 : 0.0);
    closings += r.closing ? 1 : 0;
  }
  sink.add("keldysh_scan.csv", csv.str());
  return "keldysh-scan: " + std::to_string(rows.size()) + " amplitudes, " +
         std::to_string(closings) + " decreasing intervals";
}

std::string run_intraband(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"band", "k0", "pulse", "samples", "compare_ema"}, "intraband");
  if (!cfg.contains("band")) throw ConfigError("intraband: missing 'band'");
  const auto band = band_from_json(cfg["band"]);
  const auto pulse = pulse_from_json(cfg.at("pulse"));
  const double k0 = num_or(cfg, "k0", 0.0);
  const int samples = static_cast<int>(num_or(cfg, "samples", 2048));
  const auto tr = trajectory(band, k0, pulse, samples);

  const bool compare = cfg.value("compare_ema", false);
  std::optional<TrajectoryResult> ema;
  if (compare) {
    const auto* tb = std::get_if<TightBinding>(&band);
    if (!tb) throw ConfigError("intraband: compare_ema needs a tb band");
    ema = trajectory(BandDispersion{EffectiveMass{curvature_mass(*tb)}}, k0, pulse, samples);
  }

  CsvBuilder csv("field-driven single-band trajectory",
                 compare ? "t_fs,K_invA,v_A_per_fs,dx_A,v_ema_A_per_fs,dx_ema_A"
                         : "t_fs,K_invA,v_A_per_fs,dx_A",
                 sink.config_hash);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    if (compare) {
      csv.row(tr.t[i], tr.K[i], tr.v[i], tr.dx[i], ema->v[i], ema->dx[i]);
    } else {
      csv.row(tr.t[i], tr.K[i], tr.v[i], tr.dx[i]);
    }
  }
  sink.add("trajectory.csv", csv.str());
  std::ostringstream s;
  s << "intraband: " << tr.t.size() << " samples, final dx = " << fmt(tr.dx.back()) << " A";
  return s.str();
}

std::string run_hhg(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"band", "k0", "pulse"}, "hhg");
  if (!cfg.contains("band")) throw ConfigError("hhg: missing 'band'");
  const auto band = band_from_json(cfg["band"]);
  const auto pulse = pulse_from_json(cfg.at("pulse"));
  const auto spec = hhg_spectrum(band, num_or(cfg, "k0", 0.0), pulse);
  double peak = 0.0;
  for (double v : spec.intensity) peak = std::max(peak, v);
  CsvBuilder csv("high-harmonic spectrum of the intraband velocity",
                 "harmonic_order,intensity_db", sink.config_hash);
  csv.comment("window: " + spec.window +
              ", cutoff_estimate: " + fmt(spec.cutoff_estimate));
  for (std::size_t i = 0; i < spec.order.size(); ++i) {
    const double db = 10.0 * std::log10(std::max(spec.intensity[i] / peak, 1e-300));
    csv.row(spec.order[i], db);
  }
  sink.add("hhg.csv", csv.str());
  return "hhg: cutoff estimate at order " + fmt(spec.cutoff_estimate);
}

std::string snapshot_name(const std::string& prefix, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", index);
  return prefix + buf + ".csv";
}

std::string run_tdse(const json& cfg, OutputSink& sink, int threads) {
  require_keys(cfg, {"model", "kgrid", "pulse", "snapshots", "tolerances"}, "tdse");
  if (!cfg.contains("model")) throw ConfigError("tdse: missing 'model'");
  const auto model = model_from_json(cfg["model"]);
  const auto pulse = pulse_from_json(cfg.at("pulse"));
  const auto grid = kgrid_from_json(cfg);
  const auto ks = grid.axis(0, model.a);
  const int snapshots = static_cast<int>(num_or(cfg, "snapshots", 5));
  const auto traj =
      propagate_two_band(model, ks, pulse, tolerances_from_json(cfg), snapshots, threads);

  CsvBuilder times("snapshot time index", "snapshot_index,t_fs", sink.config_hash);
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    times.row(static_cast<double>(s), traj.snapshots[s].time);
    CsvBuilder csv("excited-state population snapshot", "k_invA,f_c", sink.config_hash);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      csv.row(ks[i], std::norm(traj.snapshots[s].a_c[i]));
    }
    sink.add(snapshot_name("tdse_fc_", static_cast<int>(s)), csv.str());
  }
  sink.add("tdse_times.csv", times.str());

  double mean = 0.0, drift = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mean += traj.final_population[i];
    drift = std::max(drift, traj.norm_drift[i]);
  }
  mean /= static_cast<double>(ks.size());
  return "tdse: mean final population " + fmt(mean) + ", max norm drift " + fmt(drift);
}

std::string run_dephasing(const json& cfg, OutputSink& sink, int threads) {
  require_keys(cfg, {"model", "kgrid", "pulse", "snapshots", "T2_fs", "tolerances"},
               "dephasing");
  if (!cfg.contains("model")) throw ConfigError("dephasing: missing 'model'");
  const auto model = model_from_json(cfg["model"]);
  const auto pulse = pulse_from_json(cfg.at("pulse"));
  const auto grid = kgrid_from_json(cfg);
  const auto ks = grid.axis(0, model.a);
  const int snapshots = static_cast<int>(num_or(cfg, "snapshots", 5));
  double t2 = std::numeric_limits<double>::infinity();
  if (cfg.contains("T2_fs") && !cfg["T2_fs"].is_null()) t2 = num(cfg, "T2_fs");
  const auto traj = propagate_with_dephasing(model, ks, pulse, t2,
                                             tolerances_from_json(cfg), snapshots, threads);

  CsvBuilder times("snapshot time index", "snapshot_index,t_fs", sink.config_hash);
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    times.row(static_cast<double>(s), traj.snapshots[s].time);
    CsvBuilder csv("excited-state population snapshot (density matrix)", "k_invA,f_c",
                   sink.config_hash);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      csv.row(ks[i], traj.snapshots[s].f_c[i]);
    }
    sink.add(snapshot_name("dephasing_fc_", static_cast<int>(s)), csv.str());
  }
  sink.add("dephasing_times.csv", times.str());

  double mean = 0.0;
  for (double f : traj.final_population) mean += f;
  mean /= static_cast<double>(ks.size());
  return "dephasing: mean residual population " + fmt(mean);
}

TightBinding tb_from_json(const json& b, const std::string& context) {
  require_keys(b, {"a", "eps"}, context);
  return TightBinding{num(b, "a"), num_list(b, "eps")};
}

std::string run_ladders(const json& cfg, OutputSink& sink) {
  require_keys(cfg,
               {"mode", "band_c", "band_v", "F0", "l_min", "l_max", "l_c", "l_v",
                "couplings", "truncation", "f0", "bandwidth", "wannier_extent", "l",
                "Eg", "a"},
               "ladders");
  const std::string mode = cfg.value("mode", "kane");

  if (mode == "kane") {
    const auto band = tb_from_json(cfg.at("band_c"), "band_c");
    const auto ladder = kane_ladder(band, num(cfg, "F0"), nullptr,
                                    static_cast<int>(num_or(cfg, "l_min", -5)),
                                    static_cast<int>(num_or(cfg, "l_max", 5)));
    CsvBuilder csv("single-band ladder rungs", "level_index,energy_eV", sink.config_hash);
    csv.comment("e_bar_eV: " + fmt(ladder.e_bar) +
                ", hbar_omegaB_eV: " + fmt(ladder.hbar_omegaB));
    for (const auto& r : ladder.rungs) csv.row(static_cast<double>(r.l), r.energy);
    sink.add("ladders_kane.csv", csv.str());
    return "ladders: " + std::to_string(ladder.rungs.size()) + " rungs spaced by " +
           fmt(ladder.hbar_omegaB) + " eV";
  }

  if (mode == "loc") {
    const double bandwidth = num(cfg, "bandwidth");
    const double wannier = num(cfg, "wannier_extent");
    json sweep = cfg.at("f0");
    sweep["parameter"] = "F0";
    const auto f0s = sweep_values(sweep, "f0");
    CsvBuilder csv("localization lengths vs field", "F0_V_per_A,L_SC_A,L_K_A",
                   sink.config_hash);
    for (double f0 : f0s) {
      const auto l = localization_lengths(bandwidth, wannier, f0);
      csv.row(f0, l.L_SC, l.L_K);
    }
    sink.add("ladders_loc.csv", csv.str());
    return "ladders: localization lengths over " + std::to_string(f0s.size()) + " fields";
  }

  if (mode == "fan") {
    const auto band_c = tb_from_json(cfg.at("band_c"), "band_c");
    const auto band_v = tb_from_json(cfg.at("band_v"), "band_v");
    const int l_c = static_cast<int>(num_or(cfg, "l_c", 0));
    const int l_v = static_cast<int>(num_or(cfg, "l_v", 0));
    const auto couplings = cfg.contains("couplings") ? num_list(cfg, "couplings")
                                                     : std::vector<double>{};
    const int truncation = static_cast<int>(num_or(cfg, "truncation", 2));
    json sweep = cfg.at("f0");
    sweep["parameter"] = "F0";
    const auto f0s = sweep_values(sweep, "f0");
    CsvBuilder kane_csv("single-band rungs vs field", "F0_V_per_A,level_index,energy_eV",
                        sink.config_hash);
    CsvBuilder ws_csv("coupled-band levels vs field", "F0_V_per_A,level_index,energy_eV",
                      sink.config_hash);
    for (double f0 : f0s) {
      const auto lc = kane_ladder(band_c, f0, nullptr, l_c, l_c);
      const auto lv = kane_ladder(band_v, f0, nullptr, l_v, l_v);
      kane_csv.row(f0, 0.0, lc.rungs[0].energy);
      kane_csv.row(f0, 1.0, lv.rungs[0].energy);
      const auto ws = ws_levels(lc.rungs[0], lv.rungs[0], couplings, truncation);
      for (std::size_t i = 0; i < ws.energies.size(); ++i) {
        ws_csv.row(f0, static_cast<double>(i), ws.energies[i]);
      }
    }
    sink.add("ladders_fan_kane.csv", kane_csv.str());
    sink.add("ladders_fan_ws.csv", ws_csv.str());
    std::ostringstream s;
    s << "ladders: fan over " << f0s.size() << " fields";
    if (cfg.contains("Eg") && cfg.contains("a")) {
      const int ell = std::abs(l_v - l_c);
      if (ell >= 1) {
        s << ", hybridization field "
          << fmt(hybridization_field(num(cfg, "Eg"), num(cfg, "a"), ell)) << " V/A at l="
          << ell;
      }
    }
    return s.str();
  }

  if (mode == "eta") {
    const auto band = tb_from_json(cfg.at("band_c"), "band_c");
    const double f0 = num(cfg, "F0");
    const int l = static_cast<int>(num_or(cfg, "l", 0));
    const auto ladder = kane_ladder(band, f0, nullptr, l, l);
    const auto eta = kane_eta(band, f0, nullptr, ladder.rungs[0].energy);
    CsvBuilder csv("ladder phase function", "kx_invA,re_eta,im_eta", sink.config_hash);
    for (std::size_t i = 0; i < eta.kx.size(); ++i) {
      csv.row(eta.kx[i], eta.eta[i].real(), eta.eta[i].imag());
    }
    sink.add("ladders_eta.csv", csv.str());
    return "ladders: phase function sampled on " + std::to_string(eta.kx.size()) + " points";
  }

  throw ConfigError("ladders: mode must be one of kane, fan, loc, eta");
}

std::string run_fke(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"material", "m", "Eg", "F0", "homega", "airy"}, "fke");
  double m = 0.0, eg = 0.0;
  if (cfg.contains("material")) {
    const auto mat = material_from_json(cfg);
    eg = mat.Eg;
    m = cfg.contains("m") ? num(cfg, "m") : mass_from_dipole(mat);
  } else {
    m = num(cfg, "m");
    eg = num(cfg, "Eg");
  }
  const double f0 = num(cfg, "F0");
  json sweep = cfg.at("homega");
  sweep["parameter"] = "homega";
  const auto hws = sweep_values(sweep, "homega");
  CsvBuilder csv("below-gap absorption", "homega_eV,alpha_rel", sink.config_hash);
  double theta = 0.0;
  for (double hw : hws) {
    const auto r = fke_absorption(hw, f0, m, eg);
    theta = r.hbar_theta;
    csv.row(hw, r.alpha_rel);
  }
  csv.comment("hbar_theta_eV: " + fmt(theta));
  sink.add("fke.csv", csv.str());
  if (cfg.value("airy", false)) {
    CsvBuilder airy("Airy function samples", "x,Ai", sink.config_hash);
    for (int i = -1200; i <= 400; ++i) airy.row(0.01 * i, airy_ai(0.01 * i));
    sink.add("airy.csv", airy.str());
  }
  return "fke: hbar_theta = " + fmt(theta) + " eV at F0 = " + fmt(f0) + " V/A";
}

std::string run_rabi(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"system", "pulse", "samples", "tolerances"}, "rabi");
  if (!cfg.contains("system")) throw ConfigError("rabi: missing 'system'");
  require_keys(cfg["system"], {"E1", "E2", "d12"}, "system");
  const TwoLevelSystem sys{num(cfg["system"], "E1"), num(cfg["system"], "E2"),
                           num(cfg["system"], "d12")};
  const auto pulse = pulse_from_json(cfg.at("pulse"));
  const int samples = static_cast<int>(num_or(cfg, "samples", 2001));
  const auto traj = solve_two_level(sys, pulse, tolerances_from_json(cfg), samples);

  CsvBuilder csv("two-level Bloch vector", "t_fs,u,v,w", sink.config_hash);
  for (const auto& b : traj) csv.row(b.t, b.u, b.v, b.w);
  sink.add("rabi.csv", csv.str());

  const auto suite = rwa_suite(sys, pulse.F0, pulse.hbar_omega0);
  json j;
  j["hbar_omega_rabi"] = suite.hbar_omega_rabi;
  j["hbar_detuning"] = suite.hbar_detuning;
  j["hbar_Omega_R"] = suite.hbar_Omega_R;
  j["dressed_1"] = suite.dressed_1;
  j["dressed_2"] = suite.dressed_2;
  j["mollow"] = suite.mollow;
  sink.add("rabi_rwa.json", j.dump(2) + "\n");
  return "rabi: final inversion w = " + fmt(traj.back().w);
}

std::string run_area(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"model", "k0", "pulse"}, "area");
  if (!cfg.contains("model")) throw ConfigError("area: missing 'model'");
  const auto model = model_from_json(cfg["model"]);
  const auto pulse = pulse_from_json(cfg.at("pulse"));
  const auto res = generalized_area(model, num_or(cfg, "k0", 0.0), pulse);
  CsvBuilder csv("generalized Rabi frequency", "t_fs,OmegaR_eV", sink.config_hash);
  for (std::size_t i = 0; i < res.t.size(); ++i) {
    csv.row(res.t[i], bc::hbar * res.Omega_R[i]);
  }
  sink.add("area.csv", csv.str());
  json j;
  j["area_rad"] = res.area;
  j["gamma_RP"] = number_or_inf(res.gamma_RP);
  j["area_counts_rabi_cycles"] = res.area_counts;
  sink.add("area.json", j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  return "area: " + fmt(res.area) + " rad (" + fmt(res.area / (2.0 * bc::pi)) + " cycles)";
}

std::string run_berry(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"model", "t1", "t2", "u", "band", "nk", "nx", "ny", "ladder"},
               "berry");
  const std::string model_name = cfg.value("model", "");
  const int band = static_cast<int>(num_or(cfg, "band", 0));
  json j;

  if (model_name == "ssh") {
    const double t1 = num(cfg, "t1"), t2 = num(cfg, "t2");
    BlochModel1D model{[t1, t2](double k) {
      return std::array<double, 3>{t1 + t2 * std::cos(k), t2 * std::sin(k), 0.0};
    }};
    const double zak = zak_phase(model, band, static_cast<int>(num_or(cfg, "nk", 512)));
    j["zak_mod_2pi"] = zak;
    if (cfg.contains("ladder")) {
      const auto& lad = cfg["ladder"];
      require_keys(lad, {"e_bar", "a", "F0", "l_min", "l_max"}, "ladder");
      const int l_min = static_cast<int>(num_or(lad, "l_min", -3));
      const auto energies = ws_ladder_with_zak(
          num(lad, "e_bar"), num(lad, "a"), num(lad, "F0"), zak, l_min,
          static_cast<int>(num_or(lad, "l_max", 3)));
      CsvBuilder csv("ladder with the zone-phase offset", "level_index,energy_eV",
                     sink.config_hash);
      int l = l_min;
      for (double e : energies) csv.row(static_cast<double>(l++), e);
      sink.add("berry_ladder.csv", csv.str());
    }
    sink.add("berry.json", j.dump(2) + "\n");
    std::cout << j.dump() << "\n";
    return "berry: zak phase " + fmt(zak) + " rad";
  }

  if (model_name == "qwz") {
    const double u = num(cfg, "u");
    BlochModel2D model{[u](double kx, double ky) {
      return std::array<double, 3>{std::sin(kx), std::sin(ky),
                                   u + std::cos(kx) + std::cos(ky)};
    }};
    const int nx = static_cast<int>(num_or(cfg, "nx", 200));
    const int ny = static_cast<int>(num_or(cfg, "ny", 200));
    const auto res = chern_and_curvature(model, band, nx, ny);
    j["C"] = res.C;
    j["residual"] = res.residual;
    j["residual_flagged"] = res.residual_flagged;
    j["sigma_xy"] = res.sigma_xy;
    j["sigma_xy_note"] =
        "sigma_xy = (e^2/hbar) sum C_n as requested; the conductance quantum "
        "convention e^2/h differs by 2 pi";
    sink.add("berry.json", j.dump(2) + "\n");
    CsvBuilder csv("Berry curvature map", "kx,ky,Omega_z", sink.config_hash);
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        csv.row(-bc::pi + 2.0 * bc::pi * ix / nx, -bc::pi + 2.0 * bc::pi * iy / ny,
                res.curvature[static_cast<std::size_t>(ix) +
                              static_cast<std::size_t>(nx) * iy]);
      }
    }
    sink.add("berry_curvature.csv", csv.str());
    std::cout << j.dump() << "\n";
    return "berry: C = " + std::to_string(res.C) + " (residual " + fmt(res.residual) + ")";
  }

  throw ConfigError("berry: model must be ssh or qwz");
}

std::string run_charge(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"populations_csv", "masses", "band_of_state", "drive", "delay",
                     "delay_scan", "area"},
               "charge");
  if (!cfg.contains("populations_csv")) throw ConfigError("charge: missing 'populations_csv'");
  const auto columns = read_csv_columns(cfg["populations_csv"].get<std::string>());
  if (columns.size() < 2) throw ConfigError("charge: populations file needs t plus f columns");
  BandPopulations pop;
  pop.t = columns[0];
  for (std::size_t c = 1; c < columns.size(); ++c) pop.f.push_back(columns[c]);
  if (cfg.contains("band_of_state")) {
    for (double b : num_list(cfg, "band_of_state")) {
      pop.band_of_state.push_back(static_cast<int>(b));
    }
    if (pop.band_of_state.size() != pop.f.size()) {
      throw ConfigError("charge: band_of_state must match the population columns");
    }
  } else {
    pop.band_of_state.assign(pop.f.size(), 0);
  }
  const auto masses = num_list(cfg, "masses");
  const auto drive = pulse_from_json(cfg.at("drive"));
  const double area = num(cfg, "area");

  if (cfg.contains("delay_scan")) {
    json sweep = cfg["delay_scan"];
    sweep["parameter"] = "delay";
    const auto delays = sweep_values(sweep, "delay_scan");
    CsvBuilder csv("transferred charge vs drive delay", "delay_fs,Q", sink.config_hash);
    for (double d : delays) {
      csv.row(d, transferred_charge(pop, masses, drive, d, area));
    }
    sink.add("charge_scan.csv", csv.str());
    return "charge: scanned " + std::to_string(delays.size()) + " delays";
  }
  const double q = transferred_charge(pop, masses, drive, num_or(cfg, "delay", 0.0), area);
  json j;
  j["Q"] = q;
  sink.add("charge.json", j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  return "charge: Q = " + fmt(q);
}

std::string run_energy(const json& cfg, OutputSink& sink) {
  require_keys(cfg, {"input_csv"}, "energy");
  if (!cfg.contains("input_csv")) throw ConfigError("energy: missing 'input_csv'");
  const auto columns = read_csv_columns(cfg["input_csv"].get<std::string>());
  if (columns.size() < 3) throw ConfigError("energy: input needs columns t, F, P");
  const auto res = energy_transfer(columns[0], columns[1], columns[2]);
  CsvBuilder csv("work per unit volume", "t_fs,W", sink.config_hash);
  for (std::size_t i = 0; i < columns[0].size(); ++i) csv.row(columns[0][i], res.W[i]);
  sink.add("energy_w.csv", csv.str());
  json j;
  j["W_max"] = res.W_max;
  j["W_irrev"] = res.W_irrev;
  sink.add("energy.json", j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  return "energy: W_max = " + fmt(res.W_max) + ", W_irrev = " + fmt(res.W_irrev);
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;
};

void merge_flag(json& cfg, const std::string& key, const std::optional<double>& v) {
  if (v) cfg[key] = *v;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("BLOCHWAVE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "blochwave: strong-field electron dynamics in periodic potentials\n"
      "units: energies eV, times fs, lengths A, fields V/A, e = 1"};
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON config file");
    sub->add_option("--out-dir", common.out_dir, "output directory");
    sub->add_option("--threads", common.threads,
                    "worker threads (fallback: BLOCHWAVE_THREADS)");
  };

  std::string mat_name;
  bool mat_list = false;
  auto* materials = app.add_subcommand("materials", "embedded material parameters");
  add_common(materials);
  materials->add_option("--name", mat_name, "material name (case-insensitive)");
  materials->add_flag("--list", mat_list, "emit every record");

  std::optional<double> r_f0, r_lambda, r_hw0, r_beta, r_m;
  std::string r_material;
  auto* regimes = app.add_subcommand("regimes", "adiabaticity parameters and labels");
  add_common(regimes);
  regimes->add_option("--material", r_material, "material name");
  regimes->add_option("--F0", r_f0, "field amplitude, V/A");
  regimes->add_option("--lambda0-nm", r_lambda, "carrier wavelength, nm");
  regimes->add_option("--hbar-omega0", r_hw0, "photon energy, eV");
  regimes->add_option("--beta", r_beta, "ellipticity");
  regimes->add_option("--m-reduced", r_m, "reduced pair mass (parabolic band)");

  const char* config_only[] = {"keldysh-scan", "intraband", "hhg", "tdse", "dephasing",
                               "ladders", "fke", "rabi", "area", "berry", "charge",
                               "energy"};
  const char* config_descr[] = {
      "cycle-averaged excitation rate over an amplitude grid",
      "single-band trajectory under the pulse",
      "harmonic spectrum of the intraband velocity",
      "two-band propagation in the adiabatic basis",
      "density-matrix propagation with interband dephasing",
      "static-field ladders, localization lengths, phase functions",
      "below-gap absorption and the electro-optic energy",
      "exact two-level evolution and rotating-wave analytics",
      "generalized Rabi frequency and pulse area",
      "zone phases, curvature maps, topological integers",
      "transferred charge from a population history",
      "light-matter energy transfer from field and polarization series"};
  for (std::size_t i = 0; i < std::size(config_only); ++i) {
    add_common(app.add_subcommand(config_only[i], config_descr[i]));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  auto* sub = app.get_subcommands().front();
  const std::string sub_name = sub->get_name();

  try {
    json cfg =
        common.config_path.empty() ? json::object() : load_json_file(common.config_path);

    if (sub_name == "materials") {
      if (!mat_name.empty()) cfg["name"] = mat_name;
      if (mat_list) cfg["list"] = true;
    } else if (sub_name == "regimes") {
      if (!r_material.empty()) cfg["material"] = r_material;
      if (!cfg.contains("pulse")) cfg["pulse"] = json::object();
      merge_flag(cfg["pulse"], "F0", r_f0);
      merge_flag(cfg["pulse"], "lambda0_nm", r_lambda);
      merge_flag(cfg["pulse"], "hbar_omega0", r_hw0);
      merge_flag(cfg["pulse"], "beta", r_beta);
      if (!cfg["pulse"].contains("envelope")) {
        cfg["pulse"]["envelope"] = "monochromatic";
        cfg["pulse"]["cycles"] = 10.0;
      }
      if (r_m) cfg["band"] = {{"type", "ema"}, {"m", *r_m}};
    }

    OutputSink sink;
    sink.dir = common.out_dir;
    sink.config_hash = hex64(fnv1a(sub_name + ":" + cfg.dump()));
    const int threads = resolve_threads(common.threads);

    std::string summary;
    if (sub_name == "materials") summary = run_materials(cfg, sink);
    else if (sub_name == "regimes") summary = run_regimes(cfg, sink);
    else if (sub_name == "keldysh-scan") summary = run_keldysh_scan(cfg, sink, threads);
    else if (sub_name == "intraband") summary = run_intraband(cfg, sink);
    else if (sub_name == "hhg") summary = run_hhg(cfg, sink);
    else if (sub_name == "tdse") summary = run_tdse(cfg, sink, threads);
    else if (sub_name == "dephasing") summary = run_dephasing(cfg, sink, threads);
    else if (sub_name == "ladders") summary = run_ladders(cfg, sink);
    else if (sub_name == "fke") summary = run_fke(cfg, sink);
    else if (sub_name == "rabi") summary = run_rabi(cfg, sink);
    else if (sub_name == "area") summary = run_area(cfg, sink);
    else if (sub_name == "berry") summary = run_berry(cfg, sink);
    else if (sub_name == "charge") summary = run_charge(cfg, sink);
    else if (sub_name == "energy") summary = run_energy(cfg, sink);
    else throw ConfigError("unknown subcommand: " + sub_name);

    sink.commit();
    std::cout << summary << " [config " << sink.config_hash << "]\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
