// Batch driver: runs simulations, perturbative evaluations, Compton
// self-checks, momentum tuning, SI count-rate estimates and parameter
// sweeps from a JSON config. Exit codes: 0 ok, 2 config error, 3 physics
// error.

#include "kdspin/analysis.hpp"
#include "kdspin/compton.hpp"
#include "kdspin/constants.hpp"
#include "kdspin/dirac.hpp"
#include "kdspin/errors.hpp"
#include "kdspin/evolution.hpp"
#include "kdspin/experiment_json.hpp"
#include "kdspin/field.hpp"
#include "kdspin/perturbation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::json;
using namespace kdspin;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string mode;
  double k_l = 0.0254;
  double xi = 4.74e-3;
  double xi_prime = 4.74e-3;
  std::optional<double> p_z;  // empty: tuned
  double q2 = 0.0;
  int truncation = 12;
  int steps_per_cycle = 128;
  double duration_cycles = 0.0;  // resolved from duration_fs when absent
  double ramp_cycles = 5.0;
  double sample_every_cycles = 16.0;
  std::string initial_spin = "se";
  std::string output_prefix = "run";
  int compton_samples = 100;
  std::uint64_t seed = 20260810;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  json experiment = json::object();
};

const std::set<std::string>& allowed_keys(const std::string& mode) {
  static const std::set<std::string> physics{
      "mode",          "k_l",
      "xi",            "xi_prime",
      "p_z",           "q2",
      "truncation",    "steps_per_cycle",
      "duration_cycles", "duration_fs",
      "ramp_cycles",   "sample_every_cycles",
      "initial_spin",  "output_prefix"};
  static const std::set<std::string> simulate = physics;
  static const std::set<std::string> perturbation{
      "mode", "k_l", "xi", "xi_prime", "p_z", "q2", "output_prefix"};
  static const std::set<std::string> compton{
      "mode", "k_l", "p_z", "samples", "seed", "output_prefix"};
  static const std::set<std::string> tune{"mode", "k_l", "output_prefix"};
  static const std::set<std::string> experiment{
      "mode",           "output_prefix",
      "peak_power_gw",  "pulse_duration_fs",
      "focus_diameter_nm", "photon_energy_kev",
      "beam1_chain",    "beam2_chain",
      "bunch_charge_fc", "bunch_duration_ps",
      "repetition_rate_mhz", "electron_kinetic_energy_kev"};
  static const std::set<std::string> sweep = [] {
    std::set<std::string> s = physics;
    s.insert("axis");
    return s;
  }();
  if (mode == "simulate") return simulate;
  if (mode == "perturbation") return perturbation;
  if (mode == "compton-check") return compton;
  if (mode == "tune") return tune;
  if (mode == "experiment") return experiment;
  if (mode == "sweep") return sweep;
  throw ConfigError("unknown mode '" + mode + "'");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  if (!j.contains("mode")) throw ConfigError("missing required field 'mode'");

  RunConfig cfg;
  cfg.mode = j.at("mode").get<std::string>();
  const auto& allowed = allowed_keys(cfg.mode);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("unknown field '" + key + "' for mode '" + cfg.mode +
                        "'");
  }

  auto get = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    return j.contains(key) ? j.at(key).get<T>() : fallback;
  };

  cfg.k_l = get("k_l", cfg.k_l);
  cfg.xi = get("xi", cfg.xi);
  cfg.xi_prime = get("xi_prime", cfg.xi);
  cfg.q2 = get("q2", cfg.q2);
  cfg.truncation = get("truncation", cfg.truncation);
  cfg.steps_per_cycle = get("steps_per_cycle", cfg.steps_per_cycle);
  cfg.ramp_cycles = get("ramp_cycles", cfg.ramp_cycles);
  cfg.sample_every_cycles = get("sample_every_cycles", cfg.sample_every_cycles);
  cfg.initial_spin = get("initial_spin", cfg.initial_spin);
  cfg.output_prefix = get("output_prefix", cfg.output_prefix);
  cfg.compton_samples = get("samples", cfg.compton_samples);
  cfg.seed = get("seed", cfg.seed);

  if (j.contains("p_z")) {
    const auto& pz = j.at("p_z");
    if (pz.is_string()) {
      if (pz.get<std::string>() != "tuned")
        throw ConfigError("p_z must be a number or the string \"tuned\"");
    } else {
      cfg.p_z = pz.get<double>();
    }
  }

  if (j.contains("duration_cycles") && j.contains("duration_fs"))
    throw ConfigError("give duration_cycles or duration_fs, not both");
  if (j.contains("duration_cycles"))
    cfg.duration_cycles = j.at("duration_cycles").get<double>();
  else {
    const double fs = get("duration_fs", 20.0);
    const double period = 2.0 * std::numbers::pi / cfg.k_l;
    cfg.duration_cycles = natural_time_from_fs(fs) / period;
  }

  if (cfg.mode == "sweep") {
    if (!j.contains("axis")) throw ConfigError("sweep requires 'axis'");
    const auto& axis = j.at("axis");
    for (const auto& [key, value] : axis.items()) {
      (void)value;
      if (key != "name" && key != "values")
        throw ConfigError("unknown field 'axis." + key + "'");
    }
    cfg.sweep_axis = axis.at("name").get<std::string>();
    if (cfg.sweep_axis != "xi" && cfg.sweep_axis != "q2")
      throw ConfigError("axis.name must be 'xi' or 'q2'");
    cfg.sweep_values = axis.at("values").get<std::vector<double>>();
    if (cfg.sweep_values.size() < 2)
      throw ConfigError("sweep needs at least 2 axis values");
  }

  if (cfg.mode == "experiment") {
    json ex = j;
    ex.erase("mode");
    if (ex.contains("output_prefix")) ex.erase("output_prefix");
    cfg.experiment = ex;
  }

  return cfg;
}

SpinState initial_spin_state(const std::string& name) {
  if (name == "se") return spin_southeast();
  if (name == "nw") return spin_northwest();
  if (name == "up") return spin_up;
  if (name == "down") return spin_down;
  throw ConfigError("initial_spin must be one of se, nw, up, down");
}

double resolve_pz(const RunConfig& cfg) {
  return cfg.p_z ? *cfg.p_z : tune_longitudinal_momentum(cfg.k_l);
}

struct SingleRun {
  SimulationResult result;
  double p_z;
  MomentumLadder ladder;
  LaserConfig laser;
};

SingleRun run_simulation(const RunConfig& cfg, const SpinState& initial) {
  SingleRun run;
  run.p_z = resolve_pz(cfg);
  run.ladder = standard_kinematics(cfg.k_l, run.p_z, cfg.truncation);
  run.ladder.p_i.y = cfg.q2;
  run.laser = standing_wave_config(cfg.k_l, cfg.xi, cfg.xi_prime,
                                   cfg.duration_cycles, cfg.ramp_cycles);
  PropagateOptions opts;
  opts.steps_per_cycle = cfg.steps_per_cycle;
  opts.sample_every_cycles = cfg.sample_every_cycles;
  const auto state = basis_state(run.ladder, 0, Branch::positive, initial);
  run.result = propagate(state, run.laser, run.ladder,
                         cfg.duration_cycles * run.laser.optical_period(), opts);
  return run;
}

// slope fit of 2 asin(sqrt(P_2_nw)) against the envelope-weighted time
double growth_rate_omega(const SimulationResult& result) {
  const SpinState& nw = spin_northwest();
  double sxx = 0.0, sxy = 0.0;
  for (const Sample& s : result.samples) {
    const double p = std::clamp(std::norm(inner(nw, s.c2)), 0.0, 1.0);
    const double y = 2.0 * std::asin(std::sqrt(p));
    sxx += s.t_effective * s.t_effective;
    sxy += s.t_effective * y;
  }
  if (sxx == 0.0) return 0.0;
  return sxy / sxx;
}

json summary_json(const RunConfig& cfg, const SingleRun& run) {
  const auto rows = channel_report(run.result);
  std::vector<double> ts, ps;
  ts.reserve(rows.size());
  ps.reserve(rows.size());
  double p2_max = 0.0, p0_min = 1.0, sum_dev_max = 0.0;
  double anti_max = 0.0, other_max = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ts.push_back(run.result.samples[i].t);
    ps.push_back(rows[i].p2_nw);
    p2_max = std::max(p2_max, rows[i].p2_nw);
    p0_min = std::min(p0_min, rows[i].p0_se);
    sum_dev_max =
        std::max(sum_dev_max, std::abs(rows[i].p2_nw + rows[i].p0_se - 1.0));
    anti_max =
        std::max(anti_max, run.result.samples[i].antiparticle_occupancy);
    other_max = std::max(other_max, run.result.samples[i].other_mode_occupancy);
  }

  json summary;
  summary["mode"] = cfg.mode;
  summary["k_l"] = cfg.k_l;
  summary["xi"] = cfg.xi;
  summary["xi_prime"] = cfg.xi_prime;
  summary["p_z"] = run.p_z;
  summary["truncation"] = cfg.truncation;
  summary["steps_per_cycle"] = cfg.steps_per_cycle;
  summary["duration_cycles"] = cfg.duration_cycles;
  summary["initial_spin"] = cfg.initial_spin;
  summary["max_norm_drift"] = run.result.max_norm_drift;
  summary["p2_nw_max"] = p2_max;
  summary["p0_se_min"] = p0_min;
  summary["channel_sum_deviation_max"] = sum_dev_max;
  summary["antiparticle_occupancy_max"] = anti_max;
  summary["other_mode_occupancy_max"] = other_max;
  summary["omega_short_time"] = growth_rate_omega(run.result);

  if (rows.size() >= 50) {
    const RabiFit fit = fit_rabi(ts, ps);
    summary["omega_fit"] = fit.omega;
    summary["omega_fit_phase"] = fit.phase;
    summary["omega_fit_r_squared"] = fit.r_squared;
    summary["omega_fit_acceptable"] = fit.acceptable;
    if (!fit.diagnostic.empty()) summary["omega_fit_diagnostic"] = fit.diagnostic;
  }
  return summary;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

int mode_simulate(const RunConfig& cfg, const std::filesystem::path& out) {
  const SingleRun run = run_simulation(cfg, initial_spin_state(cfg.initial_spin));
  const auto rows = channel_report(run.result);

  std::ofstream csv(out / (cfg.output_prefix + ".csv"));
  if (!csv) throw std::runtime_error("cannot write CSV output");
  write_channel_csv(csv, rows);

  write_text(out / (cfg.output_prefix + ".json"),
             summary_json(cfg, run).dump(2) + "\n");
  return 0;
}

int mode_perturbation(const RunConfig& cfg, const std::filesystem::path& out) {
  const double p_z = resolve_pz(cfg);
  const auto ladder = standard_kinematics(cfg.k_l, p_z);
  const auto laser =
      standing_wave_config(cfg.k_l, cfg.xi, cfg.xi_prime, 10.0, 5.0);
  const ScaledKinematics kin{cfg.k_l, cfg.q2, p_z - 1.0};

  const auto f =
      prefactors(ladder.momentum(0), ladder.momentum(1), cfg.k_l);
  const SpinMatrix2 contracted = contracted_spin_propagation(laser, kin);
  const SpinMatrix2 resonant =
      resonant_amplitude_20(1.0, 0.0, laser, ladder);

  auto matrix_json = [](const SpinMatrix2& m) {
    json a = json::array();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        a.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
    return a;
  };

  json summary;
  summary["mode"] = cfg.mode;
  summary["k_l"] = cfg.k_l;
  summary["p_z"] = p_z;
  summary["prefactors"] = {f.a, f.b, f.c, f.d};
  summary["contracted_spin_propagation"] = matrix_json(contracted);
  summary["resonant_amplitude_per_unit_time"] = matrix_json(resonant);
  summary["omega_prediction"] =
      2.0 * std::abs(project_tilted(resonant, Tilted::northwest,
                                    Tilted::southeast));
  summary["short_time_probability_20fs"] = short_time_probability(
      cfg.xi, cfg.xi_prime, cfg.k_l, natural_time_from_fs(20.0));
  write_text(out / (cfg.output_prefix + ".json"), summary.dump(2) + "\n");
  return 0;
}

int mode_compton_check(const RunConfig& cfg, const std::filesystem::path& out) {
  double max_rel = 0.0;
  for (int i = 0; i < cfg.compton_samples; ++i) {
    const auto kin = random_onshell_kinematics(cfg.seed + i);
    for (const SpinState& s : {spin_up, spin_down})
      for (const SpinState& sp : {spin_up, spin_down}) {
        const auto terms = ofpt_terms(kin, s, sp);
        const cplx sum = terms[0] + terms[1] + terms[2] + terms[3];
        const cplx cov = compton_tensor(kin, s, sp);
        const double scale = std::max(std::abs(cov), 1e-30);
        max_rel = std::max(max_rel, std::abs(sum - cov) / scale);
      }
  }

  const double p_z = cfg.p_z ? *cfg.p_z : tune_longitudinal_momentum(cfg.k_l);
  const ChannelTable table = channel_amplitudes(cfg.k_l, p_z);

  json summary;
  summary["mode"] = cfg.mode;
  summary["samples"] = cfg.compton_samples;
  summary["max_relative_residual"] = max_rel;
  summary["p_z"] = p_z;
  const char* spin_names[2] = {"se", "nw"};
  const char* hel_names[2] = {"L", "R"};
  json channels = json::object();
  for (int ini = 0; ini < 2; ++ini) {
    json per = json::object();
    const double total = table.total_weight(ini);
    for (int fin = 0; fin < 2; ++fin)
      for (int hel = 0; hel < 2; ++hel)
        per[std::string(spin_names[fin]) + "_" + hel_names[hel]] =
            table.weight(ini, fin, hel) / total;
    channels[spin_names[ini]] = per;
  }
  summary["channel_weights"] = channels;
  write_text(out / (cfg.output_prefix + ".json"), summary.dump(2) + "\n");
  return 0;
}

int mode_tune(const RunConfig& cfg, const std::filesystem::path& out) {
  const double p_z = tune_longitudinal_momentum(cfg.k_l);
  const ScaledKinematics kin{cfg.k_l, 0.0, p_z - 1.0};
  const FourVector unit_a{{0.0, 0.0, 0.0, 1.0}};
  const FourVector unit_ap{{0.0, 0.0, 1.0 / std::sqrt(2.0),
                            iu / std::sqrt(2.0)}};
  const SpinMatrix2 m = contracted_spin_propagation(unit_a, unit_ap, kin);

  json summary;
  summary["mode"] = cfg.mode;
  summary["k_l"] = cfg.k_l;
  summary["p_z"] = p_z;
  summary["p_z_offset"] = p_z - 1.0;
  summary["spin_preserving_weight"] =
      std::norm(project_tilted(m, Tilted::southeast, Tilted::southeast)) /
      (m.frobenius_norm() * m.frobenius_norm());
  write_text(out / (cfg.output_prefix + ".json"), summary.dump(2) + "\n");
  return 0;
}

int mode_experiment(const RunConfig& cfg, const std::filesystem::path& out) {
  const ExperimentConfig ex = [&] {
    try {
      return experiment_config_from_json(cfg.experiment);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  write_text(out / (cfg.output_prefix + ".json"),
             experiment_report_json(ex).dump(2) + "\n");
  return 0;
}

int mode_sweep(const RunConfig& cfg, const std::filesystem::path& out,
               int jobs) {
  struct Row {
    double value = 0.0;
    double omega = 0.0;
    double purity = 0.0;
    std::string status = "ok";
  };
  std::vector<Row> rows(cfg.sweep_values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.sweep_values.size()) return;
      Row& row = rows[i];
      row.value = cfg.sweep_values[i];
      try {
        RunConfig point = cfg;
        if (cfg.sweep_axis == "xi") {
          point.xi = row.value;
          point.xi_prime = row.value;
        } else {
          point.q2 = row.value;
        }
        const SingleRun run = run_simulation(point, spin_southeast());
        row.omega = growth_rate_omega(run.result);

        // spin purity of the diffracted mode at its strongest sample
        const SpinState& nw = spin_northwest();
        double best = -1.0, purity = 0.0;
        for (const Sample& s : run.result.samples) {
          const double total = s.c2.norm2();
          if (total > best) {
            best = total;
            purity = total > 0.0 ? std::norm(inner(nw, s.c2)) / total : 0.0;
          }
        }
        row.purity = purity;
      } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  const int nthreads = std::max(1, jobs);
  pool.reserve(nthreads);
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  bool any_ok = false;
  json table = json::array();
  for (const Row& row : rows) {
    table.push_back({{"value", row.value},
                     {"omega", row.omega},
                     {"purity", row.purity},
                     {"status", row.status}});
    if (row.status == "ok") any_ok = true;
  }
  json summary;
  summary["mode"] = cfg.mode;
  summary["axis"] = cfg.sweep_axis;
  summary["rows"] = table;
  write_text(out / (cfg.output_prefix + ".json"), summary.dump(2) + "\n");
  if (!any_ok) throw PhysicsError("sweep: all rows failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kdspin: spin-dependent two-photon Kapitza-Dirac scattering toolkit"};
  std::string config_path;
  std::string out_dir = ".";
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 0) jobs = 2;
  std::optional<int> steps_override, truncation_override;

  app.add_option("--config", config_path,
                 "JSON run configuration (see configs/ for samples).\n"
                 "Defaults: k_l=0.0254, xi=xi_prime=4.74e-3, p_z=\"tuned\",\n"
                 "truncation=12, steps_per_cycle=128, duration_fs=20,\n"
                 "ramp_cycles=5, sample_every_cycles=16, initial_spin=se")
      ->required();
  app.add_option("--out", out_dir, "output directory (default: .)");
  app.add_option("--jobs", jobs, "parallel workers for sweep rows");
  app.add_option("--steps-per-cycle", steps_override,
                 "override integrator steps per optical cycle");
  app.add_option("--truncation", truncation_override,
                 "override momentum ladder truncation N");

  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "config error: cannot open '" << config_path << "'\n";
      return 2;
    }
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }

    RunConfig cfg;
    try {
      cfg = parse_config(j);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    } catch (const json::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    if (steps_override) cfg.steps_per_cycle = *steps_override;
    if (truncation_override) cfg.truncation = *truncation_override;

    std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);

    if (cfg.mode == "simulate") return mode_simulate(cfg, out);
    if (cfg.mode == "perturbation") return mode_perturbation(cfg, out);
    if (cfg.mode == "compton-check") return mode_compton_check(cfg, out);
    if (cfg.mode == "tune") return mode_tune(cfg, out);
    if (cfg.mode == "experiment") return mode_experiment(cfg, out);
    if (cfg.mode == "sweep") return mode_sweep(cfg, out, jobs);
    std::cerr << "config error: unknown mode\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "physics error: " << e.what() << "\n";
    return 3;
  }
}
