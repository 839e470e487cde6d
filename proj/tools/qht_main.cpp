// Command-line front end for the qht library. Talks to the solver core
// exclusively through the C API in qht/qht.h.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qht/qht.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitDiverged = 2;

int exit_code_for(qht_status status) {
  return status == QHT_ERROR_DIVERGED ? kExitDiverged : kExitConfigError;
}

int fail(qht_status status, const std::string& context) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", context.c_str(), qht_last_error(),
               qht_status_name(status));
  return exit_code_for(status);
}

struct ConfigDeleter {
  void operator()(qht_config* p) const { qht_config_free(p); }
};
struct RunDeleter {
  void operator()(qht_run* p) const { qht_run_free(p); }
};
using ConfigHandle = std::unique_ptr<qht_config, ConfigDeleter>;
using RunHandle = std::unique_ptr<qht_run, RunDeleter>;

std::string config_output_dir(const qht_config* config) {
  size_t required = 0;
  qht_config_output_dir(config, nullptr, 0, &required);
  std::string dir(required, '\0');
  qht_config_output_dir(config, dir.data(), dir.size(), nullptr);
  dir.resize(required > 0 ? required - 1 : 0);
  return dir;
}

// Precedence: --output flag, [output] in the config, QHT_OUTPUT_DIR, ./qht-output.
std::string resolve_output_dir(const std::string& flag, const qht_config* config,
                               const std::string& fallback_leaf) {
  if (!flag.empty()) return flag;
  if (config) {
    const std::string from_config = config_output_dir(config);
    if (!from_config.empty()) return from_config;
  }
  if (const char* env = std::getenv("QHT_OUTPUT_DIR"); env && *env) {
    return fallback_leaf.empty() ? std::string(env)
                                 : std::string(env) + "/" + fallback_leaf;
  }
  return fallback_leaf.empty() ? std::string("qht-output")
                               : "qht-output/" + fallback_leaf;
}

int simulate_and_write(const qht_config* config, const std::string& directory) {
  qht_run* raw_run = nullptr;
  if (qht_status s = qht_run_simulate(config, &raw_run)) return fail(s, "simulate");
  RunHandle run(raw_run);

  if (qht_status s = qht_run_write(run.get(), directory.c_str()))
    return fail(s, "write outputs");

  double dt = 0.0;
  long steps = 0;
  qht_run_time_step(run.get(), &dt);
  qht_run_step_count(run.get(), &steps);
  const size_t count = qht_run_snapshot_count(run.get());
  std::printf("wrote %zu snapshot(s) to %s\n", count, directory.c_str());
  if (qht_run_has_solver(run.get(), QHT_SOLVER_FDTD))
    std::printf("fdtd: %ld steps, dt = %.6g s\n", steps, dt);
  if (qht_run_has_solver(run.get(), QHT_SOLVER_SPECTRAL))
    std::printf("spectral: %zu modal snapshot(s)\n", count);
  return kExitOk;
}

int run_command(const std::string& path, const std::string& output_flag) {
  qht_config* raw = nullptr;
  if (qht_status s = qht_config_parse_file(path.c_str(), &raw))
    return fail(s, "parse " + path);
  ConfigHandle config(raw);
  return simulate_and_write(config.get(), resolve_output_dir(output_flag, config.get(), ""));
}

int scenario_command(const std::string& name, const std::string& output_flag) {
  qht_config* raw = nullptr;
  if (qht_status s = qht_config_scenario(name.c_str(), &raw))
    return fail(s, "scenario " + name);
  ConfigHandle config(raw);

  double radius = 0.0;
  qht_config_radius(config.get(), &radius);
  std::printf("scenario %s: corral radius %.6g nm\n", name.c_str(), radius * 1e9);
  return simulate_and_write(config.get(), resolve_output_dir(output_flag, config.get(), name));
}

int params_command(const std::string& mass_text, const std::string& velocity_text,
                   const std::string& potential_text) {
  qht_carrier carrier{};
  if (mass_text == "electron") {
    carrier.mass_kg = qht_electron_mass();
  } else if (qht_status s = qht_parse_quantity(mass_text.c_str(), "mass", &carrier.mass_kg)) {
    return fail(s, "parse --mass");
  }
  if (qht_status s = qht_parse_quantity(velocity_text.c_str(), "speed",
                                        &carrier.velocity_m_per_s))
    return fail(s, "parse --velocity");

  qht_carrier_params params{};
  if (qht_status s = qht_carrier_params_compute(&carrier, 0.0, &params))
    return fail(s, "compute parameters");

  double potential = params.distortionless_potential_j;
  if (!potential_text.empty()) {
    if (qht_status s = qht_parse_quantity(potential_text.c_str(), "energy", &potential))
      return fail(s, "parse --potential");
  }
  if (qht_status s = qht_carrier_params_compute(&carrier, potential, &params))
    return fail(s, "compute parameters");

  const double ev = qht_electron_volt();
  const double tau_as = params.relaxation_time_s * 1e18;
  const double reference_tau_as = qht_reference_relaxation_time() * 1e18;
  const double tau_factor = qht_reference_relaxation_time() / params.relaxation_time_s;
  const double mfp_nm = params.mean_free_path_m * 1e9;
  const double reference_mfp_nm = qht_reference_mean_free_path() * 1e9;
  const double mfp_factor = qht_reference_mean_free_path() / params.mean_free_path_m;

  std::printf("carrier: mass = %.10g kg, velocity = %.10g m/s (%.6g c)\n",
              carrier.mass_kg, carrier.velocity_m_per_s,
              carrier.velocity_m_per_s / qht_speed_of_light());
  std::printf("relaxation time          tau = %.6g s (%.4g as)\n",
              params.relaxation_time_s, tau_as);
  std::printf("  published reference: %.4g as -- %s (factor %.3g from computed)\n",
              reference_tau_as,
              (tau_factor > 1.5 || tau_factor < 0.67) ? "DISCREPANCY" : "consistent",
              tau_factor);
  std::printf("diffusivity                D = %.6g m^2/s\n", params.diffusivity_m2_per_s);
  std::printf("mean free path        v tau = %.6g m (%.4g nm)\n",
              params.mean_free_path_m, mfp_nm);
  std::printf("  published reference: %.4g nm -- %s (factor %.3g from computed)\n",
              reference_mfp_nm,
              (mfp_factor < 2.0 && mfp_factor > 0.5) ? "within factor 2" : "DISCREPANCY",
              mfp_factor);
  std::printf("distortionless potential  V* = %.6g J (%.4f eV)\n",
              params.distortionless_potential_j,
              params.distortionless_potential_j / ev);
  std::printf("potential used             V = %.6g J (%.4f eV)\n", params.potential_j,
              params.potential_j / ev);
  std::printf("wave parameter             q = %.6g 1/m^2\n", params.q_per_m2);
  return kExitOk;
}

int compare_command(const std::string& path, const std::string& output_flag) {
  qht_config* raw = nullptr;
  if (qht_status s = qht_config_parse_file(path.c_str(), &raw))
    return fail(s, "parse " + path);
  ConfigHandle config(raw);
  if (qht_status s = qht_config_set_solver_both(config.get()))
    return fail(s, "enable both solvers");

  int n_r = 0, n_theta = 0;
  qht_config_grid(config.get(), &n_r, &n_theta);

  // Finest level is the configured grid; coarser levels halve both counts.
  std::vector<std::pair<int, int>> levels;
  for (int divide = 4; divide >= 1; divide /= 2) {
    if (n_r / divide >= 8 && n_theta / divide >= 8 && (n_theta / divide) % 2 == 0)
      levels.push_back({n_r / divide, n_theta / divide});
  }
  if (levels.size() < 2) {
    std::fprintf(stderr, "error: grid too coarse to refine (need n_r >= 16)\n");
    return kExitConfigError;
  }

  std::string report;
  char line[256];
  std::vector<double> final_linf;
  for (const auto& [nr, nth] : levels) {
    qht_config* raw_level = nullptr;
    if (qht_status s = qht_config_clone_with_grid(config.get(), nr, nth, &raw_level))
      return fail(s, "refine grid");
    ConfigHandle level_config(raw_level);

    qht_run* raw_run = nullptr;
    if (qht_status s = qht_run_simulate(level_config.get(), &raw_run))
      return fail(s, "simulate");
    RunHandle run(raw_run);

    std::snprintf(line, sizeof(line), "grid %dx%d\n", nr, nth);
    report += line;
    const size_t count = qht_run_snapshot_count(run.get());
    double linf = 0.0, l2 = 0.0;
    for (size_t i = 0; i < count; ++i) {
      double t = 0.0;
      qht_run_snapshot_time(run.get(), i, &t);
      if (qht_status s = qht_run_error_norms(run.get(), i, &linf, &l2))
        return fail(s, "error norms");
      std::snprintf(line, sizeof(line),
                    "  t = %.9e s: Linf = %.6e, L2 = %.6e\n", t, linf, l2);
      report += line;
    }
    final_linf.push_back(linf);
  }

  report += "observed convergence order (final snapshot, Linf):\n";
  for (size_t k = 1; k < final_linf.size(); ++k) {
    const double order = std::log2(final_linf[k - 1] / final_linf[k]);
    std::snprintf(line, sizeof(line), "  level %zu -> %zu: %.3f\n", k - 1, k, order);
    report += line;
  }

  std::fputs(report.c_str(), stdout);

  const std::string directory = resolve_output_dir(output_flag, config.get(), "");
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  const std::string report_path = directory + "/convergence.txt";
  std::ofstream out(report_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", report_path.c_str());
    return kExitConfigError;
  }
  out << report;
  std::printf("wrote %s\n", report_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal-wave simulation on circular quantum corrals"};
  app.require_subcommand(1);

  std::string config_path, output_dir, scenario_name;
  std::string mass_text = "electron", velocity_text, potential_text;
  bool electron_flag = false;

  CLI::App* cmd_run = app.add_subcommand("run", "run the solvers from a config file");
  cmd_run->add_option("config", config_path, "config file")->required();
  cmd_run->add_option("--output", output_dir, "output directory");

  CLI::App* cmd_scenario =
      app.add_subcommand("scenario", "run a preset corral scenario (fig1..fig4)");
  cmd_scenario->add_option("name", scenario_name, "scenario name")->required();
  cmd_scenario->add_option("--output", output_dir, "output directory");

  CLI::App* cmd_params =
      app.add_subcommand("params", "print derived carrier parameters");
  cmd_params->add_flag("--electron", electron_flag, "use the electron mass (default)");
  cmd_params->add_option("--mass", mass_text, "carrier mass, e.g. '9.1e-31 kg' or '1 me'");
  cmd_params->add_option("--velocity", velocity_text, "carrier speed, e.g. '5e-3c'")
      ->required();
  cmd_params->add_option("--potential", potential_text,
                         "potential for the q report (default: distortionless)");

  CLI::App* cmd_compare = app.add_subcommand(
      "compare", "run both solvers at three grid levels and report error norms");
  cmd_compare->add_option("config", config_path, "config file")->required();
  cmd_compare->add_option("--output", output_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (cmd_run->parsed()) return run_command(config_path, output_dir);
  if (cmd_scenario->parsed()) return scenario_command(scenario_name, output_dir);
  if (cmd_params->parsed()) return params_command(mass_text, velocity_text, potential_text);
  if (cmd_compare->parsed()) return compare_command(config_path, output_dir);
  return kExitConfigError;
}
