#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "version.hpp"

namespace qht {

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

RunOutput simulate(const SimulationConfig& config) {
  config.validate();

  RunOutput out;
  out.config = config;

  const scenarios::GeneratedInitial pulse = scenarios::make_pulse(config.pulse, config.domain);
  out.pulse_localized = !pulse.sigma_warning;
  spectral::check_wall_compatibility(pulse.initial, config.domain);

  const physics::QhtParameters params = config.parameters();
  const bool want_fdtd = config.solver != SolverChoice::spectral;
  const bool want_spectral = config.solver != SolverChoice::fdtd;

  if (want_fdtd) {
    fdtd::FdtdProblem problem;
    problem.grid = config.grid;
    problem.equation = config.equation;
    problem.carrier = config.carrier;
    problem.params = params;
    problem.cfl_safety = config.cfl_safety;
    fdtd::RunResult result =
        fdtd::run(problem, pulse.initial, config.total_time, config.snapshot_times);
    out.dt = result.dt;
    out.steps = result.steps;
    out.recorded_times.reserve(result.snapshots.size());
    out.fdtd_fields.reserve(result.snapshots.size());
    for (fdtd::Snapshot& snap : result.snapshots) {
      out.recorded_times.push_back(snap.time);
      out.fdtd_fields.push_back(std::move(snap.field));
    }
  } else {
    out.recorded_times = config.snapshot_times;
  }

  if (want_spectral) {
    // The config's initial data describes the solved quantity. For the
    // damped temperature equation, T = exp(-t/2tau) u implies the envelope
    // starts with u_t(0) = T_t(0) + f/(2 tau); the modal expansion works on
    // the envelope's data.
    spectral::InitialCondition envelope_initial = pulse.initial;
    if (config.equation == fdtd::Equation::temperature) {
      const double half_rate = 1.0 / (2.0 * params.relaxation_time);
      const auto f = pulse.initial.displacement;
      const auto g = pulse.initial.velocity;
      envelope_initial.velocity = [f, g, half_rate](double r, double theta) {
        return (g ? g(r, theta) : 0.0) + half_rate * (f ? f(r, theta) : 0.0);
      };
    }
    const spectral::ModalCoefficients coeffs = spectral::expand_initial(
        envelope_initial, config.domain, config.carrier.velocity,
        config.max_azimuthal, config.max_radial, config.quad_points);
    out.quadrature_converged = coeffs.quadrature_converged;
    out.spectral_fields.reserve(out.recorded_times.size());
    for (double t : out.recorded_times) {
      ScalarField field = spectral::evaluate_on_grid(coeffs, config.grid, t);
      if (config.equation == fdtd::Equation::temperature)
        field = physics::envelope_to_temperature(field, t, params.relaxation_time);
      out.spectral_fields.push_back(std::move(field));
    }
  }

  return out;
}

ErrorNorms error_norms(const RunOutput& run, std::size_t snapshot_index) {
  if (run.fdtd_fields.empty() || run.spectral_fields.empty())
    throw std::invalid_argument("error_norms: run must include both solvers");
  if (snapshot_index >= run.recorded_times.size())
    throw std::invalid_argument("error_norms: snapshot index out of range");

  const ScalarField& fd = run.fdtd_fields[snapshot_index];
  const ScalarField& sp = run.spectral_fields[snapshot_index];
  const PolarGrid& grid = fd.grid;

  ErrorNorms norms;
  double weighted = 0.0, total_area = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double area = grid.cell_area(i);
    for (int j = 0; j < grid.n_theta; ++j) {
      const double diff = fd.at(i, j) - sp.at(i, j);
      norms.linf = std::max(norms.linf, std::fabs(diff));
      weighted += area * diff * diff;
      total_area += area;
    }
  }
  norms.l2 = std::sqrt(weighted / total_area);
  return norms;
}

std::string snapshot_file_name(const std::string& solver, std::size_t index,
                               std::size_t count) {
  int width = 3;
  for (std::size_t n = count; n > 1000; n /= 10) ++width;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%s_%0*zu.csv", solver.c_str(), width, index);
  return buffer;
}

std::string format_manifest(const RunOutput& run) {
  std::string out = format_config(run.config);
  auto line = [&out](const std::string& s) { out += s; out += '\n'; };

  const physics::QhtParameters params = run.config.parameters();
  const double dt_limit =
      fdtd::stable_dt(run.config.grid, run.config.carrier.velocity, 1.0);

  line("");
  line("[derived]");
  line("relaxation_time = " + format_double(params.relaxation_time) + " s");
  line("diffusivity = " + format_double(params.diffusivity) + " m^2/s");
  line("potential = " + format_double(params.potential) + " J");
  line("distortionless_potential = " +
       format_double(physics::distortionless_potential(run.config.carrier)) + " J");
  line("q = " + format_double(params.q) + " 1/m^2");
  line("mean_free_path = " + format_double(params.mean_free_path) + " m");
  line("dt = " + format_double(run.dt) + " s");
  line("cfl_number = " + format_double(run.dt > 0.0 ? run.dt / dt_limit : 0.0));
  line("steps = " + std::to_string(run.steps));
  line(std::string("quantity = ") +
       (run.config.equation == fdtd::Equation::temperature ? "temperature" : "envelope"));
  line(std::string("code_version = ") + kVersion);

  std::string times = "recorded_times =";
  for (std::size_t i = 0; i < run.recorded_times.size(); ++i) {
    times += (i == 0 ? " " : ", ");
    times += format_double(run.recorded_times[i]) + " s";
  }
  line(times);

  const std::size_t count = run.recorded_times.size();
  auto file_list = [count](const std::string& solver, std::size_t n) {
    std::string list = "files_" + solver + " =";
    for (std::size_t i = 0; i < n; ++i) {
      list += (i == 0 ? " " : ", ");
      list += snapshot_file_name(solver, i, count);
    }
    return list;
  };
  line(file_list("fdtd", run.fdtd_fields.size()));
  line(file_list("spectral", run.spectral_fields.size()));
  line(std::string("quadrature_converged = ") +
       (run.quadrature_converged ? "true" : "false"));
  line(std::string("pulse_localized = ") + (run.pulse_localized ? "true" : "false"));
  return out;
}

namespace {

void write_field_csv(const ScalarField& field, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file " + path.string());
  file << "r,theta,value\n";
  const PolarGrid& grid = field.grid;
  char buffer[128];
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g\n", grid.r(i),
                    grid.theta(j), field.at(i, j));
      file << buffer;
    }
  }
  if (!file) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_outputs(const RunOutput& run, const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + directory);

  const std::size_t count = run.recorded_times.size();
  for (std::size_t i = 0; i < run.fdtd_fields.size(); ++i)
    write_field_csv(run.fdtd_fields[i], dir / snapshot_file_name("fdtd", i, count));
  for (std::size_t i = 0; i < run.spectral_fields.size(); ++i)
    write_field_csv(run.spectral_fields[i], dir / snapshot_file_name("spectral", i, count));

  const fs::path manifest_path = dir / "manifest.conf";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) throw IoError("cannot open output file " + manifest_path.string());
  manifest << format_manifest(run);
  if (!manifest) throw IoError("failed writing " + manifest_path.string());
}

}  // namespace qht
