#include "qht/qht.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>

#include "config.hpp"
#include "runner.hpp"
#include "scenarios.hpp"
#include "version.hpp"

struct qht_config {
  qht::SimulationConfig config;
};

struct qht_run {
  qht::RunOutput output;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs the body and translates exceptions into status codes.
template <typename Fn>
qht_status guarded(Fn&& body) {
  try {
    return body();
  } catch (const qht::ConfigError& e) {
    set_error(e.what());
    return QHT_ERROR_PARSE;
  } catch (const qht::IoError& e) {
    set_error(e.what());
    return QHT_ERROR_IO;
  } catch (const qht::fdtd::DivergenceError& e) {
    set_error(e.what());
    return QHT_ERROR_DIVERGED;
  } catch (const qht::specfun::ConvergenceError& e) {
    set_error(e.what());
    return QHT_ERROR_NO_CONVERGENCE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return QHT_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return QHT_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return QHT_ERROR_INTERNAL;
  }
}

qht_status require_argument(bool ok, const char* message) {
  if (!ok) {
    set_error(message);
    return QHT_ERROR_INVALID_ARGUMENT;
  }
  return QHT_OK;
}

qht_status copy_string(const std::string& text, char* buffer, size_t capacity,
                       size_t* required) {
  if (required) *required = text.size() + 1;
  if (!buffer || capacity == 0) return QHT_OK;
  const size_t n = std::min(capacity - 1, text.size());
  std::memcpy(buffer, text.data(), n);
  buffer[n] = '\0';
  return QHT_OK;
}

}  // namespace

extern "C" {

const char* qht_status_name(qht_status status) {
  switch (status) {
    case QHT_OK: return "ok";
    case QHT_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case QHT_ERROR_PARSE: return "parse error";
    case QHT_ERROR_DIVERGED: return "solver diverged";
    case QHT_ERROR_IO: return "io error";
    case QHT_ERROR_NO_CONVERGENCE: return "no convergence";
    case QHT_ERROR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qht_last_error(void) { return g_last_error.c_str(); }

const char* qht_version(void) { return qht::kVersion; }

double qht_hbar(void) { return qht::physics::kHbar; }
double qht_speed_of_light(void) { return qht::physics::kSpeedOfLight; }
double qht_electron_mass(void) { return qht::physics::kElectronMass; }
double qht_electron_volt(void) { return qht::physics::kElectronVolt; }
double qht_reference_relaxation_time(void) { return qht::physics::kReferenceRelaxationTime; }
double qht_reference_mean_free_path(void) { return qht::physics::kReferenceMeanFreePath; }

qht_status qht_carrier_electron(double velocity_fraction_of_c, qht_carrier* out) {
  if (qht_status s = require_argument(out != nullptr, "out is null")) return s;
  return guarded([&] {
    const qht::physics::HeatCarrier carrier =
        qht::physics::HeatCarrier::electron(velocity_fraction_of_c);
    carrier.validate();
    out->mass_kg = carrier.mass;
    out->velocity_m_per_s = carrier.velocity;
    return QHT_OK;
  });
}

qht_status qht_carrier_params_compute(const qht_carrier* carrier,
                                      double potential_j,
                                      qht_carrier_params* out) {
  if (qht_status s = require_argument(carrier && out, "carrier or out is null"))
    return s;
  return guarded([&] {
    const qht::physics::HeatCarrier c{carrier->mass_kg, carrier->velocity_m_per_s};
    const qht::physics::QhtParameters p =
        qht::physics::derive_parameters(c, potential_j);
    out->relaxation_time_s = p.relaxation_time;
    out->diffusivity_m2_per_s = p.diffusivity;
    out->mean_free_path_m = p.mean_free_path;
    out->distortionless_potential_j = qht::physics::distortionless_potential(c);
    out->potential_j = p.potential;
    out->q_per_m2 = p.q;
    return QHT_OK;
  });
}

qht_status qht_parse_quantity(const char* text, const char* dimension,
                              double* out) {
  if (qht_status s = require_argument(text && dimension && out,
                                      "text, dimension or out is null"))
    return s;
  return guarded([&] {
    using qht::units::Dimension;
    const std::string dim(dimension);
    Dimension d;
    if (dim == "length") d = Dimension::length;
    else if (dim == "time") d = Dimension::time;
    else if (dim == "speed") d = Dimension::speed;
    else if (dim == "energy") d = Dimension::energy;
    else if (dim == "mass") d = Dimension::mass;
    else if (dim == "none") d = Dimension::dimensionless;
    else {
      set_error("unknown dimension '" + dim + "'");
      return QHT_ERROR_INVALID_ARGUMENT;
    }
    *out = qht::units::parse_quantity(text, d);
    return QHT_OK;
  });
}

qht_status qht_config_parse_file(const char* path, qht_config** out) {
  if (qht_status s = require_argument(path && out, "path or out is null")) return s;
  return guarded([&] {
    auto handle = std::make_unique<qht_config>();
    handle->config = qht::parse_config_file(path);
    *out = handle.release();
    return QHT_OK;
  });
}

qht_status qht_config_parse_string(const char* text, qht_config** out) {
  if (qht_status s = require_argument(text && out, "text or out is null")) return s;
  return guarded([&] {
    auto handle = std::make_unique<qht_config>();
    handle->config = qht::parse_config(text);
    *out = handle.release();
    return QHT_OK;
  });
}

qht_status qht_config_scenario(const char* name, qht_config** out) {
  if (qht_status s = require_argument(name && out, "name or out is null")) return s;
  return guarded([&] {
    auto handle = std::make_unique<qht_config>();
    handle->config = qht::scenarios::scenario_by_name(name);
    *out = handle.release();
    return QHT_OK;
  });
}

qht_status qht_config_clone_with_grid(const qht_config* config, int n_r,
                                      int n_theta, qht_config** out) {
  if (qht_status s = require_argument(config && out, "config or out is null"))
    return s;
  return guarded([&] {
    auto handle = std::make_unique<qht_config>(*config);
    handle->config.grid = qht::PolarGrid(handle->config.domain.radius, n_r, n_theta);
    handle->config.validate();
    *out = handle.release();
    return QHT_OK;
  });
}

qht_status qht_config_set_solver_both(qht_config* config) {
  if (qht_status s = require_argument(config != nullptr, "config is null")) return s;
  return guarded([&] {
    config->config.solver = qht::SolverChoice::both;
    config->config.validate();
    return QHT_OK;
  });
}

void qht_config_free(qht_config* config) { delete config; }

qht_status qht_config_describe(const qht_config* config, char* buffer,
                               size_t capacity, size_t* required) {
  if (qht_status s = require_argument(config != nullptr, "config is null")) return s;
  return guarded([&] {
    return copy_string(qht::format_config(config->config), buffer, capacity, required);
  });
}

qht_status qht_config_carrier(const qht_config* config, qht_carrier* out) {
  if (qht_status s = require_argument(config && out, "config or out is null"))
    return s;
  out->mass_kg = config->config.carrier.mass;
  out->velocity_m_per_s = config->config.carrier.velocity;
  return QHT_OK;
}

qht_status qht_config_potential(const qht_config* config, double* out_j) {
  if (qht_status s = require_argument(config && out_j, "config or out is null"))
    return s;
  return guarded([&] {
    *out_j = config->config.potential();
    return QHT_OK;
  });
}

qht_status qht_config_radius(const qht_config* config, double* out_m) {
  if (qht_status s = require_argument(config && out_m, "config or out is null"))
    return s;
  *out_m = config->config.domain.radius;
  return QHT_OK;
}

qht_status qht_config_grid(const qht_config* config, int* out_n_r, int* out_n_theta) {
  if (qht_status s = require_argument(config && out_n_r && out_n_theta,
                                      "config or out is null"))
    return s;
  *out_n_r = config->config.grid.n_r;
  *out_n_theta = config->config.grid.n_theta;
  return QHT_OK;
}

qht_status qht_config_total_time(const qht_config* config, double* out_s) {
  if (qht_status s = require_argument(config && out_s, "config or out is null"))
    return s;
  *out_s = config->config.total_time;
  return QHT_OK;
}

qht_status qht_config_snapshot_count(const qht_config* config, size_t* out) {
  if (qht_status s = require_argument(config && out, "config or out is null"))
    return s;
  *out = config->config.snapshot_times.size();
  return QHT_OK;
}

qht_status qht_config_output_dir(const qht_config* config, char* buffer,
                                 size_t capacity, size_t* required) {
  if (qht_status s = require_argument(config != nullptr, "config is null")) return s;
  return copy_string(config->config.output_dir, buffer, capacity, required);
}

qht_status qht_run_simulate(const qht_config* config, qht_run** out) {
  if (qht_status s = require_argument(config && out, "config or out is null"))
    return s;
  return guarded([&] {
    auto handle = std::make_unique<qht_run>();
    handle->output = qht::simulate(config->config);
    *out = handle.release();
    return QHT_OK;
  });
}

void qht_run_free(qht_run* run) { delete run; }

size_t qht_run_snapshot_count(const qht_run* run) {
  return run ? run->output.recorded_times.size() : 0;
}

qht_status qht_run_snapshot_time(const qht_run* run, size_t index, double* out_s) {
  if (qht_status s = require_argument(run && out_s, "run or out is null")) return s;
  if (qht_status s = require_argument(index < run->output.recorded_times.size(),
                                      "snapshot index out of range"))
    return s;
  *out_s = run->output.recorded_times[index];
  return QHT_OK;
}

int qht_run_has_solver(const qht_run* run, qht_solver solver) {
  if (!run) return 0;
  return solver == QHT_SOLVER_FDTD ? !run->output.fdtd_fields.empty()
                                   : !run->output.spectral_fields.empty();
}

qht_status qht_run_field(const qht_run* run, qht_solver solver, size_t index,
                         double* values, size_t capacity) {
  if (qht_status s = require_argument(run && values, "run or values is null"))
    return s;
  const auto& fields = (solver == QHT_SOLVER_FDTD) ? run->output.fdtd_fields
                                                   : run->output.spectral_fields;
  if (qht_status s = require_argument(index < fields.size(),
                                      "snapshot index out of range for solver"))
    return s;
  const std::vector<double>& data = fields[index].values;
  if (qht_status s = require_argument(capacity >= data.size(),
                                      "values buffer too small"))
    return s;
  std::memcpy(values, data.data(), data.size() * sizeof(double));
  return QHT_OK;
}

qht_status qht_run_time_step(const qht_run* run, double* out_s) {
  if (qht_status s = require_argument(run && out_s, "run or out is null")) return s;
  *out_s = run->output.dt;
  return QHT_OK;
}

qht_status qht_run_step_count(const qht_run* run, long* out) {
  if (qht_status s = require_argument(run && out, "run or out is null")) return s;
  *out = run->output.steps;
  return QHT_OK;
}

qht_status qht_run_error_norms(const qht_run* run, size_t index,
                               double* out_linf, double* out_l2) {
  if (qht_status s = require_argument(run && out_linf && out_l2,
                                      "run or out is null"))
    return s;
  return guarded([&] {
    const qht::ErrorNorms norms = qht::error_norms(run->output, index);
    *out_linf = norms.linf;
    *out_l2 = norms.l2;
    return QHT_OK;
  });
}

qht_status qht_run_write(const qht_run* run, const char* directory) {
  if (qht_status s = require_argument(run && directory, "run or directory is null"))
    return s;
  return guarded([&] {
    qht::write_outputs(run->output, directory);
    return QHT_OK;
  });
}

}  // extern "C"
