#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace qht {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Snapshots of one executed configuration, for either or both solvers.
/// recorded_times are the exact step times the snapshots were taken at.
struct RunOutput {
  SimulationConfig config;
  std::vector<double> recorded_times;
  std::vector<ScalarField> fdtd_fields;
  std::vector<ScalarField> spectral_fields;
  double dt = 0.0;  // 0 when the FDTD solver did not run
  long steps = 0;
  bool quadrature_converged = true;
  bool pulse_localized = true;
};

/// Runs the solver(s) selected by the config and collects snapshots.
RunOutput simulate(const SimulationConfig& config);

struct ErrorNorms {
  double linf = 0.0;  // max |fdtd - spectral| over the grid
  double l2 = 0.0;    // area-weighted RMS of the difference
};

/// FDTD-vs-spectral difference at one snapshot (requires solver = both).
ErrorNorms error_norms(const RunOutput& run, std::size_t snapshot_index);

/// The executed config plus a [derived] section (parameters, dt, CFL
/// number, recorded times, output files, code version). Re-parses to a
/// config equal to the executed one.
std::string format_manifest(const RunOutput& run);

/// One CSV per snapshot per solver ("r,theta,value" header, row-major
/// nodes, 17 significant digits) plus manifest.conf. Byte-identical for
/// identical configs.
void write_outputs(const RunOutput& run, const std::string& directory);

/// Snapshot file name for a solver ("fdtd"/"spectral") and index.
std::string snapshot_file_name(const std::string& solver, std::size_t index,
                               std::size_t count);

}  // namespace qht
