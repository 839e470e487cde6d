#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fdtd.hpp"
#include "field.hpp"
#include "physics.hpp"
#include "scenarios.hpp"
#include "spectral.hpp"

namespace qht {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PotentialMode { zero, distortionless, explicit_value };
enum class SolverChoice { spectral, fdtd, both };

/// Full description of one run. Built by parse_config or the scenario
/// presets; format_config emits a document that parses back to an equal
/// config.
struct SimulationConfig {
  spectral::DiskDomain domain;
  physics::HeatCarrier carrier;
  PotentialMode potential_mode = PotentialMode::distortionless;
  double explicit_potential = 0.0;  // J, used when mode == explicit_value
  fdtd::Equation equation = fdtd::Equation::envelope;
  scenarios::PulseSpec pulse;
  PolarGrid grid;
  int max_azimuthal = 16;  // M
  int max_radial = 32;     // N
  int quad_points = 128;
  double total_time = 0.0;              // s
  std::vector<double> snapshot_times;   // s, sorted, within [0, total_time]
  SolverChoice solver = SolverChoice::both;
  double cfl_safety = 0.9;
  std::string output_dir;

  /// The potential V in joules the mode resolves to.
  double potential() const;

  /// Derived parameters at the resolved potential. In distortionless mode
  /// q is set to exactly zero (the defining property of the mode) instead
  /// of re-evaluating the difference of two equal terms.
  physics::QhtParameters parameters() const;

  void validate() const;  // throws ConfigError naming the offending field

  bool operator==(const SimulationConfig&) const = default;
};

/// Parses the line-based `key = value` document with `[section]` headers.
/// Unknown sections or keys are errors; dimensioned values carry a unit
/// suffix (nm, m / as, fs, ps, s / eV, J / c, m/s / me, kg).
SimulationConfig parse_config(const std::string& text);
SimulationConfig parse_config_file(const std::string& path);

/// Canonical serialization: every field explicit, SI units, 17 significant
/// digits. parse_config(format_config(c)) == c.
std::string format_config(const SimulationConfig& config);

namespace units {

enum class Dimension { length, time, speed, energy, mass, dimensionless };

/// Parses "<number> [suffix]" with the suffix table of the dimension.
/// Dimensioned values require a suffix; dimensionless values reject one.
double parse_quantity(const std::string& text, Dimension dimension);

}  // namespace units

}  // namespace qht
