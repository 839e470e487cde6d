#include "scenarios.hpp"

#include <cmath>

#include "config.hpp"

namespace qht::scenarios {

GeneratedInitial make_pulse(const PulseSpec& spec, const spectral::DiskDomain& domain) {
  domain.validate();
  if (!(spec.sigma > 0.0)) throw std::invalid_argument("make_pulse: sigma must be > 0");
  if (!(spec.center_r >= 0.0 && spec.center_r < domain.radius))
    throw std::invalid_argument("make_pulse: center_r must lie inside the domain");
  if (!std::isfinite(spec.amplitude))
    throw std::invalid_argument("make_pulse: amplitude must be finite");

  const double a = domain.radius;
  const double amplitude = spec.amplitude;
  const double center_r = spec.center_r;
  const double center_theta = spec.center_theta;
  const double two_sigma2 = 2.0 * spec.sigma * spec.sigma;
  const PulseKind kind = spec.kind;

  auto profile = [=](double r, double theta) {
    double d2;
    if (kind == PulseKind::gaussian_spot) {
      d2 = r * r + center_r * center_r -
           2.0 * r * center_r * std::cos(theta - center_theta);
    } else {
      const double d = r - center_r;
      d2 = d * d;
    }
    const double s = r / a;
    const double s4 = s * s * s * s;
    const double taper = 1.0 - s4 * s4;  // vanishes at the wall
    return amplitude * std::exp(-d2 / two_sigma2) * taper;
  };

  GeneratedInitial out;
  out.sigma_warning = spec.sigma > 0.5 * a;
  if (spec.excitation == Excitation::displacement) {
    out.initial.displacement = profile;
  } else {
    out.initial.velocity = profile;
  }
  return out;
}

namespace {

SimulationConfig corral_preset(double radius_m) {
  SimulationConfig config;
  config.domain.radius = radius_m;
  config.carrier = physics::HeatCarrier::electron(5e-3);
  config.potential_mode = PotentialMode::distortionless;
  config.equation = fdtd::Equation::envelope;
  config.pulse.amplitude = 1.0;
  config.pulse.center_r = 0.0;
  config.pulse.center_theta = 0.0;
  config.pulse.sigma = radius_m / 10.0;
  config.pulse.kind = PulseKind::gaussian_spot;
  config.pulse.excitation = Excitation::displacement;
  config.grid = PolarGrid(radius_m, 128, 256);
  config.max_azimuthal = 16;
  config.max_radial = 32;
  config.quad_points = 128;

  const double crossing_time = radius_m / config.carrier.velocity;
  config.total_time = 3.0 * crossing_time;
  config.snapshot_times.resize(12);
  for (int k = 0; k < 12; ++k)
    config.snapshot_times[k] = config.total_time * k / 11.0;

  config.solver = SolverChoice::both;
  config.cfl_safety = 0.9;
  return config;
}

}  // namespace

std::vector<SimulationConfig> paper_scenarios() {
  std::vector<SimulationConfig> configs;
  for (double radius_nm : {1.0, 5.0, 10.0, 70.0})
    configs.push_back(corral_preset(radius_nm * 1e-9));
  for (const SimulationConfig& config : configs) config.validate();
  return configs;
}

SimulationConfig scenario_by_name(const std::string& name) {
  const std::vector<SimulationConfig> configs = paper_scenarios();
  if (name == "fig1") return configs[0];
  if (name == "fig2") return configs[1];
  if (name == "fig3") return configs[2];
  if (name == "fig4") return configs[3];
  throw ConfigError("unknown scenario '" + name + "' (expected fig1..fig4)");
}

}  // namespace qht::scenarios
