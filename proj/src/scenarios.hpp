#pragma once

#include <string>
#include <vector>

#include "spectral.hpp"

namespace qht {
struct SimulationConfig;
}

namespace qht::scenarios {

enum class PulseKind { gaussian_spot, gaussian_ring };

/// Which initial-data slot the pulse fills: displacement sets f (g = 0),
/// velocity sets g (f = 0).
enum class Excitation { displacement, velocity };

/// Localized thermal excitation deposited by the laser pulse.
struct PulseSpec {
  double amplitude = 1.0;    // field units
  double center_r = 0.0;     // m
  double center_theta = 0.0; // rad
  double sigma = 0.0;        // m, > 0
  PulseKind kind = PulseKind::gaussian_spot;
  Excitation excitation = Excitation::displacement;

  bool operator==(const PulseSpec&) const = default;
};

struct GeneratedInitial {
  spectral::InitialCondition initial;
  /// Set when sigma > a/2: the pulse is not localized inside the corral.
  bool sigma_warning = false;
};

/// Gaussian profile of the requested kind multiplied by the boundary taper
/// 1 - (r/a)^8, so the field vanishes at the wall.
GeneratedInitial make_pulse(const PulseSpec& spec, const spectral::DiskDomain& domain);

/// The four ready-to-run corral configurations: a 1 nm pulse preview plus
/// the 5, 10 and 70 nm thermal-wave runs. Electron carrier at v = 5e-3 c,
/// distortionless potential, centered Gaussian pulse with sigma = a/10,
/// three boundary-crossing times, 12 snapshots.
std::vector<SimulationConfig> paper_scenarios();

/// Preset lookup by CLI name: fig1, fig2, fig3, fig4.
SimulationConfig scenario_by_name(const std::string& name);

}  // namespace qht::scenarios
