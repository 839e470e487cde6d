#pragma once

#include "field.hpp"

namespace qht::physics {

// CODATA 2018 values, SI.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;     // m/s
inline constexpr double kElectronMass = 9.1093837015e-31; // kg
inline constexpr double kElectronVolt = 1.602176634e-19;  // J
inline constexpr double kElectronRestEnergyEv = 0.511e6;  // eV, rounded

// Published reference values for electron carriers at v = 5e-3 c, quoted in
// reports for comparison only; all computation derives from the carrier.
inline constexpr double kReferenceRelaxationTime = 160e-18;  // s
inline constexpr double kReferenceMeanFreePath = 0.1e-9;     // m

/// Mass and propagation speed of the heat carriers (electrons); every
/// derived transport parameter comes from these two numbers.
struct HeatCarrier {
  double mass = kElectronMass;  // kg
  double velocity = 0.0;        // m/s

  static HeatCarrier electron(double velocity_fraction_of_c) {
    return HeatCarrier{kElectronMass, velocity_fraction_of_c * kSpeedOfLight};
  }

  double velocity_fraction_of_c() const { return velocity / kSpeedOfLight; }

  void validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("HeatCarrier: mass must be > 0");
    if (!(velocity > 0.0 && velocity < kSpeedOfLight))
      throw std::invalid_argument("HeatCarrier: velocity must be in (0, c)");
  }

  bool operator==(const HeatCarrier&) const = default;
};

/// Derived transport quantities for one carrier configuration.
struct QhtParameters {
  double relaxation_time = 0.0;  // s
  double diffusivity = 0.0;      // m^2/s
  double potential = 0.0;        // J
  double q = 0.0;                // 1/m^2
  double mean_free_path = 0.0;   // m
};

/// tau = hbar / (m v^2).
double relaxation_time(const HeatCarrier& carrier);

/// D = hbar / m.
double diffusivity(const HeatCarrier& carrier);

/// v tau = hbar / (m v).
double mean_free_path(const HeatCarrier& carrier);

/// q = 2 V m / hbar^2 - (m v / (2 hbar))^2.
double q_parameter(double potential, const HeatCarrier& carrier);

/// The unique V with q = 0: V* = m v^2 / 8. Satisfies V* tau = hbar / 8.
double distortionless_potential(const HeatCarrier& carrier);

/// All derived parameters for a carrier at the given potential.
QhtParameters derive_parameters(const HeatCarrier& carrier, double potential);

/// T = exp(-t / (2 tau)) * u, pointwise.
ScalarField envelope_to_temperature(const ScalarField& u, double t, double tau);

}  // namespace qht::physics
