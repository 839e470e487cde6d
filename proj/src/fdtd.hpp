#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "field.hpp"
#include "physics.hpp"
#include "spectral.hpp"

namespace qht::fdtd {

/// Raised when a step produces non-finite values.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(long step)
      : std::runtime_error("fdtd: field diverged at step " + std::to_string(step)),
        step_index(step) {}
  long step_index;
};

/// Which equation the solver advances:
///   temperature - damped wave equation for T with the potential term,
///   envelope    - transformed equation for u with the q u term,
///   undamped    - pure wave equation.
enum class Equation { temperature, envelope, undamped };

/// Everything fixed for the duration of one simulation.
struct FdtdProblem {
  PolarGrid grid;
  Equation equation = Equation::undamped;
  physics::HeatCarrier carrier;
  physics::QhtParameters params;
  double cfl_safety = 0.9;
};

/// Two consecutive time levels plus the precomputed kernel constants.
struct FdtdState {
  ScalarField prev;  // step_index - 1
  ScalarField curr;  // step_index
  long step_index = 0;
  double dt = 0.0;
  Equation equation = Equation::undamped;
  double wave_speed = 0.0;

  // Kernel constants: inv_v2_dt2 * (u+ - 2u + u-) + damping * (u+ - u-) =
  // lap(u) - potential_coeff * u, solved for u+.
  double inv_v2_dt2 = 0.0;
  double damping = 0.0;
  double potential_coeff = 0.0;

  // Per-ring stencil coefficients of the flux-form polar Laplacian.
  std::vector<double> coef_outer;      // (i+1) / ((i+1/2) dr^2)
  std::vector<double> coef_inner;      // i / ((i+1/2) dr^2)
  std::vector<double> coef_azimuthal;  // 1 / (r_i^2 dtheta^2)
};

/// CFL bound safety / (v sqrt(1/dr^2 + 1/(r_min dtheta)^2)) with
/// r_min = dr/2, the most restrictive node. Monotone decreasing in both
/// grid resolutions.
double stable_dt(const PolarGrid& grid, double wave_speed, double safety = 0.9);

/// Builds the two starting levels: u0 sampled from f, u1 from the
/// second-order Taylor start using f, g and the equation's initial
/// acceleration (with the same discrete Laplacian the stepper uses).
FdtdState initialize(const FdtdProblem& problem,
                     const spectral::InitialCondition& initial, double dt);

/// One leapfrog step. The damping term is centered at the current level
/// via (u+ - u-)/(2 dt) and folded into the u+ solve, so it never
/// restricts dt; the hyperbolic CFL bound governs alone.
void step(FdtdState& state);

struct Snapshot {
  double time = 0.0;
  ScalarField field;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  double dt = 0.0;
  long steps = 0;
};

/// Runs to total_time and emits one snapshot per requested time, taken at
/// the nearest step (the recorded time is the exact step time). dt is the
/// stability bound shrunk so the final step lands exactly on total_time.
RunResult run(const FdtdProblem& problem,
              const spectral::InitialCondition& initial, double total_time,
              std::span<const double> snapshot_times);

/// The leapfrog energy invariant of the two stored levels: half-step
/// kinetic term plus the Dirichlet and potential forms evaluated as
/// products of the levels. Conserved by the undamped scheme up to an
/// O(dr^2) wobble while waves are in contact with the wall; equals the
/// continuum energy to O(dr^2 + dt^2).
double discrete_energy(const FdtdState& state);

}  // namespace qht::fdtd
