#pragma once

#include <functional>
#include <vector>

#include "field.hpp"
#include "specfun.hpp"

namespace qht::spectral {

/// Disk of radius a with a hard (Dirichlet, u = 0) wall at r = a.
struct DiskDomain {
  double radius = 0.0;  // m

  void validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("DiskDomain: radius must be > 0");
  }

  bool operator==(const DiskDomain&) const = default;
};

/// Initial field f(r, theta) and initial time derivative g(r, theta).
/// f must vanish at r = a to be compatible with the Dirichlet wall.
struct InitialCondition {
  std::function<double(double r, double theta)> displacement;  // f
  std::function<double(double r, double theta)> velocity;      // g
};

/// Enforces |f(a, theta)| <= 1e-9 at 64 sampled angles; throws
/// std::invalid_argument on data incompatible with the wall.
void check_wall_compatibility(const InitialCondition& initial,
                              const DiskDomain& domain);

/// Truncated eigenmode expansion of a wave field on the disk. Mode (m, n)
/// has radial profile J_m(lambda_mn r) with lambda_mn = j_{m,n} / a, so
/// every mode vanishes at the wall. Amplitudes a*/b* multiply cos(omega t)
/// (set by the initial displacement), A*/B* multiply sin(omega t) (set by
/// the initial velocity), with omega = lambda_mn * v throughout.
struct ModalCoefficients {
  DiskDomain domain;
  double wave_speed = 0.0;  // m/s
  int max_azimuthal = 0;    // M
  int max_radial = 0;       // N

  std::vector<double> a0;      // [N]
  std::vector<double> A0;      // [N]
  std::vector<double> a, b;    // [M][N], row-major (m-1)*N + (n-1)
  std::vector<double> A, B;    // [M][N]
  std::vector<double> roots;   // j_{m,n}, [(M+1)][N], row-major m*N + (n-1)

  /// False when the coefficients changed by more than 1e-8 between the
  /// requested quadrature resolution and its doubling.
  bool quadrature_converged = true;

  double root(int m, int n) const {
    return roots[static_cast<std::size_t>(m) * max_radial + (n - 1)];
  }
  double scaled_root(int m, int n) const { return root(m, n) / domain.radius; }
};

/// Projects initial data onto the disk eigenmodes. Radial integrals use a
/// Gauss-Legendre rule mapped to [0, a] (the weight r is absorbed into the
/// integrand), angular integrals a uniform rule with 2x quad_points samples.
/// Velocity projections are divided by lambda_mn * v so that the series'
/// time derivative at t = 0 reproduces g.
ModalCoefficients expand_initial(const InitialCondition& initial,
                                 const DiskDomain& domain, double wave_speed,
                                 int max_azimuthal, int max_radial,
                                 int quad_points = 128);

/// Truncated series value u(r, theta, t).
double evaluate_series(const ModalCoefficients& coeffs, double r, double theta,
                       double t);

/// Series evaluated at every grid node; pointwise equal to evaluate_series
/// within 1e-12 (the sums are factored per ring for speed).
ScalarField evaluate_on_grid(const ModalCoefficients& coeffs,
                             const PolarGrid& grid, double t);

/// E(t) = integral of (1/v^2)(du/dt)^2 + |grad u|^2 over the disk, in
/// closed form from the modal amplitudes. Constant in t by construction.
double modal_energy(const ModalCoefficients& coeffs, double t);

}  // namespace qht::spectral
