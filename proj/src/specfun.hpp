#pragma once

#include <stdexcept>
#include <vector>

namespace qht::specfun {

/// Raised when an iterative routine exhausts its budget without converging.
/// For zero finding this signals an evaluation-accuracy bug, not bad input.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bessel function of the first kind J_m(x), integer order m >= 0, x >= 0.
/// Absolute error <= 1e-12 for x <= 200 (power series below the split
/// point x = 12, normalized downward recurrence above it).
double bessel_j(int order, double x);

/// dJ_m/dx via the identity J_m'(x) = (J_{m-1}(x) - J_{m+1}(x)) / 2,
/// with J_{-1} = -J_1.
double bessel_j_prime(int order, double x);

/// n-th positive zero of J_m, n >= 1, to 1e-12 absolute accuracy.
/// Brackets by marching in steps below the asymptotic zero spacing (~pi),
/// then refines by bisection plus a Newton polish.
double bessel_zero(int order, int n);

/// Memoized table of Bessel zeros, built once in the constructor and
/// immutable afterwards, so concurrent readers need no synchronization.
class BesselZeroTable {
 public:
  BesselZeroTable(int max_order, int zeros_per_order);

  /// j_{m,n} for m in [0, max_order], n in [1, zeros_per_order].
  double zero(int order, int n) const;

  int max_order() const { return max_order_; }
  int zeros_per_order() const { return zeros_per_order_; }

 private:
  int max_order_;
  int zeros_per_order_;
  std::vector<double> zeros_;  // (max_order+1) x zeros_per_order, row-major
};

/// Nodes and weights of a quadrature rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;    // strictly inside (-1, 1), ascending
  std::vector<double> weights;  // positive, sum to 2
};

/// k-point Gauss-Legendre rule, 1 <= k <= 512. Integrates polynomials of
/// degree <= 2k-1 to within 1e-12 relative error.
QuadratureRule gauss_legendre(int point_count);

}  // namespace qht::specfun
