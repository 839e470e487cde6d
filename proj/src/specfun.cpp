#include "specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qht::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Series/recurrence split point. Below it the alternating power series
// needs < ~40 terms and its largest partial term stays small enough that
// cancellation keeps the absolute error below 1e-12.
constexpr double kSeriesSplit = 12.0;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Power series sum_k (-1)^k (x/2)^(m+2k) / (k! (m+k)!), accumulated in
// long double to absorb the cancellation among the leading terms.
double bessel_j_series(int m, double x) {
  const long double half = 0.5L * static_cast<long double>(x);
  long double term = 1.0L;
  for (int k = 1; k <= m; ++k) term *= half / k;
  if (term == 0.0L) return 0.0;  // (x/2)^m underflowed; |J_m| is below 1e-300

  long double sum = term;
  const long double neg_quarter_x2 = -half * half;
  for (int k = 1; k <= 256; ++k) {
    term *= neg_quarter_x2 / (static_cast<long double>(k) * (m + k));
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-18) break;
  }
  return static_cast<double>(sum);
}

// Normalized downward recurrence (Miller's algorithm). The trial sequence
// is anchored by the identity J_0(x) + 2 sum_{k>=1} J_{2k}(x) = 1.
double bessel_j_recurrence(int m, double x) {
  const double top = std::max(static_cast<double>(m), x);
  int start = static_cast<int>(top + 15.0 * std::cbrt(top)) + 20;
  if (start % 2 != 0) ++start;

  double above = 0.0;    // J_{k+1} trial value
  double here = 1e-30;   // J_k trial value, seeded at k = start
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k >= 0; --k) {
    const double below = (2.0 * (k + 1) / x) * here - above;
    above = here;
    here = below;  // trial value for J_k
    if (k % 2 == 0) norm += 2.0 * here;
    if (k == m) result = here;
    if (std::fabs(here) > 1e250) {
      here *= 1e-250;
      above *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  norm -= here;  // J_0 was added twice
  return result / norm;
}

}  // namespace

double bessel_j(int order, double x) {
  require(order >= 0, "bessel_j: order must be >= 0");
  require(std::isfinite(x), "bessel_j: x must be finite");
  require(x >= 0.0, "bessel_j: x must be >= 0");

  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= kSeriesSplit) return bessel_j_series(order, x);
  return bessel_j_recurrence(order, x);
}

double bessel_j_prime(int order, double x) {
  if (order == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

namespace {

// Refine a sign-change bracket [lo, hi] of J_m: bisection down to a narrow
// interval, then Newton steps that are rejected if they leave the bracket.
double refine_zero(int m, double lo, double hi) {
  double f_lo = bessel_j(m, lo);
  for (int it = 0; it < 40 && hi - lo > 1e-4; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = bessel_j(m, mid);
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 12; ++it) {
    const double f = bessel_j(m, z);
    const double fp = bessel_j_prime(m, z);
    if (fp == 0.0) break;
    const double step = f / fp;
    const double next = z - step;
    if (next <= lo || next >= hi) {
      // Newton overshot the bracket; halve it and retry.
      const double mid = 0.5 * (lo + hi);
      if ((bessel_j(m, lo) < 0.0) == (bessel_j(m, mid) < 0.0))
        lo = mid;
      else
        hi = mid;
      z = 0.5 * (lo + hi);
      continue;
    }
    z = next;
    if (std::fabs(step) < 1e-14 * z) break;
  }
  return z;
}

}  // namespace

double bessel_zero(int order, int n) {
  require(order >= 0, "bessel_zero: order must be >= 0");
  require(n >= 1, "bessel_zero: zero index must be >= 1");

  // March from just above the previous zero (J_m > 0 on (0, j_{m,1})).
  // Consecutive zeros are separated by at least ~3.1, so a step of 1
  // cannot jump across two sign changes.
  double x = (order == 0) ? 0.5 : static_cast<double>(order);
  double f = bessel_j(order, x);
  int found = 0;
  const double step = 1.0;
  for (int budget = 0; budget < 100000; ++budget) {
    const double x_next = x + step;
    const double f_next = bessel_j(order, x_next);
    if ((f < 0.0) != (f_next < 0.0)) {
      ++found;
      if (found == n) return refine_zero(order, x, x_next);
    }
    x = x_next;
    f = f_next;
  }
  throw ConvergenceError("bessel_zero: failed to bracket zero " +
                         std::to_string(n) + " of J_" + std::to_string(order));
}

BesselZeroTable::BesselZeroTable(int max_order, int zeros_per_order)
    : max_order_(max_order), zeros_per_order_(zeros_per_order) {
  require(max_order >= 0, "BesselZeroTable: max_order must be >= 0");
  require(zeros_per_order >= 1, "BesselZeroTable: zeros_per_order must be >= 1");
  zeros_.resize(static_cast<size_t>(max_order + 1) * zeros_per_order);
  for (int m = 0; m <= max_order; ++m)
    for (int n = 1; n <= zeros_per_order; ++n)
      zeros_[static_cast<size_t>(m) * zeros_per_order + (n - 1)] =
          bessel_zero(m, n);
}

double BesselZeroTable::zero(int order, int n) const {
  require(order >= 0 && order <= max_order_, "BesselZeroTable: order out of range");
  require(n >= 1 && n <= zeros_per_order_, "BesselZeroTable: index out of range");
  return zeros_[static_cast<size_t>(order) * zeros_per_order_ + (n - 1)];
}

QuadratureRule gauss_legendre(int point_count) {
  require(point_count >= 1 && point_count <= 512,
          "gauss_legendre: point count must be in [1, 512]");

  const int k = point_count;
  QuadratureRule rule;
  rule.nodes.assign(k, 0.0);
  rule.weights.assign(k, 0.0);

  // Newton iteration on P_k from the Chebyshev-like initial guess; each
  // root gives its mirror image for free.
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < k; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = k * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[k - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[k - 1 - i] = rule.weights[i];
  }
  if (k % 2 == 1) rule.nodes[half - 1] = 0.0;  // exact symmetry for odd k
  return rule;
}

}  // namespace qht::specfun
