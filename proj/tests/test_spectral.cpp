#include "spectral.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "physics.hpp"

using namespace qht;
using namespace qht::spectral;

namespace {

constexpr double kRadius = 2.5e-9;
constexpr double kSpeed = 1.5e6;

ModalCoefficients make_empty_coeffs(double radius, double speed, int M, int N) {
  ModalCoefficients c;
  c.domain.radius = radius;
  c.wave_speed = speed;
  c.max_azimuthal = M;
  c.max_radial = N;
  c.a0.assign(N, 0.0);
  c.A0.assign(N, 0.0);
  const std::size_t mn = static_cast<std::size_t>(M) * N;
  c.a.assign(mn, 0.0);
  c.b.assign(mn, 0.0);
  c.A.assign(mn, 0.0);
  c.B.assign(mn, 0.0);
  c.roots.resize(static_cast<std::size_t>(M + 1) * N);
  for (int m = 0; m <= M; ++m)
    for (int n = 1; n <= N; ++n)
      c.roots[static_cast<std::size_t>(m) * N + (n - 1)] = specfun::bessel_zero(m, n);
  return c;
}

ModalCoefficients random_band_limited(double radius, double speed, int M, int N,
                                      unsigned seed, bool velocity_only = false) {
  ModalCoefficients c = make_empty_coeffs(radius, speed, M, N);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int n = 0; n < N; ++n) {
    if (!velocity_only) c.a0[n] = amp(rng);
    c.A0[n] = amp(rng);
  }
  for (std::size_t k = 0; k < c.a.size(); ++k) {
    if (!velocity_only) {
      c.a[k] = amp(rng);
      c.b[k] = amp(rng);
    }
    c.A[k] = amp(rng);
    c.B[k] = amp(rng);
  }
  if (velocity_only) {
    // A pure-velocity field: zero displacement everywhere at t = 0.
    std::fill(c.a0.begin(), c.a0.end(), 0.0);
    std::fill(c.a.begin(), c.a.end(), 0.0);
    std::fill(c.b.begin(), c.b.end(), 0.0);
  }
  return c;
}

}  // namespace

TEST_CASE("expanding a single eigenmode recovers a unit coefficient") {
  const double j01 = specfun::bessel_zero(0, 1);
  InitialCondition ic;
  ic.displacement = [j01](double r, double) {
    return specfun::bessel_j(0, j01 * r / kRadius);
  };

  const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 4, 6, 64);
  CHECK(c.quadrature_converged);
  CHECK(std::fabs(c.a0[0] - 1.0) < 1e-10);
  for (int n = 1; n < 6; ++n) CHECK(std::fabs(c.a0[n]) < 1e-10);
  for (double x : c.a) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.b) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.A) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.B) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.A0) CHECK(std::fabs(x) < 1e-10);
}

TEST_CASE("expanding zero data gives zero coefficients") {
  InitialCondition ic;  // both functions empty = zero
  const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 3, 4, 64);
  for (double x : c.a0) CHECK(x == 0.0);
  for (double x : c.A0) CHECK(x == 0.0);
  for (double x : c.a) CHECK(x == 0.0);
  for (double x : c.A) CHECK(x == 0.0);
}

TEST_CASE("velocity data lands in the sine amplitudes with the 1/(lambda v) factor") {
  const double j01 = specfun::bessel_zero(0, 1);
  InitialCondition ic;
  ic.velocity = [j01](double r, double) {
    return specfun::bessel_j(0, j01 * r / kRadius);
  };

  const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 2, 4, 64);
  const double expected = kRadius / (j01 * kSpeed);
  CHECK(std::fabs(c.A0[0] - expected) / expected < 1e-10);
  for (int n = 1; n < 4; ++n) CHECK(std::fabs(c.A0[n]) < 1e-10 * expected);
  for (double x : c.a0) CHECK(std::fabs(x) < 1e-16);
}

TEST_CASE("theta-independent data produces no azimuthal modes") {
  InitialCondition ic;
  ic.displacement = [](double r, double) {
    const double s = r / kRadius;
    return std::exp(-s * s * 8.0) * (1.0 - s * s);
  };
  const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 6, 8, 64);
  for (double x : c.a) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.b) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.A) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.B) CHECK(std::fabs(x) < 1e-10);

  // Rotating the evaluation angle leaves the solution unchanged.
  for (double t : {0.0, 3e-15})
    for (double r : {0.2 * kRadius, 0.8 * kRadius})
      CHECK(std::fabs(evaluate_series(c, r, 0.4, t) -
                      evaluate_series(c, r, 0.4 + 1.2345, t)) < 1e-12);
}

TEST_CASE("data violating the Dirichlet wall is rejected") {
  InitialCondition bad;
  bad.displacement = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(expand_initial(bad, {kRadius}, kSpeed, 1, 2, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_wall_compatibility(bad, {kRadius}), std::invalid_argument);

  InitialCondition good;
  good.velocity = [](double, double) { return 1.0; };  // only f is constrained
  CHECK_NOTHROW(check_wall_compatibility(good, {kRadius}));
}

TEST_CASE("single-mode series values at characteristic times") {
  ModalCoefficients c = make_empty_coeffs(kRadius, kSpeed, 2, 3);
  c.a0[0] = 1.0;
  const double j01 = c.root(0, 1);

  const double half_period = oracle::kPi * kRadius / (j01 * kSpeed);
  for (double r : {0.0, 0.3 * kRadius, 0.77 * kRadius}) {
    const double expected = specfun::bessel_j(0, j01 * r / kRadius);
    CHECK(std::fabs(evaluate_series(c, r, 1.234, 0.0) - expected) < 1e-14);

    // Half a temporal period flips the sign.
    CHECK(std::fabs(evaluate_series(c, r, 0.5, half_period) + expected) < 1e-12);
  }

  // The wall value vanishes for any theta and t.
  for (double t : {0.0, 1e-15, 3.7e-14})
    for (double theta : {0.0, 1.0, 4.5})
      CHECK(std::fabs(evaluate_series(c, kRadius, theta, t)) < 1e-12);
}

TEST_CASE("series evaluation rejects bad arguments") {
  ModalCoefficients c = make_empty_coeffs(kRadius, kSpeed, 1, 2);
  CHECK_THROWS_AS(evaluate_series(c, -0.1 * kRadius, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_series(c, 1.1 * kRadius, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_series(c, 0.0, 0.0, -1e-18), std::invalid_argument);
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const ModalCoefficients c = random_band_limited(kRadius, kSpeed, 3, 4, 11);
  const PolarGrid grid(kRadius, 8, 12);
  for (double t : {0.0, 2.3e-16, 8e-15}) {
    const ScalarField field = evaluate_on_grid(c, grid, t);
    for (int i = 0; i < grid.n_r; ++i)
      for (int j = 0; j < grid.n_theta; ++j)
        CHECK(std::fabs(field.at(i, j) -
                        evaluate_series(c, grid.r(i), grid.theta(j), t)) < 1e-12);
  }
}

TEST_CASE("grid evaluation is linear in the coefficients") {
  const ModalCoefficients c1 = random_band_limited(kRadius, kSpeed, 2, 3, 21);
  const ModalCoefficients c2 = random_band_limited(kRadius, kSpeed, 2, 3, 22);
  ModalCoefficients sum = c1;
  for (std::size_t k = 0; k < sum.a0.size(); ++k) {
    sum.a0[k] += c2.a0[k];
    sum.A0[k] += c2.A0[k];
  }
  for (std::size_t k = 0; k < sum.a.size(); ++k) {
    sum.a[k] += c2.a[k];
    sum.b[k] += c2.b[k];
    sum.A[k] += c2.A[k];
    sum.B[k] += c2.B[k];
  }

  const PolarGrid grid(kRadius, 8, 8);
  const double t = 4.2e-16;
  const ScalarField f1 = evaluate_on_grid(c1, grid, t);
  const ScalarField f2 = evaluate_on_grid(c2, grid, t);
  const ScalarField fsum = evaluate_on_grid(sum, grid, t);
  for (std::size_t k = 0; k < fsum.values.size(); ++k)
    CHECK(std::fabs(fsum.values[k] - (f1.values[k] + f2.values[k])) < 1e-12);
}

TEST_CASE("grid evaluation rejects mismatched radius") {
  const ModalCoefficients c = random_band_limited(kRadius, kSpeed, 1, 2, 5);
  const PolarGrid grid(2.0 * kRadius, 8, 8);
  CHECK_THROWS_AS(evaluate_on_grid(c, grid, 0.0), std::invalid_argument);
}

TEST_CASE("zero coefficients evaluate to a zero field") {
  const ModalCoefficients c = make_empty_coeffs(kRadius, kSpeed, 2, 2);
  const ScalarField field = evaluate_on_grid(c, PolarGrid(kRadius, 8, 8), 1e-15);
  for (double v : field.values) CHECK(v == 0.0);
  CHECK(modal_energy(c, 0.0) == 0.0);
}

TEST_CASE("round trip reproduces band-limited data at random points") {
  const ModalCoefficients truth = random_band_limited(kRadius, kSpeed, 3, 4, 33);
  InitialCondition ic;
  ic.displacement = [&truth](double r, double theta) {
    return evaluate_series(truth, r, theta, 0.0);
  };

  const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 3, 4, 64);
  CHECK(c.quadrature_converged);

  std::mt19937 rng(44);
  std::uniform_real_distribution<double> rs(0.0, kRadius * 0.999);
  std::uniform_real_distribution<double> ths(0.0, kTwoPi);
  double worst = 0.0;
  for (int p = 0; p < 200; ++p) {
    const double r = rs(rng);
    const double theta = ths(rng);
    worst = std::max(worst, std::fabs(evaluate_series(c, r, theta, 0.0) -
                                      ic.displacement(r, theta)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("truncation error decreases as max_radial doubles") {
  InitialCondition ic;
  ic.displacement = [](double r, double theta) {
    // Smooth but not band-limited: off-center Gaussian spot.
    const double cx = 0.25 * kRadius;
    const double d2 = r * r + cx * cx - 2.0 * r * cx * std::cos(theta);
    const double s = r / kRadius;
    const double s8 = std::pow(s, 8);
    return std::exp(-d2 / (2.0 * std::pow(0.15 * kRadius, 2))) * (1.0 - s8);
  };

  std::mt19937 rng(55);
  std::uniform_real_distribution<double> rs(0.0, kRadius * 0.999);
  std::uniform_real_distribution<double> ths(0.0, kTwoPi);
  std::vector<std::pair<double, double>> points(200);
  for (auto& p : points) p = {rs(rng), ths(rng)};

  double previous = 1e300;
  for (int N : {8, 16, 32}) {
    const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 12, N, 128);
    double err = 0.0;
    for (const auto& [r, theta] : points)
      err = std::max(err, std::fabs(evaluate_series(c, r, theta, 0.0) -
                                    ic.displacement(r, theta)));
    CAPTURE(N);
    CHECK(err <= previous * 1.10);  // monotone within 10%
    previous = err;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("time derivative at t = 0 matches the velocity data") {
  const ModalCoefficients truth =
      random_band_limited(kRadius, kSpeed, 3, 4, 66, /*velocity_only=*/true);

  // g is the series' exact time derivative at 0.
  auto g = [&truth](double r, double theta) {
    double sum = 0.0;
    for (int n = 1; n <= truth.max_radial; ++n) {
      const double lambda = truth.scaled_root(0, n);
      sum += truth.A0[n - 1] * lambda * truth.wave_speed *
             specfun::bessel_j(0, lambda * r);
    }
    for (int m = 1; m <= truth.max_azimuthal; ++m) {
      for (int n = 1; n <= truth.max_radial; ++n) {
        const std::size_t idx =
            static_cast<std::size_t>(m - 1) * truth.max_radial + (n - 1);
        const double lambda = truth.scaled_root(m, n);
        sum += lambda * truth.wave_speed * specfun::bessel_j(m, lambda * r) *
               (truth.A[idx] * std::cos(m * theta) + truth.B[idx] * std::sin(m * theta));
      }
    }
    return sum;
  };

  InitialCondition ic;
  ic.velocity = g;
  const ModalCoefficients c = expand_initial(ic, {kRadius}, kSpeed, 3, 4, 64);

  // Centered difference over {0, 2 dt} around t = dt; the displacement part
  // is zero so the derivative at dt matches g to O(dt^2).
  double g_max = 0.0;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> rs(0.0, kRadius * 0.999);
  std::uniform_real_distribution<double> ths(0.0, kTwoPi);
  const double omega_max = c.scaled_root(3, 4) * kSpeed;
  const double dt = 1e-3 / omega_max;
  double worst = 0.0;
  for (int p = 0; p < 100; ++p) {
    const double r = rs(rng);
    const double theta = ths(rng);
    const double fd = (evaluate_series(c, r, theta, 2.0 * dt) -
                       evaluate_series(c, r, theta, 0.0)) /
                      (2.0 * dt);
    worst = std::max(worst, std::fabs(fd - g(r, theta)));
    g_max = std::max(g_max, std::fabs(g(r, theta)));
  }
  CHECK(worst <= std::max(1e-6, 1e-4 * g_max));
}

TEST_CASE("modal energy is conserved and scales quadratically") {
  ModalCoefficients c = make_empty_coeffs(kRadius, kSpeed, 2, 3);
  c.a0[0] = 1.0;

  // Closed form for the single (0,1) mode: pi j01^2 J1(j01)^2, radius-free.
  const double expected = 4.89664432695891;
  const double at_zero = modal_energy(c, 0.0);
  CHECK(std::fabs(at_zero - expected) / expected < 1e-12);

  const double tau = physics::relaxation_time(physics::HeatCarrier::electron(5e-3));
  for (double t : {tau, 10.0 * tau}) {
    CHECK(std::fabs(modal_energy(c, t) - at_zero) / at_zero < 1e-12);
  }

  // Doubling one amplitude quadruples its contribution.
  c.a0[0] = 2.0;
  CHECK(std::fabs(modal_energy(c, 0.0) - 4.0 * at_zero) / at_zero < 1e-12);

  // Mixed multi-mode field stays conserved too.
  const ModalCoefficients mixed = random_band_limited(kRadius, kSpeed, 3, 4, 99);
  const double e0 = modal_energy(mixed, 0.0);
  for (double t : {0.3 * tau, 2.0 * tau, 10.0 * tau})
    CHECK(std::fabs(modal_energy(mixed, t) - e0) / e0 < 1e-12);
}

TEST_CASE("quadrature warning flag trips on under-resolved data") {
  InitialCondition oscillatory;
  oscillatory.displacement = [](double r, double) {
    const double s = r / kRadius;
    return std::cos(60.0 * oracle::kPi * s) * (1.0 - s * s);
  };
  const ModalCoefficients bad = expand_initial(oscillatory, {kRadius}, kSpeed, 0, 4, 32);
  CHECK_FALSE(bad.quadrature_converged);

  InitialCondition smooth;
  smooth.displacement = [](double r, double) {
    const double s = r / kRadius;
    return std::exp(-8.0 * s * s) * (1.0 - s * s);
  };
  const ModalCoefficients good = expand_initial(smooth, {kRadius}, kSpeed, 0, 4, 64);
  CHECK(good.quadrature_converged);
}

TEST_CASE("expand_initial rejects bad arguments") {
  InitialCondition ic;
  CHECK_THROWS_AS(expand_initial(ic, {0.0}, kSpeed, 1, 1, 64), std::invalid_argument);
  CHECK_THROWS_AS(expand_initial(ic, {kRadius}, 0.0, 1, 1, 64), std::invalid_argument);
  CHECK_THROWS_AS(expand_initial(ic, {kRadius}, kSpeed, -1, 1, 64), std::invalid_argument);
  CHECK_THROWS_AS(expand_initial(ic, {kRadius}, kSpeed, 1, 0, 64), std::invalid_argument);
  CHECK_THROWS_AS(expand_initial(ic, {kRadius}, kSpeed, 1, 1, 16), std::invalid_argument);
}
