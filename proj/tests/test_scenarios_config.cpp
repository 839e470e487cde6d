#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "doctest.h"
#include "runner.hpp"
#include "scenarios.hpp"

using namespace qht;
using namespace qht::scenarios;

namespace {

constexpr double kRadius = 5e-9;

std::string minimal_config_text() {
  return R"([domain]
radius = 5 nm

[carrier]
velocity = 5e-3 c

[initial]
sigma = 0.5 nm

[grid]
n_r = 16
n_theta = 32

[time]
total = 1 fs
snapshots = 3
)";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("zero-amplitude pulse generates the zero field") {
  PulseSpec spec;
  spec.amplitude = 0.0;
  spec.sigma = kRadius / 10.0;
  const GeneratedInitial gen = make_pulse(spec, {kRadius});
  for (double r : {0.0, 0.4 * kRadius, 0.97 * kRadius})
    for (double theta : {0.0, 2.1})
      CHECK(gen.initial.displacement(r, theta) == 0.0);
  CHECK_FALSE(gen.initial.velocity);  // displacement excitation: g = 0
}

TEST_CASE("centered spot is theta independent and spectrally azimuthal-free") {
  PulseSpec spec;
  spec.sigma = kRadius / 10.0;
  const GeneratedInitial gen = make_pulse(spec, {kRadius});
  for (double r : {0.1 * kRadius, 0.5 * kRadius})
    CHECK(gen.initial.displacement(r, 0.3) ==
          doctest::Approx(gen.initial.displacement(r, 4.0)).epsilon(1e-15));

  const spectral::ModalCoefficients c = spectral::expand_initial(
      gen.initial, {kRadius}, 1.5e6, 4, 6, 64);
  for (double x : c.a) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.b) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.A) CHECK(std::fabs(x) < 1e-10);
  for (double x : c.B) CHECK(std::fabs(x) < 1e-10);
}

TEST_CASE("offset spot peaks at the spot center on the grid") {
  PulseSpec spec;
  spec.center_r = kRadius / 2.0;
  spec.center_theta = 1.1;
  spec.sigma = kRadius / 12.0;
  const GeneratedInitial gen = make_pulse(spec, {kRadius});

  const PolarGrid grid(kRadius, 64, 128);
  double best = -1.0;
  int best_i = -1, best_j = -1;
  for (int i = 0; i < grid.n_r; ++i)
    for (int j = 0; j < grid.n_theta; ++j) {
      const double value = gen.initial.displacement(grid.r(i), grid.theta(j));
      if (value > best) {
        best = value;
        best_i = i;
        best_j = j;
      }
    }
  CHECK(std::fabs(grid.r(best_i) - spec.center_r) <= grid.dr());
  const double dth = std::remainder(grid.theta(best_j) - spec.center_theta, kTwoPi);
  CHECK(std::fabs(dth) <= grid.dtheta());
}

TEST_CASE("pulses satisfy the Dirichlet compatibility invariant") {
  for (PulseKind kind : {PulseKind::gaussian_spot, PulseKind::gaussian_ring}) {
    PulseSpec spec;
    spec.kind = kind;
    spec.center_r = kRadius / 3.0;
    spec.sigma = kRadius / 4.0;  // wide: taper must do the work at the wall
    const GeneratedInitial gen = make_pulse(spec, {kRadius});
    for (int k = 0; k < 64; ++k)
      CHECK(std::fabs(gen.initial.displacement(kRadius, k * kTwoPi / 64.0)) < 1e-9);
  }
}

TEST_CASE("pulse mass scales as amplitude times sigma squared") {
  auto mass_of = [](double amplitude, double sigma) {
    PulseSpec spec;
    spec.amplitude = amplitude;
    spec.sigma = sigma;
    const GeneratedInitial gen = make_pulse(spec, {kRadius});
    const PolarGrid grid(kRadius, 256, 64);
    double mass = 0.0;
    for (int i = 0; i < grid.n_r; ++i)
      for (int j = 0; j < grid.n_theta; ++j)
        mass += grid.cell_area(i) * gen.initial.displacement(grid.r(i), grid.theta(j));
    return mass;
  };

  const double base = mass_of(1.0, kRadius / 10.0);
  CHECK(mass_of(2.0, kRadius / 10.0) == doctest::Approx(2.0 * base).epsilon(1e-12));
  const double quarter = mass_of(1.0, kRadius / 20.0);
  CHECK(std::fabs(base / quarter - 4.0) < 0.2);  // sigma^2 scaling within 5%
}

TEST_CASE("velocity excitation fills g instead of f") {
  PulseSpec spec;
  spec.sigma = kRadius / 10.0;
  spec.excitation = Excitation::velocity;
  const GeneratedInitial gen = make_pulse(spec, {kRadius});
  CHECK_FALSE(gen.initial.displacement);
  CHECK(gen.initial.velocity(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oversized sigma raises the localization warning") {
  PulseSpec spec;
  spec.sigma = 0.6 * kRadius;
  CHECK(make_pulse(spec, {kRadius}).sigma_warning);
  spec.sigma = 0.4 * kRadius;
  CHECK_FALSE(make_pulse(spec, {kRadius}).sigma_warning);
}

TEST_CASE("make_pulse rejects invalid specs") {
  PulseSpec spec;
  spec.sigma = 0.0;
  CHECK_THROWS_AS(make_pulse(spec, {kRadius}), std::invalid_argument);
  spec.sigma = kRadius / 10.0;
  spec.center_r = kRadius;
  CHECK_THROWS_AS(make_pulse(spec, {kRadius}), std::invalid_argument);
}

TEST_CASE("the four preset scenarios reproduce the published geometry") {
  const std::vector<SimulationConfig> configs = paper_scenarios();
  REQUIRE(configs.size() == 4);

  const double radii_nm[] = {1.0, 5.0, 10.0, 70.0};
  for (int k = 0; k < 4; ++k) {
    const SimulationConfig& config = configs[k];
    CHECK(config.domain.radius == doctest::Approx(radii_nm[k] * 1e-9).epsilon(1e-15));
    CHECK(config.carrier.velocity_fraction_of_c() == doctest::Approx(5e-3).epsilon(1e-15));
    CHECK(config.carrier.mass == physics::kElectronMass);
    CHECK(config.potential_mode == PotentialMode::distortionless);
    CHECK(config.pulse.sigma == doctest::Approx(config.domain.radius / 10.0));
    CHECK(config.pulse.center_r == 0.0);
    CHECK(config.snapshot_times.size() == 12);
    CHECK(config.total_time ==
          doctest::Approx(3.0 * config.domain.radius / config.carrier.velocity));
    CHECK_NOTHROW(config.validate());
    // Distortionless mode: the transformed equation loses its q term exactly.
    CHECK(config.parameters().q == 0.0);
  }

  CHECK(scenario_by_name("fig1") == configs[0]);
  CHECK(scenario_by_name("fig4") == configs[3]);
  CHECK_THROWS_AS(scenario_by_name("fig5"), ConfigError);
}

TEST_CASE("config parsing applies units and defaults") {
  const SimulationConfig config = parse_config(minimal_config_text());
  CHECK(config.domain.radius == doctest::Approx(5e-9).epsilon(1e-15));
  CHECK(config.carrier.velocity == doctest::Approx(5e-3 * 2.99792458e8).epsilon(1e-15));
  CHECK(config.carrier.mass == physics::kElectronMass);
  CHECK(config.potential_mode == PotentialMode::distortionless);
  CHECK(config.equation == fdtd::Equation::envelope);
  CHECK(config.grid.n_r == 16);
  CHECK(config.max_azimuthal == 16);
  CHECK(config.max_radial == 32);
  CHECK(config.solver == SolverChoice::both);
  CHECK(config.cfl_safety == 0.9);
  REQUIRE(config.snapshot_times.size() == 3);
  CHECK(config.snapshot_times[0] == 0.0);
  CHECK(config.snapshot_times[1] == doctest::Approx(0.5e-15));
  CHECK(config.snapshot_times[2] == doctest::Approx(1e-15));
}

TEST_CASE("config errors name the offending line or field") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_config(text);
      FAIL("expected ConfigError for: " << needle);
    } catch (const ConfigError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("[domain]\nvelocity = 1 c\n", "unknown key 'velocity'");
  expect_error("[carrier]\nvelocity = 1 c\n", "'radius'");
  expect_error("[bogus]\nx = 1\n", "unknown section");
  expect_error("[domain]\nradius = 5 parsec\n", "unknown unit suffix");
  expect_error("[domain]\nradius = 5\n", "missing a unit");
  expect_error("[domain]\nradius 5 nm\n", "expected 'key = value'");
  expect_error("radius = 5 nm\n", "outside any [section]");

  std::string no_sigma = minimal_config_text();
  const auto pos = no_sigma.find("sigma = 0.5 nm\n");
  no_sigma.erase(pos, 15);
  expect_error(no_sigma, "'sigma'");

  // Line numbers appear in syntax errors.
  expect_error("[domain]\nradius = 5 nm\nbroken line\n", "line 3");
}

TEST_CASE("potential value is tied to explicit mode") {
  std::string text = minimal_config_text();
  text += "\n[solver]\nmethod = fdtd\n[potential]\nmode = explicit\n";
  CHECK_THROWS_AS(parse_config(text), ConfigError);
  text += "value = 1.6 eV\n";
  const SimulationConfig config = parse_config(text);
  CHECK(config.potential_mode == PotentialMode::explicit_value);
  CHECK(config.explicit_potential == doctest::Approx(1.6 * physics::kElectronVolt));

  std::string orphan = minimal_config_text() + "\n[potential]\nvalue = 1 eV\n";
  CHECK_THROWS_AS(parse_config(orphan), ConfigError);
}

TEST_CASE("snapshot schedule variants") {
  // Same base config but with an explicit time list instead of a count.
  std::string base = minimal_config_text();
  base.erase(base.find("snapshots = 3\n"), 14);

  std::string with_times = base + "\n[time]\nsnapshot_times = 0 as, 200 as, 1 fs\n";
  const SimulationConfig config = parse_config(with_times);
  REQUIRE(config.snapshot_times.size() == 3);
  CHECK(config.snapshot_times[1] == doctest::Approx(200e-18));

  std::string conflicting = with_times + "snapshots = 4\n";
  CHECK_THROWS_AS(parse_config(conflicting), ConfigError);

  std::string unsorted = base + "\n[time]\nsnapshot_times = 1 fs, 0 fs\n";
  CHECK_THROWS_AS(parse_config(unsorted), ConfigError);

  std::string outside = base + "\n[time]\nsnapshot_times = 2 fs\n";
  CHECK_THROWS_AS(parse_config(outside), ConfigError);
}

TEST_CASE("spectral solving of damped forms requires the distortionless mode") {
  std::string text = minimal_config_text();
  text += "\n[potential]\nmode = zero\n";
  CHECK_THROWS_AS(parse_config(text), ConfigError);  // envelope+both+q!=0

  std::string fdtd_only = text + "\n[solver]\nmethod = fdtd\n";
  CHECK_NOTHROW(parse_config(fdtd_only));

  std::string undamped = text + "\n[equation]\nform = undamped\n";
  CHECK_NOTHROW(parse_config(undamped));
}

TEST_CASE("format_config round trips to an equal config") {
  std::string text = minimal_config_text();
  text += "\n[potential]\nmode = explicit\nvalue = 0.37 eV\n";
  text += "[equation]\nform = temperature\n";
  text += "[solver]\nmethod = fdtd\n";
  text += "[initial]\nkind = gaussian_ring\ncenter_r = 1.25 nm\n";
  text += "[output]\ndirectory = out/round_trip\n";

  const SimulationConfig config = parse_config(text);
  const SimulationConfig reparsed = parse_config(format_config(config));
  CHECK(reparsed == config);
}

TEST_CASE("simulate produces matching solver snapshots and a manifest that round trips") {
  SimulationConfig config = parse_config(minimal_config_text());
  const RunOutput run = simulate(config);

  REQUIRE(run.recorded_times.size() == 3);
  REQUIRE(run.fdtd_fields.size() == 3);
  REQUIRE(run.spectral_fields.size() == 3);
  CHECK(run.dt > 0.0);
  CHECK(run.steps > 0);
  // Recorded times are exact step multiples.
  for (double t : run.recorded_times) {
    const double k = t / run.dt;
    CHECK(std::fabs(k - std::round(k)) < 1e-9);
  }

  // The two solvers see the same physics: discretization-level agreement.
  for (std::size_t s = 0; s < 3; ++s) {
    const ErrorNorms norms = error_norms(run, s);
    CHECK(norms.linf < 0.05);
    CHECK(norms.l2 <= norms.linf);
    if (s > 0) CHECK(norms.linf > 0.0);
  }

  const SimulationConfig reparsed = parse_config(format_manifest(run));
  CHECK(reparsed == config);
}

TEST_CASE("temperature runs agree between solvers through the envelope factor") {
  std::string text = minimal_config_text();
  text += "\n[equation]\nform = temperature\n[time]\ntotal = 200 as\nsnapshots = 2\n";
  const SimulationConfig config = parse_config(text);
  const RunOutput run = simulate(config);

  REQUIRE(run.fdtd_fields.size() == 2);
  CHECK(run.fdtd_fields[1].quantity == FieldQuantity::temperature);
  CHECK(run.spectral_fields[1].quantity == FieldQuantity::temperature);
  const ErrorNorms norms = error_norms(run, 1);
  CHECK(norms.linf < 0.01);
}

TEST_CASE("snapshot files are deterministic byte for byte") {
  namespace fs = std::filesystem;
  SimulationConfig config = parse_config(minimal_config_text());
  config.grid = PolarGrid(config.domain.radius, 8, 8);

  const fs::path base = fs::temp_directory_path() / "qht_determinism_test";
  fs::remove_all(base);
  const RunOutput first = simulate(config);
  write_outputs(first, (base / "a").string());
  const RunOutput second = simulate(config);
  write_outputs(second, (base / "b").string());

  int compared = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    const auto name = entry.path().filename();
    CHECK(read_file(entry.path()) == read_file(base / "b" / name));
    ++compared;
  }
  CHECK(compared == 7);  // 3 fdtd + 3 spectral + manifest

  const std::string csv = read_file(base / "a" / "fdtd_000.csv");
  CHECK(csv.substr(0, 14) == "r,theta,value\n");
  // Row-major: first node is (i=0, j=0) at r = dr/2, theta = 0.
  char expected[64];
  std::snprintf(expected, sizeof(expected), "%.17g,%.17g,",
                config.grid.r(0), 0.0);
  CHECK(csv.find(expected) == 14);
  fs::remove_all(base);
}

TEST_CASE("error norms require both solvers") {
  std::string text = minimal_config_text();
  text += "\n[solver]\nmethod = fdtd\n";
  const RunOutput run = simulate(parse_config(text));
  CHECK(run.spectral_fields.empty());
  CHECK_THROWS_AS(error_norms(run, 0), std::invalid_argument);
}
