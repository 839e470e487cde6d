#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace qht {

namespace units {

namespace {

struct Unit {
  const char* suffix;
  double factor;
};

const Unit kLength[] = {{"nm", 1e-9}, {"um", 1e-6}, {"m", 1.0}};
const Unit kTime[] = {{"as", 1e-18}, {"fs", 1e-15}, {"ps", 1e-12}, {"ns", 1e-9}, {"s", 1.0}};
const Unit kSpeed[] = {{"c", physics::kSpeedOfLight}, {"m/s", 1.0}};
const Unit kEnergy[] = {{"eV", physics::kElectronVolt}, {"J", 1.0}};
const Unit kMass[] = {{"me", physics::kElectronMass}, {"kg", 1.0}};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

double parse_quantity(const std::string& text, Dimension dimension) {
  const std::string trimmed = trim(text);
  if (trimmed.empty()) throw ConfigError("empty value");

  const char* begin = trimmed.c_str();
  char* number_end = nullptr;
  const double value = std::strtod(begin, &number_end);
  if (number_end == begin) throw ConfigError("not a number: '" + trimmed + "'");
  const std::string suffix = trim(trimmed.substr(number_end - begin));

  if (dimension == Dimension::dimensionless) {
    if (!suffix.empty())
      throw ConfigError("value '" + trimmed + "' must be dimensionless");
    return value;
  }

  const Unit* table = nullptr;
  std::size_t count = 0;
  switch (dimension) {
    case Dimension::length: table = kLength; count = std::size(kLength); break;
    case Dimension::time: table = kTime; count = std::size(kTime); break;
    case Dimension::speed: table = kSpeed; count = std::size(kSpeed); break;
    case Dimension::energy: table = kEnergy; count = std::size(kEnergy); break;
    case Dimension::mass: table = kMass; count = std::size(kMass); break;
    case Dimension::dimensionless: break;
  }
  for (std::size_t i = 0; i < count; ++i)
    if (suffix == table[i].suffix) return value * table[i].factor;
  if (suffix.empty())
    throw ConfigError("value '" + trimmed + "' is missing a unit suffix");
  throw ConfigError("unknown unit suffix '" + suffix + "' in '" + trimmed + "'");
}

}  // namespace units

namespace {

using units::Dimension;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

[[noreturn]] void fail_line(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

int parse_int(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (trim(text.substr(used)).empty()) return value;
  } catch (const std::exception&) {
  }
  fail_line(line, "not an integer: '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) parts.push_back(trim(item));
  return parts;
}

// Keys the tool itself writes into manifests; accepted on re-parse and
// ignored for execution (the values are recomputed from the config).
const std::set<std::string> kDerivedKeys = {
    "relaxation_time", "diffusivity",       "potential",
    "q",               "mean_free_path",    "distortionless_potential",
    "dt",              "cfl_number",        "steps",
    "quantity",        "code_version",      "recorded_times",
    "files_fdtd",      "files_spectral",    "quadrature_converged",
    "pulse_localized"};

struct ConfigBuilder {
  std::optional<double> radius;
  std::optional<std::string> mass_text;
  std::optional<double> velocity;
  std::optional<std::string> potential_mode;
  std::optional<double> potential_value;
  std::optional<std::string> equation;
  std::optional<std::string> pulse_kind;
  std::optional<std::string> excitation;
  std::optional<double> amplitude;
  std::optional<double> center_r;
  std::optional<double> center_theta;
  std::optional<double> sigma;
  std::optional<int> n_r;
  std::optional<int> n_theta;
  std::optional<int> max_azimuthal;
  std::optional<int> max_radial;
  std::optional<int> quad_points;
  std::optional<double> total_time;
  std::optional<int> snapshot_count;
  std::optional<std::vector<double>> snapshot_times;
  std::optional<std::string> solver;
  std::optional<double> cfl_safety;
  std::optional<std::string> output_dir;
};

double parse_quantity_line(const std::string& text, Dimension dim, int line) {
  try {
    return units::parse_quantity(text, dim);
  } catch (const ConfigError& e) {
    fail_line(line, e.what());
  }
}

void apply_key(ConfigBuilder& b, const std::string& section,
               const std::string& key, const std::string& value, int line) {
  auto unknown_key = [&]() -> void {
    fail_line(line, "unknown key '" + key + "' in section [" + section + "]");
  };

  if (section == "domain") {
    if (key == "radius") b.radius = parse_quantity_line(value, Dimension::length, line);
    else unknown_key();
  } else if (section == "carrier") {
    if (key == "mass") b.mass_text = value;
    else if (key == "velocity") b.velocity = parse_quantity_line(value, Dimension::speed, line);
    else unknown_key();
  } else if (section == "potential") {
    if (key == "mode") b.potential_mode = value;
    else if (key == "value") b.potential_value = parse_quantity_line(value, Dimension::energy, line);
    else unknown_key();
  } else if (section == "equation") {
    if (key == "form") b.equation = value;
    else unknown_key();
  } else if (section == "initial") {
    if (key == "kind") b.pulse_kind = value;
    else if (key == "excitation") b.excitation = value;
    else if (key == "amplitude") b.amplitude = parse_quantity_line(value, Dimension::dimensionless, line);
    else if (key == "center_r") b.center_r = parse_quantity_line(value, Dimension::length, line);
    else if (key == "center_theta") b.center_theta = parse_quantity_line(value, Dimension::dimensionless, line);
    else if (key == "sigma") b.sigma = parse_quantity_line(value, Dimension::length, line);
    else unknown_key();
  } else if (section == "grid") {
    if (key == "n_r") b.n_r = parse_int(value, line);
    else if (key == "n_theta") b.n_theta = parse_int(value, line);
    else unknown_key();
  } else if (section == "spectral") {
    if (key == "max_azimuthal") b.max_azimuthal = parse_int(value, line);
    else if (key == "max_radial") b.max_radial = parse_int(value, line);
    else if (key == "quad_points") b.quad_points = parse_int(value, line);
    else unknown_key();
  } else if (section == "time") {
    if (key == "total") b.total_time = parse_quantity_line(value, Dimension::time, line);
    else if (key == "snapshots") b.snapshot_count = parse_int(value, line);
    else if (key == "snapshot_times") {
      std::vector<double> times;
      for (const std::string& item : split_list(value))
        times.push_back(parse_quantity_line(item, Dimension::time, line));
      b.snapshot_times = std::move(times);
    } else unknown_key();
  } else if (section == "solver") {
    if (key == "method") b.solver = value;
    else if (key == "cfl_safety") b.cfl_safety = parse_quantity_line(value, Dimension::dimensionless, line);
    else unknown_key();
  } else if (section == "output") {
    if (key == "directory") b.output_dir = value;
    else unknown_key();
  } else if (section == "derived") {
    if (!kDerivedKeys.contains(key)) unknown_key();
    // Informational only; values are recomputed on every run.
  } else {
    fail_line(line, "unknown section [" + section + "]");
  }
}

physics::HeatCarrier build_carrier(const ConfigBuilder& b) {
  physics::HeatCarrier carrier;
  if (b.mass_text) {
    const std::string text = trim(*b.mass_text);
    if (text == "electron") {
      carrier.mass = physics::kElectronMass;
    } else {
      carrier.mass = units::parse_quantity(text, Dimension::mass);
    }
  }
  if (!b.velocity) throw ConfigError("config: missing required key 'velocity' in [carrier]");
  carrier.velocity = *b.velocity;
  return carrier;
}

}  // namespace

double SimulationConfig::potential() const {
  switch (potential_mode) {
    case PotentialMode::zero: return 0.0;
    case PotentialMode::distortionless: return physics::distortionless_potential(carrier);
    case PotentialMode::explicit_value: return explicit_potential;
  }
  return 0.0;
}

physics::QhtParameters SimulationConfig::parameters() const {
  physics::QhtParameters p = physics::derive_parameters(carrier, potential());
  if (potential_mode == PotentialMode::distortionless) p.q = 0.0;
  return p;
}

void SimulationConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError("config: field '" + field + "' " + why);
  };

  if (!(domain.radius > 0.0)) fail("domain.radius", "must be > 0");
  try {
    carrier.validate();
  } catch (const std::exception& e) {
    fail("carrier", std::string("invalid: ") + e.what());
  }
  if (potential_mode == PotentialMode::explicit_value && explicit_potential < 0.0)
    fail("potential.value", "must be >= 0");
  if (!(pulse.sigma > 0.0)) fail("initial.sigma", "must be > 0");
  if (!(pulse.center_r >= 0.0 && pulse.center_r < domain.radius))
    fail("initial.center_r", "must lie inside the domain");
  if (!std::isfinite(pulse.amplitude)) fail("initial.amplitude", "must be finite");
  try {
    grid.validate();
  } catch (const std::exception& e) {
    fail("grid", std::string("invalid: ") + e.what());
  }
  if (grid.radius != domain.radius) fail("grid", "radius differs from domain.radius");
  if (max_azimuthal < 0) fail("spectral.max_azimuthal", "must be >= 0");
  if (max_radial < 1) fail("spectral.max_radial", "must be >= 1");
  if (quad_points < 32) fail("spectral.quad_points", "must be >= 32");
  if (!(total_time >= 0.0)) fail("time.total", "must be >= 0");
  if (snapshot_times.empty()) fail("time.snapshot_times", "must not be empty");
  for (std::size_t i = 0; i < snapshot_times.size(); ++i) {
    const double t = snapshot_times[i];
    if (t < 0.0 || t > total_time)
      fail("time.snapshot_times", "entries must lie in [0, total]");
    if (i > 0 && t < snapshot_times[i - 1])
      fail("time.snapshot_times", "entries must be sorted");
  }
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
    fail("solver.cfl_safety", "must be in (0, 1]");

  // The modal solution covers the undamped equation; damped forms are
  // representable only through the envelope factor, which requires q = 0.
  if (solver != SolverChoice::fdtd && equation != fdtd::Equation::undamped &&
      potential_mode != PotentialMode::distortionless)
    fail("solver.method",
         "spectral solving of the damped forms requires potential mode "
         "'distortionless' (q = 0)");
}

SimulationConfig parse_config(const std::string& text) {
  ConfigBuilder b;
  std::stringstream stream(text);
  std::string raw_line;
  std::string section;
  int line_no = 0;

  while (std::getline(stream, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_line(line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail_line(line_no, "empty section name");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_line(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(line_no, "empty key");
    if (section.empty()) fail_line(line_no, "key outside any [section]");
    apply_key(b, section, key, value, line_no);
  }

  SimulationConfig config;
  if (!b.radius) throw ConfigError("config: missing required key 'radius' in [domain]");
  config.domain.radius = *b.radius;
  config.carrier = build_carrier(b);

  if (b.potential_mode) {
    const std::string& mode = *b.potential_mode;
    if (mode == "zero") config.potential_mode = PotentialMode::zero;
    else if (mode == "distortionless") config.potential_mode = PotentialMode::distortionless;
    else if (mode == "explicit") config.potential_mode = PotentialMode::explicit_value;
    else throw ConfigError("config: unknown potential mode '" + mode + "'");
  }
  if (config.potential_mode == PotentialMode::explicit_value) {
    if (!b.potential_value)
      throw ConfigError("config: missing required key 'value' in [potential] for explicit mode");
    config.explicit_potential = *b.potential_value;
  } else if (b.potential_value) {
    throw ConfigError("config: key 'value' in [potential] requires mode = explicit");
  }

  if (b.equation) {
    const std::string& eq = *b.equation;
    if (eq == "temperature") config.equation = fdtd::Equation::temperature;
    else if (eq == "envelope") config.equation = fdtd::Equation::envelope;
    else if (eq == "undamped") config.equation = fdtd::Equation::undamped;
    else throw ConfigError("config: unknown equation form '" + eq + "'");
  }

  if (b.pulse_kind) {
    const std::string& kind = *b.pulse_kind;
    if (kind == "gaussian_spot") config.pulse.kind = scenarios::PulseKind::gaussian_spot;
    else if (kind == "gaussian_ring") config.pulse.kind = scenarios::PulseKind::gaussian_ring;
    else throw ConfigError("config: unknown initial kind '" + kind + "'");
  }
  if (b.excitation) {
    const std::string& ex = *b.excitation;
    if (ex == "displacement") config.pulse.excitation = scenarios::Excitation::displacement;
    else if (ex == "velocity") config.pulse.excitation = scenarios::Excitation::velocity;
    else throw ConfigError("config: unknown excitation '" + ex + "'");
  }
  config.pulse.amplitude = b.amplitude.value_or(1.0);
  config.pulse.center_r = b.center_r.value_or(0.0);
  config.pulse.center_theta = b.center_theta.value_or(0.0);
  if (!b.sigma) throw ConfigError("config: missing required key 'sigma' in [initial]");
  config.pulse.sigma = *b.sigma;

  config.grid = PolarGrid(config.domain.radius, b.n_r.value_or(128), b.n_theta.value_or(256));
  config.max_azimuthal = b.max_azimuthal.value_or(16);
  config.max_radial = b.max_radial.value_or(32);
  config.quad_points = b.quad_points.value_or(128);

  if (!b.total_time) throw ConfigError("config: missing required key 'total' in [time]");
  config.total_time = *b.total_time;

  if (b.snapshot_times && b.snapshot_count)
    throw ConfigError("config: 'snapshots' and 'snapshot_times' are mutually exclusive");
  if (b.snapshot_times) {
    config.snapshot_times = *b.snapshot_times;
  } else {
    const int count = b.snapshot_count.value_or(12);
    if (count < 1) throw ConfigError("config: 'snapshots' must be >= 1");
    if (count == 1) {
      config.snapshot_times = {config.total_time};
    } else {
      config.snapshot_times.resize(count);
      for (int k = 0; k < count; ++k)
        config.snapshot_times[k] = config.total_time * k / (count - 1);
    }
  }

  if (b.solver) {
    const std::string& method = *b.solver;
    if (method == "spectral") config.solver = SolverChoice::spectral;
    else if (method == "fdtd") config.solver = SolverChoice::fdtd;
    else if (method == "both") config.solver = SolverChoice::both;
    else throw ConfigError("config: unknown solver method '" + method + "'");
  }
  config.cfl_safety = b.cfl_safety.value_or(0.9);
  config.output_dir = b.output_dir.value_or("");

  config.validate();
  return config;
}

SimulationConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const SimulationConfig& config) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s; out += '\n'; };

  line("[domain]");
  line("radius = " + format_double(config.domain.radius) + " m");
  line("");
  line("[carrier]");
  line("mass = " + format_double(config.carrier.mass) + " kg");
  line("velocity = " + format_double(config.carrier.velocity) + " m/s");
  line("");
  line("[potential]");
  switch (config.potential_mode) {
    case PotentialMode::zero: line("mode = zero"); break;
    case PotentialMode::distortionless: line("mode = distortionless"); break;
    case PotentialMode::explicit_value:
      line("mode = explicit");
      line("value = " + format_double(config.explicit_potential) + " J");
      break;
  }
  line("");
  line("[equation]");
  switch (config.equation) {
    case fdtd::Equation::temperature: line("form = temperature"); break;
    case fdtd::Equation::envelope: line("form = envelope"); break;
    case fdtd::Equation::undamped: line("form = undamped"); break;
  }
  line("");
  line("[initial]");
  line(config.pulse.kind == scenarios::PulseKind::gaussian_spot
           ? "kind = gaussian_spot"
           : "kind = gaussian_ring");
  line(config.pulse.excitation == scenarios::Excitation::displacement
           ? "excitation = displacement"
           : "excitation = velocity");
  line("amplitude = " + format_double(config.pulse.amplitude));
  line("center_r = " + format_double(config.pulse.center_r) + " m");
  line("center_theta = " + format_double(config.pulse.center_theta));
  line("sigma = " + format_double(config.pulse.sigma) + " m");
  line("");
  line("[grid]");
  line("n_r = " + std::to_string(config.grid.n_r));
  line("n_theta = " + std::to_string(config.grid.n_theta));
  line("");
  line("[spectral]");
  line("max_azimuthal = " + std::to_string(config.max_azimuthal));
  line("max_radial = " + std::to_string(config.max_radial));
  line("quad_points = " + std::to_string(config.quad_points));
  line("");
  line("[time]");
  line("total = " + format_double(config.total_time) + " s");
  std::string times = "snapshot_times = ";
  for (std::size_t i = 0; i < config.snapshot_times.size(); ++i) {
    if (i > 0) times += ", ";
    times += format_double(config.snapshot_times[i]) + " s";
  }
  line(times);
  line("");
  line("[solver]");
  switch (config.solver) {
    case SolverChoice::spectral: line("method = spectral"); break;
    case SolverChoice::fdtd: line("method = fdtd"); break;
    case SolverChoice::both: line("method = both"); break;
  }
  line("cfl_safety = " + format_double(config.cfl_safety));
  if (!config.output_dir.empty()) {
    line("");
    line("[output]");
    line("directory = " + config.output_dir);
  }
  return out;
}

}  // namespace qht
