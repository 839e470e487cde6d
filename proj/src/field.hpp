#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qht {

inline constexpr double kTwoPi = 6.28318530717958647692;

/// Uniform polar grid over a disk of the given radius. Radial nodes are
/// staggered off the origin at r_i = (i + 1/2) dr, so no node sits at r = 0;
/// angular nodes are theta_j = j dtheta with periodic wraparound.
struct PolarGrid {
  double radius = 0.0;  // m
  int n_r = 0;          // radial cells, >= 8
  int n_theta = 0;      // angular cells, >= 8, even

  PolarGrid() = default;
  PolarGrid(double radius_m, int radial_cells, int angular_cells)
      : radius(radius_m), n_r(radial_cells), n_theta(angular_cells) {
    validate();
  }

  void validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("PolarGrid: radius must be > 0");
    if (n_r < 8) throw std::invalid_argument("PolarGrid: n_r must be >= 8");
    if (n_theta < 8) throw std::invalid_argument("PolarGrid: n_theta must be >= 8");
    if (n_theta % 2 != 0) throw std::invalid_argument("PolarGrid: n_theta must be even");
  }

  double dr() const { return radius / n_r; }
  double dtheta() const { return kTwoPi / n_theta; }
  double r(int i) const { return (i + 0.5) * dr(); }
  double theta(int j) const { return j * dtheta(); }
  double cell_area(int i) const { return r(i) * dr() * dtheta(); }
  std::size_t node_count() const {
    return static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_theta);
  }

  bool operator==(const PolarGrid&) const = default;
};

enum class FieldQuantity { temperature, envelope };

/// Field values sampled on a PolarGrid, row-major in (i, j).
struct ScalarField {
  PolarGrid grid;
  FieldQuantity quantity = FieldQuantity::envelope;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(const PolarGrid& g, FieldQuantity q)
      : grid(g), quantity(q), values(g.node_count(), 0.0) {}

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n_theta + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n_theta + j]; }
};

}  // namespace qht
