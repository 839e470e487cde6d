#include "physics.hpp"

#include <cmath>

namespace qht::physics {

double relaxation_time(const HeatCarrier& carrier) {
  carrier.validate();
  return kHbar / (carrier.mass * carrier.velocity * carrier.velocity);
}

double diffusivity(const HeatCarrier& carrier) {
  carrier.validate();
  return kHbar / carrier.mass;
}

double mean_free_path(const HeatCarrier& carrier) {
  carrier.validate();
  return kHbar / (carrier.mass * carrier.velocity);
}

double q_parameter(double potential, const HeatCarrier& carrier) {
  carrier.validate();
  if (potential < 0.0) throw std::invalid_argument("q_parameter: potential must be >= 0");
  const double half_wavenumber = carrier.mass * carrier.velocity / (2.0 * kHbar);
  return 2.0 * potential * carrier.mass / (kHbar * kHbar) -
         half_wavenumber * half_wavenumber;
}

double distortionless_potential(const HeatCarrier& carrier) {
  carrier.validate();
  return carrier.mass * carrier.velocity * carrier.velocity / 8.0;
}

QhtParameters derive_parameters(const HeatCarrier& carrier, double potential) {
  QhtParameters p;
  p.relaxation_time = relaxation_time(carrier);
  p.diffusivity = diffusivity(carrier);
  p.potential = potential;
  p.q = q_parameter(potential, carrier);
  p.mean_free_path = carrier.velocity * p.relaxation_time;
  return p;
}

ScalarField envelope_to_temperature(const ScalarField& u, double t, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("envelope_to_temperature: tau must be > 0");
  if (t < 0.0) throw std::invalid_argument("envelope_to_temperature: t must be >= 0");
  ScalarField temperature = u;
  temperature.quantity = FieldQuantity::temperature;
  const double factor = std::exp(-t / (2.0 * tau));
  for (double& value : temperature.values) value *= factor;
  return temperature;
}

}  // namespace qht::physics
