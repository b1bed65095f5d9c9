#include "nearwell/wells.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nearwell {

double equivalent_radius(double dx, double dy, double kx, double ky) {
  if (!(dx > 0.0 && dy > 0.0 && kx > 0.0 && ky > 0.0))
    throw std::invalid_argument("equivalent_radius: inputs must be positive");
  const double a = std::sqrt(ky / kx);
  const double b = std::sqrt(kx / ky);
  return 0.28 * std::sqrt(a * dx * dx + b * dy * dy) /
         (std::sqrt(a) + std::sqrt(b));
}

double wi_geometric(double k, double h, double r_e, double r_w) {
  if (!(r_w > 0.0) || r_e <= r_w)
    throw std::invalid_argument(
        "wi_geometric: need r_e > r_w > 0 (cell too small for a Peaceman "
        "well index)");
  return 2.0 * std::numbers::pi * k * h / std::log(r_e / r_w);
}

}  // namespace nearwell
