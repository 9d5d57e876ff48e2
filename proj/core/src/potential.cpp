#include "mapflock/potential.hpp"

#include <cmath>
#include <numbers>

#include "mapflock/errors.hpp"

namespace mapflock {

double PotentialParams::c() const { return std::abs(a - b) / std::sqrt(4.0 * a * b); }

void PotentialParams::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("a and b must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("gamma must lie in (0, 1)");
  if (!(d > 0.0 && d < r)) throw ParameterError("need 0 < d < r");
  if (!std::isfinite(r)) throw ParameterError("r must be finite");
}

double bump(double z, double z1, double z0) {
  if (!(z >= 0.0) || !(z1 >= 0.0) || !(z1 < z0)) {
    throw ParameterError("bump requires z >= 0 and 0 <= z1 < z0");
  }
  if (z < z1) return 1.0;
  if (z >= z0) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * (z - z1) / (z0 - z1)));
}

SigmaNorm sigma_norm(const Vec2& v, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("sigma_norm requires epsilon > 0");
  const double root = std::sqrt(1.0 + epsilon * squared_norm(v));
  return {(root - 1.0) / epsilon, v / root};
}

SigmaNormScalar sigma_norm(double s, double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("sigma_norm requires epsilon > 0");
  const double root = std::sqrt(1.0 + epsilon * s * s);
  return {(root - 1.0) / epsilon, s / root};
}

double phi_uneven(double z, double a, double b, double c) {
  const double s = z + c;
  return 0.5 * ((a + b) * s / std::sqrt(1.0 + s * s) + (a - b));
}

double phi_action(double z_sigma, const PotentialParams& params) {
  if (!(z_sigma >= 0.0)) throw ParameterError("phi_action requires z_sigma >= 0");
  const double r_sigma = sigma_norm(params.r, params.epsilon).value;
  const double d_sigma = sigma_norm(params.d, params.epsilon).value;
  const double gate = bump(z_sigma / r_sigma, params.gamma, 1.0);
  if (gate == 0.0) return 0.0;
  return gate * phi_uneven(z_sigma - d_sigma, params.a, params.b, params.c());
}

}  // namespace mapflock
