#pragma once

#include "mapflock/vec2.hpp"

namespace mapflock {

// Constants of the pairwise action potential. The offset c of the uneven
// sigmoid is always derived from a and b, never stored.
struct PotentialParams {
  double epsilon = 0.1;
  double a = 5.0;
  double b = 5.0;
  double gamma = 0.2;
  double d = 20.0;
  double r = 24.0;

  double c() const;
  // Throws ParameterError if any invariant (a, b > 0, 0 < gamma < 1,
  // 0 < d < r, epsilon > 0) is violated.
  void validate() const;
};

// Smooth cutoff: 1 on [0, z1), half-cosine decay on [z1, z0), 0 beyond z0.
double bump(double z, double z1, double z0);

struct SigmaNorm {
  double value = 0.0;
  Vec2 gradient;
};

struct SigmaNormScalar {
  double value = 0.0;
  double gradient = 0.0;
};

// (sqrt(1 + eps |v|^2) - 1) / eps together with its gradient v / (1 + eps * value).
SigmaNorm sigma_norm(const Vec2& v, double epsilon);
// Scalars are treated as one-dimensional vectors.
SigmaNormScalar sigma_norm(double s, double epsilon);

// Uneven sigmoid 0.5 * [(a + b)(z + c) / sqrt(1 + (z + c)^2) + (a - b)].
double phi_uneven(double z, double a, double b, double c);

// Pairwise action in sigma-distance space: zero at the desired spacing d,
// repulsive below it, attractive up to the communication range, and
// exactly zero from sigma(r) on.
double phi_action(double z_sigma, const PotentialParams& params);

}  // namespace mapflock
