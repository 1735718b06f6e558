#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "majolab/error.hpp"

namespace majolab {

namespace detail {

// Arithmetic-geometric mean; converges quadratically, ~6 rounds at double precision.
inline double agm(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    if (std::abs(an - bn) <= 1e-16 * an) return an;
    a = an;
    b = bn;
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Complete elliptic integral of the first kind in the modulus convention
///   I(x) = ∫₀^{π/2} dθ / √(1 − x² sin²θ),   0 ≤ x < 1,
/// evaluated as π / (2 AGM(1, √(1−x²))).
inline double elliptic_K(double x) {
  if (!(x >= 0.0 && x < 1.0))
    throw Error(ErrorCode::ModulusOutOfRange,
                "elliptic modulus must lie in [0, 1), got " + std::to_string(x));
  return std::numbers::pi / (2.0 * detail::agm(1.0, std::sqrt((1.0 - x) * (1.0 + x))));
}

/// I(√(1−x²)) for 0 < x ≤ 1, computed from x directly so small x does not
/// lose the complementary modulus to rounding.
inline double elliptic_K_complementary(double x) {
  if (!(x > 0.0 && x <= 1.0))
    throw Error(ErrorCode::ModulusOutOfRange,
                "complementary modulus needs x in (0, 1], got " + std::to_string(x));
  return std::numbers::pi / (2.0 * detail::agm(1.0, x));
}

/// Physical (nonnegative) branch of the inverse hyperbolic cosine.
inline double arccosh(double t) {
  if (!(t >= 1.0))
    throw Error(ErrorCode::DomainError, "arccosh needs t >= 1, got " + std::to_string(t));
  return std::acosh(t);
}

}  // namespace majolab
