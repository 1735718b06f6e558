#pragma once

// Test-only reference computations, deliberately independent of the library
// code paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Adaptive Simpson quadrature with Richardson correction.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-14) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, eps, 50);
}

/// ∫₀^{π/2} dθ / √(1 − x² sin²θ) by quadrature of the defining integral.
inline double elliptic_K_quadrature(double x) {
  return integrate([x](double t) { return 1.0 / std::sqrt(1.0 - x * x * std::sin(t) * std::sin(t)); },
                   0.0, std::numbers::pi / 2.0);
}

/// x ≺ y through the convex-function characterization: for every threshold t,
/// Σ max(x_i − t, 0) ≤ Σ max(y_i − t, 0). Thresholds at all entries suffice
/// because both sides are piecewise linear in t with kinks there.
inline bool majorized_by(std::vector<double> x, std::vector<double> y, double tol) {
  const std::size_t n = std::max(x.size(), y.size());
  x.resize(n, 0.0);
  y.resize(n, 0.0);
  std::vector<double> ts = x;
  ts.insert(ts.end(), y.begin(), y.end());
  ts.push_back(0.0);
  auto excess = [](const std::vector<double>& v, double t) {
    double s = 0.0;
    for (double e : v) s += std::max(e - t, 0.0);
    return s;
  };
  for (double t : ts)
    if (excess(x, t) > excess(y, t) + tol) return false;
  return true;
}

inline double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

}  // namespace oracle
