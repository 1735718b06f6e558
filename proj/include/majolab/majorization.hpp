#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "majolab/distribution.hpp"

namespace majolab {

enum class Verdict {
  Majorizes,     // y ≺ x
  MajorizedBy,   // x ≺ y
  Equal,         // both directions within tol
  Incomparable,
};

inline constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Majorizes: return "MAJORIZES";
    case Verdict::MajorizedBy: return "MAJORIZED_BY";
    case Verdict::Equal: return "EQUAL";
    case Verdict::Incomparable: return "INCOMPARABLE";
  }
  return "INCOMPARABLE";
}

struct CumulantGap {
  std::size_t k;  // 1-based prefix length
  double gap;     // Σᵏx − Σᵏy
};

struct MajorizationReport {
  Verdict verdict = Verdict::Equal;
  std::vector<CumulantGap> cumulant_gaps;
  /// 1-based index of the first cumulant where x ≺ y fails (gap > tol).
  std::optional<std::size_t> first_violation;
  double tol = kDefaultTol;

  /// x ≺ y holds (strictly or as equality).
  bool x_majorized_by_y() const noexcept {
    return verdict == Verdict::MajorizedBy || verdict == Verdict::Equal;
  }
  double max_gap() const noexcept {
    double m = -INFINITY;
    for (const auto& g : cumulant_gaps) m = std::max(m, g.gap);
    return m;
  }
};

/// Compare x and y cumulant by cumulant after zero-padding to a common length.
inline MajorizationReport majorizes(const Distribution& x, const Distribution& y,
                                    double tol = kDefaultTol) {
  const std::size_t n = std::max(x.size(), y.size());
  MajorizationReport r;
  r.tol = tol;
  r.cumulant_gaps.reserve(n);
  bool x_below = true;  // every gap <= tol
  bool x_above = true;  // every gap >= -tol
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cx += i < x.size() ? x[i] : 0.0;
    cy += i < y.size() ? y[i] : 0.0;
    const double gap = cx - cy;
    r.cumulant_gaps.push_back({i + 1, gap});
    if (gap > tol) {
      x_below = false;
      if (!r.first_violation) r.first_violation = i + 1;
    }
    if (gap < -tol) x_above = false;
  }
  if (x_below && x_above)
    r.verdict = Verdict::Equal;
  else if (x_below)
    r.verdict = Verdict::MajorizedBy;
  else if (x_above)
    r.verdict = Verdict::Majorizes;
  else
    r.verdict = Verdict::Incomparable;
  return r;
}

/// x = D·y. D must be nonnegative with unit row and column sums.
inline Distribution apply_doubly_stochastic(const Eigen::MatrixXd& d, const Distribution& y,
                                            double tol = 1e-12) {
  const auto n = static_cast<Eigen::Index>(y.size());
  if (d.rows() != n || d.cols() != n)
    throw Error(ErrorCode::NotDoublyStochastic, "matrix dimension does not match distribution");
  if ((d.array() < -tol).any())
    throw Error(ErrorCode::NotDoublyStochastic, "matrix has negative entries");
  const Eigen::VectorXd rows = d.rowwise().sum();
  const Eigen::VectorXd cols = d.colwise().sum().transpose();
  if ((rows.array() - 1.0).abs().maxCoeff() > tol || (cols.array() - 1.0).abs().maxCoeff() > tol)
    throw Error(ErrorCode::NotDoublyStochastic, "row or column sums deviate from 1");
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.weights().data(), n);
  const Eigen::VectorXd xv = d * yv;
  return canonicalize(std::span<const double>(xv.data(), xv.size()), std::max(tol, y.tol()));
}

// Portable draws from a standardized engine so identical seeds give identical
// results across standard libraries.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t v;
  do v = rng();
  while (v >= limit);
  return static_cast<std::size_t>(v % bound);
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_index(rng, i)]);
  return p;
}

/// Normalized vector of exponential draws (a flat Dirichlet sample).
inline std::vector<double> random_simplex_point(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = -std::log1p(-uniform01(rng));
    total += v;
  }
  if (!(total > 0.0)) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  for (double& v : w) v /= total;
  return w;
}

/// x = Σ_j w_j P_j y for explicit permutations P_j (perm[i] = source index).
inline Distribution mix_permutations(const Distribution& y,
                                     std::span<const std::vector<std::size_t>> perms,
                                     std::span<const double> weights) {
  std::vector<double> x(y.size(), 0.0);
  for (std::size_t j = 0; j < perms.size(); ++j)
    for (std::size_t i = 0; i < y.size(); ++i) x[i] += weights[j] * y[perms[j][i]];
  return canonicalize(x, 1e-12, true);
}

struct MajorizedPair {
  Distribution x;  // x ≺ y by construction
  Distribution y;
};

inline MajorizedPair random_majorized_pair(std::size_t n, std::size_t mixing, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::EmptyInput, "pair length must be >= 1");
  if (mixing == 0) throw Error(ErrorCode::EmptyInput, "mixing must be >= 1");
  const auto yw = random_simplex_point(rng, n);
  Distribution y = canonicalize(yw, 1e-12, true);
  std::vector<std::vector<std::size_t>> perms;
  perms.reserve(mixing);
  for (std::size_t j = 0; j < mixing; ++j) perms.push_back(random_permutation(rng, n));
  const auto w = random_simplex_point(rng, mixing);
  Distribution x = mix_permutations(y, perms, w);
  return {std::move(x), std::move(y)};
}

inline MajorizedPair random_majorized_pair(std::size_t n, std::size_t mixing, std::uint64_t seed) {
  Rng rng(seed);
  return random_majorized_pair(n, mixing, rng);
}

}  // namespace majolab
