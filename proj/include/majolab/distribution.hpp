#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "majolab/error.hpp"

namespace majolab {

inline constexpr double kDefaultTol = 1e-12;

/// Finite probability vector in canonical form: entries clamped to be
/// nonnegative, sorted in non-increasing order, summing to one within `tol()`.
/// Instances are only produced by `canonicalize` and the operations below, so
/// every `Distribution` in circulation satisfies those invariants.
class Distribution {
 public:
  Distribution() : weights_{1.0} {}

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  double largest() const noexcept { return weights_.front(); }
  double tol() const noexcept { return tol_; }

  double sum() const noexcept { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

  /// Same distribution extended with explicit zeros up to `n` entries.
  Distribution padded(std::size_t n) const {
    Distribution out = *this;
    if (n > out.weights_.size()) out.weights_.resize(n, 0.0);
    return out;
  }

  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.weights_ == b.weights_;
  }

  // Trusted constructor for callers that already hold sorted, clamped data.
  static Distribution from_canonical(std::vector<double> sorted_weights, double tol = kDefaultTol) {
    Distribution d;
    d.weights_ = std::move(sorted_weights);
    d.tol_ = tol;
    return d;
  }

 private:
  std::vector<double> weights_;
  double tol_ = kDefaultTol;
};

/// Sort, clamp and validate raw weights. With `normalize` set the weights are
/// divided by their sum instead of being required to sum to one.
inline Distribution canonicalize(std::span<const double> raw, double tol = kDefaultTol,
                                 bool normalize = false) {
  if (raw.empty()) throw Error(ErrorCode::EmptyInput, "distribution has no entries");
  std::vector<double> w(raw.begin(), raw.end());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]))
      throw Error(ErrorCode::NegativeWeight, "entry " + std::to_string(i) + " is not finite");
    if (w[i] < -tol)
      throw Error(ErrorCode::NegativeWeight,
                  "entry " + std::to_string(i) + " = " + std::to_string(w[i]) + " below -tol");
    w[i] = std::max(w[i], 0.0);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (normalize) {
    if (!(total > 0.0)) throw Error(ErrorCode::NotNormalized, "cannot normalize a zero vector");
    for (double& v : w) v /= total;
  } else if (std::abs(total - 1.0) > tol) {
    throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(total));
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  return Distribution::from_canonical(std::move(w), tol);
}

inline Distribution canonicalize(std::initializer_list<double> raw, double tol = kDefaultTol,
                                 bool normalize = false) {
  return canonicalize(std::span<const double>(raw.begin(), raw.size()), tol, normalize);
}

inline Distribution uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptyInput, "uniform distribution of size 0");
  return Distribution::from_canonical(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

/// (1, 0, ..., 0) of length n.
inline Distribution pure(std::size_t n = 1) {
  if (n == 0) throw Error(ErrorCode::EmptyInput, "pure distribution of size 0");
  std::vector<double> w(n, 0.0);
  w[0] = 1.0;
  return Distribution::from_canonical(std::move(w));
}

/// Prefix sums of the descending weights.
inline std::vector<double> cumulants(const Distribution& x) {
  std::vector<double> c(x.size());
  std::partial_sum(x.weights().begin(), x.weights().end(), c.begin());
  return c;
}

/// Shannon entropy in nats, with 0 ln 0 = 0.
inline double shannon_entropy(const Distribution& x) {
  double h = 0.0;
  for (double p : x.weights())
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

/// All pairwise products, re-sorted.
inline Distribution direct_product(const Distribution& p, const Distribution& q) {
  std::vector<double> w;
  w.reserve(p.size() * q.size());
  for (double a : p.weights())
    for (double b : q.weights()) w.push_back(a * b);
  std::sort(w.begin(), w.end(), std::greater<>());
  return Distribution::from_canonical(std::move(w), std::max(p.tol(), q.tol()));
}

}  // namespace majolab
