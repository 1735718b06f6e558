#pragma once

// Reduced-density-matrix spectra of a (1+1)-dimensional CFT block. The
// normalized distinct eigenvalues are
//   λ₁ = 1/Z̃(q),   λ_l = q^{α_{l−1}}/Z̃(q)  (with multiplicity n_{l−1}),
//   Z̃(q) = 1 + Σ_i n_i q^{α_i},   q = exp(−2πκ / ln(L/ε)).
// The q^{−b} prefactor cancels under normalization; b is kept as metadata.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "majolab/distribution.hpp"
#include "majolab/flow_report.hpp"
#include "majolab/majorization.hpp"

namespace majolab {

inline constexpr double kDefaultTailTol = 1e-14;

class ScalingSpectrum {
 public:
  ScalingSpectrum() = default;
  ScalingSpectrum(std::vector<double> exponents, std::vector<unsigned> degeneracies,
                  std::optional<double> b = {})
      : exponents_(std::move(exponents)), degeneracies_(std::move(degeneracies)), b_(b) {
    if (exponents_.size() != degeneracies_.size())
      throw Error(ErrorCode::InvalidSpectrum, "exponents and degeneracies differ in length");
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      if (!(exponents_[i] > 0.0) || !std::isfinite(exponents_[i]))
        throw Error(ErrorCode::InvalidSpectrum, "exponents must be positive and finite");
      if (i > 0 && !(exponents_[i] > exponents_[i - 1]))
        throw Error(ErrorCode::InvalidSpectrum, "exponents must be strictly increasing");
      if (degeneracies_[i] < 1)
        throw Error(ErrorCode::InvalidSpectrum, "degeneracies must be >= 1");
    }
    // Largest degeneracy among terms i.. for the truncation bound.
    suffix_max_.assign(degeneracies_.size() + 1, 0);
    for (std::size_t i = degeneracies_.size(); i-- > 0;)
      suffix_max_[i] = std::max(suffix_max_[i + 1], degeneracies_[i]);
  }

  const std::vector<double>& exponents() const noexcept { return exponents_; }
  const std::vector<unsigned>& degeneracies() const noexcept { return degeneracies_; }
  std::optional<double> b() const noexcept { return b_; }
  std::size_t size() const noexcept { return exponents_.size(); }
  unsigned max_degeneracy_from(std::size_t i) const { return suffix_max_[i]; }

 private:
  std::vector<double> exponents_;
  std::vector<unsigned> degeneracies_;
  std::optional<double> b_;
  std::vector<unsigned> suffix_max_{0};
};

struct CFTFlowParams {
  double kappa = 1.0;
  double uv_cutoff = 1.0;  // ε in ln(L/ε)

  void validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw Error(ErrorCode::InvalidSpectrum, "kappa must be positive");
    if (!(uv_cutoff > 0.0) || !std::isfinite(uv_cutoff))
      throw Error(ErrorCode::InvalidSpectrum, "UV cutoff must be positive");
  }
};

/// q = exp(−2πκ / ln(L/ε)), strictly increasing in L.
inline double q_of_L(double L, const CFTFlowParams& params) {
  params.validate();
  if (!(L > params.uv_cutoff))
    throw Error(ErrorCode::BlockTooSmall, "block size " + std::to_string(L) +
                                              " must exceed the UV cutoff " +
                                              std::to_string(params.uv_cutoff));
  return std::exp(-2.0 * std::numbers::pi * params.kappa / std::log(L / params.uv_cutoff));
}

namespace detail {
inline void check_q(double q) {
  if (!(q >= 0.0 && q < 1.0))
    throw Error(ErrorCode::QOutOfRange, "q must lie in [0, 1), got " + std::to_string(q));
}
}  // namespace detail

struct ZTilde {
  double value = 1.0;
  std::size_t terms_used = 0;  // number of (α_i, n_i) groups kept
};

/// Partial sum 1 + Σ n_i q^{α_i}, stopping once every remaining term is
/// below tail_tol times the running sum.
inline ZTilde z_tilde(const ScalingSpectrum& spec, double q, double tail_tol = kDefaultTailTol) {
  detail::check_q(q);
  if (!(tail_tol > 0.0)) throw Error(ErrorCode::InvalidSpectrum, "tail_tol must be positive");
  ZTilde z;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double power = std::pow(q, spec.exponents()[i]);
    if (spec.max_degeneracy_from(i) * power < tail_tol * z.value) break;
    z.value += spec.degeneracies()[i] * power;
    z.terms_used = i + 1;
  }
  return z;
}

/// Eigenvalues keeping exactly `terms` exponent groups, renormalized.
inline Distribution eigenvalues_truncated(const ScalingSpectrum& spec, double q, std::size_t terms) {
  detail::check_q(q);
  terms = std::min(terms, spec.size());
  std::vector<double> w{1.0};
  double total = 1.0;
  for (std::size_t i = 0; i < terms; ++i) {
    const double power = std::pow(q, spec.exponents()[i]);
    for (unsigned c = 0; c < spec.degeneracies()[i]; ++c) w.push_back(power);
    total += spec.degeneracies()[i] * power;
  }
  for (double& v : w) v /= total;
  // Ascending exponents and q < 1 already give non-increasing order.
  return Distribution::from_canonical(std::move(w));
}

inline Distribution eigenvalues(const ScalingSpectrum& spec, double q,
                                double tail_tol = kDefaultTailTol) {
  return eigenvalues_truncated(spec, q, z_tilde(spec, q, tail_tol).terms_used);
}

/// Majorization of the spectrum at L_a against the one at L_b, both cut at
/// the same number of exponent groups.
inline MajorizationReport compare_L(const ScalingSpectrum& spec, const CFTFlowParams& params,
                                    double L_a, double L_b, double tail_tol = kDefaultTailTol,
                                    double tol = kDefaultTol) {
  const double qa = q_of_L(L_a, params);
  const double qb = q_of_L(L_b, params);
  const std::size_t terms =
      std::max(z_tilde(spec, qa, tail_tol).terms_used, z_tilde(spec, qb, tail_tol).terms_used);
  return majorizes(eigenvalues_truncated(spec, qa, terms), eigenvalues_truncated(spec, qb, terms), tol);
}

namespace detail {

// Spectra at each q, all cut at the largest term count any of them needs.
inline std::vector<FlowPoint> common_truncation(const ScalingSpectrum& spec,
                                                const std::vector<std::pair<double, double>>& param_q,
                                                double tail_tol) {
  std::size_t terms = 0;
  for (const auto& [p, q] : param_q) terms = std::max(terms, z_tilde(spec, q, tail_tol).terms_used);
  std::vector<FlowPoint> pts;
  pts.reserve(param_q.size());
  for (const auto& [p, q] : param_q) pts.push_back({p, eigenvalues_truncated(spec, q, terms)});
  return pts;
}

}  // namespace detail

/// Block-size flow: ρ_L ≺ ρ_L' for L ≥ L' is expected (DescendingMajorizes).
inline FlowReport check_L_flow(const ScalingSpectrum& spec, const CFTFlowParams& params,
                               const std::vector<double>& L_grid,
                               double tail_tol = kDefaultTailTol, double tol = kDefaultTol) {
  if (L_grid.size() < 2) throw Error(ErrorCode::TooFewPoints, "L grid needs at least two sizes");
  std::vector<std::pair<double, double>> param_q;
  for (std::size_t i = 0; i < L_grid.size(); ++i) {
    if (i > 0 && !(L_grid[i] > L_grid[i - 1]))
      throw Error(ErrorCode::NonMonotoneParameter, "L grid must be strictly increasing");
    param_q.emplace_back(L_grid[i], q_of_L(L_grid[i], params));
  }
  return flow_report(detail::common_truncation(spec, param_q, tail_tol),
                     FlowDirection::DescendingMajorizes, tol);
}

struct QFlow {
  std::vector<std::pair<double, double>> samples;  // (g, q), g ascending
};

/// Parameter flow with conformal q(g). The majorization statement only applies
/// when q is non-increasing in g; otherwise HypothesisViolated is raised and no
/// verdict is produced.
inline FlowReport check_parameter_flow(const ScalingSpectrum& spec, const QFlow& qflow,
                                       double tol = kDefaultTol,
                                       double tail_tol = kDefaultTailTol) {
  const auto& s = qflow.samples;
  if (s.size() < 2) throw Error(ErrorCode::TooFewPoints, "q-flow needs at least two samples");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].second > 0.0 && s[i].second < 1.0))
      throw Error(ErrorCode::QOutOfRange, "q-flow sample " + std::to_string(i) + " outside (0, 1)");
    if (i == 0) continue;
    if (!(s[i].first > s[i - 1].first))
      throw Error(ErrorCode::NonMonotoneParameter, "q-flow parameters must be strictly ascending");
    if (s[i].second > s[i - 1].second)
      throw Error(ErrorCode::HypothesisViolated,
                  "q increases between g = " + std::to_string(s[i - 1].first) + " and g = " +
                      std::to_string(s[i].first));
  }
  return flow_report(detail::common_truncation(spec, s, tail_tol),
                     FlowDirection::AscendingMajorizes, tol);
}

struct EigenvalueProbe {
  int sign = 0;                  // sign of dλ_l/dL
  int second_cumulant_sign = 0;  // sign of d(λ₁ + λ₂)/dL
  double difference = 0.0;       // λ_l(L+h) − λ_l(L−h)
  double second_cumulant_difference = 0.0;
};

/// Central-difference signs of the l-th distinct eigenvalue (1-based) and of
/// the second cumulant; differences with magnitude ≤ zero_tol count as 0.
inline EigenvalueProbe eigenvalue_derivative_probe(const ScalingSpectrum& spec,
                                                   const CFTFlowParams& params, double L,
                                                   std::size_t l, double h,
                                                   double zero_tol = 1e-14) {
  params.validate();
  if (l < 1 || l > spec.size() + 1)
    throw Error(ErrorCode::DomainError, "eigenvalue index " + std::to_string(l) + " out of range");
  if (!(h > 0.0) || !(L - h > params.uv_cutoff))
    throw Error(ErrorCode::StepLeavesDomain, "L - h must exceed the UV cutoff");

  auto distinct = [&](double q, std::size_t idx) {
    double z = 1.0;
    for (std::size_t i = 0; i < spec.size(); ++i)
      z += spec.degeneracies()[i] * std::pow(q, spec.exponents()[i]);
    return idx == 1 ? 1.0 / z : std::pow(q, spec.exponents()[idx - 2]) / z;
  };
  auto second_cumulant = [&](double q) {
    return distinct(q, 1) + (spec.size() > 0 ? distinct(q, 2) : 0.0);
  };
  auto sgn = [zero_tol](double d) { return std::abs(d) <= zero_tol ? 0 : (d > 0.0 ? 1 : -1); };

  const double q_lo = q_of_L(L - h, params);
  const double q_hi = q_of_L(L + h, params);
  EigenvalueProbe r;
  r.difference = distinct(q_hi, l) - distinct(q_lo, l);
  r.second_cumulant_difference = second_cumulant(q_hi) - second_cumulant(q_lo);
  r.sign = sgn(r.difference);
  r.second_cumulant_sign = sgn(r.second_cumulant_difference);
  return r;
}

// --- Random inputs for property checks -------------------------------------

/// 1..max_terms distinct exponents in (0, max_exponent], degeneracies 1..max_degeneracy.
inline ScalingSpectrum random_scaling_spectrum(Rng& rng, std::size_t max_terms = 6,
                                               double max_exponent = 5.0,
                                               unsigned max_degeneracy = 4) {
  const std::size_t n = 1 + uniform_index(rng, max_terms);
  std::vector<double> ex;
  while (ex.size() < n) {
    const double a = max_exponent * (1.0 - uniform01(rng));
    if (std::find(ex.begin(), ex.end(), a) == ex.end()) ex.push_back(a);
  }
  std::sort(ex.begin(), ex.end());
  std::vector<unsigned> deg(n);
  for (auto& d : deg) d = 1 + static_cast<unsigned>(uniform_index(rng, max_degeneracy));
  return ScalingSpectrum(std::move(ex), std::move(deg));
}

/// n samples on an ascending g grid. Non-increasing q unless `with_increase`,
/// in which case exactly one step goes up.
inline QFlow random_qflow(Rng& rng, std::size_t n, bool with_increase = false) {
  QFlow f;
  double g = 4.0 * uniform01(rng) - 2.0;
  double q = 0.05 + 0.9 * uniform01(rng);
  for (std::size_t i = 0; i < n; ++i) {
    f.samples.emplace_back(g, q);
    g += 0.01 + uniform01(rng);
    if (uniform01(rng) >= 0.2) q *= 0.5 + 0.5 * uniform01(rng);
  }
  if (with_increase && n >= 2) {
    const std::size_t i = 1 + uniform_index(rng, n - 1);
    const double prev = f.samples[i - 1].second;
    f.samples[i].second = prev + (1.0 - prev) * (0.05 + 0.9 * uniform01(rng));
  }
  return f;
}

}  // namespace majolab
