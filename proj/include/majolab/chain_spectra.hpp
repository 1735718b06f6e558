#pragma once

// Free-fermion entanglement spectra of the half-infinite XX, Heisenberg (XXZ,
// Δ ≥ 1) and XY chains with a boundary. The reduced density matrix of a block
// is a product of independent two-level modes with weights ∝ (1, e^{−ε_k}).
//
// The XX dispersion π²(2k+1)/(2 ln L) is the large-L form; it is used as-is
// for every L ≥ 2.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "majolab/distribution.hpp"
#include "majolab/flow_report.hpp"
#include "majolab/special_functions.hpp"

namespace majolab {

struct XXChain {
  int L = 2;  // block length
};

struct HeisenbergChain {
  double delta = 1.0;
};

struct XYChain {
  double lambda = 2.0;
  double gamma = 1.0;
};

using ChainModel = std::variant<XXChain, HeisenbergChain, XYChain>;

enum class XYRegion {
  BelowOne,  // √(1−γ²) < λ < 1
  AboveOne,  // λ > 1
};

inline void validate(const XXChain& m) {
  if (m.L < 2) throw Error(ErrorCode::ModelInvariantViolation, "XX block length must be >= 2");
}

inline void validate(const HeisenbergChain& m) {
  if (!(m.delta >= 1.0) || !std::isfinite(m.delta))
    throw Error(ErrorCode::ModelInvariantViolation,
                "Heisenberg anisotropy must satisfy delta >= 1, got " + std::to_string(m.delta));
}

inline void validate(const XYChain& m) {
  if (!std::isfinite(m.lambda) || !std::isfinite(m.gamma))
    throw Error(ErrorCode::ModelInvariantViolation, "XY parameters must be finite");
  if (!(m.gamma > 0.0))
    throw Error(ErrorCode::ModelInvariantViolation, "XY anisotropy gamma must be > 0");
  if (!(m.lambda > 0.0))
    throw Error(ErrorCode::ModelInvariantViolation, "XY field lambda must be > 0");
  if (m.lambda == 1.0)
    throw Error(ErrorCode::ModelInvariantViolation, "XY field lambda = 1 is excluded");
  const double r2 = m.lambda * m.lambda + m.gamma * m.gamma;
  if (!(r2 > 1.0))
    throw Error(ErrorCode::ModelInvariantViolation,
                "XY parameters must lie outside the BM circle: lambda^2 + gamma^2 = " +
                    std::to_string(r2) + " <= 1");
}

inline void validate(const ChainModel& m) {
  std::visit([](const auto& v) { validate(v); }, m);
}

inline XYRegion xy_region(const XYChain& m) {
  validate(m);
  return m.lambda < 1.0 ? XYRegion::BelowOne : XYRegion::AboveOne;
}

/// Elliptic modulus x of the XY chain:
///   λ < 1: √(λ²+γ²−1)/γ,   λ > 1: γ/√(λ²+γ²−1).
inline double xy_elliptic_parameter(const XYChain& m) {
  validate(m);
  const double root = std::sqrt(m.lambda * m.lambda + m.gamma * m.gamma - 1.0);
  return m.lambda < 1.0 ? root / m.gamma : m.gamma / root;
}

/// ε̂ = π I(√(1−x²)) / I(x).
inline double xy_energy_scale(const XYChain& m) {
  const double x = xy_elliptic_parameter(m);
  return std::numbers::pi * elliptic_K_complementary(x) / elliptic_K(x);
}

namespace detail {

inline double xx_energy(double L, std::size_t k) {
  return std::numbers::pi * std::numbers::pi / (2.0 * std::log(L)) * (2.0 * static_cast<double>(k) + 1.0);
}

// ε_k = slope·k + offset for the infinite towers.
struct LinearTower {
  double slope;
  double offset;
};

inline LinearTower tower_of(const HeisenbergChain& m) { return {2.0 * arccosh(m.delta), 0.0}; }

inline LinearTower tower_of(const XYChain& m) {
  const double e = xy_energy_scale(m);
  return m.lambda < 1.0 ? LinearTower{2.0 * e, 0.0} : LinearTower{2.0 * e, e};
}

inline double tower_energy(const LinearTower& t, std::size_t k) {
  return t.slope * static_cast<double>(k) + t.offset;
}

}  // namespace detail

/// Single-mode energy ε_α for a validated model.
inline double mode_energy(const ChainModel& model, std::size_t alpha) {
  validate(model);
  return std::visit(
      [alpha](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, XXChain>) {
          if (alpha >= static_cast<std::size_t>(m.L))
            throw Error(ErrorCode::ModeCountExceedsBlock, "XX block of length " +
                                                              std::to_string(m.L) + " has no mode " +
                                                              std::to_string(alpha));
          return detail::xx_energy(static_cast<double>(m.L), alpha);
        } else {
          return detail::tower_energy(detail::tower_of(m), alpha);
        }
      },
      model);
}

struct ModeSpectrum {
  std::vector<double> energies;  // ascending
  ChainModel model;

  std::size_t mode_count() const noexcept { return energies.size(); }
};

inline ModeSpectrum dispersion(const ChainModel& model, std::size_t modes) {
  validate(model);
  if (modes == 0) throw Error(ErrorCode::TooManyModes, "mode count must be >= 1");
  if (const auto* xx = std::get_if<XXChain>(&model); xx && modes > static_cast<std::size_t>(xx->L))
    throw Error(ErrorCode::ModeCountExceedsBlock,
                std::to_string(modes) + " modes requested from an XX block of length " +
                    std::to_string(xx->L));
  ModeSpectrum s{{}, model};
  s.energies.reserve(modes);
  for (std::size_t k = 0; k < modes; ++k) s.energies.push_back(mode_energy(model, k));
  return s;
}

/// Two-outcome distribution (1, e^{−ε}) / (1 + e^{−ε}).
inline Distribution mode_distribution(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw Error(ErrorCode::DomainError, "mode energy must be finite and >= 0");
  const double top = 1.0 / (1.0 + std::exp(-epsilon));
  const double low = 1.0 / (1.0 + std::exp(epsilon));
  return Distribution::from_canonical({top, low});
}

inline constexpr std::size_t kMaxAssembledModes = 20;

/// Direct product of the first `modes` mode distributions (2^modes weights).
inline Distribution assemble(const ModeSpectrum& spectrum, std::size_t modes) {
  if (modes == 0 || modes > spectrum.energies.size())
    throw Error(ErrorCode::TooManyModes, "cannot assemble " + std::to_string(modes) +
                                             " modes from a spectrum of " +
                                             std::to_string(spectrum.energies.size()));
  if (modes > kMaxAssembledModes)
    throw Error(ErrorCode::TooManyModes, std::to_string(modes) +
                                             " modes exceed the materialization limit of 20; "
                                             "use per-mode analysis");
  Distribution d = mode_distribution(spectrum.energies[0]);
  for (std::size_t k = 1; k < modes; ++k)
    d = direct_product(d, mode_distribution(spectrum.energies[k]));
  return d;
}

/// Probability mass outside the truncated configuration space: the block
/// spectrum restricted to the first `modes` modes equals the full spectrum
/// restricted to n_k = 0 for k ≥ modes, whose weight is Π_{k≥modes} P_k.
/// Returns an upper bound on 1 − Π_{k≥modes} (1 + e^{−ε_k})^{−1}.
inline double tail_bound(const ChainModel& model, std::size_t modes) {
  validate(model);
  double log_sum = 0.0;  // Σ ln(1 + e^{−ε_k}) over discarded modes
  if (const auto* xx = std::get_if<XXChain>(&model)) {
    for (std::size_t k = modes; k < static_cast<std::size_t>(xx->L); ++k)
      log_sum += std::log1p(std::exp(-detail::xx_energy(static_cast<double>(xx->L), k)));
    return -std::expm1(-log_sum);
  }
  const detail::LinearTower t = std::visit(
      [](const auto& m) -> detail::LinearTower {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, XXChain>)
          return {0.0, 0.0};
        else
          return detail::tower_of(m);
      },
      model);
  if (!(t.slope > 0.0)) return 1.0;  // every mode at ε = 0: infinitely many (½,½) factors
  constexpr std::size_t kMaxTerms = 1'000'000;
  std::size_t k = modes;
  for (; k < modes + kMaxTerms; ++k) {
    const double u = std::exp(-detail::tower_energy(t, k));
    if (u < 1e-20) break;
    log_sum += std::log1p(u);
  }
  // ln(1+u) ≤ u and the remaining u_k form a geometric series.
  log_sum += std::exp(-detail::tower_energy(t, k)) / -std::expm1(-t.slope);
  return std::min(1.0, -std::expm1(-log_sum));
}

/// Heisenberg at Δ = 1 sits at the critical point where every mode is (½,½).
inline bool is_critical(const ChainModel& model) {
  const auto* h = std::get_if<HeisenbergChain>(&model);
  return h != nullptr && h->delta == 1.0;
}

struct AssembledSpectrum {
  ChainModel model;
  std::size_t modes = 0;
  Distribution dist;
  double tail_bound = 0.0;
  bool critical = false;
};

inline AssembledSpectrum assemble_model(const ChainModel& model, std::size_t modes) {
  const ModeSpectrum s = dispersion(model, modes);
  return {model, modes, assemble(s, modes), tail_bound(model, modes), is_critical(model)};
}

/// Largest weight of mode α. An XX mode beyond the block length does not
/// exist and is represented by the frozen distribution (1, 0).
inline double top_mode_probability(const ChainModel& model, std::size_t alpha) {
  validate(model);
  if (const auto* xx = std::get_if<XXChain>(&model); xx && alpha >= static_cast<std::size_t>(xx->L))
    return 1.0;
  return 1.0 / (1.0 + std::exp(-mode_energy(model, alpha)));
}

// ---------------------------------------------------------------------------
// Parameter flows

struct XXBlockFamily {};              // parameter: block length L
struct HeisenbergFamily {};           // parameter: Δ
struct XYLambdaFamily { double gamma; };  // parameter: λ at fixed γ
struct XYGammaFamily { double lambda; };  // parameter: γ at fixed λ

using ModelFamily = std::variant<XXBlockFamily, HeisenbergFamily, XYLambdaFamily, XYGammaFamily>;

inline ChainModel model_at(const ModelFamily& family, double param) {
  ChainModel m = std::visit(
      [param](const auto& f) -> ChainModel {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, XXBlockFamily>) {
          if (param != std::floor(param) || param < 2.0 || param > 1e9)
            throw Error(ErrorCode::ModelInvariantViolation,
                        "XX block length must be an integer >= 2, got " + std::to_string(param));
          return XXChain{static_cast<int>(param)};
        } else if constexpr (std::is_same_v<T, HeisenbergFamily>) {
          return HeisenbergChain{param};
        } else if constexpr (std::is_same_v<T, XYLambdaFamily>) {
          return XYChain{param, f.gamma};
        } else {
          return XYChain{f.lambda, param};
        }
      },
      family);
  validate(m);
  return m;
}

/// Direction in which the family's spectra become more ordered.
inline FlowDirection expected_direction(const ModelFamily& family, double sample_param) {
  return std::visit(
      [sample_param](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, XXBlockFamily>) return FlowDirection::DescendingMajorizes;
        else if constexpr (std::is_same_v<T, HeisenbergFamily>) return FlowDirection::AscendingMajorizes;
        else if constexpr (std::is_same_v<T, XYLambdaFamily>)
          return sample_param > 1.0 ? FlowDirection::AscendingMajorizes
                                    : FlowDirection::DescendingMajorizes;
        else return FlowDirection::DescendingMajorizes;
      },
      family);
}

struct ModeComparison {
  std::size_t alpha;
  double top_disordered;  // largest weight on the side expected less ordered
  double top_ordered;
  bool padded;  // one side lacks this mode and contributes (1, 0)
  bool holds;   // (p, 1−p) ≺ (p', 1−p') ⇔ p ≤ p'
};

struct ModeStep {
  std::size_t disordered;  // point indices
  std::size_t ordered;
  std::vector<ModeComparison> modes;
};

struct ChainFlowPoint {
  double param;
  AssembledSpectrum spectrum;
};

struct ChainFlow {
  ModelFamily family;
  FlowDirection direction;
  std::vector<ChainFlowPoint> points;
  std::vector<ModeStep> steps;  // one per adjacent pair

  std::vector<FlowPoint> flow_points() const {
    std::vector<FlowPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back({p.param, p.spectrum.dist});
    return out;
  }
};

namespace detail {

inline void check_grid(const ModelFamily& family, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::TooFewPoints, "flow grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d0 = grid[1] - grid[0];
    const double d = grid[i] - grid[i - 1];
    if (!(d * d0 > 0.0))
      throw Error(ErrorCode::NonMonotoneParameter, "flow grid must be strictly monotone");
  }
  if (std::holds_alternative<XYLambdaFamily>(family)) {
    const bool any_below = std::any_of(grid.begin(), grid.end(), [](double v) { return v < 1.0; });
    const bool any_above = std::any_of(grid.begin(), grid.end(), [](double v) { return v > 1.0; });
    if (any_below && any_above)
      throw Error(ErrorCode::GridCrossesRegionBoundary, "lambda grid crosses lambda = 1");
  }
  if (const auto* g = std::get_if<XYGammaFamily>(&family)) {
    // Below λ = 1 the BM circle γ = √(1−λ²) separates valid and invalid points.
    const double edge = g->lambda < 1.0 ? std::sqrt(1.0 - g->lambda * g->lambda) : 0.0;
    const bool any_out = std::any_of(grid.begin(), grid.end(), [edge](double v) { return v > edge; });
    const bool any_in = std::any_of(grid.begin(), grid.end(), [edge](double v) { return v <= edge; });
    if (any_out && any_in && edge > 0.0)
      throw Error(ErrorCode::GridCrossesRegionBoundary, "gamma grid crosses the BM circle");
  }
  if (std::holds_alternative<XYLambdaFamily>(family)) {
    const double gamma = std::get<XYLambdaFamily>(family).gamma;
    const double edge = gamma < 1.0 ? std::sqrt(1.0 - gamma * gamma) : 0.0;
    const bool any_out = std::any_of(grid.begin(), grid.end(), [edge](double v) { return v > edge; });
    const bool any_in = std::any_of(grid.begin(), grid.end(), [edge](double v) { return v <= edge; });
    if (any_out && any_in && edge > 0.0)
      throw Error(ErrorCode::GridCrossesRegionBoundary, "lambda grid crosses the BM circle");
  }
}

}  // namespace detail

/// Assembled spectra along a grid. `modes` is the number of fermionic modes
/// kept per point; XX blocks shorter than that keep all of their L modes.
/// Each adjacent step also records the mode-by-mode comparison, with modes
/// missing on one side padded as (1, 0).
inline ChainFlow flow(const ModelFamily& family, const std::vector<double>& grid, std::size_t modes) {
  detail::check_grid(family, grid);
  ChainFlow out{family, expected_direction(family, grid.front()), {}, {}};
  out.points.reserve(grid.size());
  for (double p : grid) {
    const ChainModel m = model_at(family, p);
    std::size_t k = modes;
    if (const auto* xx = std::get_if<XXChain>(&m)) k = std::min(k, static_cast<std::size_t>(xx->L));
    out.points.push_back({p, assemble_model(m, k)});
  }
  if (grid.size() < 2) return out;

  const bool ascending = grid[1] > grid[0];
  const bool later_is_ordered = (out.direction == FlowDirection::AscendingMajorizes) == ascending;
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const std::size_t dis = later_is_ordered ? i : i + 1;
    const std::size_t ord = later_is_ordered ? i + 1 : i;
    const auto& a = out.points[dis].spectrum;
    const auto& b = out.points[ord].spectrum;
    ModeStep step{dis, ord, {}};
    const std::size_t n = std::max(a.modes, b.modes);
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
      const bool pad_a = alpha >= a.modes;
      const bool pad_b = alpha >= b.modes;
      const double pa = pad_a ? 1.0 : top_mode_probability(a.model, alpha);
      const double pb = pad_b ? 1.0 : top_mode_probability(b.model, alpha);
      step.modes.push_back({alpha, pa, pb, pad_a || pad_b, pa <= pb});
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

inline FlowReport chain_flow_report(const ChainFlow& f, double tol = kDefaultTol) {
  return flow_report(f.flow_points(), f.direction, tol);
}

// ---------------------------------------------------------------------------
// Finite-difference probes of the top mode probability

struct DerivativeProbe {
  int sign = 0;
  double difference = 0.0;  // P(param + h) − P(param − h)
  double h = 0.0;
};

inline double default_step(double param) { return 1e-4 * std::max(1.0, std::abs(param)); }

namespace detail {

// Mode energy on a continuous parameter; XX accepts non-integer L here.
inline double family_energy(const ModelFamily& family, double param, std::size_t alpha) {
  if (std::holds_alternative<XXBlockFamily>(family)) {
    if (!(param > 1.0)) throw Error(ErrorCode::ModelInvariantViolation, "XX needs L > 1");
    return xx_energy(param, alpha);
  }
  return mode_energy(model_at(family, param), alpha);
}

inline void check_probe_region(const ModelFamily& family, double lo, double hi) {
  try {
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, XXBlockFamily>) {
            if (!(lo > 1.0)) throw Error(ErrorCode::ModelInvariantViolation, "L - h <= 1");
          } else if constexpr (std::is_same_v<T, HeisenbergFamily>) {
            if (!(lo > 1.0))
              throw Error(ErrorCode::ModelInvariantViolation, "probe touches the critical point");
            validate(HeisenbergChain{hi});
          } else if constexpr (std::is_same_v<T, XYLambdaFamily>) {
            validate(XYChain{lo, f.gamma});
            validate(XYChain{hi, f.gamma});
            if ((lo < 1.0) != (hi < 1.0))
              throw Error(ErrorCode::ModelInvariantViolation, "probe straddles lambda = 1");
          } else {
            validate(XYChain{f.lambda, lo});
            validate(XYChain{f.lambda, hi});
          }
        },
        family);
  } catch (const Error& e) {
    throw Error(ErrorCode::StepLeavesRegion, e.what());
  }
}

}  // namespace detail

/// Sign of P_α(param + h) − P_α(param − h) by central differences. The
/// difference is formed from the minor weight 1/(1 + e^{ε}), which keeps full
/// relative precision when P_α is close to one; it is treated as zero only at
/// the level of rounding noise.
inline DerivativeProbe mode_derivative_sign(const ModelFamily& family, double param,
                                            std::size_t alpha, std::optional<double> step = {}) {
  const double h = step.value_or(default_step(param));
  if (!(h > 0.0)) throw Error(ErrorCode::StepLeavesRegion, "step must be positive");
  detail::check_probe_region(family, param - h, param + h);
  const double minor_lo = 1.0 / (1.0 + std::exp(detail::family_energy(family, param - h, alpha)));
  const double minor_hi = 1.0 / (1.0 + std::exp(detail::family_energy(family, param + h, alpha)));
  DerivativeProbe r;
  r.h = h;
  r.difference = minor_lo - minor_hi;
  const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::max(minor_lo, minor_hi);
  r.sign = std::abs(r.difference) <= noise ? 0 : (r.difference > 0.0 ? 1 : -1);
  return r;
}

inline const char* model_name(const ChainModel& m) {
  switch (m.index()) {
    case 0: return "xx";
    case 1: return "heisenberg";
    default: return "xy";
  }
}

}  // namespace majolab
