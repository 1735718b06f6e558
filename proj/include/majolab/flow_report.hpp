#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "majolab/distribution.hpp"
#include "majolab/majorization.hpp"

namespace majolab {

/// Which end of a flow is expected to be more ordered.
///  - AscendingMajorizes: ρ(t₁) ≺ ρ(t₂) whenever t₂ > t₁.
///  - DescendingMajorizes: ρ(t₂) ≺ ρ(t₁) whenever t₂ > t₁.
enum class FlowDirection { AscendingMajorizes, DescendingMajorizes };

inline constexpr std::string_view to_string(FlowDirection d) {
  return d == FlowDirection::AscendingMajorizes ? "ASCENDING_MAJORIZES" : "DESCENDING_MAJORIZES";
}

struct FlowPoint {
  double param;
  Distribution dist;
};

/// `report` compares the point expected to be less ordered (x) against the
/// point expected to be more ordered (y); the pair passes when x ≺ y.
struct PairwiseReport {
  std::size_t disordered;  // index into FlowReport::points
  std::size_t ordered;
  MajorizationReport report;

  bool holds() const noexcept { return report.x_majorized_by_y(); }
};

struct FlowLevels {
  bool global = false;
  bool monotonous = false;
  bool fine_grained = false;
};

struct FlowReport {
  FlowDirection direction = FlowDirection::AscendingMajorizes;
  std::vector<double> points;
  std::vector<double> entropies;
  std::vector<double> largest;  // top eigenvalue per point
  std::vector<PairwiseReport> pairwise;
  FlowLevels levels;
  double tol = kDefaultTol;
  double entropy_tol = 1e-10;
  /// Adjacent steps whose entropy change is within entropy_tol (non-strict loss).
  std::size_t entropy_ties = 0;
  /// Raw pairwise outcome before the level hierarchy is applied.
  bool all_pairs_hold = false;

  const PairwiseReport* first_failure() const noexcept {
    for (const auto& p : pairwise)
      if (!p.holds()) return &p;
    return nullptr;
  }
};

namespace detail {

// +1 when params ascend, -1 when they descend; throws otherwise.
inline int parameter_orientation(std::span<const FlowPoint> pts) {
  const int s = pts[1].param > pts[0].param ? 1 : -1;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double d = pts[i].param - pts[i - 1].param;
    if (!(d * s > 0.0))
      throw Error(ErrorCode::NonMonotoneParameter,
                  "parameter values must be strictly monotone (index " + std::to_string(i) + ")");
  }
  return s;
}

}  // namespace detail

/// Global, monotonous and fine-grained entanglement-loss levels for a sampled
/// flow. The levels are nested: monotonous requires global, fine-grained
/// requires monotonous, so a numerically inconsistent run reports the weakest
/// failing level. Inequalities are checked non-strictly; ties are counted.
inline FlowReport flow_report(std::span<const FlowPoint> pts, FlowDirection direction,
                              double tol = kDefaultTol, double entropy_tol = 1e-10) {
  if (pts.size() < 2) throw Error(ErrorCode::TooFewPoints, "a flow needs at least two points");
  const int orient = detail::parameter_orientation(pts);
  // Along the index order, does order increase (true) or decrease?
  const bool later_is_ordered = (direction == FlowDirection::AscendingMajorizes) == (orient > 0);

  FlowReport r;
  r.direction = direction;
  r.tol = tol;
  r.entropy_tol = entropy_tol;
  for (const auto& p : pts) {
    r.points.push_back(p.param);
    r.entropies.push_back(shannon_entropy(p.dist));
    r.largest.push_back(p.dist.largest());
  }

  // Entropy must not increase in the ordered direction.
  auto entropy_ok = [&](std::size_t i, std::size_t j) {  // i < j
    const double drop = later_is_ordered ? r.entropies[i] - r.entropies[j]
                                         : r.entropies[j] - r.entropies[i];
    return drop >= -entropy_tol;
  };
  const std::size_t n = pts.size();
  bool global = entropy_ok(0, n - 1);
  bool mono = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!entropy_ok(i, i + 1)) mono = false;
    if (std::abs(r.entropies[i + 1] - r.entropies[i]) <= entropy_tol) ++r.entropy_ties;
  }

  bool pairs = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t dis = later_is_ordered ? i : j;
      const std::size_t ord = later_is_ordered ? j : i;
      PairwiseReport pr{dis, ord, majorizes(pts[dis].dist, pts[ord].dist, tol)};
      pairs = pairs && pr.holds();
      r.pairwise.push_back(std::move(pr));
    }
  }
  r.all_pairs_hold = pairs;
  r.levels.global = global;
  r.levels.monotonous = global && mono;
  r.levels.fine_grained = r.levels.monotonous && pairs;
  return r;
}

inline FlowReport flow_report(const std::vector<FlowPoint>& pts, FlowDirection direction,
                              double tol = kDefaultTol, double entropy_tol = 1e-10) {
  return flow_report(std::span<const FlowPoint>(pts), direction, tol, entropy_tol);
}

}  // namespace majolab
