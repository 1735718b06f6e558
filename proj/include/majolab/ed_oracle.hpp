#pragma once

// Exact diagonalization of short open spin-1/2 chains:
//   XX:          H =  Σ (σˣσˣ + σʸσʸ)
//   Heisenberg:  H =  Σ (σˣσˣ + σʸσʸ + Δ σᶻσᶻ)
//   XY:          H = −Σ ((1+γ) σˣσˣ + (1−γ) σʸσʸ) − 2λ Σ σᶻ
// Site i (0-based) is bit N−1−i of the basis index; bit 0 is σᶻ = +1.
// All three Hamiltonians are real symmetric, so ground states are real.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include "majolab/chain_spectra.hpp"
#include "majolab/distribution.hpp"
#include "majolab/flow_report.hpp"
#include "majolab/majorization.hpp"

namespace majolab {

struct EdXX {};
struct EdHeisenberg { double delta = 1.0; };
struct EdXY { double lambda = 0.0; double gamma = 0.0; };

using EdModel = std::variant<EdXX, EdHeisenberg, EdXY>;

inline constexpr int kMinSites = 2;
inline constexpr int kMaxSites = 14;

struct SpinChainSpec {
  EdModel model;
  int N = 2;

  void validate() const {
    if (N < kMinSites || N > kMaxSites)
      throw Error(ErrorCode::SizeOutOfRange,
                  "chain length must be in [2, 14], got " + std::to_string(N));
    std::visit(
        [](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, EdHeisenberg>) {
            if (!std::isfinite(m.delta))
              throw Error(ErrorCode::ModelInvariantViolation, "delta must be finite");
          } else if constexpr (std::is_same_v<T, EdXY>) {
            if (!std::isfinite(m.lambda) || !std::isfinite(m.gamma))
              throw Error(ErrorCode::ModelInvariantViolation, "lambda and gamma must be finite");
          }
        },
        model);
  }

  std::size_t dim() const { return std::size_t{1} << N; }
};

using SparseH = Eigen::SparseMatrix<double, Eigen::RowMajor>;

inline SparseH build_hamiltonian(const SpinChainSpec& spec) {
  spec.validate();
  const int n = spec.N;
  const std::size_t dim = spec.dim();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(dim * static_cast<std::size_t>(n + 1));

  for (std::size_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const std::size_t mi = std::size_t{1} << (n - 1 - i);
      const std::size_t mj = std::size_t{1} << (n - 2 - i);
      const bool bi = (s & mi) != 0;
      const bool bj = (s & mj) != 0;
      const std::size_t flipped = s ^ mi ^ mj;
      std::visit(
          [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, EdXX>) {
              if (bi != bj) entries.emplace_back(s, flipped, 2.0);
            } else if constexpr (std::is_same_v<T, EdHeisenberg>) {
              if (bi != bj) entries.emplace_back(s, flipped, 2.0);
              diag += m.delta * (bi == bj ? 1.0 : -1.0);
            } else {
              // (1+γ)σˣσˣ + (1−γ)σʸσʸ: flip-flop 2, pair flip 2γ.
              if (bi != bj)
                entries.emplace_back(s, flipped, -2.0);
              else if (m.gamma != 0.0)
                entries.emplace_back(s, flipped, -2.0 * m.gamma);
            }
          },
          spec.model);
    }
    if (const auto* xy = std::get_if<EdXY>(&spec.model)) {
      const int down = std::popcount(s);
      diag += -2.0 * xy->lambda * static_cast<double>(n - 2 * down);
    }
    if (diag != 0.0) entries.emplace_back(s, s, diag);
  }
  SparseH h(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXd state;  // unit norm, real
  double gap = 0.0;       // E₁ − E₀
  bool degenerate_flag = false;
  double residual = 0.0;  // ‖Hv − Ev‖
};

struct EdOptions {
  int dense_max_sites = 10;  // dense eigensolve up to this N, Lanczos above
  double degeneracy_gap = 1e-10;
  double residual_tol = 1e-10;
  int krylov_dim = 120;
  int max_restarts = 200;
  std::uint64_t seed = 20061;
};

namespace detail {

struct Eigenpair {
  double value;
  Eigen::VectorXd vec;
  double residual;
};

inline void orthogonalize(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& against) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& a : against) v -= a.dot(v) * a;
}

// Lowest eigenpair of H on the orthogonal complement of `deflate`, by
// explicitly restarted Lanczos with full reorthogonalization.
inline Eigenpair lanczos_lowest(const SparseH& h, const std::vector<Eigen::VectorXd>& deflate,
                                Rng& rng, const EdOptions& opt) {
  const Eigen::Index n = h.rows();
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform01(rng) - 0.5;
  orthogonalize(v, deflate);
  v.normalize();

  const int m = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, n));
  Eigen::MatrixXd basis(n, m + 1);
  Eigenpair best{0.0, v, INFINITY};
  for (int restart = 0; restart < opt.max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    basis.col(0) = v;
    int steps = 0;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd w = h * basis.col(j);
      orthogonalize(w, deflate);
      alpha.push_back(basis.col(j).dot(w));
      for (int pass = 0; pass < 2; ++pass)
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      orthogonalize(w, deflate);
      const double b = w.norm();
      steps = j + 1;
      if (b < 1e-13) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), steps);
    Eigen::VectorXd sub(std::max(steps - 1, 0));
    for (int i = 0; i + 1 < steps; ++i) sub[i] = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double theta = tri.eigenvalues()[0];
    Eigen::VectorXd ritz = basis.leftCols(steps) * tri.eigenvectors().col(0);
    orthogonalize(ritz, deflate);
    ritz.normalize();
    const Eigen::VectorXd hv = h * ritz;
    const double rq = ritz.dot(hv);
    const double res = (hv - rq * ritz).norm();
    if (res < best.residual) best = {rq, ritz, res};
    if (res <= opt.residual_tol) return best;
    v = ritz;
  }
  throw Error(ErrorCode::NoConvergence,
              "Lanczos residual " + std::to_string(best.residual) + " above tolerance");
}

// Sign convention: the largest-magnitude amplitude (first on ties) is positive.
inline void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index idx = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > best + 1e-12) {
      best = std::abs(v[i]);
      idx = i;
    }
  if (v[idx] < 0.0) v = -v;
}

// Parity operator commuting with the model: Πσᶻ for XY, global spin flip Πσˣ
// for XX and Heisenberg.
inline Eigen::VectorXd apply_parity(const EdModel& model, int n, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(v.size());
  if (std::holds_alternative<EdXY>(model)) {
    for (Eigen::Index s = 0; s < v.size(); ++s)
      out[s] = (std::popcount(static_cast<std::uint64_t>(s)) % 2 == 0) ? v[s] : -v[s];
  } else {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (Eigen::Index s = 0; s < v.size(); ++s)
      out[s] = v[static_cast<Eigen::Index>(static_cast<std::uint64_t>(s) ^ mask)];
  }
  return out;
}

}  // namespace detail

/// Lowest eigenpair. When the two lowest levels are closer than
/// `opt.degeneracy_gap`, the returned state is the even-parity vector of the
/// degenerate pair (largest eigenvalue of the parity operator restricted to it).
inline GroundStateResult ground_state(const SparseH& h, const SpinChainSpec& spec,
                                      const EdOptions& opt = {}) {
  const Eigen::Index n = h.rows();
  double e0 = 0.0, e1 = INFINITY;
  Eigen::VectorXd v0, v1;
  if (spec.N <= opt.dense_max_sites) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(h.toDense()));
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "dense eigensolve failed");
    e0 = es.eigenvalues()[0];
    v0 = es.eigenvectors().col(0);
    if (n > 1) {
      e1 = es.eigenvalues()[1];
      v1 = es.eigenvectors().col(1);
    }
  } else {
    Rng rng(opt.seed);
    auto p0 = detail::lanczos_lowest(h, {}, rng, opt);
    auto p1 = detail::lanczos_lowest(h, {p0.vec}, rng, opt);
    if (p1.value < p0.value) std::swap(p0, p1);
    e0 = p0.value;
    v0 = p0.vec;
    e1 = p1.value;
    v1 = p1.vec;
  }

  GroundStateResult r;
  r.energy = e0;
  r.gap = e1 - e0;
  r.degenerate_flag = std::isfinite(e1) && r.gap < opt.degeneracy_gap;
  if (r.degenerate_flag) {
    Eigen::Matrix2d p;
    const Eigen::VectorXd pv0 = detail::apply_parity(spec.model, spec.N, v0);
    const Eigen::VectorXd pv1 = detail::apply_parity(spec.model, spec.N, v1);
    p << v0.dot(pv0), v0.dot(pv1), v1.dot(pv0), v1.dot(pv1);
    p = 0.5 * (p + p.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es2(p);
    const Eigen::Vector2d c = es2.eigenvectors().col(1);  // largest parity eigenvalue
    r.state = c[0] * v0 + c[1] * v1;
  } else {
    r.state = v0;
  }
  r.state.normalize();
  detail::fix_sign(r.state);
  const Eigen::VectorXd hv = h * r.state;
  r.energy = r.state.dot(hv);
  r.residual = (hv - r.energy * r.state).norm();
  return r;
}

inline GroundStateResult ground_state(const SpinChainSpec& spec, const EdOptions& opt = {}) {
  return ground_state(build_hamiltonian(spec), spec, opt);
}

/// Half-open range of sites [first, last).
struct SiteBlock {
  int first = 0;
  int last = 1;

  int size() const { return last - first; }
  static SiteBlock from_boundary(int length) { return {0, length}; }
};

/// Entanglement spectrum of a contiguous block: eigenvalues of the reduced
/// density matrix tr_B |ψ⟩⟨ψ|, computed from the smaller Gram matrix of the
/// 2^|A| × 2^|B| amplitude matrix and padded with zeros to 2^|A| entries.
inline Distribution reduced_spectrum(const Eigen::VectorXd& state, int n, SiteBlock block) {
  if (n < 1 || state.size() != (Eigen::Index{1} << n))
    throw Error(ErrorCode::BadBlock, "state length does not match 2^N");
  if (block.first < 0 || block.last > n || block.size() < 1 || block.size() >= n)
    throw Error(ErrorCode::BadBlock, "block must be a non-empty proper sub-range of the chain");
  const int na = block.size();
  const int nb = n - na;
  Eigen::MatrixXd amp(Eigen::Index{1} << na, Eigen::Index{1} << nb);
  for (Eigen::Index s = 0; s < state.size(); ++s) {
    std::size_t a = 0, b = 0;
    for (int site = 0; site < n; ++site) {
      const std::size_t bit = (static_cast<std::size_t>(s) >> (n - 1 - site)) & 1u;
      if (site >= block.first && site < block.last)
        a = (a << 1) | bit;
      else
        b = (b << 1) | bit;
    }
    amp(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = state[s];
  }
  const Eigen::MatrixXd gram = na <= nb ? Eigen::MatrixXd(amp * amp.transpose())
                                        : Eigen::MatrixXd(amp.transpose() * amp);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  std::vector<double> w(std::size_t{1} << na, 0.0);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    w[static_cast<std::size_t>(i)] = std::max(es.eigenvalues()[i], 0.0);
  return canonicalize(w, 1e-10);
}

/// Largest |difference| between the nonzero parts of the block spectrum and
/// the spectrum of its complement. Only blocks touching one end have a
/// contiguous complement.
inline double duality_error(const Eigen::VectorXd& state, int n, SiteBlock block) {
  SiteBlock complement;
  if (block.first == 0)
    complement = {block.last, n};
  else if (block.last == n)
    complement = {0, block.first};
  else
    throw Error(ErrorCode::BadBlock, "complement of an interior block is not contiguous");
  const Distribution a = reduced_spectrum(state, n, block);
  const Distribution b = reduced_spectrum(state, n, complement);
  const std::size_t m = std::max(a.size(), b.size());
  const Distribution pa = a.padded(m), pb = b.padded(m);
  double err = 0.0;
  for (std::size_t i = 0; i < m; ++i) err = std::max(err, std::abs(pa[i] - pb[i]));
  return err;
}

// ---------------------------------------------------------------------------
// Ground-state cache: <key>.bin holds the amplitudes as little-endian float64,
// <key>.json describes them.

inline std::string cache_key(const SpinChainSpec& spec) {
  char buf[160];
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EdXX>)
          std::snprintf(buf, sizeof buf, "xx_N%d", spec.N);
        else if constexpr (std::is_same_v<T, EdHeisenberg>)
          std::snprintf(buf, sizeof buf, "heisenberg_N%d_delta%.17g", spec.N, m.delta);
        else
          std::snprintf(buf, sizeof buf, "xy_N%d_lambda%.17g_gamma%.17g", spec.N, m.lambda, m.gamma);
      },
      spec.model);
  return buf;
}

inline nlohmann::json describe(const SpinChainSpec& spec) {
  nlohmann::json j;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EdXX>) {
          j["model"] = "xx";
        } else if constexpr (std::is_same_v<T, EdHeisenberg>) {
          j["model"] = "heisenberg";
          j["delta"] = m.delta;
        } else {
          j["model"] = "xy";
          j["lambda"] = m.lambda;
          j["gamma"] = m.gamma;
        }
      },
      spec.model);
  j["N"] = spec.N;
  j["boundary"] = "open";
  return j;
}

class GroundStateCache {
 public:
  explicit GroundStateCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create cache directory " + dir_.string());
  }

  std::optional<GroundStateResult> load(const SpinChainSpec& spec) const {
    const auto key = cache_key(spec);
    std::ifstream meta(dir_ / (key + ".json"));
    std::ifstream bin(dir_ / (key + ".bin"), std::ios::binary);
    if (!meta || !bin) return std::nullopt;
    nlohmann::json j;
    try {
      meta >> j;
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
    if (j.value("system", nlohmann::json{}) != describe(spec) ||
        j.value("dtype", std::string{}) != "float64-le" ||
        j.value("length", std::size_t{0}) != spec.dim())
      return std::nullopt;
    GroundStateResult r;
    r.energy = j.at("energy").get<double>();
    r.gap = j.at("gap").get<double>();
    r.degenerate_flag = j.at("degenerate").get<bool>();
    r.residual = j.at("residual").get<double>();
    r.state.resize(static_cast<Eigen::Index>(spec.dim()));
    for (Eigen::Index i = 0; i < r.state.size(); ++i) {
      unsigned char b[8];
      if (!bin.read(reinterpret_cast<char*>(b), 8)) return std::nullopt;
      std::uint64_t u = 0;
      for (int k = 7; k >= 0; --k) u = (u << 8) | b[k];
      r.state[i] = std::bit_cast<double>(u);
    }
    return r;
  }

  void store(const SpinChainSpec& spec, const GroundStateResult& r) const {
    const auto key = cache_key(spec);
    std::ofstream bin(dir_ / (key + ".bin"), std::ios::binary | std::ios::trunc);
    for (Eigen::Index i = 0; i < r.state.size(); ++i) {
      std::uint64_t u = std::bit_cast<std::uint64_t>(r.state[i]);
      unsigned char b[8];
      for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>((u >> (8 * k)) & 0xffu);
      bin.write(reinterpret_cast<const char*>(b), 8);
    }
    nlohmann::json j;
    j["system"] = describe(spec);
    j["dtype"] = "float64-le";
    j["length"] = spec.dim();
    j["energy"] = r.energy;
    j["gap"] = r.gap;
    j["degenerate"] = r.degenerate_flag;
    j["residual"] = r.residual;
    std::ofstream meta(dir_ / (key + ".json"), std::ios::trunc);
    meta << j.dump(2) << '\n';
    if (!bin || !meta) throw Error(ErrorCode::IoError, "failed to write cache entry " + key);
  }

 private:
  std::filesystem::path dir_;
};

inline GroundStateResult solve(const SpinChainSpec& spec, const EdOptions& opt = {},
                               const GroundStateCache* cache = nullptr) {
  spec.validate();
  if (cache)
    if (auto hit = cache->load(spec)) return *hit;
  GroundStateResult r = ground_state(spec, opt);
  if (cache) cache->store(spec, r);
  return r;
}

// ---------------------------------------------------------------------------
// Flow checks over ED spectra

struct EdFlow {
  FlowReport report;
  std::vector<FlowPoint> points;
  std::vector<double> energies;
  std::vector<bool> degenerate;
  double duality_error = 0.0;  // max over all runs
};

inline EdModel ed_model_at(const ModelFamily& family, double param) {
  return std::visit(
      [param](const auto& f) -> EdModel {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, XXBlockFamily>)
          throw Error(ErrorCode::ModelInvariantViolation, "the XX family has no coupling to vary");
        else if constexpr (std::is_same_v<T, HeisenbergFamily>)
          return EdHeisenberg{param};
        else if constexpr (std::is_same_v<T, XYLambdaFamily>)
          return EdXY{param, f.gamma};
        else
          return EdXY{f.lambda, param};
      },
      family);
}

/// Block-size flow at fixed couplings; blocks are anchored at site 1.
/// Larger blocks are expected to be majorized by smaller ones.
inline EdFlow ed_block_flow(const SpinChainSpec& spec, const std::vector<int>& block_sizes,
                            double tol = 1e-10, const EdOptions& opt = {},
                            const GroundStateCache* cache = nullptr) {
  const GroundStateResult gs = solve(spec, opt, cache);
  EdFlow out;
  for (int len : block_sizes) {
    const SiteBlock b = SiteBlock::from_boundary(len);
    out.points.push_back({static_cast<double>(len), reduced_spectrum(gs.state, spec.N, b)});
    out.duality_error = std::max(out.duality_error, duality_error(gs.state, spec.N, b));
    out.energies.push_back(gs.energy);
    out.degenerate.push_back(gs.degenerate_flag);
  }
  out.report = flow_report(out.points, FlowDirection::DescendingMajorizes, tol);
  return out;
}

/// Coupling flow at fixed N and boundary block.
inline EdFlow ed_parameter_flow(const ModelFamily& family, int n, int block,
                                const std::vector<double>& grid, FlowDirection direction,
                                double tol = 1e-10, const EdOptions& opt = {},
                                const GroundStateCache* cache = nullptr) {
  EdFlow out;
  const SiteBlock b = SiteBlock::from_boundary(block);
  for (double g : grid) {
    const SpinChainSpec spec{ed_model_at(family, g), n};
    const GroundStateResult gs = solve(spec, opt, cache);
    out.points.push_back({g, reduced_spectrum(gs.state, n, b)});
    out.duality_error = std::max(out.duality_error, duality_error(gs.state, n, b));
    out.energies.push_back(gs.energy);
    out.degenerate.push_back(gs.degenerate_flag);
  }
  out.report = flow_report(out.points, direction, tol);
  return out;
}

}  // namespace majolab
