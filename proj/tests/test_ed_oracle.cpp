#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "majolab/ed_oracle.hpp"

using namespace majolab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::IoError;
}

double parity_expectation(const EdModel& model, int n, const Eigen::VectorXd& v) {
  return v.dot(detail::apply_parity(model, n, v));
}

}  // namespace

TEST(Hamiltonian, XXTwoSiteSinglet) {
  const SpinChainSpec spec{EdXX{}, 2};
  const Eigen::MatrixXd h = build_hamiltonian(spec).toDense();
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
  expect(1, 2) = expect(2, 1) = 2.0;
  EXPECT_TRUE(h.isApprox(expect));
  const auto gs = ground_state(spec);
  EXPECT_NEAR(gs.energy, -2.0, 1e-14);
  EXPECT_NEAR(std::abs(gs.state[1]), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(gs.state[1], -gs.state[2], 1e-14);
  const auto rho = reduced_spectrum(gs.state, 2, SiteBlock::from_boundary(1));
  EXPECT_NEAR(rho[0], 0.5, 1e-12);
  EXPECT_NEAR(rho[1], 0.5, 1e-12);
}

TEST(Hamiltonian, HeisenbergTwoSite) {
  // Levels of the 4×4 block: Δ (twice), 2−Δ, −2−Δ.
  for (double delta : {0.5, 1.0, 2.0, 5.0}) {
    const SpinChainSpec spec{EdHeisenberg{delta}, 2};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(build_hamiltonian(spec).toDense()));
    std::vector<double> expect{-2.0 - delta, 2.0 - delta, delta, delta};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(es.eigenvalues()[i], expect[i], 1e-13);
    EXPECT_NEAR(ground_state(spec).energy, -2.0 - delta, 1e-13);
  }
}

TEST(Hamiltonian, XYAtZeroCouplingsIsNegatedXX) {
  const Eigen::MatrixXd xy = build_hamiltonian({EdXY{0.0, 0.0}, 2}).toDense();
  const Eigen::MatrixXd xx = build_hamiltonian({EdXX{}, 2}).toDense();
  EXPECT_TRUE(xy.isApprox(-xx));
}

TEST(Hamiltonian, XYFieldAndPairTerms) {
  const Eigen::MatrixXd h = build_hamiltonian({EdXY{0.3, 0.4}, 2}).toDense();
  EXPECT_NEAR(h(0, 0), -2.0 * 0.3 * 2.0, 1e-15);  // both spins up
  EXPECT_NEAR(h(3, 3), 2.0 * 0.3 * 2.0, 1e-15);
  EXPECT_NEAR(h(1, 1), 0.0, 1e-15);
  EXPECT_NEAR(h(0, 3), -2.0 * 0.4, 1e-15);
  EXPECT_NEAR(h(1, 2), -2.0, 1e-15);
  EXPECT_TRUE(h.isApprox(h.transpose()));
}

TEST(Hamiltonian, SizeBounds) {
  EXPECT_EQ(code_of([] { build_hamiltonian({EdXX{}, 1}); }), ErrorCode::SizeOutOfRange);
  EXPECT_EQ(code_of([] { build_hamiltonian({EdXX{}, 20}); }), ErrorCode::SizeOutOfRange);
}

TEST(GroundState, ResidualAndNorm) {
  for (const EdModel& m : {EdModel{EdXX{}}, EdModel{EdHeisenberg{2.5}}, EdModel{EdXY{1.3, 0.4}}}) {
    const SpinChainSpec spec{m, 8};
    const auto h = build_hamiltonian(spec);
    const auto gs = ground_state(h, spec);
    EXPECT_NEAR(gs.state.norm(), 1.0, 1e-12);
    EXPECT_LE((h * gs.state - gs.energy * gs.state).norm(), 1e-8);
    EXPECT_NEAR(gs.state.dot(h * gs.state), gs.energy, 1e-10);
  }
}

TEST(GroundState, LanczosAgreesWithDense) {
  for (const EdModel& m : {EdModel{EdXX{}}, EdModel{EdHeisenberg{1.7}}, EdModel{EdXY{0.8, 0.9}}}) {
    const SpinChainSpec spec{m, 10};
    EdOptions dense_opt;
    EdOptions lanczos_opt;
    lanczos_opt.dense_max_sites = 0;
    const auto a = ground_state(spec, dense_opt);
    const auto b = ground_state(spec, lanczos_opt);
    EXPECT_NEAR(a.energy, b.energy, 1e-10);
    EXPECT_NEAR(a.gap, b.gap, 1e-8);
    EXPECT_LE(b.residual, 1e-8);
    const auto ra = reduced_spectrum(a.state, 10, SiteBlock::from_boundary(5));
    const auto rb = reduced_spectrum(b.state, 10, SiteBlock::from_boundary(5));
    for (std::size_t i = 0; i < ra.size(); ++i) EXPECT_NEAR(ra[i], rb[i], 1e-9);
  }
}

TEST(GroundState, LargeAnisotropySmallChain) {
  // Independent dense solve: the Néel pair is split by 0.765 at N = 4, so
  // nothing is flagged and the half-chain spectrum is far from (½, ½).
  const SpinChainSpec spec{EdHeisenberg{10.0}, 4};
  const auto gs = ground_state(spec);
  EXPECT_NEAR(gs.energy, -30.86472832, 1e-7);
  EXPECT_NEAR(gs.gap, 0.76497708, 1e-7);
  EXPECT_FALSE(gs.degenerate_flag);
  const auto rho = reduced_spectrum(gs.state, 4, SiteBlock::from_boundary(2));
  EXPECT_NEAR(rho[0], 0.68333611453354159, 1e-10);
  EXPECT_NEAR(rho[1], 0.31435880993575016, 1e-10);
}

TEST(GroundState, CatStateSelectsEvenParity) {
  // Weak field deep in the ordered phase: the lowest pair is degenerate to
  // machine precision.
  const SpinChainSpec spec{EdXY{0.02, 1.0}, 10};
  const auto gs = ground_state(spec);
  EXPECT_TRUE(gs.degenerate_flag);
  EXPECT_NEAR(parity_expectation(spec.model, spec.N, gs.state), 1.0, 1e-8);
  const auto again = ground_state(spec);
  EXPECT_EQ(gs.state, again.state);
}

TEST(ReducedSpectrum, ProductStateIsPure) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(64);
  v[37] = 1.0;
  for (int len = 1; len < 6; ++len) {
    const auto rho = reduced_spectrum(v, 6, SiteBlock::from_boundary(len));
    EXPECT_EQ(rho.size(), std::size_t{1} << len);
    EXPECT_NEAR(rho[0], 1.0, 1e-15);
  }
}

TEST(ReducedSpectrum, DualityAndPurity) {
  for (const EdModel& m : {EdModel{EdXX{}}, EdModel{EdHeisenberg{1.5}}, EdModel{EdXY{1.2, 0.5}}}) {
    const SpinChainSpec spec{m, 9};
    const auto gs = ground_state(spec);
    for (int len = 1; len < 9; ++len) {
      const SiteBlock b = SiteBlock::from_boundary(len);
      EXPECT_LE(duality_error(gs.state, 9, b), 1e-10);
      const auto rho = reduced_spectrum(gs.state, 9, b);
      EXPECT_NEAR(rho.sum(), 1.0, 1e-12);
      for (double w : rho.weights()) {
        EXPECT_GE(w, 0.0);
        EXPECT_LE(w, 1.0);
      }
    }
    // An interior block against an end block of the same state.
    const auto mid = reduced_spectrum(gs.state, 9, {3, 6});
    EXPECT_NEAR(mid.sum(), 1.0, 1e-12);
  }
}

TEST(ReducedSpectrum, BadBlocks) {
  const Eigen::VectorXd v = Eigen::VectorXd::Unit(16, 0);
  EXPECT_EQ(code_of([&] { reduced_spectrum(v, 4, {0, 0}); }), ErrorCode::BadBlock);
  EXPECT_EQ(code_of([&] { reduced_spectrum(v, 4, {0, 4}); }), ErrorCode::BadBlock);
  EXPECT_EQ(code_of([&] { reduced_spectrum(v, 4, {2, 5}); }), ErrorCode::BadBlock);
  EXPECT_EQ(code_of([&] { reduced_spectrum(v, 3, {0, 1}); }), ErrorCode::BadBlock);
}

TEST(EdFlow, XXBlockTowerSameParity) {
  const auto even = ed_block_flow({EdXX{}, 8}, {2, 4});
  EXPECT_TRUE(even.report.levels.fine_grained);
  EXPECT_LE(even.duality_error, 1e-10);
  const auto odd = ed_block_flow({EdXX{}, 8}, {1, 3});
  EXPECT_TRUE(odd.report.levels.fine_grained);
}

TEST(EdFlow, XXBlockTowerOscillates) {
  // One boundary site is maximally mixed; two sites are not.
  const auto f = ed_block_flow({EdXX{}, 8}, {1, 2});
  EXPECT_NEAR(f.points[0].dist[0], 0.5, 1e-12);
  EXPECT_NEAR(f.points[1].dist[0], 0.8668407, 1e-7);
  EXPECT_FALSE(f.report.levels.global);
}

TEST(EdFlow, TwoSiteParameterFlowIsEqual) {
  const auto f = ed_parameter_flow(HeisenbergFamily{}, 2, 1, {1.5, 2.0, 4.0},
                                   FlowDirection::AscendingMajorizes);
  for (const auto& p : f.report.pairwise) EXPECT_EQ(p.report.verdict, Verdict::Equal);
  EXPECT_TRUE(f.report.levels.fine_grained);
  for (const auto& pt : f.points) EXPECT_NEAR(pt.dist[0], 0.5, 1e-12);
}

TEST(EdFlow, XXFamilyHasNoCoupling) {
  EXPECT_EQ(code_of([] {
              ed_parameter_flow(XXBlockFamily{}, 4, 2, {1.0, 2.0}, FlowDirection::AscendingMajorizes);
            }),
            ErrorCode::ModelInvariantViolation);
}

TEST(Cache, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "majolab_cache_test";
  std::filesystem::remove_all(dir);
  const GroundStateCache cache(dir);
  const SpinChainSpec spec{EdHeisenberg{2.0}, 6};
  EXPECT_FALSE(cache.load(spec).has_value());
  const auto first = solve(spec, {}, &cache);
  EXPECT_TRUE(std::filesystem::exists(dir / (cache_key(spec) + ".bin")));
  EXPECT_EQ(std::filesystem::file_size(dir / (cache_key(spec) + ".bin")), 64u * 8u);
  const auto hit = cache.load(spec);
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->state, first.state);
  EXPECT_EQ(hit->energy, first.energy);
  // A different coupling must not hit the same entry.
  EXPECT_FALSE(cache.load({EdHeisenberg{2.5}, 6}).has_value());
  std::filesystem::remove_all(dir);
}
