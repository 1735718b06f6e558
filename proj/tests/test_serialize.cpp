#include <gtest/gtest.h>

#include <sstream>

#include "majolab/serialize.hpp"

using namespace majolab;

TEST(Serialize, DistributionJsonIsDescendingArray) {
  const auto j = to_json(canonicalize({0.2, 0.5, 0.3}));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.get<std::vector<double>>(), (std::vector<double>{0.5, 0.3, 0.2}));
}

TEST(Serialize, CsvRoundTripIsExact) {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const auto d = canonicalize(random_simplex_point(rng, 1 + uniform_index(rng, 12)), 1e-12, true);
    std::stringstream ss;
    write_csv(ss, d);
    EXPECT_EQ(distribution_from_csv(ss), d);
    EXPECT_EQ(distribution_from_json(to_json(d)), d);
  }
}

TEST(Serialize, MajorizationReportFields) {
  const auto j = to_json(majorizes(canonicalize({0.6, 0.25, 0.15}), canonicalize({0.5, 0.45, 0.05})));
  EXPECT_EQ(j.at("verdict"), "INCOMPARABLE");
  EXPECT_EQ(j.at("first_violation"), 1);
  ASSERT_EQ(j.at("cumulant_gaps").size(), 3u);
  EXPECT_EQ(j.at("cumulant_gaps")[0][0], 1);

  const auto eq = to_json(majorizes(canonicalize({1.0}), canonicalize({1.0})));
  EXPECT_TRUE(eq.at("first_violation").is_null());
  EXPECT_EQ(eq.at("verdict"), "EQUAL");
}

TEST(Serialize, FlowReportFields) {
  const std::vector<FlowPoint> pts{{1.0, canonicalize({1.0, 0.0})}, {2.0, canonicalize({0.5, 0.5})}};
  const auto r = flow_report(pts, FlowDirection::DescendingMajorizes);
  const auto j = to_json(r);
  EXPECT_EQ(j.at("levels").at("fine_grained"), true);
  EXPECT_EQ(j.at("levels").at("monotonous"), true);
  EXPECT_EQ(j.at("levels").at("global"), true);
  EXPECT_EQ(j.at("pairwise")[0].at("verdict"), "MAJORIZED_BY");
  EXPECT_EQ(j.at("pairwise")[0].at("disordered"), 2.0);
  EXPECT_EQ(j.at("direction"), "DESCENDING_MAJORIZES");

  std::stringstream ss;
  write_flow_csv(ss, r);
  EXPECT_EQ(ss.str(),
            "param,entropy,largest,verdict\n"
            "1,0,1,\n"
            "2,0.69314718055994529,0.5,HOLDS\n");
}

TEST(Serialize, CftSpecDocument) {
  const auto doc = cft_spec_from_json(json::parse(
      R"({"exponents": [0.125, 1.0], "degeneracies": [1, 2], "kappa": 0.5, "uv_cutoff": 2.0})"));
  EXPECT_EQ(doc.spectrum.size(), 2u);
  EXPECT_EQ(doc.spectrum.degeneracies()[1], 2u);
  EXPECT_EQ(doc.params.kappa, 0.5);
  EXPECT_EQ(doc.params.uv_cutoff, 2.0);
  EXPECT_FALSE(doc.spectrum.b().has_value());
  EXPECT_THROW(cft_spec_from_json(json::parse(R"({"exponents": [1.0]})")), Error);
  const auto back = cft_spec_from_json(to_json(doc.spectrum, doc.params));
  EXPECT_EQ(back.spectrum.exponents(), doc.spectrum.exponents());
}

TEST(Serialize, QFlowCsv) {
  std::istringstream is("g,q\n# comment\n0,0.5\n1,0.25\n2,0.1\n");
  const auto f = qflow_from_csv(is);
  ASSERT_EQ(f.samples.size(), 3u);
  EXPECT_EQ(f.samples[1].first, 1.0);
  EXPECT_EQ(f.samples[1].second, 0.25);
}

TEST(Serialize, AssembledSpectrumJson) {
  const auto j = to_json(assemble_model(HeisenbergChain{2.0}, 3));
  EXPECT_EQ(j.at("model").at("name"), "heisenberg");
  EXPECT_EQ(j.at("M"), 3);
  EXPECT_EQ(j.at("weights").size(), 8u);
  EXPECT_TRUE(j.contains("tail_bound"));
  EXPECT_EQ(j.at("critical"), false);
}
