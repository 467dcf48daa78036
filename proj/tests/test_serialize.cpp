#include <gtest/gtest.h>

#include <filesystem>

#include "netclass/error.hpp"
#include "netclass/serialize.hpp"
#include "netclass/svg.hpp"
#include "test_support.hpp"

using namespace netclass;

TEST(Serialize, FeatureSetRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = extract_features(nctest::random_graph(12, 0.25, seed, true, true));
    EXPECT_EQ(feature_set_from_json(parse_json(dump(to_json(f)))), f);
  }
}

TEST(Serialize, CountsAreKeyedByName) {
  const auto f = extract_features(Graph(3, {{0, 1}, {1, 2}, {2, 0}}));
  const auto j = to_json(f);
  EXPECT_EQ(j["direct"]["triad_census"]["030C"].get<std::uint64_t>(), 1u);
  EXPECT_EQ(j["direct"]["triad_census"].size(), 16u);
  EXPECT_EQ(j["direct"]["four_motifs"].size(), 6u);
}

TEST(Serialize, WeightsRoundTripAndValidation) {
  const auto& w = canonical_weights();
  EXPECT_EQ(weights_from_json(parse_json(dump(to_json(w)))), w);

  auto bad = to_json(w);
  bad["weights"]["direct_clustering"] = -0.1;
  EXPECT_THROW(weights_from_json(bad), ValidationError);
  bad = to_json(w);
  bad["scales"]["direct_pagerank"] = 0.0;
  EXPECT_THROW(weights_from_json(bad), ValidationError);
  bad = to_json(w);
  bad["weights"]["direct_in_degrees"] = bad["weights"]["direct_in_degrees"].get<double>() + 0.01;
  EXPECT_THROW(weights_from_json(bad), ValidationError);
  bad = to_json(w);
  bad["weights"].erase("markov5_four_motifs");
  EXPECT_THROW(weights_from_json(bad), ValidationError);
}

TEST(Serialize, AssignmentRoundTripAndValidation) {
  const MixtureAssignment a{{Mechanism::ErdosRenyi, 0.2}, {Mechanism::Niche, 0.3}, {Mechanism::SmallWorld, 1.0}};
  EXPECT_EQ(assignment_from_json(parse_json(dump(to_json(a)))), a);
  EXPECT_THROW(assignment_from_json(parse_json(R"([{"kind": "niche", "param": 0.9}])")), ValidationError);
  EXPECT_THROW(assignment_from_json(parse_json(R"([{"kind": "xx", "param": 0.1}])")), ValidationError);
  EXPECT_THROW(assignment_from_json(parse_json(R"({"kind": "er"})")), ValidationError);
}

TEST(Serialize, PanelRoundTripAndValidation) {
  MixturePanelConfig cfg;
  cfg.size = 3;
  cfg.nodes = 12;
  const auto panel = generate_mixture_panel(cfg, SeededRng(1));
  const auto back = panel_from_json(parse_json(dump(panel_to_json(panel))));
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back[i].id, panel[i].id);
    EXPECT_EQ(back[i].proportions, panel[i].proportions);
    EXPECT_EQ(back[i].params, panel[i].params);
    EXPECT_EQ(back[i].normalized_ascendency, panel[i].normalized_ascendency);
    EXPECT_EQ(back[i].features, panel[i].features);
  }
  auto bad = panel_to_json(panel);
  bad["entries"][0]["proportions"]["er"] = 5.0;
  EXPECT_THROW(panel_from_json(bad), ValidationError);
}

TEST(Serialize, ReportCarriesEveryField) {
  ClassificationReport r;
  r.alpha = 0.05;
  r.tests.push_back({Mechanism::PreferentialAttachment, 2.0, 0.1, 0.5, 0.4, true});
  r.tests.push_back({Mechanism::Niche, 0.2, 0.6, 0.02, 0.001, false});
  r.verdict = {Mechanism::PreferentialAttachment};
  const auto j = to_json(r);
  EXPECT_EQ(j["tests"][0]["mechanism"], "pa");
  EXPECT_EQ(j["tests"][1]["consistent"], false);
  EXPECT_EQ(j["tests"][1]["asymptotic_p_value"].get<double>(), 0.001);
  EXPECT_EQ(j["verdict"], parse_json(R"(["pa"])"));
}

TEST(Serialize, ParseErrorsAndFiles) {
  EXPECT_THROW(parse_json("{not json"), ParseError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ValidationError);
  const auto path = std::filesystem::temp_directory_path() / "netclass_serialize_test.json";
  write_text_file(path, dump(to_json(canonical_weights())));
  EXPECT_EQ(read_weights_file(path), canonical_weights());
  std::filesystem::remove(path);
}

TEST(Svg, DeterministicAndWellFormed) {
  const std::vector<ScatterPoint> pts{{0.0, 1.0, "a"}, {2.0, -1.0, "b"}, {1.0, 0.5, "a"}};
  const auto s = scatter_svg(pts, "t", "x", "y");
  EXPECT_EQ(s, scatter_svg(pts, "t", "x", "y"));
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
}
