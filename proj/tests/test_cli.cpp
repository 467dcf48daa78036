#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "netclass/classifier.hpp"
#include "netclass/serialize.hpp"

using namespace netclass;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Last JSON line of stderr.
Json last_json(const std::string& err) {
  std::istringstream s(err);
  std::string line, last;
  while (std::getline(s, line))
    if (!line.empty() && line[0] == '{') last = line;
  return parse_json(last);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("netclass_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("NETCLASS_WEIGHTS");
  }
  void TearDown() override {
    unsetenv("NETCLASS_WEIGHTS");
    fs::remove_all(dir_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateZeroProbabilityHasNoEdges) {
  const auto r = run({"generate", "--mechanism", "er", "--param", "0", "--nodes", "10", "--seed", "1", "--out",
                      path("g.edgelist")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto g = read_edgelist_file(path("g.edgelist"));
  EXPECT_EQ(g.node_count(), 10u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST_F(CliTest, ClassifyTwiceIsByteIdentical) {
  ASSERT_EQ(run({"generate", "--mechanism", "er", "--param", "0", "--nodes", "10", "--seed", "1", "--out",
                 path("g.edgelist")})
                .code,
            0);
  for (const char* name : {"a.json", "b.json"})
    ASSERT_EQ(run({"classify", "--in", path("g.edgelist"), "--seed", "3", "--null-size", "8", "--replicates", "1",
                   "--mechanisms", "er,pa", "--out", path(name)})
                  .code,
              0);
  const auto a = slurp(path("a.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.json")));
  const auto j = parse_json(a);
  EXPECT_EQ(j["tests"].size(), 2u);
  EXPECT_EQ(j["tests"][0]["mechanism"], "er");
}

TEST_F(CliTest, ClassifyMatchesLibrary) {
  ASSERT_EQ(run({"generate", "--mechanism", "sw", "--param", "0.3", "--nodes", "14", "--seed", "2", "--out",
                 path("g.edgelist")})
                .code,
            0);
  const auto r = run({"classify", "--in", path("g.edgelist"), "--seed", "5", "--null-size", "7", "--replicates", "1",
                      "--mechanisms", "sw,dd", "--alpha", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  SimulationConfig sim;
  sim.replicates = 1;
  sim.null_size = 7;
  const auto report = classify(read_edgelist_file(path("g.edgelist")),
                               std::vector<Mechanism>{Mechanism::SmallWorld, Mechanism::DuplicationDivergence}, 0.1,
                               canonical_weights(), SeededRng(5), sim);
  EXPECT_EQ(r.out, dump(to_json(report)));
}

TEST_F(CliTest, RocAucColumnMatchesLibrary) {
  const auto r = run({"roc", "--per-mechanism", "2", "--nodes", "12", "--seed", "7", "--replicates", "1",
                      "--null-size", "6", "--out", path("roc.csv"), "--svg", path("roc.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  SimulationConfig sim;
  sim.replicates = 1;
  sim.null_size = 6;
  const auto lib = roc_evaluate({2, 12}, canonical_weights(), SeededRng(7), sim);

  std::ifstream csv(path("roc.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "mechanism,threshold,fpr,tpr,auc");
  std::map<std::string, double> auc;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string mech, threshold, fpr, tpr, a;
    std::getline(fields, mech, ',');
    std::getline(fields, threshold, ',');
    std::getline(fields, fpr, ',');
    std::getline(fields, tpr, ',');
    std::getline(fields, a, ',');
    auc[mech] = std::stod(a);
    ++rows;
  }
  std::size_t expected_rows = 0;
  for (const auto& c : lib.curves) {
    EXPECT_EQ(auc.at(std::string(to_string(c.kind))), c.auc);
    expected_rows += c.points.size();
  }
  EXPECT_EQ(rows, expected_rows);
  EXPECT_NE(slurp(path("roc.svg")).find("<svg"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"frobnicate"}, {"generate", "--bogus"}, {}, {"classify", "--in", "x", "--alpha", "1"},
           {"identifiability", "--mechanisms", "1..7"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(last_json(r.err)["error"]["kind"], "usage");
  }
}

TEST_F(CliTest, InvalidInputExitsOneWithJson) {
  {
    std::ofstream(path("bad.edgelist")) << "0 1\n1 x\n";
  }
  auto r = run({"features", "--in", path("bad.edgelist")});
  EXPECT_EQ(r.code, 1);
  auto e = last_json(r.err)["error"];
  EXPECT_EQ(e["kind"], "parse");
  EXPECT_EQ(e["line"], 2);

  r = run({"features", "--in", path("missing.edgelist")});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(last_json(r.err).contains("error"));

  r = run({"generate", "--mechanism", "niche", "--param", "0.9"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(last_json(r.err)["error"]["kind"], "validation");
}

TEST_F(CliTest, RunConfigIsLogged) {
  const auto r = run({"generate", "--mechanism", "pa", "--param", "1", "--nodes", "12", "--seed", "42"});
  ASSERT_EQ(r.code, 0);
  std::istringstream s(r.err);
  std::string first;
  std::getline(s, first);
  const auto cfg = parse_json(first)["run_config"];
  EXPECT_EQ(cfg["command"], "generate");
  EXPECT_EQ(cfg["seed"], 42);
  EXPECT_EQ(cfg["nodes"], 12);
  EXPECT_EQ(cfg["replicates"], 3);
  EXPECT_EQ(cfg["alpha"], 0.05);
  EXPECT_EQ(cfg["null_size"], 50);
  EXPECT_EQ(cfg["weights"], "canonical");
  EXPECT_NE(r.out.find("# mechanism=pa"), std::string::npos);
}

TEST_F(CliTest, WeightsFromFlagAndEnvironment) {
  // Uniform weights, unit scales: a distinct, valid weights file.
  EnsembleWeights w;
  w.weights.fill(1.0 / 18.0);
  w.scales.fill(1.0);
  double total = 0.0;
  for (double x : w.weights) total += x;
  ASSERT_NEAR(total, 1.0, 1e-12);
  write_text_file(path("w.json"), dump(to_json(w)));
  ASSERT_EQ(run({"generate", "--mechanism", "dd", "--param", "0.3", "--nodes", "12", "--out", path("g.edgelist")}).code,
            0);
  const std::vector<std::string> base{"classify", "--in", path("g.edgelist"), "--null-size", "6", "--replicates", "1",
                                      "--mechanisms", "dd"};

  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--weights", path("w.json")});
  const auto flag = run(with_flag);
  ASSERT_EQ(flag.code, 0) << flag.err;

  setenv("NETCLASS_WEIGHTS", path("w.json").c_str(), 1);
  const auto env = run(base);
  ASSERT_EQ(env.code, 0) << env.err;
  EXPECT_EQ(env.out, flag.out);
  EXPECT_EQ(parse_json(env.err.substr(0, env.err.find('\n')))["run_config"]["weights"], path("w.json"));

  SimulationConfig sim;
  sim.replicates = 1;
  sim.null_size = 6;
  const auto report = classify(read_edgelist_file(path("g.edgelist")), std::vector<Mechanism>{Mechanism::DuplicationDivergence},
                               0.05, w, SeededRng(1), sim);
  EXPECT_EQ(flag.out, dump(to_json(report)));

  setenv("NETCLASS_WEIGHTS", path("nope.json").c_str(), 1);
  EXPECT_EQ(run(base).code, 1);
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
  const std::vector<std::string> args{"mixture-panel", "--size", "6", "--nodes", "15", "--seed", "9"};
  auto one = args, four = args;
  one.insert(one.end(), {"--threads", "1"});
  four.insert(four.end(), {"--threads", "4"});
  const auto a = run(one), b = run(four);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, StatespaceUsesLabelsAndWritesSvg) {
  int i = 0;
  for (const char* mech : {"er", "pa", "sw"}) {
    const auto r = run({"generate", "--mechanism", mech, "--param", "0.5", "--nodes", "15", "--seed",
                        std::to_string(++i), "--out", path(std::string(mech) + ".edgelist")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  const auto r = run({"statespace", "--in", dir_.string(), "--out", path("space.json"), "--svg", path("space.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = read_json_file(path("space.json"));
  EXPECT_EQ(j["ids"], parse_json(R"(["er", "pa", "sw"])"));
  EXPECT_EQ(j["labels"][1]["kind"], "pa");
  EXPECT_EQ(j["distances"].size(), 3u);
  EXPECT_EQ(j["coordinates"].size(), 3u);
  EXPECT_NE(slurp(path("space.svg")).find("</svg>"), std::string::npos);
}

TEST_F(CliTest, AscendencyPredictAndLoo) {
  {
    std::ofstream(path("g.edgelist")) << "0 1\n1 2\n2 0\n";
  }
  auto r = run({"ascendency", "--in", path("g.edgelist")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(parse_json(r.out)["normalized"].get<double>(), 1.0, 1e-12);

  ASSERT_EQ(run({"mixture-panel", "--size", "20", "--nodes", "12", "--out", path("panel.json")}).code, 0);
  r = run({"predict", "--in", path("g.edgelist"), "--panel", path("panel.json"), "--k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const double p = parse_json(r.out)["predicted_normalized_ascendency"].get<double>();
  EXPECT_GE(p, 0.0);
  EXPECT_LE(p, 1.0);
  r = run({"loo", "--panel", path("panel.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_json(r.out)["pairs"].size(), 20u);
}
