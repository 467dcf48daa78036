#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "netclass/error.hpp"
#include "netclass/graph.hpp"
#include "test_support.hpp"

using namespace netclass;

TEST(Edgelist, ParsesCommentsHeaderAndWeights) {
  const auto g = read_edgelist("# nodes=5\n# a comment\n0 1\n1 2 2.5\n\n3 3 0.5\n");
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 2), 2.5);
  EXPECT_TRUE(g.has_edge(3, 3));
  EXPECT_EQ(g.out_degree(4), 0u);
}

TEST(Edgelist, NodeCountFromLargestIdWithoutHeader) {
  const auto g = read_edgelist("0 7\n");
  EXPECT_EQ(g.node_count(), 8u);
  EXPECT_EQ(g.in_degree(7), 1u);
}

TEST(Edgelist, DuplicateEdgesKeepLastWeight) {
  const auto g = read_edgelist("0 1 1\n0 1 3\n");
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 3.0);
}

TEST(Edgelist, MalformedLinesReportLineNumbers) {
  try {
    read_edgelist("0 1\n# ok\n2 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(read_edgelist("0 1 2 3\n"), ParseError);
  EXPECT_THROW(read_edgelist("0 1 abc\n"), ParseError);
  EXPECT_THROW(read_edgelist("-1 2\n"), ParseError);
  EXPECT_THROW(read_edgelist("# nodes=x\n"), ParseError);
}

TEST(Edgelist, ValidationErrors) {
  EXPECT_THROW(read_edgelist("0 1 -1\n"), ValidationError);
  EXPECT_THROW(read_edgelist(""), ValidationError);
  EXPECT_THROW(read_edgelist("# nodes=2\n0 5\n"), ValidationError);
  EXPECT_NO_THROW(read_edgelist("# nodes=3\n"));
  EXPECT_THROW(Graph(3, {{0, 3, 1.0}}), ValidationError);
  EXPECT_THROW(Graph(0), ValidationError);
}

TEST(Edgelist, RoundTripPreservesGraph) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = nctest::random_graph(12, 0.3, seed, true, true);
    EXPECT_EQ(read_edgelist(write_edgelist(g)), g);
  }
  const Graph isolated(4);
  EXPECT_EQ(read_edgelist(write_edgelist(isolated)), isolated);
}

TEST(Graph, EdgesSortedAndDegreesConsistent) {
  const Graph g(4, {{2, 1}, {0, 3}, {0, 1}, {3, 0}, {2, 2}});
  const auto edges = g.edges();
  for (std::size_t i = 1; i < edges.size(); ++i)
    EXPECT_TRUE(std::pair(edges[i - 1].source, edges[i - 1].target) < std::pair(edges[i].source, edges[i].target));
  std::size_t in_total = 0, out_total = 0;
  for (NodeId v = 0; v < 4; ++v) in_total += g.in_degree(v), out_total += g.out_degree(v);
  EXPECT_EQ(in_total, g.edge_count());
  EXPECT_EQ(out_total, g.edge_count());
}

TEST(Graph, RelabelMapsEveryEdge) {
  const auto g = nctest::random_graph(10, 0.3, 4, true, true);
  const auto perm = nctest::random_permutation(10, 9);
  const auto h = relabel(g, perm);
  EXPECT_EQ(h.edge_count(), g.edge_count());
  for (const auto& e : g.edges()) EXPECT_DOUBLE_EQ(h.weight(perm[e.source], perm[e.target]), e.weight);
  EXPECT_THROW(relabel(g, std::vector<NodeId>{0, 1}), ValidationError);
}

TEST(Markov, DanglingRowsBecomeUniform) {
  const Graph g(3, {{0, 1, 2.0}, {0, 2, 6.0}});
  const auto t = row_normalize(g);
  EXPECT_DOUBLE_EQ(t(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(t(0, 2), 0.75);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(t(1, j), 1.0 / 3.0);
}

TEST(Markov, PowerMatchesNaiveMultiplication) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = nctest::random_graph(9, 0.25, seed, true, true);
    const std::size_t n = g.node_count();
    // Oracle: transition matrix built from the edge list, multiplied by loops.
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    std::vector<double> row(n, 0.0);
    for (const auto& e : g.edges()) row[e.source] += e.weight;
    for (const auto& e : g.edges()) p[e.source][e.target] = e.weight / row[e.source];
    for (std::size_t i = 0; i < n; ++i)
      if (row[i] == 0.0)
        for (std::size_t j = 0; j < n; ++j) p[i][j] = 1.0 / static_cast<double>(n);
    auto power = p;
    for (int step = 1; step < 5; ++step) {
      std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j) next[i][j] += power[i][k] * p[k][j];
      power = next;
    }
    const auto t5 = markov_power(g, 5);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(t5(i, j), power[i][j], 1e-12);
        sum += t5(i, j);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
  EXPECT_THROW(markov_power(Graph(2), 0), ValidationError);
}

TEST(Markov, BinarizeIsStrictAndKeepsSelfLoops) {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.5, 0.9, 0.1;
  const auto b = binarize(TransitionMatrix(m));  // threshold 1/2
  EXPECT_FALSE(b.has_edge(0, 0));
  EXPECT_FALSE(b.has_edge(0, 1));
  EXPECT_TRUE(b.has_edge(1, 0));
  EXPECT_FALSE(b.has_edge(1, 1));
  const auto c = binarize(TransitionMatrix(m), 0.05);
  EXPECT_TRUE(c.has_edge(1, 1));
  EXPECT_EQ(c.edge_count(), 4u);
}

TEST(Markov, WeightedGraphKeepsPositiveEntries) {
  Eigen::MatrixXd m(2, 2);
  m << 0.0, 1.0, 0.25, 0.75;
  const auto g = to_weighted_graph(TransitionMatrix(m));
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 0.25);
}
