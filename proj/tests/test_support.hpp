#pragma once

#include <cstdint>
#include <algorithm>
#include <random>
#include <vector>

#include "netclass/graph.hpp"

namespace nctest {

using namespace netclass;

/// Each ordered pair (optionally including self-pairs) present with
/// probability p. Weights are unit, or dyadic in [1/8, 4] when `weighted`.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool loops = false, bool weighted = false) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> w(1, 32);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) {
      if (i == j && !loops) continue;
      if (u(eng) < p) edges.push_back({i, j, weighted ? w(eng) / 8.0 : 1.0});
    }
  return Graph(n, std::move(edges));
}

inline std::vector<NodeId> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<NodeId> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeId>(i);
  std::mt19937_64 eng(seed);
  std::shuffle(perm.begin(), perm.end(), eng);
  return perm;
}

/// Dense 0/1 symmetrized adjacency without self-loops.
inline std::vector<std::vector<bool>> undirected(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges())
    if (e.source != e.target) a[e.source][e.target] = a[e.target][e.source] = true;
  return a;
}

}  // namespace nctest
