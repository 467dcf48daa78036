#pragma once

// Independent reference implementations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netclass/features.hpp"
#include "test_support.hpp"

namespace nctest {

using namespace netclass;

// Rule-based triad typing on the edges among three nodes, mirroring the
// usual sociological definitions edge by edge.
inline std::string triad_type(const std::vector<std::pair<int, int>>& e) {
  const auto same = [](std::pair<int, int> a, std::pair<int, int> b) {
    return std::minmax(a.first, a.second) == std::minmax(b.first, b.second);
  };
  std::vector<int> idx(e.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  switch (e.size()) {
    case 0: return "003";
    case 1: return "012";
    case 2:
      if (same(e[0], e[1])) return "102";
      if (e[0].first == e[1].first) return "021D";
      if (e[0].second == e[1].second) return "021U";
      return "021C";
    case 3:
      do {
        const auto a = e[idx[0]], b = e[idx[1]], c = e[idx[2]];
        if (same(a, b)) return c.first == a.first || c.first == a.second ? "111U" : "111D";
      } while (std::next_permutation(idx.begin(), idx.end()));
      {
        std::set<int> sources = {e[0].first, e[1].first, e[2].first};
        return sources.size() == 3 ? "030C" : "030T";
      }
    case 4:
      do {
        const auto a = e[idx[0]], b = e[idx[1]], c = e[idx[2]], d = e[idx[3]];
        if (!same(a, b)) continue;
        if (same(c, d)) return "201";
        if (c.first == d.first) return "120D";
        if (c.second == d.second) return "120U";
        if (c.second == d.first) return "120C";
      } while (std::next_permutation(idx.begin(), idx.end()));
      return "?";
    case 5: return "210";
    case 6: return "300";
  }
  return "?";
}

inline TriadCensus brute_force_census(const Graph& g) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < kTriadNames.size(); ++i) index[std::string(kTriadNames[i])] = i;
  TriadCensus c{};
  const auto n = static_cast<NodeId>(g.node_count());
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      for (NodeId d = b + 1; d < n; ++d) {
        std::vector<std::pair<int, int>> edges;
        const NodeId ids[3] = {a, b, d};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (i != j && g.has_edge(ids[i], ids[j])) edges.push_back({i, j});
        ++c[index.at(triad_type(edges))];
      }
  return c;
}

inline FourMotifCounts brute_force_motifs(const Graph& g) {
  const auto a = nctest::undirected(g);
  const std::size_t n = g.node_count();
  FourMotifCounts c{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          const std::size_t v[4] = {i, j, k, l};
          int deg[4] = {0, 0, 0, 0}, edges = 0;
          for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y)
              if (a[v[x]][v[y]]) ++deg[x], ++deg[y], ++edges;
          // Connectivity by flood fill from the first node.
          bool seen[4] = {true, false, false, false};
          for (int round = 0; round < 4; ++round)
            for (int x = 0; x < 4; ++x)
              for (int y = 0; y < 4; ++y)
                if (seen[x] && a[v[x]][v[y]]) seen[y] = true;
          if (!(seen[1] && seen[2] && seen[3])) continue;
          const int max_deg = *std::max_element(deg, deg + 4);
          if (edges == 3) ++c[max_deg == 3 ? 1 : 0];
          if (edges == 4) ++c[max_deg == 3 ? 3 : 2];
          if (edges == 5) ++c[4];
          if (edges == 6) ++c[5];
        }
  return c;
}

inline Eigen::VectorXd pagerank_linear_solve(const Graph& g, double d) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
  for (const auto& e : g.edges()) row(e.source) += e.weight;
  for (const auto& e : g.edges()) p(e.source, e.target) = e.weight / row(e.source);
  for (Eigen::Index i = 0; i < n; ++i)
    if (row(i) == 0.0) p.row(i).setConstant(1.0 / static_cast<double>(n));
  const Eigen::MatrixXd lhs = (Eigen::MatrixXd::Identity(n, n) - d * p).transpose();
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, (1.0 - d) / static_cast<double>(n));
  return lhs.fullPivLu().solve(rhs);
}

/// sup over every observed value of |ECDF_x(v) - ECDF_y(v)|, by direct counting.
inline double brute_force_ks(const std::vector<double>& x, const std::vector<double>& y) {
  auto ecdf = [](const std::vector<double>& s, double v) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [v](double e) { return e <= v; })) /
           static_cast<double>(s.size());
  };
  double d = 0.0;
  for (const auto* s : {&x, &y})
    for (double v : *s) d = std::max(d, std::abs(ecdf(x, v) - ecdf(y, v)));
  return d;
}

}  // namespace nctest
