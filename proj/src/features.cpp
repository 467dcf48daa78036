#include "netclass/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "netclass/error.hpp"

namespace netclass {
namespace {

/// Fixed-width bitset rows, one per node.
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void set(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] |= 1ULL << (v % 64); }
  bool test(std::size_t u, std::size_t v) const { return (bits_[u * words_ + v / 64] >> (v % 64)) & 1ULL; }
  const std::uint64_t* row(std::size_t u) const { return bits_.data() + u * words_; }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Symmetrized simple graph: self-loops dropped, u~v iff u->v or v->u.
struct Undirected {
  BitMatrix adj;
  std::vector<std::vector<NodeId>> nbrs;  // ascending
  std::vector<std::uint64_t> degree;
  std::uint64_t edge_count = 0;

  explicit Undirected(const Graph& g) : adj(g.node_count()), nbrs(g.node_count()), degree(g.node_count(), 0) {
    const std::size_t n = g.node_count();
    for (NodeId u = 0; u < n; ++u)
      for (auto v : g.out_neighbors(u))
        if (u != v) {
          adj.set(u, v);
          adj.set(v, u);
        }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v)
        if (adj.test(u, v)) nbrs[u].push_back(static_cast<NodeId>(v));
      degree[u] = nbrs[u].size();
      edge_count += degree[u];
    }
    edge_count /= 2;
  }

  std::uint64_t common(std::size_t u, std::size_t v) const {
    const auto* a = adj.row(u);
    const auto* b = adj.row(v);
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < adj.words(); ++w) c += static_cast<std::uint64_t>(std::popcount(a[w] & b[w]));
    return c;
  }
};

// Triad type (1-based, census order) for the 6-bit code
//   link(v,u) + 2 link(u,v) + 4 link(v,w) + 8 link(w,v) + 16 link(u,w) + 32 link(w,u).
constexpr std::array<std::uint8_t, 64> kTricodeType = {
    1, 2,  2, 3,  2, 4,  6,  8,  2, 6,  5,  7,  3, 8,  7,  11, 2, 6,  4,  8,  5,  9,
    9, 13, 6, 10, 9, 14, 7,  14, 12, 15, 2, 5,  6, 7,  6,  9,  10, 14, 4, 9,  9,  12,
    8, 13, 14, 15, 3, 7, 8,  11, 7, 12, 14, 15, 8, 14, 13, 15, 11, 15, 15, 16};

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace

TriadCensus triad_census(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) throw ValidationError("triad census needs at least 3 nodes");
  BitMatrix link(n);
  for (NodeId u = 0; u < n; ++u)
    for (auto v : g.out_neighbors(u))
      if (u != v) link.set(u, v);
  const Undirected und(g);

  TriadCensus census{};
  std::vector<std::uint64_t> joined(link.words());
  // Batagelj-Mrvar: each connected triad is visited once from its lowest
  // qualifying dyad; dyadic triads are counted in bulk per edge.
  for (std::size_t v = 0; v < n; ++v) {
    for (auto u : und.nbrs[v]) {
      if (u <= v) continue;
      const auto* rv = und.adj.row(v);
      const auto* ru = und.adj.row(u);
      std::size_t joined_size = 0;
      for (std::size_t w = 0; w < joined.size(); ++w) {
        joined[w] = rv[w] | ru[w];
        joined_size += static_cast<std::size_t>(std::popcount(joined[w]));
      }
      joined_size -= 2;  // u and v are in each other's rows
      const bool mutual = link.test(v, u) && link.test(u, v);
      census[mutual ? 2 : 1] += n - joined_size - 2;
      for (std::size_t word = 0; word < joined.size(); ++word) {
        std::uint64_t bits = joined[word];
        while (bits) {
          const std::size_t w = word * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          if (w == u || w == v) continue;
          if (u < w || (v < w && w < u && !und.adj.test(v, w))) {
            const unsigned code = link.test(v, u) + 2 * link.test(u, v) + 4 * link.test(v, w) +
                                  8 * link.test(w, v) + 16 * link.test(u, w) + 32 * link.test(w, u);
            ++census[kTricodeType[code] - 1];
          }
        }
      }
    }
  }
  const std::uint64_t counted = std::accumulate(census.begin() + 1, census.end(), std::uint64_t{0});
  census[0] = choose3(n) - counted;
  return census;
}

FourMotifCounts four_motif_counts(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 4) throw ValidationError("4-node motif counts need at least 4 nodes");
  const Undirected und(g);

  // Non-induced counts of each pattern, then inclusion-exclusion down to
  // induced counts using how often each pattern sits inside the denser ones.
  std::int64_t stars = 0, tailed = 0, paths = 0, cycles2 = 0, diamonds = 0, cliques = 0;
  std::vector<std::uint64_t> tri_at(n, 0);
  std::int64_t triangles3 = 0;  // each triangle counted once per edge
  for (std::size_t u = 0; u < n; ++u) {
    const auto du = static_cast<std::int64_t>(und.degree[u]);
    stars += static_cast<std::int64_t>(choose3(und.degree[u]));
    for (auto v : und.nbrs[u]) {
      if (v <= u) continue;
      const auto c = static_cast<std::int64_t>(und.common(u, v));
      const auto dv = static_cast<std::int64_t>(und.degree[v]);
      paths += (du - 1) * (dv - 1);
      triangles3 += c;
      diamonds += c * (c - 1) / 2;
    }
    for (std::size_t w = u + 1; w < n; ++w) cycles2 += static_cast<std::int64_t>(choose2(und.common(u, w)));
  }
  // Triangles per node and 4-cliques by extending ordered triangles u<v<w.
  std::vector<std::uint64_t> mask(und.adj.words());
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : und.nbrs[u]) {
      if (v <= u) continue;
      for (auto w : und.nbrs[v]) {
        if (w <= v || !und.adj.test(u, w)) continue;
        ++tri_at[u];
        ++tri_at[v];
        ++tri_at[w];
        const auto* ru = und.adj.row(u);
        const auto* rv = und.adj.row(v);
        const auto* rw = und.adj.row(w);
        for (std::size_t k = 0; k < mask.size(); ++k) {
          std::uint64_t bits = ru[k] & rv[k] & rw[k];
          // keep only x > w
          const std::size_t base = k * 64;
          if (base + 63 <= w) bits = 0;
          else if (base <= w) bits &= ~((2ULL << (w - base)) - 1);
          cliques += std::popcount(bits);
        }
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    tailed += static_cast<std::int64_t>(tri_at[v]) * (static_cast<std::int64_t>(und.degree[v]) - 2);
  paths -= triangles3;  // closed 3-paths: 3 per triangle, triangles3 = 3T
  const std::int64_t cycles = cycles2 / 2;

  const std::int64_t k4 = cliques;
  const std::int64_t diamond = diamonds - 6 * k4;
  const std::int64_t tail = tailed - 4 * diamond - 12 * k4;
  const std::int64_t cycle = cycles - diamond - 3 * k4;
  const std::int64_t star = stars - tail - 2 * diamond - 4 * k4;
  const std::int64_t path = paths - 4 * cycle - 2 * tail - 6 * diamond - 12 * k4;
  return {static_cast<std::uint64_t>(path), static_cast<std::uint64_t>(star), static_cast<std::uint64_t>(cycle),
          static_cast<std::uint64_t>(tail), static_cast<std::uint64_t>(diamond), static_cast<std::uint64_t>(k4)};
}

double degree_entropy(std::span<const double> values, EntropyMode mode) {
  if (values.empty()) throw ValidationError("entropy of an empty vector");
  std::vector<double> counts;
  if (mode == EntropyMode::DistinctValues) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      counts.push_back(static_cast<double>(j - i));
      i = j;
    }
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double width = *hi - *lo;
    // Spreads at rounding level (e.g. Markov out-strengths, all 1) are one bin.
    if (width <= 1e-9 * std::max(1.0, std::abs(*hi))) return 0.0;
    counts.assign(kStrengthBins, 0.0);
    for (double x : values) {
      auto bin = static_cast<std::size_t>((x - *lo) / width * static_cast<double>(kStrengthBins));
      counts[std::min(bin, kStrengthBins - 1)] += 1.0;
    }
  }
  const double total = static_cast<double>(values.size());
  double h = 0.0;
  for (double c : counts)
    if (c > 0.0) h -= (c / total) * std::log2(c / total);
  return std::max(0.0, h);
}

std::vector<double> pagerank(const Graph& g, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) throw ValidationError("damping must lie in (0, 1)");
  const std::size_t n = g.node_count();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> strength(n, 0.0);
  for (NodeId v = 0; v < n; ++v)
    for (double w : g.out_weights(v)) strength[v] += w;

  std::vector<double> x(n, inv_n), next(n);
  for (int iter = 0; iter < 200; ++iter) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (strength[v] <= 0.0) dangling += x[v];
    std::fill(next.begin(), next.end(), (1.0 - damping) * inv_n + damping * dangling * inv_n);
    for (NodeId v = 0; v < n; ++v) {
      if (strength[v] <= 0.0) continue;
      const double share = damping * x[v] / strength[v];
      const auto nbrs = g.out_neighbors(v);
      const auto ws = g.out_weights(v);
      for (std::size_t k = 0; k < nbrs.size(); ++k) next[nbrs[k]] += share * ws[k];
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) change += std::abs(next[v] - x[v]);
    x.swap(next);
    if (change < 1e-10) break;
  }
  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  for (auto& value : x) value /= total;
  return x;
}

namespace {

/// Label-independent node colors by a few rounds of neighborhood refinement;
/// used only to break modularity ties without depending on node ids.
std::vector<std::uint64_t> structural_colors(const Undirected& und) {
  auto mix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  };
  const std::size_t n = und.nbrs.size();
  std::vector<std::uint64_t> color(n), next(n);
  for (std::size_t v = 0; v < n; ++v) color[v] = mix(und.degree[v]);
  std::vector<std::uint64_t> around;
  for (int round = 0; round < 4; ++round) {
    for (std::size_t v = 0; v < n; ++v) {
      around.clear();
      for (auto u : und.nbrs[v]) around.push_back(color[u]);
      std::sort(around.begin(), around.end());
      std::uint64_t h = mix(color[v]);
      for (auto c : around) h = mix(h ^ c);
      next[v] = h;
    }
    color.swap(next);
  }
  return color;
}

}  // namespace

std::size_t count_communities(const Graph& g) {
  const std::size_t n = g.node_count();
  const Undirected und(g);
  const auto m = static_cast<std::int64_t>(und.edge_count);
  if (m == 0) return n;

  // Integer bookkeeping: with L_c internal edges and D_c degree total,
  // 4m^2 Q = sum_c (4m L_c - D_c^2), and merging i, j changes it by
  // 2 (2m E_ij - D_i D_j) where E_ij counts edges between them.
  std::vector<std::int64_t> between(n * n, 0);
  std::vector<std::int64_t> internal(n, 0), degree(n);
  for (std::size_t u = 0; u < n; ++u) {
    degree[u] = static_cast<std::int64_t>(und.degree[u]);
    for (auto v : und.nbrs[u]) between[u * n + v] = 1;
  }
  auto color = structural_colors(und);
  std::vector<bool> alive(n, true);
  std::int64_t quality = 0;
  for (std::size_t u = 0; u < n; ++u) quality -= degree[u] * degree[u];
  std::int64_t best_quality = quality;
  std::size_t communities = n, best_communities = n;

  while (communities > 1) {
    bool found = false;
    std::int64_t best_gain = 0;
    std::pair<std::uint64_t, std::uint64_t> best_key{};
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j] || between[i * n + j] == 0) continue;
        const std::int64_t gain = 2 * m * between[i * n + j] - degree[i] * degree[j];
        const std::pair<std::uint64_t, std::uint64_t> key = std::minmax(color[i], color[j]);
        if (!found || gain > best_gain || (gain == best_gain && key < best_key)) {
          found = true;
          best_gain = gain;
          best_key = key;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) break;  // remaining communities are disconnected from each other
    internal[bi] += internal[bj] + between[bi * n + bj];
    for (std::size_t k = 0; k < n; ++k) {
      if (!alive[k] || k == bi || k == bj) continue;
      between[bi * n + k] += between[bj * n + k];
      between[k * n + bi] = between[bi * n + k];
    }
    degree[bi] += degree[bj];
    color[bi] += color[bj];
    alive[bj] = false;
    quality += 2 * best_gain;
    --communities;
    if (quality > best_quality) {
      best_quality = quality;
      best_communities = communities;
    }
  }
  return best_communities;
}

double clustering_coefficient(const Graph& g) {
  const Undirected und(g);
  std::uint64_t closed = 0, triples = 0;  // closed counts each triangle 3 times
  for (std::size_t u = 0; u < und.nbrs.size(); ++u) {
    triples += choose2(und.degree[u]);
    for (auto v : und.nbrs[u])
      if (v > u) closed += und.common(u, v);
  }
  return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

namespace {

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

FeatureSet extract_features(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) throw ValidationError("feature extraction needs at least 3 nodes");
  FeatureSet f;

  {
    auto& b = f.direct;
    std::vector<double> in(n), out(n);
    for (NodeId v = 0; v < n; ++v) {
      in[v] = static_cast<double>(g.in_degree(v));
      out[v] = static_cast<double>(g.out_degree(v));
    }
    b.entropy_in = degree_entropy(in);
    b.entropy_out = degree_entropy(out);
    b.in_degrees = sorted(std::move(in));
    b.out_degrees = sorted(std::move(out));
    b.clustering = clustering_coefficient(g);
    b.pagerank = sorted(pagerank(g));
    b.n_communities = count_communities(g);
    b.triad_census = triad_census(g);
    if (n >= 4) b.four_motifs = four_motif_counts(g);
  }
  {
    auto& b = f.markov5;
    const auto t = markov_power(g, kMarkovOrder);
    const Eigen::MatrixXd& p = t.matrix();
    std::vector<double> in(n), out(n);
    for (std::size_t v = 0; v < n; ++v) {
      in[v] = p.col(static_cast<Eigen::Index>(v)).sum();
      out[v] = p.row(static_cast<Eigen::Index>(v)).sum();
    }
    b.entropy_in = degree_entropy(in, EntropyMode::Binned);
    b.entropy_out = degree_entropy(out, EntropyMode::Binned);
    b.in_degrees = sorted(std::move(in));
    b.out_degrees = sorted(std::move(out));
    b.pagerank = sorted(pagerank(to_weighted_graph(t)));
    // Entries that equal 1/n up to rounding are not "above uniform".
    const auto bin = binarize(t, 1.0 / static_cast<double>(n) + 1e-12);
    b.clustering = clustering_coefficient(bin);
    b.n_communities = count_communities(bin);
    b.triad_census = triad_census(bin);
    if (n >= 4) b.four_motifs = four_motif_counts(bin);
  }
  return f;
}

}  // namespace netclass
