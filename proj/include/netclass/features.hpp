#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "netclass/graph.hpp"

namespace netclass {

/// Directed triad classes in census order.
inline constexpr std::array<std::string_view, 16> kTriadNames = {
    "003",  "012",  "102",  "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201",  "120D", "120U", "120C", "210",  "300"};

/// Connected undirected 4-node classes in count order.
inline constexpr std::array<std::string_view, 6> kFourMotifNames = {
    "path4", "star3", "cycle4", "tailed_triangle", "diamond", "clique4"};

using TriadCensus = std::array<std::uint64_t, 16>;
using FourMotifCounts = std::array<std::uint64_t, 6>;

/// The nine structural properties of one network (or of its Markov version).
struct PropertyBlock {
  std::vector<double> in_degrees;   // sorted ascending
  std::vector<double> out_degrees;  // sorted ascending
  double entropy_in = 0.0;          // bits
  double entropy_out = 0.0;         // bits
  double clustering = 0.0;
  std::vector<double> pagerank;  // sorted ascending, sums to 1
  std::size_t n_communities = 1;
  TriadCensus triad_census{};
  FourMotifCounts four_motifs{};

  friend bool operator==(const PropertyBlock&, const PropertyBlock&) = default;
};

struct FeatureSet {
  PropertyBlock direct;
  PropertyBlock markov5;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;
};

inline constexpr int kMarkovOrder = 5;
inline constexpr double kDefaultDamping = 0.85;
inline constexpr std::size_t kStrengthBins = 16;

/// All 18 properties. Requires g.node_count() >= 3.
///
/// The direct block uses edge counts for degrees. The Markov block works on
/// markov_power(g, 5): in/out strengths stand in for degrees, PageRank runs
/// on the weighted matrix, and clustering, communities and motif counts use
/// binarize(., 1/n).
FeatureSet extract_features(const Graph& g);

/// 16-class directed triad census (self-loops ignored).
TriadCensus triad_census(const Graph& g);

/// Induced connected 4-node subgraph counts on the symmetrized simple graph.
FourMotifCounts four_motif_counts(const Graph& g);

enum class EntropyMode {
  DistinctValues,  // empirical distribution over distinct values
  Binned,          // 16 equal-width bins over [min, max]
};

/// Shannon entropy in bits.
double degree_entropy(std::span<const double> values, EntropyMode mode = EntropyMode::DistinctValues);

/// PageRank by power iteration on the weighted transition matrix with
/// dangling rows spread uniformly. Values are in node order.
std::vector<double> pagerank(const Graph& g, double damping = kDefaultDamping);

/// Greedy agglomerative modularity maximization on the symmetrized graph;
/// community count at the best merge step.
std::size_t count_communities(const Graph& g);

/// Global transitivity of the symmetrized graph.
double clustering_coefficient(const Graph& g);

}  // namespace netclass
