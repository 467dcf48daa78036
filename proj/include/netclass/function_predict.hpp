#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "netclass/distance.hpp"
#include "netclass/features.hpp"
#include "netclass/generators.hpp"
#include "netclass/graph.hpp"
#include "netclass/rng.hpp"

namespace netclass {

/// Flow-network Ascendency in bits, with edge weights as flows.
struct AscendencyResult {
  double ascendency = 0.0;
  double capacity = 0.0;
  double normalized = 0.0;  // ascendency / capacity, 0 when capacity is 0
};

/// A = sum T_ij log2(T_ij T.. / (T_i. T_.j)), C = -sum T_ij log2(T_ij / T..).
/// Zero-weight edges carry no flow. A graph without flow gives all zeros.
AscendencyResult ascendency(const Graph& g);

/// One entry per mechanism, in kAllMechanisms order.
using MechanismVector = std::array<double, 5>;

struct MixturePanelEntry {
  std::string id;
  MechanismVector proportions{};
  MechanismVector params{};
  double normalized_ascendency = 0.0;
  FeatureSet features;
};

/// Uniform draw from the simplex spanned by `mechanisms` (normalized
/// exponentials); other entries are 0.
MechanismVector random_proportions(std::span<const Mechanism> mechanisms, SeededRng::Engine& eng);

/// Uniform draw from the mechanism's parameter range.
double random_param(Mechanism kind, SeededRng::Engine& eng);

struct MixturePanelConfig {
  std::size_t size = 100;
  std::size_t nodes = kDefaultNodes;
  std::vector<Mechanism> mechanisms{kAllMechanisms.begin(), kAllMechanisms.end()};
  GrowthOptions growth;
};

/// grow_mixture networks with random proportions over config.mechanisms and
/// random parameters. Entry i depends only on rng.derive("entry", i).
std::vector<MixturePanelEntry> generate_mixture_panel(const MixturePanelConfig& config, const SeededRng& rng);

inline constexpr std::size_t kDefaultNeighbors = 10;

/// Inverse-distance weighted mean of the targets of the k nearest panel
/// profiles (weights 1 / (d + 1e-9)). Distance ties are broken by panel
/// order. k larger than the panel uses the whole panel.
double predict_function(const FeatureProfile& query, std::span<const FeatureProfile> panel,
                        std::span<const double> targets, const EnsembleWeights& weights,
                        std::size_t k = kDefaultNeighbors);
double predict_function(const Graph& query, std::span<const MixturePanelEntry> panel, const EnsembleWeights& weights,
                        std::size_t k = kDefaultNeighbors);

struct Correlation {
  double r = 0.0;
  bool degenerate = false;  // a side without variance; r is then 0
};

Correlation pearson(std::span<const double> x, std::span<const double> y);

struct LooPair {
  double predicted;
  double actual;
};

struct LooResult {
  Correlation correlation;
  double rmse = 0.0;
  std::vector<LooPair> pairs;  // panel order
};

/// Leave-one-out: every entry predicted from the rest. Needs >= 20 entries.
LooResult loo_evaluate(std::span<const MixturePanelEntry> panel, const EnsembleWeights& weights,
                       std::size_t k = kDefaultNeighbors);

struct IdentifiabilityResult {
  std::vector<Mechanism> mechanisms;  // the panel's mechanism subset
  Correlation correlation;            // ensemble distance vs L1 proportion distance
  std::size_t pairs = 0;
};

/// Correlation over all panel pairs between ensemble distance and the L1
/// distance of the proportion vectors.
Correlation composition_correlation(std::span<const FeatureProfile> profiles,
                                    std::span<const MechanismVector> proportions, const EnsembleWeights& weights);

/// Draws a random subset of `mechanism_count` (2..5) mechanisms, a
/// `size`-network mixture panel over it, and correlates structure with
/// composition.
IdentifiabilityResult identifiability_experiment(std::size_t mechanism_count, std::size_t size, const SeededRng& rng,
                                                 const EnsembleWeights& weights,
                                                 std::size_t nodes = kDefaultNodes);

}  // namespace netclass
