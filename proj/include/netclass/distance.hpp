#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "netclass/features.hpp"
#include "netclass/generators.hpp"

namespace netclass {

inline constexpr std::size_t kPropertyCount = 18;
inline constexpr std::size_t kQuantiles = 64;

/// Property order shared by PropertyDistances, EnsembleWeights and the
/// weights file: the nine direct properties, then the nine Markov ones.
inline constexpr std::array<std::string_view, kPropertyCount> kPropertyNames = {
    "direct_in_degrees",    "direct_out_degrees",   "direct_entropy_in",   "direct_entropy_out",
    "direct_clustering",    "direct_pagerank",      "direct_n_communities", "direct_triad_census",
    "direct_four_motifs",   "markov5_in_degrees",   "markov5_out_degrees",  "markov5_entropy_in",
    "markov5_entropy_out",  "markov5_clustering",   "markov5_pagerank",     "markov5_n_communities",
    "markov5_triad_census", "markov5_four_motifs"};

using PropertyDistances = std::array<double, kPropertyCount>;

struct EnsembleWeights {
  std::array<double, kPropertyCount> weights{};  // nonnegative, sum to 1
  std::array<double, kPropertyCount> scales{};   // positive

  friend bool operator==(const EnsembleWeights&, const EnsembleWeights&) = default;
};

/// Linear interpolation of ascending `values` at `count` evenly spaced
/// quantile positions (both ends included).
std::vector<double> quantile_resample(std::span<const double> sorted_values, std::size_t count = kQuantiles);

/// A FeatureSet flattened into fixed-length per-property vectors: degree and
/// PageRank vectors resampled at kQuantiles quantiles, census and motif
/// counts turned into proportions. Pairwise distances read only this.
class FeatureProfile {
 public:
  FeatureProfile() = default;
  explicit FeatureProfile(const FeatureSet& features);

  std::span<const double> property(std::size_t index) const;

 private:
  std::vector<double> data_;
};

PropertyDistances property_distances(const FeatureProfile& a, const FeatureProfile& b);
PropertyDistances property_distances(const FeatureSet& a, const FeatureSet& b);

double ensemble_distance(const FeatureProfile& a, const FeatureProfile& b, const EnsembleWeights& w);
double ensemble_distance(const FeatureSet& a, const FeatureSet& b, const EnsembleWeights& w);

/// Loadings of the first principal axis of the column-standardized rows of
/// `x`, as absolute values normalized to sum 1, plus the column standard
/// deviations used as scales. Columns with standard deviation <= 1e-12 get
/// scale 1e-12 and weight 0.
struct AxisWeights {
  Eigen::VectorXd weights;
  Eigen::VectorXd scales;
};
AxisWeights principal_axis_weights(const Eigen::MatrixXd& x);

/// Fits weights on every pair of the panel (rows = pairs, columns = the 18
/// property distances). Needs at least 3 networks.
EnsembleWeights fit_weights(std::span<const FeatureProfile> panel);
EnsembleWeights fit_weights(std::span<const FeatureSet> panel);

struct LabeledGraph {
  std::string id;
  Graph graph;
  std::optional<MechanismSpec> label;
};

struct StateSpace {
  std::vector<std::string> ids;
  std::vector<FeatureSet> features;
  std::vector<std::optional<MechanismSpec>> labels;
  Eigen::MatrixXd distances;  // symmetric, zero diagonal
  EnsembleWeights weights;
};

/// Extracts features, fits weights on the graphs themselves when `weights`
/// is empty, and fills the pairwise distance matrix.
StateSpace build_state_space(std::span<const LabeledGraph> graphs,
                             const std::optional<EnsembleWeights>& weights = std::nullopt);

/// Pairwise distance matrix between profiles.
Eigen::MatrixXd distance_matrix(std::span<const FeatureProfile> profiles, const EnsembleWeights& w);

/// Classical (metric) MDS. Rows are points; coordinate signs are fixed so the
/// largest-magnitude entry of each axis is positive. Axes without a positive
/// eigenvalue are zero.
Eigen::MatrixXd mds_project(const Eigen::MatrixXd& distances, int dims = 2);
Eigen::MatrixXd mds_project(const StateSpace& space, int dims = 2);

/// Systematic simulation panel the default weights are fit on.
struct ReferencePanel {
  std::size_t values_per_mechanism = 100;
  std::size_t replicates = 3;
  std::size_t nodes = kDefaultNodes;
  std::uint64_t seed = 1;
};

std::vector<FeatureProfile> simulate_reference_profiles(const ReferencePanel& panel);
EnsembleWeights fit_reference_weights(const ReferencePanel& panel = {});

/// fit_reference_weights() with the default panel, computed once per process.
const EnsembleWeights& canonical_weights();

}  // namespace netclass
