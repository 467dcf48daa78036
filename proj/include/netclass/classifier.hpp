#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "netclass/distance.hpp"
#include "netclass/generators.hpp"
#include "netclass/rng.hpp"

namespace netclass {

/// Simulation budget shared by the fitting, testing and estimation steps.
struct SimulationConfig {
  std::size_t replicates = 3;       // networks per parameter value
  std::size_t coarse_points = 10;   // first-stage grid
  std::size_t refine_points = 10;   // second-stage grid between the coarse argmin's neighbors
  std::size_t null_size = 50;       // K networks simulated at the best fit
  std::size_t estimate_points = 100;  // grid for estimate_param
  std::size_t estimate_neighbors = 10;  // nearest grid networks averaged; 0 = all
  GrowthOptions growth;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// sup |ECDF_x - ECDF_y| over all values. Both samples must be nonempty.
double ks_statistic(std::span<const double> x, std::span<const double> y);

/// Two-sample Kolmogorov-Smirnov test. Both samples need >= 5 values.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);

/// Parameter whose simulated networks (at the query's size) are closest on
/// average to the query: a coarse grid over the whole range followed by one
/// refinement between the coarse winner's neighbors. Always inside the
/// mechanism's range.
double best_fit_param(const FeatureProfile& query, std::size_t nodes, Mechanism kind, const EnsembleWeights& weights,
                      const SeededRng& rng, const SimulationConfig& config = {});
double best_fit_param(const Graph& query, Mechanism kind, const EnsembleWeights& weights, const SeededRng& rng,
                      const SimulationConfig& config = {});

struct MechanismTest {
  Mechanism kind;
  double best_param = 0.0;
  double ks_statistic = 0.0;
  double p_value = 0.0;             // Monte-Carlo: rank of the statistic among the nulls' own
  double asymptotic_p_value = 0.0;  // Kolmogorov approximation, treats distances as iid
  bool consistent = false;
};

struct ClassificationReport {
  double alpha = 0.05;
  std::vector<MechanismTest> tests;  // one per candidate, in candidate order
  std::vector<Mechanism> verdict;    // kinds with consistent == true
};

inline constexpr double kDefaultAlpha = 0.05;

/// Tests the query against each candidate: best fit, K null networks at the
/// best fit, then a KS test of null-to-null against query-to-null distances.
/// The p-value compares the statistic with the ones obtained by putting each
/// null network in the query's place, so it is (1 + #{D_s >= D}) / (K + 1).
/// Requires query.node_count() >= 4, alpha in (0, 1] and null_size >= 6.
ClassificationReport classify(const Graph& query, std::span<const Mechanism> candidates, double alpha,
                              const EnsembleWeights& weights, const SeededRng& rng,
                              const SimulationConfig& config = {});
ClassificationReport classify(const FeatureProfile& query, std::size_t nodes, std::span<const Mechanism> candidates,
                              double alpha, const EnsembleWeights& weights, const SeededRng& rng,
                              const SimulationConfig& config = {});

/// Inverse-distance weighted mean of `params` (weights 1 / (d + 1e-9)) over
/// the `neighbors` smallest distances, ties at the cutoff included; 0 = all.
double weighted_parameter_average(std::span<const double> params, std::span<const double> distances,
                                  std::size_t neighbors = 0);

/// Simulates the mechanism's full parameter grid and averages the parameters
/// of the config.estimate_neighbors closest grid networks, weighted by
/// inverse distance to the query.
double estimate_param(const Graph& query, Mechanism kind, const EnsembleWeights& weights, const SeededRng& rng,
                      const SimulationConfig& config = {});
double estimate_param(const FeatureProfile& query, std::size_t nodes, Mechanism kind,
                      const EnsembleWeights& weights, const SeededRng& rng, const SimulationConfig& config = {});

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;
};

struct RocCurve {
  Mechanism kind = Mechanism::ErdosRenyi;
  std::vector<RocPoint> points;  // from (0, 0) to (1, 1)
  double auc = 0.0;              // rank statistic P(pos > neg) + P(tie) / 2
  double auc_trapezoid = 0.0;    // area under `points`
};

/// ROC sweep treating higher scores as "more positive".
RocCurve roc_curve(std::span<const double> positives, std::span<const double> negatives);
double rank_auc(std::span<const double> positives, std::span<const double> negatives);

struct RocPanel {
  std::size_t per_mechanism = 30;
  std::size_t nodes = kDefaultNodes;
};

struct RocResult {
  std::vector<MechanismSpec> networks;      // labeled test networks
  std::vector<std::vector<double>> p_values;  // [network][mechanism in kAllMechanisms order]
  std::vector<RocCurve> curves;             // one per mechanism
};

/// Simulates per_mechanism networks per mechanism (parameters evenly spaced
/// over each range), classifies each against all five mechanisms with its
/// own nulls, and builds one ROC curve per mechanism from the p-values.
RocResult roc_evaluate(const RocPanel& panel, const EnsembleWeights& weights, const SeededRng& rng,
                       const SimulationConfig& config = {});

}  // namespace netclass
