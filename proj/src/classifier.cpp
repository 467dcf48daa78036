#include "netclass/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "netclass/error.hpp"
#include "netclass/parallel.hpp"

namespace netclass {

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.0) {
    // Theta-function form of the same series; converges in a few terms here.
    const double a = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 20; ++k) {
      const double term = std::exp(a * (2.0 * k - 1.0) * (2.0 * k - 1.0));
      sum += term;
      if (term <= 1e-8 * sum) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) <= 1e-8 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double ks_statistic(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw ValidationError("KS statistic needs two nonempty samples");
  std::vector<double> a(x.begin(), x.end()), b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (j == b.size() || (i < a.size() && a[i] <= b[j]))
      v = a[i];
    else
      v = b[j];
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  return d;
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.size() < 5 || y.size() < 5) throw ValidationError("KS test needs at least 5 values per sample");
  const double d = ks_statistic(x, y);
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double lambda = d * std::sqrt(m * n / (m + n));
  return {d, kolmogorov_survival(lambda)};
}

namespace {

FeatureProfile simulate_profile(Mechanism kind, double param, std::size_t nodes, const SeededRng& rng,
                                const SimulationConfig& config) {
  return FeatureProfile(extract_features(grow({kind, param}, nodes, rng, config.growth)));
}

/// Mean distance from the query to `replicates` networks at each value.
std::vector<double> mean_distances(const FeatureProfile& query, std::size_t nodes, Mechanism kind,
                                   std::span<const double> values, const EnsembleWeights& weights,
                                   const SeededRng& rng, const SimulationConfig& config) {
  const std::size_t reps = config.replicates;
  std::vector<double> dist(values.size() * reps);
  parallel_for(dist.size(), [&](std::size_t idx) {
    const std::size_t v = idx / reps;
    const auto profile = simulate_profile(kind, values[v], nodes, rng.derive(v, idx % reps), config);
    dist[idx] = ensemble_distance(query, profile, weights);
  });
  std::vector<double> means(values.size(), 0.0);
  for (std::size_t v = 0; v < values.size(); ++v)
    means[v] = std::accumulate(dist.begin() + static_cast<std::ptrdiff_t>(v * reps),
                               dist.begin() + static_cast<std::ptrdiff_t>((v + 1) * reps), 0.0) /
               static_cast<double>(reps);
  return means;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

void check_query_size(std::size_t nodes) {
  if (nodes < 4) throw ValidationError("query network needs at least 4 nodes");
}

}  // namespace

double best_fit_param(const FeatureProfile& query, std::size_t nodes, Mechanism kind, const EnsembleWeights& weights,
                      const SeededRng& rng, const SimulationConfig& config) {
  check_query_size(nodes);
  const auto range = param_range(kind);
  const auto coarse = param_grid(kind, config.coarse_points);
  const auto coarse_mean = mean_distances(query, nodes, kind, coarse, weights, rng.derive("coarse"), config);
  const auto best = static_cast<std::size_t>(
      std::min_element(coarse_mean.begin(), coarse_mean.end()) - coarse_mean.begin());

  // An open lower bound is approached but never reached.
  const double floor_value =
      range.lower_open ? range.lower + (range.upper - range.lower) / (10.0 * static_cast<double>(coarse.size()))
                       : range.lower;
  const double lo = best == 0 ? floor_value : coarse[best - 1];
  const double hi = best + 1 == coarse.size() ? range.upper : coarse[best + 1];
  const auto fine = linspace(lo, hi, config.refine_points);
  const auto fine_mean = mean_distances(query, nodes, kind, fine, weights, rng.derive("refine"), config);
  const auto pick = static_cast<std::size_t>(std::min_element(fine_mean.begin(), fine_mean.end()) - fine_mean.begin());
  return std::clamp(fine[pick], lo, range.upper);
}

double best_fit_param(const Graph& query, Mechanism kind, const EnsembleWeights& weights, const SeededRng& rng,
                      const SimulationConfig& config) {
  check_query_size(query.node_count());
  return best_fit_param(FeatureProfile(extract_features(query)), query.node_count(), kind, weights, rng, config);
}

ClassificationReport classify(const FeatureProfile& query, std::size_t nodes, std::span<const Mechanism> candidates,
                              double alpha, const EnsembleWeights& weights, const SeededRng& rng,
                              const SimulationConfig& config) {
  check_query_size(nodes);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  if (candidates.empty()) throw ValidationError("at least one candidate mechanism is required");
  if (config.null_size < 6) throw ValidationError("null sample needs at least 6 networks");

  ClassificationReport report;
  report.alpha = alpha;
  report.tests.resize(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t c) {
    const Mechanism kind = candidates[c];
    const SeededRng stream = rng.derive("mechanism", mechanism_index(kind));
    MechanismTest& test = report.tests[c];
    test.kind = kind;
    test.best_param = best_fit_param(query, nodes, kind, weights, stream.derive("fit"), config);

    const std::size_t k = config.null_size;
    std::vector<FeatureProfile> nulls(k);
    parallel_for(k, [&](std::size_t i) {
      nulls[i] = simulate_profile(kind, test.best_param, nodes, stream.derive("null", i), config);
    });
    Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    std::vector<double> to_query(k);
    parallel_for(k, [&](std::size_t i) {
      to_query[i] = ensemble_distance(query, nulls[i], weights);
      for (std::size_t j = i + 1; j < k; ++j) {
        const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
        pair(a, b) = pair(b, a) = ensemble_distance(nulls[i], nulls[j], weights);
      }
    });

    std::vector<double> within;
    within.reserve(k * (k - 1) / 2);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) within.push_back(pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    const auto ks = ks_two_sample(within, to_query);

    // Reference distribution of the statistic: each null in turn plays the
    // query against the remaining K-1.
    std::vector<double> held(k);
    parallel_for(k, [&](std::size_t s) {
      std::vector<double> rest, to_s;
      rest.reserve((k - 1) * (k - 2) / 2);
      to_s.reserve(k - 1);
      for (std::size_t i = 0; i < k; ++i) {
        if (i == s) continue;
        to_s.push_back(pair(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(i)));
        for (std::size_t j = i + 1; j < k; ++j)
          if (j != s) rest.push_back(pair(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      }
      held[s] = ks_two_sample(rest, to_s).statistic;
    });
    const auto extreme = std::count_if(held.begin(), held.end(), [&](double d) { return d >= ks.statistic - 1e-12; });

    test.ks_statistic = ks.statistic;
    test.asymptotic_p_value = ks.p_value;
    test.p_value = static_cast<double>(1 + extreme) / static_cast<double>(k + 1);
    test.consistent = test.p_value >= alpha;
  });
  for (const auto& t : report.tests)
    if (t.consistent) report.verdict.push_back(t.kind);
  return report;
}

ClassificationReport classify(const Graph& query, std::span<const Mechanism> candidates, double alpha,
                              const EnsembleWeights& weights, const SeededRng& rng, const SimulationConfig& config) {
  check_query_size(query.node_count());
  return classify(FeatureProfile(extract_features(query)), query.node_count(), candidates, alpha, weights, rng,
                  config);
}

double weighted_parameter_average(std::span<const double> params, std::span<const double> distances,
                                  std::size_t neighbors) {
  if (params.empty() || params.size() != distances.size())
    throw ValidationError("parameter and distance lists must be nonempty and equally long");
  double cutoff = std::numeric_limits<double>::infinity();
  if (neighbors > 0 && neighbors < distances.size()) {
    std::vector<double> sorted(distances.begin(), distances.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(neighbors - 1), sorted.end());
    cutoff = sorted[neighbors - 1];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (distances[i] > cutoff) continue;
    const double w = 1.0 / (distances[i] + 1e-9);
    num += w * params[i];
    den += w;
  }
  return num / den;
}

double estimate_param(const FeatureProfile& query, std::size_t nodes, Mechanism kind,
                      const EnsembleWeights& weights, const SeededRng& rng, const SimulationConfig& config) {
  check_query_size(nodes);
  const auto grid = param_grid(kind, config.estimate_points);
  const std::size_t reps = config.replicates;
  std::vector<double> params(grid.size() * reps), dist(grid.size() * reps);
  parallel_for(dist.size(), [&](std::size_t idx) {
    params[idx] = grid[idx / reps];
    const auto profile = simulate_profile(kind, params[idx], nodes, rng.derive(idx / reps, idx % reps), config);
    dist[idx] = ensemble_distance(query, profile, weights);
  });
  return weighted_parameter_average(params, dist, config.estimate_neighbors);
}

double estimate_param(const Graph& query, Mechanism kind, const EnsembleWeights& weights, const SeededRng& rng,
                      const SimulationConfig& config) {
  check_query_size(query.node_count());
  return estimate_param(FeatureProfile(extract_features(query)), query.node_count(), kind, weights, rng, config);
}

double rank_auc(std::span<const double> positives, std::span<const double> negatives) {
  if (positives.empty() || negatives.empty()) throw ValidationError("AUC needs positive and negative scores");
  std::vector<double> neg(negatives.begin(), negatives.end());
  std::sort(neg.begin(), neg.end());
  double wins = 0.0;
  for (double p : positives) {
    const auto below = std::lower_bound(neg.begin(), neg.end(), p) - neg.begin();
    const auto upto = std::upper_bound(neg.begin(), neg.end(), p) - neg.begin();
    wins += static_cast<double>(below) + 0.5 * static_cast<double>(upto - below);
  }
  return wins / (static_cast<double>(positives.size()) * static_cast<double>(negatives.size()));
}

RocCurve roc_curve(std::span<const double> positives, std::span<const double> negatives) {
  RocCurve curve;
  curve.auc = rank_auc(positives, negatives);
  std::vector<double> thresholds(positives.begin(), positives.end());
  thresholds.insert(thresholds.end(), negatives.begin(), negatives.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  auto rate = [](std::span<const double> scores, double t) {
    const auto hits = std::count_if(scores.begin(), scores.end(), [t](double s) { return s >= t; });
    return static_cast<double>(hits) / static_cast<double>(scores.size());
  };
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  for (double t : thresholds) curve.points.push_back({t, rate(negatives, t), rate(positives, t)});
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.auc_trapezoid += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return curve;
}

RocResult roc_evaluate(const RocPanel& panel, const EnsembleWeights& weights, const SeededRng& rng,
                       const SimulationConfig& config) {
  if (panel.per_mechanism < 1) throw ValidationError("ROC panel needs networks for every mechanism");
  RocResult result;
  for (auto kind : kAllMechanisms)
    for (double p : param_grid(kind, panel.per_mechanism)) result.networks.push_back({kind, p});

  result.p_values.assign(result.networks.size(), std::vector<double>(kAllMechanisms.size(), 0.0));
  parallel_for(result.networks.size(), [&](std::size_t i) {
    const auto& spec = result.networks[i];
    const SeededRng stream = rng.derive("roc-network", i);
    const auto query = grow(spec, panel.nodes, stream.derive("query"), config.growth);
    const auto report = classify(query, kAllMechanisms, kDefaultAlpha, weights, stream.derive("classify"), config);
    for (const auto& t : report.tests) result.p_values[i][mechanism_index(t.kind)] = t.p_value;
  });

  for (auto kind : kAllMechanisms) {
    const std::size_t m = mechanism_index(kind);
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < result.networks.size(); ++i)
      (result.networks[i].kind == kind ? pos : neg).push_back(result.p_values[i][m]);
    auto curve = roc_curve(pos, neg);
    curve.kind = kind;
    result.curves.push_back(std::move(curve));
  }
  return result;
}

}  // namespace netclass
