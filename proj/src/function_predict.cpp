#include "netclass/function_predict.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netclass/error.hpp"
#include "netclass/parallel.hpp"

namespace netclass {

AscendencyResult ascendency(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> out_flow(n, 0.0), in_flow(n, 0.0);
  double total = 0.0;
  for (const auto& e : g.edges()) {
    out_flow[e.source] += e.weight;
    in_flow[e.target] += e.weight;
    total += e.weight;
  }
  AscendencyResult r;
  if (!(total > 0.0)) return r;
  for (const auto& e : g.edges()) {
    const double t = e.weight;
    if (t <= 0.0) continue;
    r.ascendency += t * std::log2(t * total / (out_flow[e.source] * in_flow[e.target]));
    r.capacity -= t * std::log2(t / total);
  }
  // Round-off can leave a tiny negative A or an A a hair above C.
  r.ascendency = std::clamp(r.ascendency, 0.0, r.capacity);
  r.normalized = r.capacity > 0.0 ? r.ascendency / r.capacity : 0.0;
  return r;
}

MechanismVector random_proportions(std::span<const Mechanism> mechanisms, SeededRng::Engine& eng) {
  if (mechanisms.empty()) throw ValidationError("at least one mechanism is required");
  MechanismVector p{};
  double total = 0.0;
  for (auto kind : mechanisms) {
    const double e = -std::log1p(-uniform01(eng));
    p[mechanism_index(kind)] += e;
    total += e;
  }
  if (!(total > 0.0)) {
    // Every draw was exactly 0: fall back to the barycenter.
    for (auto kind : mechanisms) p[mechanism_index(kind)] = 1.0;
    total = static_cast<double>(mechanisms.size());
  }
  for (double& x : p) x /= total;
  return p;
}

double random_param(Mechanism kind, SeededRng::Engine& eng) {
  const auto range = param_range(kind);
  const double u = uniform01(eng);
  // 1 - u lies in (0, 1], which keeps an open lower bound out of reach.
  if (range.lower_open) return range.upper - (range.upper - range.lower) * u;
  return range.lower + (range.upper - range.lower) * u;
}

std::vector<MixturePanelEntry> generate_mixture_panel(const MixturePanelConfig& config, const SeededRng& rng) {
  if (config.mechanisms.empty()) throw ValidationError("mixture panel needs at least one mechanism");
  if (config.nodes < 3) throw ValidationError("networks need at least 3 nodes");
  std::vector<MixturePanelEntry> panel(config.size);
  parallel_for(config.size, [&](std::size_t i) {
    const SeededRng stream = rng.derive("entry", i);
    auto& entry = panel[i];
    entry.id = "mix" + std::to_string(i);
    auto eng = stream.derive("composition").engine();
    entry.proportions = random_proportions(config.mechanisms, eng);
    for (auto kind : kAllMechanisms) entry.params[mechanism_index(kind)] = random_param(kind, eng);
    const auto assignment =
        assignment_from_proportions(entry.proportions, entry.params, config.nodes, stream.derive("assign"));
    const auto g = grow_mixture(assignment, stream.derive("grow"), config.growth);
    entry.normalized_ascendency = ascendency(g).normalized;
    entry.features = extract_features(g);
  });
  return panel;
}

double predict_function(const FeatureProfile& query, std::span<const FeatureProfile> panel,
                        std::span<const double> targets, const EnsembleWeights& weights, std::size_t k) {
  if (panel.empty()) throw ValidationError("prediction panel is empty");
  if (panel.size() != targets.size()) throw ValidationError("panel and targets must have equal length");
  if (k < 1) throw ValidationError("k must be at least 1");
  std::vector<double> dist(panel.size());
  for (std::size_t i = 0; i < panel.size(); ++i) dist[i] = ensemble_distance(query, panel[i], weights);
  std::vector<std::size_t> order(panel.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < take; ++i) {
    const double w = 1.0 / (dist[order[i]] + 1e-9);
    num += w * targets[order[i]];
    den += w;
  }
  return num / den;
}

double predict_function(const Graph& query, std::span<const MixturePanelEntry> panel, const EnsembleWeights& weights,
                        std::size_t k) {
  if (panel.empty()) throw ValidationError("prediction panel is empty");
  std::vector<FeatureProfile> profiles;
  std::vector<double> targets;
  profiles.reserve(panel.size());
  for (const auto& e : panel) {
    profiles.emplace_back(e.features);
    targets.push_back(e.normalized_ascendency);
  }
  return predict_function(FeatureProfile(extract_features(query)), profiles, targets, weights, k);
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("correlation needs two equally long samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  // Relative guard: spread that is pure round-off counts as none.
  const auto flat = [n](double ss, double mean) { return ss <= 1e-24 * n * std::max(1.0, mean * mean); };
  if (flat(sxx, mx) || flat(syy, my)) return {0.0, true};
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

LooResult loo_evaluate(std::span<const MixturePanelEntry> panel, const EnsembleWeights& weights, std::size_t k) {
  if (panel.size() < 20) throw ValidationError("leave-one-out needs at least 20 panel entries");
  const std::size_t n = panel.size();
  std::vector<FeatureProfile> profiles;
  profiles.reserve(n);
  for (const auto& e : panel) profiles.emplace_back(e.features);

  LooResult result;
  result.pairs.resize(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<FeatureProfile> rest;
    std::vector<double> targets;
    rest.reserve(n - 1);
    targets.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      rest.push_back(profiles[j]);
      targets.push_back(panel[j].normalized_ascendency);
    }
    result.pairs[i] = {predict_function(profiles[i], rest, targets, weights, k), panel[i].normalized_ascendency};
  });

  std::vector<double> predicted, actual;
  double sq = 0.0;
  for (const auto& p : result.pairs) {
    predicted.push_back(p.predicted);
    actual.push_back(p.actual);
    sq += (p.predicted - p.actual) * (p.predicted - p.actual);
  }
  result.correlation = pearson(predicted, actual);
  result.rmse = std::sqrt(sq / static_cast<double>(n));
  return result;
}

Correlation composition_correlation(std::span<const FeatureProfile> profiles,
                                    std::span<const MechanismVector> proportions, const EnsembleWeights& weights) {
  if (profiles.size() != proportions.size() || profiles.size() < 3)
    throw ValidationError("composition correlation needs at least 3 networks with proportions");
  const auto d = distance_matrix(profiles, weights);
  std::vector<double> structural, compositional;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      structural.push_back(d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      double l1 = 0.0;
      for (std::size_t m = 0; m < 5; ++m) l1 += std::abs(proportions[i][m] - proportions[j][m]);
      compositional.push_back(l1);
    }
  return pearson(structural, compositional);
}

IdentifiabilityResult identifiability_experiment(std::size_t mechanism_count, std::size_t size, const SeededRng& rng,
                                                 const EnsembleWeights& weights, std::size_t nodes) {
  if (mechanism_count < 2 || mechanism_count > 5) throw ValidationError("mechanism count must be 2..5");
  if (size < 3) throw ValidationError("identifiability panel needs at least 3 networks");
  IdentifiabilityResult result;
  std::vector<Mechanism> pool(kAllMechanisms.begin(), kAllMechanisms.end());
  auto eng = rng.derive("mechanisms").engine();
  for (std::size_t i = 0; i < mechanism_count; ++i)
    std::swap(pool[i], pool[i + uniform_index(eng, pool.size() - i)]);
  pool.resize(mechanism_count);
  std::sort(pool.begin(), pool.end(), [](Mechanism a, Mechanism b) { return mechanism_index(a) < mechanism_index(b); });
  result.mechanisms = pool;

  MixturePanelConfig config;
  config.size = size;
  config.nodes = nodes;
  config.mechanisms = pool;
  const auto panel = generate_mixture_panel(config, rng.derive("panel"));
  std::vector<FeatureProfile> profiles;
  std::vector<MechanismVector> proportions;
  for (const auto& e : panel) {
    profiles.emplace_back(e.features);
    proportions.push_back(e.proportions);
  }
  result.correlation = composition_correlation(profiles, proportions, weights);
  result.pairs = size * (size - 1) / 2;
  return result;
}

}  // namespace netclass
