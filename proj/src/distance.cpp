#include "netclass/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netclass/error.hpp"
#include "netclass/parallel.hpp"

namespace netclass {
namespace {

// Per-block layout of a profile: in, out, entropy_in, entropy_out,
// clustering, pagerank, n_communities, triad census, four motifs.
constexpr std::array<std::size_t, 9> kBlockSizes = {kQuantiles, kQuantiles, 1, 1, 1, kQuantiles, 1, 16, 6};

constexpr std::array<std::size_t, kPropertyCount + 1> offsets() {
  std::array<std::size_t, kPropertyCount + 1> off{};
  for (std::size_t j = 0; j < kPropertyCount; ++j) off[j + 1] = off[j] + kBlockSizes[j % 9];
  return off;
}
constexpr auto kOffsets = offsets();

template <std::size_t N>
void append_proportions(std::vector<double>& out, const std::array<std::uint64_t, N>& counts) {
  const double total =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  for (auto c : counts) out.push_back(total > 0.0 ? static_cast<double>(c) / total : 0.0);
}

void append_block(std::vector<double>& out, const PropertyBlock& b) {
  auto append = [&](const std::vector<double>& v) {
    const auto q = quantile_resample(v);
    out.insert(out.end(), q.begin(), q.end());
  };
  append(b.in_degrees);
  append(b.out_degrees);
  out.push_back(b.entropy_in);
  out.push_back(b.entropy_out);
  out.push_back(b.clustering);
  append(b.pagerank);
  out.push_back(static_cast<double>(b.n_communities));
  append_proportions(out, b.triad_census);
  append_proportions(out, b.four_motifs);
}

}  // namespace

std::vector<double> quantile_resample(std::span<const double> sorted_values, std::size_t count) {
  if (sorted_values.empty()) throw ValidationError("cannot resample an empty vector");
  std::vector<double> out(count);
  const std::size_t len = sorted_values.size();
  for (std::size_t k = 0; k < count; ++k) {
    const double pos = count == 1 ? 0.0
                                  : static_cast<double>(k) * static_cast<double>(len - 1) /
                                        static_cast<double>(count - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, len - 1);
    const double frac = pos - static_cast<double>(lo);
    out[k] = sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
  }
  return out;
}

FeatureProfile::FeatureProfile(const FeatureSet& features) {
  data_.reserve(kOffsets.back());
  append_block(data_, features.direct);
  append_block(data_, features.markov5);
}

std::span<const double> FeatureProfile::property(std::size_t index) const {
  return {data_.data() + kOffsets[index], data_.data() + kOffsets[index + 1]};
}

PropertyDistances property_distances(const FeatureProfile& a, const FeatureProfile& b) {
  PropertyDistances d{};
  for (std::size_t j = 0; j < kPropertyCount; ++j) {
    const auto x = a.property(j);
    const auto y = b.property(j);
    double sq = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) sq += (x[k] - y[k]) * (x[k] - y[k]);
    d[j] = std::sqrt(sq);
  }
  return d;
}

PropertyDistances property_distances(const FeatureSet& a, const FeatureSet& b) {
  return property_distances(FeatureProfile(a), FeatureProfile(b));
}

double ensemble_distance(const FeatureProfile& a, const FeatureProfile& b, const EnsembleWeights& w) {
  const auto d = property_distances(a, b);
  double total = 0.0;
  for (std::size_t j = 0; j < kPropertyCount; ++j)
    if (w.weights[j] > 0.0) total += w.weights[j] * d[j] / w.scales[j];
  return total;
}

double ensemble_distance(const FeatureSet& a, const FeatureSet& b, const EnsembleWeights& w) {
  return ensemble_distance(FeatureProfile(a), FeatureProfile(b), w);
}

namespace {

constexpr double kScaleFloor = 1e-12;

/// First-axis weights from column means-removed cross products.
AxisWeights axis_weights_from_scatter(const Eigen::MatrixXd& scatter, double rows) {
  const Eigen::Index p = scatter.rows();
  AxisWeights out{Eigen::VectorXd::Zero(p), Eigen::VectorXd::Constant(p, kScaleFloor)};
  std::vector<bool> live(static_cast<std::size_t>(p), false);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double sd = rows > 1.0 ? std::sqrt(std::max(0.0, scatter(j, j)) / (rows - 1.0)) : 0.0;
    if (sd > kScaleFloor) {
      out.scales(j) = sd;
      live[static_cast<std::size_t>(j)] = true;
    }
  }
  Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      if (live[static_cast<std::size_t>(i)] && live[static_cast<std::size_t>(j)])
        corr(i, j) = scatter(i, j) / ((rows - 1.0) * out.scales(i) * out.scales(j));
  if (std::none_of(live.begin(), live.end(), [](bool b) { return b; })) {
    out.weights.setConstant(1.0 / static_cast<double>(p));
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr);
  const Eigen::VectorXd axis = eig.eigenvectors().col(p - 1).cwiseAbs();
  out.weights = axis / axis.sum();
  return out;
}

}  // namespace

AxisWeights principal_axis_weights(const Eigen::MatrixXd& x) {
  if (x.rows() < 2) throw ValidationError("principal axis needs at least 2 rows");
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  return axis_weights_from_scatter(centered.transpose() * centered, static_cast<double>(x.rows()));
}

EnsembleWeights fit_weights(std::span<const FeatureProfile> panel) {
  const std::size_t n = panel.size();
  if (n < 3) throw ValidationError("weight fitting needs at least 3 networks");
  constexpr auto P = static_cast<Eigen::Index>(kPropertyCount);
  using Vec = Eigen::Matrix<double, kPropertyCount, 1>;
  using Mat = Eigen::Matrix<double, kPropertyCount, kPropertyCount>;
  auto row_distances = [&](std::size_t i, std::size_t j) {
    const auto d = property_distances(panel[i], panel[j]);
    return Vec(Eigen::Map<const Vec>(d.data()));
  };

  // Two streaming passes over all pairs; per-row partials are summed in
  // index order so the result does not depend on the thread count.
  std::vector<Vec> sums(n, Vec::Zero());
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) sums[i] += row_distances(i, j);
  });
  Vec mean = Vec::Zero();
  for (const auto& s : sums) mean += s;
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  mean /= pairs;

  std::vector<Mat> scatters(n, Mat::Zero());
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec c = row_distances(i, j) - mean;
      scatters[i] += c * c.transpose();
    }
  });
  Mat scatter = Mat::Zero();
  for (const auto& s : scatters) scatter += s;

  const auto axis = axis_weights_from_scatter(Eigen::MatrixXd(scatter), pairs);
  EnsembleWeights w;
  for (Eigen::Index j = 0; j < P; ++j) {
    w.weights[static_cast<std::size_t>(j)] = axis.weights(j);
    w.scales[static_cast<std::size_t>(j)] = axis.scales(j);
  }
  return w;
}

EnsembleWeights fit_weights(std::span<const FeatureSet> panel) {
  std::vector<FeatureProfile> profiles(panel.begin(), panel.end());
  return fit_weights(std::span<const FeatureProfile>(profiles));
}

Eigen::MatrixXd distance_matrix(std::span<const FeatureProfile> profiles, const EnsembleWeights& w) {
  const auto n = static_cast<Eigen::Index>(profiles.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  parallel_for(profiles.size(), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ensemble_distance(profiles[i], profiles[j], w);
  });
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) d(i, j) = d(j, i);
  return d;
}

StateSpace build_state_space(std::span<const LabeledGraph> graphs, const std::optional<EnsembleWeights>& weights) {
  if (graphs.size() < 2) throw ValidationError("a state space needs at least 2 graphs");
  StateSpace space;
  space.features.resize(graphs.size());
  parallel_for(graphs.size(), [&](std::size_t i) { space.features[i] = extract_features(graphs[i].graph); });
  for (const auto& g : graphs) {
    space.ids.push_back(g.id);
    space.labels.push_back(g.label);
  }
  std::vector<FeatureProfile> profiles(space.features.begin(), space.features.end());
  if (weights)
    space.weights = *weights;
  else if (graphs.size() >= 3)
    space.weights = fit_weights(std::span<const FeatureProfile>(profiles));
  else
    space.weights = canonical_weights();
  space.distances = distance_matrix(profiles, space.weights);
  return space;
}

Eigen::MatrixXd mds_project(const Eigen::MatrixXd& distances, int dims) {
  const Eigen::Index n = distances.rows();
  if (n != distances.cols()) throw ValidationError("distance matrix must be square");
  if (dims < 1) throw ValidationError("MDS needs at least one dimension");
  const Eigen::MatrixXd squared = distances.array().square();
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd b = -0.5 * centering * squared * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);

  Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, dims);
  const double top = n > 0 ? std::max(eig.eigenvalues()(n - 1), 0.0) : 0.0;
  for (int k = 0; k < dims && k < n; ++k) {
    const Eigen::Index col = n - 1 - k;
    const double lambda = eig.eigenvalues()(col);
    if (!(lambda > 1e-12 * std::max(1.0, top))) continue;
    Eigen::VectorXd axis = eig.eigenvectors().col(col) * std::sqrt(lambda);
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0.0) axis = -axis;
    coords.col(k) = axis;
  }
  return coords;
}

Eigen::MatrixXd mds_project(const StateSpace& space, int dims) {
  if (space.distances.rows() < 3) throw ValidationError("MDS projection needs at least 3 networks");
  return mds_project(space.distances, dims);
}

std::vector<FeatureProfile> simulate_reference_profiles(const ReferencePanel& panel) {
  const std::size_t per = panel.values_per_mechanism * panel.replicates;
  std::vector<FeatureProfile> profiles(kAllMechanisms.size() * per);
  const SeededRng root = SeededRng(panel.seed).derive("reference-panel");
  parallel_for(profiles.size(), [&](std::size_t idx) {
    const std::size_t m = idx / per;
    const std::size_t value = (idx % per) / panel.replicates;
    const std::size_t rep = idx % panel.replicates;
    const Mechanism kind = kAllMechanisms[m];
    const double param = param_grid(kind, panel.values_per_mechanism)[value];
    const auto g = grow({kind, param}, panel.nodes, root.derive(m, value, rep));
    profiles[idx] = FeatureProfile(extract_features(g));
  });
  return profiles;
}

EnsembleWeights fit_reference_weights(const ReferencePanel& panel) {
  const auto profiles = simulate_reference_profiles(panel);
  return fit_weights(std::span<const FeatureProfile>(profiles));
}

const EnsembleWeights& canonical_weights() {
  static const EnsembleWeights weights = fit_reference_weights();
  return weights;
}

}  // namespace netclass
