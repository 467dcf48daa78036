#include "netclass/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netclass/error.hpp"

namespace netclass {

std::string_view to_string(Mechanism kind) {
  switch (kind) {
    case Mechanism::ErdosRenyi: return "er";
    case Mechanism::DuplicationDivergence: return "dd";
    case Mechanism::Niche: return "niche";
    case Mechanism::PreferentialAttachment: return "pa";
    case Mechanism::SmallWorld: return "sw";
  }
  return "?";
}

Mechanism parse_mechanism(std::string_view name) {
  for (auto kind : kAllMechanisms)
    if (to_string(kind) == name) return kind;
  throw ValidationError("unknown mechanism '" + std::string(name) + "' (expected er, dd, niche, pa, sw)");
}

std::size_t mechanism_index(Mechanism kind) {
  return static_cast<std::size_t>(std::find(kAllMechanisms.begin(), kAllMechanisms.end(), kind) -
                                  kAllMechanisms.begin());
}

ParamRange param_range(Mechanism kind) {
  switch (kind) {
    case Mechanism::Niche: return {0.0, 0.5, true};
    case Mechanism::PreferentialAttachment: return {0.0, 4.0, false};
    default: return {0.0, 1.0, false};
  }
}

std::vector<double> param_grid(Mechanism kind, std::size_t count) {
  const auto range = param_range(kind);
  std::vector<double> grid(count);
  const double span = range.upper - range.lower;
  for (std::size_t i = 0; i < count; ++i) {
    if (range.lower_open)
      grid[i] = range.lower + span * static_cast<double>(i + 1) / static_cast<double>(count);
    else if (count == 1)
      grid[i] = range.lower + 0.5 * span;
    else
      grid[i] = range.lower + span * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

void validate(const MechanismSpec& spec) {
  const auto range = param_range(spec.kind);
  if (!std::isfinite(spec.param) || !range.contains(spec.param))
    throw ValidationError("parameter " + std::to_string(spec.param) + " outside the range of mechanism " +
                          std::string(to_string(spec.kind)));
}

namespace {

/// Mutable network under construction: dense adjacency bits plus out-lists.
class Builder {
 public:
  explicit Builder(std::size_t n) : n_(n), adj_(n * n, 0), out_(n), in_degree_(n, 0) {}

  explicit Builder(const Graph& g) : Builder(g.node_count()) {
    for (const auto& e : g.edges()) add_edge(e.source, e.target);
  }

  std::size_t size() const { return n_; }
  bool has_edge(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
  const std::vector<NodeId>& out(std::size_t v) const { return out_[v]; }
  std::size_t in_degree(std::size_t v) const { return in_degree_[v]; }

  void add_edge(std::size_t u, std::size_t v) {
    if (adj_[u * n_ + v]) return;
    adj_[u * n_ + v] = 1;
    out_[u].push_back(static_cast<NodeId>(v));
    ++in_degree_[v];
  }

  void clear_out(std::size_t v) {
    for (auto w : out_[v]) {
      adj_[v * n_ + w] = 0;
      --in_degree_[w];
    }
    out_[v].clear();
  }

  Graph to_graph() const {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n_; ++u)
      for (auto v : out_[u]) edges.push_back({static_cast<NodeId>(u), v, 1.0});
    return Graph(n_, std::move(edges));
  }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::size_t> in_degree_;
};

struct NicheInterval {
  double low = 0.0;
  double high = -1.0;  // empty until drawn

  bool contains(double x) const { return x >= low && x <= high; }
};

/// Shared state for one generation run.
struct Growth {
  Builder net;
  std::vector<double> niche_value;
  std::vector<NicheInterval> interval;
  SeededRng::Engine eng;
  const GrowthOptions& options;
  // Growth mode: node v sees nodes [0, v). Stir mode: every node but itself,
  // with the ring lattice wrapping around.
  bool stir = false;

  Growth(std::size_t n, SeededRng::Engine engine, const GrowthOptions& opts)
      : net(n), niche_value(n, 0.0), interval(n), eng(std::move(engine)), options(opts) {}

  std::size_t population(std::size_t v) const { return stir ? net.size() : v; }

  std::vector<NodeId> candidates(std::size_t v) const {
    std::vector<NodeId> c;
    const std::size_t pop = population(v);
    c.reserve(pop);
    for (std::size_t u = 0; u < pop; ++u)
      if (u != v) c.push_back(static_cast<NodeId>(u));
    return c;
  }

  double uniform() { return uniform01(eng); }

  void attach(std::size_t v, const MechanismSpec& spec) {
    switch (spec.kind) {
      case Mechanism::ErdosRenyi: attach_er(v, spec.param); break;
      case Mechanism::DuplicationDivergence: attach_dd(v, spec.param); break;
      case Mechanism::Niche: attach_niche(v, spec.param); break;
      case Mechanism::PreferentialAttachment: attach_pa(v, spec.param); break;
      case Mechanism::SmallWorld: attach_sw(v, spec.param); break;
    }
  }

  void attach_er(std::size_t v, double p) {
    for (std::size_t u = 0; u < population(v); ++u) {
      if (u == v) continue;
      if (uniform() < p) net.add_edge(v, u);
      if (!stir && uniform() < p) net.add_edge(u, v);
    }
  }

  void attach_pa(std::size_t v, double alpha) {
    auto pool = candidates(v);
    std::vector<double> weight(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
      weight[i] = std::pow(static_cast<double>(net.in_degree(pool[i]) + 1), alpha);
    const std::size_t m = std::min(options.pa_out_edges, pool.size());
    for (std::size_t draw = 0; draw < m; ++draw) {
      const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
      double target = uniform() * total;
      std::size_t pick = 0;
      for (; pick + 1 < pool.size(); ++pick) {
        if (target < weight[pick]) break;
        target -= weight[pick];
      }
      // Round-off can walk past the last positive weight.
      while (weight[pick] == 0.0 && pick > 0) --pick;
      net.add_edge(v, pool[pick]);
      weight[pick] = 0.0;
    }
  }

  void attach_dd(std::size_t v, double q) {
    const auto pool = candidates(v);
    if (pool.empty()) return;
    const std::size_t parent = pool[uniform_index(eng, pool.size())];
    const auto parent_out = net.out(parent);  // copy: v's edges are added below
    for (auto w : parent_out)
      if (w != v && uniform() < 1.0 - q) net.add_edge(v, w);
    if (uniform() < 1.0 - q) net.add_edge(v, parent);
    if (net.out(v).empty()) net.add_edge(v, pool[uniform_index(eng, pool.size())]);
  }

  NicheInterval draw_interval(std::size_t v, double connectance) {
    const double eta = niche_value[v];
    const double b = (1.0 - 2.0 * connectance) / (2.0 * connectance);
    // Beta(1, b) by inversion; b == 0 is the C = 0.5 limit where x == 1.
    const double u = uniform();
    const double x = b > 0.0 ? 1.0 - std::pow(1.0 - u, 1.0 / b) : 1.0;
    const double range = eta * x;
    const double center = range / 2.0 + uniform() * (eta - range / 2.0);
    return {center - range / 2.0, center + range / 2.0};
  }

  void attach_niche(std::size_t v, double connectance) {
    interval[v] = draw_interval(v, connectance);
    const std::size_t pop = stir ? net.size() : v + 1;  // v may eat itself
    for (std::size_t u = 0; u < pop; ++u)
      if (interval[v].contains(niche_value[u])) net.add_edge(v, u);
  }

  void attach_sw(std::size_t v, double beta) {
    const std::size_t pop = population(v);
    const std::size_t k = std::min(options.sw_lattice_degree, stir ? pop - 1 : pop);
    std::vector<std::size_t> lattice;
    for (std::size_t j = 1; j <= k; ++j) lattice.push_back(stir ? (v + pop - j) % pop : v - j);
    for (auto target : lattice) {
      if (uniform() < beta) {
        std::vector<NodeId> open;
        for (std::size_t u = 0; u < pop; ++u) {
          if (u == v || net.has_edge(v, u)) continue;
          if (std::find(lattice.begin(), lattice.end(), u) != lattice.end()) continue;
          open.push_back(static_cast<NodeId>(u));
        }
        if (!open.empty()) target = open[uniform_index(eng, open.size())];
      }
      net.add_edge(v, target);
    }
  }

  /// Growth mode: existing niche consumers whose interval covers v eat it.
  void eaten_by_existing(std::size_t v) {
    for (std::size_t u = 0; u < v; ++u)
      if (interval[u].contains(niche_value[v])) net.add_edge(u, v);
  }
};

void check_assignment(const MixtureAssignment& assignment) {
  if (assignment.size() < 3) throw ValidationError("networks need at least 3 nodes");
  for (const auto& spec : assignment) validate(spec);
}

}  // namespace

Graph grow(const MechanismSpec& spec, std::size_t n, const SeededRng& rng, const GrowthOptions& options) {
  validate(spec);
  if (n < 3) throw ValidationError("networks need at least 3 nodes");
  return grow_mixture(MixtureAssignment(n, spec), rng, options);
}

Graph grow_mixture(const MixtureAssignment& assignment, const SeededRng& rng, const GrowthOptions& options) {
  check_assignment(assignment);
  const std::size_t n = assignment.size();
  Growth growth(n, rng.engine(), options);

  // Seed: directed 3-cycle, each node pointing at its ring predecessor.
  // ER seed nodes skip their cycle edge and attach by the ER rule instead,
  // so all-ER growth is plain ER on every node.
  for (std::size_t v = 0; v < 3; ++v) {
    growth.niche_value[v] = growth.uniform();
    if (assignment[v].kind == Mechanism::Niche)
      growth.interval[v] = growth.draw_interval(v, assignment[v].param);
  }
  for (std::size_t v = 0; v < 3; ++v)
    if (assignment[v].kind != Mechanism::ErdosRenyi) growth.net.add_edge(v, (v + 2) % 3);
  for (std::size_t v = 1; v < 3; ++v)
    if (assignment[v].kind == Mechanism::ErdosRenyi) growth.attach_er(v, assignment[v].param);

  for (std::size_t v = 3; v < n; ++v) {
    growth.niche_value[v] = growth.uniform();
    growth.attach(v, assignment[v]);
    growth.eaten_by_existing(v);
  }
  return growth.net.to_graph();
}

Graph stir_mixture(const MixtureAssignment& assignment, const SeededRng& rng, const GrowthOptions& options) {
  check_assignment(assignment);
  const std::size_t n = assignment.size();
  const auto initial =
      grow({Mechanism::ErdosRenyi, options.stir_initial_density}, n, rng.derive("initial"), options);

  Growth growth(n, rng.derive("stir").engine(), options);
  growth.net = Builder(initial);
  growth.stir = true;
  for (std::size_t v = 0; v < n; ++v) growth.niche_value[v] = growth.uniform();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_index(growth.eng, i + 1)]);

  for (auto v : order) {
    growth.net.clear_out(v);
    growth.attach(v, assignment[v]);
  }
  return growth.net.to_graph();
}

MixtureAssignment assignment_from_proportions(const std::array<double, 5>& proportions,
                                              const std::array<double, 5>& params, std::size_t n,
                                              const SeededRng& rng) {
  const double total = std::accumulate(proportions.begin(), proportions.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9 ||
      std::any_of(proportions.begin(), proportions.end(), [](double p) { return p < 0.0; }))
    throw ValidationError("mechanism proportions must be nonnegative and sum to 1");

  std::array<std::size_t, 5> counts{};
  std::array<std::size_t, 5> by_remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    counts[i] = static_cast<std::size_t>(std::floor(proportions[i] * static_cast<double>(n)));
    assigned += counts[i];
    by_remainder[i] = i;
  }
  std::stable_sort(by_remainder.begin(), by_remainder.end(), [&](std::size_t a, std::size_t b) {
    const double ra = proportions[a] * static_cast<double>(n) - static_cast<double>(counts[a]);
    const double rb = proportions[b] * static_cast<double>(n) - static_cast<double>(counts[b]);
    return ra > rb;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++counts[by_remainder[i % 5]];

  MixtureAssignment assignment;
  assignment.reserve(n);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t c = 0; c < counts[i]; ++c) assignment.push_back({kAllMechanisms[i], params[i]});
  auto eng = rng.engine();
  for (std::size_t i = n - 1; i > 0; --i) std::swap(assignment[i], assignment[uniform_index(eng, i + 1)]);
  return assignment;
}

}  // namespace netclass
