#include "netclass/graph.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "netclass/error.hpp"

namespace netclass {

Graph::Graph(std::size_t n) : Graph(n, {}) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  if (n == 0) throw ValidationError("graph must have at least one node");
  for (const auto& e : edges) {
    if (e.source >= n || e.target >= n)
      throw ValidationError("edge (" + std::to_string(e.source) + ", " +
                            std::to_string(e.target) + ") out of range for " +
                            std::to_string(n) + " nodes");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw ValidationError("edge weight must be finite and nonnegative");
  }
  // Stable sort keeps insertion order among duplicates, so the last one wins.
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  offsets_.assign(n + 1, 0);
  in_degree_.assign(n, 0);
  targets_.reserve(edges.size());
  weights_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i + 1 < edges.size() && edges[i + 1].source == edges[i].source &&
        edges[i + 1].target == edges[i].target)
      continue;
    targets_.push_back(edges[i].target);
    weights_.push_back(edges[i].weight);
    ++offsets_[edges[i].source + 1];
    ++in_degree_[edges[i].target];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
}

bool Graph::has_edge(NodeId source, NodeId target) const {
  auto nbrs = out_neighbors(source);
  return std::binary_search(nbrs.begin(), nbrs.end(), target);
}

double Graph::weight(NodeId source, NodeId target) const {
  auto nbrs = out_neighbors(source);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), target);
  if (it == nbrs.end() || *it != target) return 0.0;
  return weights_[offsets_[source] + static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(targets_.size());
  for (NodeId v = 0; v < n_; ++v)
    for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k)
      out.push_back({v, targets_[k], weights_[k]});
  return out;
}

Eigen::MatrixXd Graph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (NodeId v = 0; v < n_; ++v)
    for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) a(v, targets_[k]) = weights_[k];
  return a;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_ &&
         a.weights_ == b.weights_;
}

Graph relabel(const Graph& g, std::span<const NodeId> permutation) {
  if (permutation.size() != g.node_count())
    throw ValidationError("permutation size does not match node count");
  auto edges = g.edges();
  for (auto& e : edges) {
    e.source = permutation[e.source];
    e.target = permutation[e.target];
  }
  return Graph(g.node_count(), std::move(edges));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) tokens.push_back(s.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::optional<std::uint64_t> parse_id(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_real(std::string_view token) {
  // std::from_chars for double is unavailable on older libstdc++.
  std::string buf(token);
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || errno == ERANGE || !std::isfinite(value))
    return std::nullopt;
  return value;
}

}  // namespace

Graph read_edgelist(std::istream& in) {
  std::optional<std::size_t> declared_nodes;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any_edge = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto comment = trim(body.substr(1));
      constexpr std::string_view key = "nodes=";
      if (comment.substr(0, key.size()) == key) {
        const auto count = parse_id(trim(comment.substr(key.size())));
        if (!count) throw ParseError(line_no, "malformed nodes header");
        declared_nodes = *count;
      }
      continue;
    }
    const auto tokens = split_ws(body);
    if (tokens.size() < 2 || tokens.size() > 3)
      throw ParseError(line_no, "expected 'src dst [weight]'");
    const auto src = parse_id(tokens[0]);
    const auto dst = parse_id(tokens[1]);
    if (!src || !dst) throw ParseError(line_no, "node ids must be nonnegative integers");
    if (*src > UINT32_MAX - 1 || *dst > UINT32_MAX - 1)
      throw ParseError(line_no, "node id too large");
    double w = 1.0;
    if (tokens.size() == 3) {
      const auto parsed = parse_real(tokens[2]);
      if (!parsed) throw ParseError(line_no, "malformed weight '" + std::string(tokens[2]) + "'");
      if (*parsed < 0.0)
        throw ValidationError("line " + std::to_string(line_no) + ": negative weight");
      w = *parsed;
    }
    edges.push_back({static_cast<NodeId>(*src), static_cast<NodeId>(*dst), w});
    max_id = std::max({max_id, *src, *dst});
    any_edge = true;
  }
  std::size_t n = any_edge ? static_cast<std::size_t>(max_id) + 1 : 0;
  if (declared_nodes) {
    if (*declared_nodes < n)
      throw ValidationError("nodes header (" + std::to_string(*declared_nodes) +
                            ") is smaller than the largest node id + 1");
    n = *declared_nodes;
  }
  if (n == 0) throw ValidationError("edgelist has no edges and no '# nodes=K' header");
  return Graph(n, std::move(edges));
}

Graph read_edgelist(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_edgelist(in);
}

Graph read_edgelist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_edgelist(in);
}

void write_edgelist(std::ostream& out, const Graph& g, std::span<const std::string> header_comments) {
  out << "# nodes=" << g.node_count() << '\n';
  for (const auto& c : header_comments) out << "# " << c << '\n';
  char buf[64];
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nbrs = g.out_neighbors(v);
    const auto ws = g.out_weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.9g", ws[k]);
      out << v << ' ' << nbrs[k] << ' ' << buf << '\n';
    }
  }
}

std::string write_edgelist(const Graph& g) {
  std::ostringstream out;
  write_edgelist(out, g);
  return out.str();
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd rows) : p_(std::move(rows)) {
  if (p_.rows() == 0 || p_.rows() != p_.cols())
    throw ValidationError("transition matrix must be square and nonempty");
}

TransitionMatrix row_normalize(const Graph& g) {
  Eigen::MatrixXd p = g.adjacency();
  const double uniform = 1.0 / static_cast<double>(g.node_count());
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double total = p.row(i).sum();
    if (total > 0.0)
      p.row(i) /= total;
    else
      p.row(i).setConstant(uniform);
  }
  return TransitionMatrix(std::move(p));
}

TransitionMatrix markov_power(const Graph& g, int order) {
  if (order < 1) throw ValidationError("markov order must be >= 1");
  const auto base = row_normalize(g);
  Eigen::MatrixXd result = base.matrix();
  for (int k = 1; k < order; ++k) result = (result * base.matrix()).eval();
  return TransitionMatrix(std::move(result));
}

Graph binarize(const TransitionMatrix& t, double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("binarize threshold must be >= 0");
  const auto n = t.node_count();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t(i, j) > threshold) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
  return Graph(n, std::move(edges));
}

Graph binarize(const TransitionMatrix& t) {
  return binarize(t, 1.0 / static_cast<double>(t.node_count()));
}

Graph to_weighted_graph(const TransitionMatrix& t) {
  const auto n = t.node_count();
  std::vector<Edge> edges;
  edges.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t(i, j) > 0.0) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), t(i, j)});
  return Graph(n, std::move(edges));
}

}  // namespace netclass
