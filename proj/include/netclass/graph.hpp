#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace netclass {

using NodeId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed, optionally weighted graph with at most one edge per ordered
/// (source, target) pair. Self-loops are allowed. Immutable once built.
///
/// Edges are stored in CSR form sorted by (source, target), so `edges()` and
/// `out_neighbors()` are always in ascending order.
class Graph {
 public:
  /// Graph with `n` isolated nodes. Throws ValidationError if n == 0.
  explicit Graph(std::size_t n);

  /// Builds from an edge list. Duplicate (source, target) pairs keep the
  /// weight of the last occurrence. Throws ValidationError on out-of-range
  /// ids or negative/non-finite weights.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const double> out_weights(NodeId v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t out_degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t in_degree(NodeId v) const { return in_degree_[v]; }

  bool has_edge(NodeId source, NodeId target) const;
  double weight(NodeId source, NodeId target) const;  // 0 when absent

  /// All edges in ascending (source, target) order.
  std::vector<Edge> edges() const;

  /// Dense weighted adjacency matrix.
  Eigen::MatrixXd adjacency() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<std::size_t> in_degree_;
};

/// Graph relabeled so node `v` becomes `permutation[v]`.
Graph relabel(const Graph& g, std::span<const NodeId> permutation);

/// Reads `src dst [weight]` lines. `#` starts a comment line; a `# nodes=K`
/// comment fixes the node count. Throws ParseError / ValidationError.
Graph read_edgelist(std::istream& in);
Graph read_edgelist(std::string_view text);
Graph read_edgelist_file(const std::string& path);

/// Writes a `# nodes=K` header followed by one `src dst weight` line per edge
/// in ascending (src, dst) order, weights with 9 significant digits.
/// `header_comments` are emitted verbatim as `# ...` lines after the header.
void write_edgelist(std::ostream& out, const Graph& g,
                    std::span<const std::string> header_comments = {});
std::string write_edgelist(const Graph& g);

/// Row-stochastic matrix. Rows sum to 1; entries lie in [0, 1].
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Eigen::MatrixXd rows);

  std::size_t node_count() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const noexcept { return p_; }

 private:
  Eigen::MatrixXd p_;
};

/// Row-normalized weighted adjacency; rows without outgoing weight become
/// uniform 1/n.
TransitionMatrix row_normalize(const Graph& g);

/// `row_normalize(g)` raised to `order` (>= 1).
TransitionMatrix markov_power(const Graph& g, int order);

/// Edge (i, j) iff t(i, j) > threshold; all weights 1. Diagonal entries
/// become self-loops.
Graph binarize(const TransitionMatrix& t, double threshold);
/// Threshold 1/n ("above uniform").
Graph binarize(const TransitionMatrix& t);

/// Weighted graph with an edge for every positive entry of `t`.
Graph to_weighted_graph(const TransitionMatrix& t);

}  // namespace netclass
