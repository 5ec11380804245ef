#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wlsim {

using Node = std::uint32_t;

/// Identifies an element of the node label set. Unlabeled graphs report 0
/// for every node.
struct LabelId {
  std::uint32_t value = 0;
  friend auto operator<=>(const LabelId&, const LabelId&) = default;
};

struct Edge {
  Node u;
  Node v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on nodes 0..n-1, optionally node-labeled.
///
/// Immutable once built. Adjacency is stored in CSR form with each
/// neighbor list sorted ascending.
class Graph {
 public:
  Graph() = default;

  /// Edgeless graph on `n` nodes.
  explicit Graph(std::size_t n);

  /// Validates and builds. Throws InputError on self-loops, repeated
  /// edges (in either orientation), endpoints >= n, or a label vector
  /// whose size differs from n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::optional<std::vector<LabelId>> labels = std::nullopt);

  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  /// Sorted neighbor list of `v`. Throws InputError when v is out of range.
  std::span<const Node> neighbors(Node v) const;
  std::size_t degree(Node v) const { return neighbors(v).size(); }
  bool has_edge(Node u, Node v) const;

  /// Edges as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

  bool is_labeled() const { return labels_.has_value(); }
  LabelId label(Node v) const;
  const std::optional<std::vector<LabelId>>& labels() const { return labels_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Node> adjacency_;
  std::optional<std::vector<LabelId>> labels_;
};

/// g1's nodes keep their ids, g2's are shifted by g1.node_count(). The
/// result is labeled if either input is; an unlabeled side contributes
/// LabelId{0}.
Graph disjoint_union(const Graph& g1, const Graph& g2);

/// Image of g under the node map v -> perm[v]. perm must be a permutation
/// of 0..n-1.
Graph permute(const Graph& g, std::span<const Node> perm);

/// Checks the structural invariants (no loops, no multi-edges, symmetric
/// sorted adjacency, endpoints in range). Returns an empty string when the
/// graph is valid, otherwise a description of the first violation.
std::string validate(const Graph& g);

/// Common small graphs used by tests and the CLI.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

}  // namespace wlsim
