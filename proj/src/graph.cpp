#include "wlsim/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wlsim/error.hpp"

namespace wlsim {

Graph::Graph(std::size_t n) : offsets_(n + 1, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::optional<std::vector<LabelId>> labels) {
  if (labels && labels->size() != n) {
    throw InputError("label vector has " + std::to_string(labels->size()) +
                     " entries for a graph on " + std::to_string(n) + " nodes");
  }
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    }
    if (e.u == e.v) throw InputError("self-loop at node " + std::to_string(e.u));
    ++degree[e.u];
    ++degree[e.v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), g.offsets_.begin() + 1);
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw InputError("duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) + "}");
    }
  }
  g.labels_ = std::move(labels);
  return g;
}

std::span<const Node> Graph::neighbors(Node v) const {
  if (v >= node_count()) {
    throw InputError("node " + std::to_string(v) + " out of range for graph on " +
                     std::to_string(node_count()) + " nodes");
  }
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::has_edge(Node u, Node v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Node u = 0; u < node_count(); ++u) {
    for (Node v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

LabelId Graph::label(Node v) const {
  if (v >= node_count()) throw InputError("node " + std::to_string(v) + " out of range");
  return labels_ ? (*labels_)[v] : LabelId{0};
}

Graph disjoint_union(const Graph& g1, const Graph& g2) {
  const auto shift = static_cast<Node>(g1.node_count());
  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) edges.push_back({e.u + shift, e.v + shift});

  std::optional<std::vector<LabelId>> labels;
  if (g1.is_labeled() || g2.is_labeled()) {
    labels.emplace();
    labels->reserve(g1.node_count() + g2.node_count());
    for (Node v = 0; v < g1.node_count(); ++v) labels->push_back(g1.label(v));
    for (Node v = 0; v < g2.node_count(); ++v) labels->push_back(g2.label(v));
  }
  return Graph::from_edges(g1.node_count() + g2.node_count(), edges, std::move(labels));
}

Graph permute(const Graph& g, std::span<const Node> perm) {
  const std::size_t n = g.node_count();
  if (perm.size() != n) throw InputError("permutation size does not match node count");
  std::vector<bool> seen(n, false);
  for (Node p : perm) {
    if (p >= n || seen[p]) throw InputError("not a permutation of 0..n-1");
    seen[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});

  std::optional<std::vector<LabelId>> labels;
  if (g.is_labeled()) {
    labels.emplace(n);
    for (Node v = 0; v < n; ++v) (*labels)[perm[v]] = g.label(v);
  }
  return Graph::from_edges(n, edges, std::move(labels));
}

std::string validate(const Graph& g) {
  const std::size_t n = g.node_count();
  std::size_t endpoint_total = 0;
  for (Node v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    endpoint_total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] >= n) return "neighbor out of range at node " + std::to_string(v);
      if (nb[i] == v) return "self-loop at node " + std::to_string(v);
      if (i > 0 && nb[i - 1] >= nb[i]) return "unsorted or repeated neighbor at node " + std::to_string(v);
      if (!g.has_edge(nb[i], v)) return "asymmetric adjacency at node " + std::to_string(v);
    }
  }
  if (endpoint_total != 2 * g.edge_count()) return "edge count mismatch";
  if (g.is_labeled() && g.labels()->size() != n) return "label vector size mismatch";
  return {};
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Node v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (Node v = 0; v < n; ++v) edges.push_back({v, static_cast<Node>((v + 1) % n)});
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Node v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, edges);
}

}  // namespace wlsim
