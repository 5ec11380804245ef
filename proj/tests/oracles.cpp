#include "oracles.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

using wlsim::Edge;
using wlsim::Graph;
using wlsim::Node;

namespace {

std::uint64_t code_under(const Graph& g, const std::vector<Node>& order) {
  // order[i] is the node placed at position i.
  const std::size_t n = g.node_count();
  std::uint64_t code = 0;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if (g.has_edge(order[i], order[j])) code |= std::uint64_t{1} << bit;
    }
  }
  return code;
}

Graph from_code(std::size_t n, std::uint64_t code) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Node i = 0; i < n; ++i) {
    for (Node j = i + 1; j < n; ++j, ++bit) {
      if (code >> bit & 1) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > 11) throw std::invalid_argument("canonical_code: graph too large");
  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), Node{0});
  std::sort(order.begin(), order.end(), [&](Node a, Node b) {
    return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
  });
  // Permute within runs of equal degree only: odometer over the runs.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && g.degree(order[j]) == g.degree(order[i])) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  std::uint64_t best = code_under(g, order);
  for (;;) {
    std::size_t r = 0;
    for (; r < runs.size(); ++r) {
      auto [b, e] = runs[r];
      if (std::next_permutation(order.begin() + static_cast<std::ptrdiff_t>(b),
                                order.begin() + static_cast<std::ptrdiff_t>(e))) {
        break;
      }
      // Wrapped to the sorted arrangement; carry into the next run.
    }
    if (r == runs.size()) break;
    best = std::min(best, code_under(g, order));
  }
  return best;
}

std::vector<std::vector<Graph>> graphs_by_size(std::size_t max_n) {
  if (max_n > 8) throw std::invalid_argument("graphs_by_size: max_n too large");
  std::vector<std::vector<Graph>> out(max_n + 1);
  out[0].push_back(Graph(0));
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::set<std::uint64_t> seen;
    for (const Graph& base : out[n - 1]) {
      const auto base_edges = base.edges();
      for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << (n - 1)); ++subset) {
        std::vector<Edge> edges(base_edges.begin(), base_edges.end());
        for (Node u = 0; u + 1 < n; ++u) {
          if (subset >> u & 1) edges.push_back({u, static_cast<Node>(n - 1)});
        }
        seen.insert(canonical_code(Graph::from_edges(n, edges)));
      }
    }
    for (std::uint64_t code : seen) out[n].push_back(from_code(n, code));
  }
  return out;
}

bool brute_force_isomorphic(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  const std::size_t n = a.node_count();
  std::vector<Node> perm(n);
  std::iota(perm.begin(), perm.end(), Node{0});
  const auto edges = a.edges();
  do {
    bool ok = true;
    for (const auto& e : edges) {
      if (!b.has_edge(perm[e.u], perm[e.v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::optional<std::size_t> naive_wl_distinguish(const Graph& a, const Graph& b) {
  const std::size_t na = a.node_count();
  const std::size_t n = na + b.node_count();
  auto neighbors = [&](std::size_t x) {
    std::vector<std::size_t> out;
    if (x < na) {
      for (Node u : a.neighbors(static_cast<Node>(x))) out.push_back(u);
    } else {
      for (Node u : b.neighbors(static_cast<Node>(x - na))) out.push_back(na + u);
    }
    return out;
  };
  auto label = [&](std::size_t x) {
    return x < na ? a.label(static_cast<Node>(x)).value : b.label(static_cast<Node>(x - na)).value;
  };

  // Initial classes: ids by first occurrence of each label.
  std::vector<std::size_t> cls(n);
  std::size_t classes = 0;
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = 0;
    while (y < x && label(y) != label(x)) ++y;
    cls[x] = y < x ? cls[y] : classes++;
  }
  auto differs = [&] {
    for (std::size_t c = 0; c < classes; ++c) {
      std::size_t in_a = 0;
      std::size_t in_b = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (cls[x] == c) (x < na ? in_a : in_b)++;
      }
      if (in_a != in_b) return true;
    }
    return false;
  };

  for (std::size_t round = 0;; ++round) {
    if (differs()) return round;
    // Neighbor counts per old class.
    std::vector<std::vector<std::size_t>> counts(n, std::vector<std::size_t>(classes, 0));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t u : neighbors(x)) ++counts[x][cls[u]];
    }
    std::vector<std::size_t> next(n);
    std::size_t next_classes = 0;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t y = 0;
      while (y < x && !(cls[y] == cls[x] && counts[y] == counts[x])) ++y;
      next[x] = y < x ? next[y] : next_classes++;
    }
    if (next_classes == classes) return std::nullopt;
    cls = std::move(next);
    classes = next_classes;
  }
}

double logistic_reference(double x, unsigned work_bits) {
  mpfr_t t, one;
  mpfr_init2(t, work_bits);
  mpfr_init2(one, work_bits);
  mpfr_set_d(t, x, MPFR_RNDN);
  mpfr_exp(t, t, MPFR_RNDN);
  mpfr_set_ui(one, 1, MPFR_RNDN);
  mpfr_add(one, one, t, MPFR_RNDN);
  mpfr_div(t, t, one, MPFR_RNDN);
  const double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  mpfr_clear(one);
  return out;
}

namespace {

// s(2g) + s(5g) - 2 s(3g) with s(x) = 1 / (1 + e^-x), at 256 bits.
int collision_sign(const mpfr_t g) {
  mpfr_t acc, term, x;
  mpfr_inits2(256, acc, term, x, static_cast<mpfr_ptr>(nullptr));
  auto s = [&](long k) {
    mpfr_mul_si(x, g, -k, MPFR_RNDN);
    mpfr_exp(x, x, MPFR_RNDN);
    mpfr_add_ui(x, x, 1, MPFR_RNDN);
    mpfr_ui_div(term, 1, x, MPFR_RNDN);
  };
  mpfr_set_ui(acc, 0, MPFR_RNDN);
  s(2);
  mpfr_add(acc, acc, term, MPFR_RNDN);
  s(5);
  mpfr_add(acc, acc, term, MPFR_RNDN);
  s(3);
  mpfr_mul_ui(term, term, 2, MPFR_RNDN);
  mpfr_sub(acc, acc, term, MPFR_RNDN);
  const int sign = mpfr_sgn(acc);
  mpfr_clears(acc, term, x, static_cast<mpfr_ptr>(nullptr));
  return sign;
}

}  // namespace

double collision_gamma() {
  mpfr_t lo, hi, mid;
  mpfr_inits2(256, lo, hi, mid, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(lo, 0.5, MPFR_RNDN);  // positive here
  mpfr_set_d(hi, 0.8, MPFR_RNDN);  // negative here
  for (int i = 0; i < 200; ++i) {
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    if (collision_sign(mid) > 0) {
      mpfr_set(lo, mid, MPFR_RNDN);
    } else {
      mpfr_set(hi, mid, MPFR_RNDN);
    }
  }
  const double out = mpfr_get_d(lo, MPFR_RNDN);
  mpfr_clears(lo, hi, mid, static_cast<mpfr_ptr>(nullptr));
  return out;
}

Graph collision_graph() {
  // 0=a, 1=v, 2=h, 3..5 leaves of h, 6..9 the 4-cycle.
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {6, 7}, {7, 8}, {8, 9}, {6, 9}};
  return Graph::from_edges(10, edges);
}

}  // namespace oracle
