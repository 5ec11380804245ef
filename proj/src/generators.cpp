#include "wlsim/generators.hpp"

#include <algorithm>
#include <string>

#include "wlsim/error.hpp"

namespace wlsim {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform_open(double lo, double hi) {
  for (;;) {
    const double x = lo + (hi - lo) * uniform();
    if (x > lo && x < hi) return x;
  }
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("Rng::below: empty range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t state = base ^ (salt * 0xd1b54a32d192ed03ULL);
  splitmix64(state);
  return splitmix64(state);
}

Graph generate_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  if (n < 1) throw InputError("Erdos-Renyi graph needs n >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Node u = 0; u < n; ++u) {
    for (Node v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) {
    throw InputError("Barabasi-Albert needs 1 <= m < n (got m=" + std::to_string(m) +
                     ", n=" + std::to_string(n) + ")");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  // Each node appears here once per incident edge, so a uniform pick from
  // this list is a degree-proportional pick.
  std::vector<Node> endpoints;
  for (Node leaf = 1; leaf <= m; ++leaf) {
    edges.push_back({0, leaf});
    endpoints.push_back(0);
    endpoints.push_back(leaf);
  }
  std::vector<Node> targets;
  for (auto v = static_cast<Node>(m + 1); v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      const Node t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (Node t : targets) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

std::vector<Node> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Node> perm(n);
  for (Node i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  return perm;
}

}  // namespace wlsim
