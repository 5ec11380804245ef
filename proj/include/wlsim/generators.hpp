#pragma once

#include <array>
#include <cstdint>

#include "wlsim/graph.hpp"

namespace wlsim {

/// xoshiro256** seeded through splitmix64. The output stream is fixed by
/// the algorithm, so a seed reproduces the same draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform double in [0, 1) built from the top 53 bits of one draw.
  double uniform();
  /// Uniform double in the open interval (lo, hi); redraws the endpoints.
  double uniform_open(double lo, double hi);
  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 4> s_;
};

/// Mixes two 64-bit values into one seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

/// G(n, p): pairs (u, v), u < v, are visited in lexicographic order and each
/// becomes an edge when one uniform draw falls below p.
Graph generate_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment. Starts from a star on m+1 nodes (center 0);
/// every later node picks m distinct existing targets with probability
/// proportional to their current degree.
Graph generate_barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

/// Uniform random permutation of 0..n-1 (Fisher-Yates).
std::vector<Node> random_permutation(std::size_t n, Rng& rng);

}  // namespace wlsim
