#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlsim/bigfloat.hpp"
#include "wlsim/graph.hpp"
#include "wlsim/mpnn.hpp"
#include "wlsim/wl.hpp"

namespace wlsim {

using Tuple = std::vector<Node>;

inline constexpr std::size_t kDefaultTupleBudget = 20'000'000;
inline constexpr std::size_t kMaxOrder = 6;

/// Dense mixed-radix indexing of V^k: (v1, ..., vk) -> sum v_i n^(k-i), so
/// index order is lexicographic tuple order.
class TupleSpace {
 public:
  /// Throws InputError unless 2 <= k <= kMaxOrder, and ResourceError when
  /// n^k exceeds `budget`.
  TupleSpace(std::size_t n, std::size_t k, std::size_t budget = kDefaultTupleBudget);

  std::size_t node_count() const { return n_; }
  std::size_t order() const { return k_; }
  std::size_t size() const { return size_; }
  /// n^(k-i) for 1-based coordinate i.
  std::size_t stride(std::size_t i) const { return strides_[i - 1]; }

  std::size_t encode(const Tuple& t) const;
  Tuple decode(std::size_t index) const;
  Node coordinate(std::size_t index, std::size_t i) const { return static_cast<Node>((index / stride(i)) % n_); }

 private:
  std::size_t n_;
  std::size_t k_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

enum class IsoEntry : std::uint8_t { Equal = 0, NonEdge = 1, Edge = 2 };

/// k x k pattern of a tuple: EQUAL where coordinates coincide, otherwise
/// EDGE or NON-EDGE.
class IsoType {
 public:
  static IsoType of(const Graph& g, const Tuple& t);
  /// Inverse of code() for order k.
  static IsoType decode(Color code, std::size_t k);

  std::size_t order() const { return k_; }
  IsoEntry at(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }
  /// Base-3 digits of the upper triangle (row-major); canonical across graphs.
  Color code() const;

 private:
  std::size_t k_ = 0;
  std::vector<IsoEntry> entries_;
};

/// Colors over V^k, indexed through TupleSpace.
struct TupleLabeling {
  std::vector<Color> colors;
  std::size_t k = 0;
  std::size_t round = 0;
};

/// Every tuple colored with its isomorphism-type code.
TupleLabeling iso_type_labeling(const Graph& g, std::size_t k, std::size_t budget = kDefaultTupleBudget);

/// N_i(v) for 1-based coordinate i: v with coordinate i replaced by each
/// u in 0..n-1 (in that order; includes v itself).
std::vector<Tuple> tuple_neighbors(const Tuple& v, std::size_t i, std::size_t n);

/// (own color, sorted N_1 colors, ..., sorted N_k colors) per tuple.
std::vector<RefinementKey> nwl_keys(const TupleSpace& space, const TupleLabeling& l);

TupleLabeling nwl_step(const Graph& g, const TupleLabeling& l, const ColorDictionary& dict,
                       std::size_t budget = kDefaultTupleBudget);
TupleLabeling nwl_step(const Graph& g, const TupleLabeling& l, std::size_t budget = kDefaultTupleBudget);

struct NwlTrace {
  std::vector<TupleLabeling> rounds;
  std::size_t convergence_round = 0;
  bool converged = false;
};

NwlTrace nwl_run(const Graph& g, std::size_t k, std::size_t budget = kDefaultTupleBudget);

DistinguishOutcome nwl_distinguish(const Graph& g1, const Graph& g2, std::size_t k,
                                   std::size_t budget = kDefaultTupleBudget,
                                   std::optional<std::size_t> max_rounds = std::nullopt);

/// Groups a corpus by NWL equivalence with one dictionary shared by all
/// graphs: graphs get the same id iff no round separates them.
std::vector<std::size_t> nwl_equivalence_classes(std::span<const Graph> graphs, std::size_t k,
                                                 std::size_t budget = kDefaultTupleBudget);

/// One real feature per tuple.
struct TupleFeatures {
  std::vector<BigFloat> values;
  std::size_t k = 0;
  std::size_t round = 0;
};

/// Iso-type classes, in ascending code order, map to sqrt(2), sqrt(3), ...
TupleFeatures k_init_features(const Graph& g, std::size_t k, const PrecisionContext& ctx,
                              std::size_t budget = kDefaultTupleBudget);

/// f'(v) = a(gamma * x_v), x_v = f(v) + sum_i (n+1)^i sum_{u in N_i(v)} f(u),
/// with x_v computed exactly from the p-bit inputs and gamma * x_v rounded
/// once. `base_nodes` overrides n (e.g. the size of a disjoint union).
/// Pre-activations grow like (n+1)^k, where the logistic function is
/// already 1 to working precision; arctan keeps them apart.
TupleFeatures k_mpnn_step(const Graph& g, std::size_t k, const TupleFeatures& f, double gamma,
                          const PrecisionContext& ctx, Activation activation = Activation::Arctan,
                          std::optional<std::size_t> base_nodes = std::nullopt,
                          std::size_t budget = kDefaultTupleBudget);

struct KSimulationReport {
  bool perfect = false;
  std::optional<std::size_t> first_divergence_round;
  std::size_t convergence_round = 0;
  std::size_t nwl_classes = 0;
  std::vector<std::size_t> mpnn_classes;
  std::vector<bool> round_agreement;
};

/// Runs NWL to convergence T and the k-order MPNN for T rounds; perfect iff
/// the induced partitions of V^k agree at every round 0..T.
KSimulationReport k_perfect_simulation(const Graph& g, std::size_t k, double gamma, const PrecisionContext& ctx,
                                       Activation activation = Activation::Arctan,
                                       std::size_t budget = kDefaultTupleBudget);

}  // namespace wlsim
