#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wlsim/graph.hpp"

namespace wlsim {

using Color = std::uint32_t;

/// One round of colors over the nodes (or tuples) of a graph.
struct Labeling {
  std::vector<Color> colors;
  std::size_t round = 0;
};

/// Set partition induced by a coloring. Blocks are listed in order of
/// their smallest member; members are ascending.
class Partition {
 public:
  static Partition from_colors(std::span<const Color> colors);

  std::size_t element_count() const { return block_of_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
  std::uint32_t block_of(std::uint32_t element) const { return block_of_.at(element); }

  /// True when every block of *this lies inside one block of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.block_of_ == b.block_of_; }

 private:
  std::vector<std::uint32_t> block_of_;
  std::vector<std::vector<std::uint32_t>> blocks_;
};

/// Number of distinct colors.
std::size_t count_classes(std::span<const Color> colors);

/// l1(u) = l1(v) <=> l2(u) = l2(v) for all u, v. Throws InputError when the
/// labelings cover different numbers of elements.
bool partitions_equivalent(std::span<const Color> l1, std::span<const Color> l2);
bool partitions_equivalent(const Labeling& l1, const Labeling& l2);

/// Refinement key of an element: its own color followed by the sorted
/// colors of its neighborhood(s). Keys compare lexicographically.
using RefinementKey = std::vector<Color>;

/// Canonical color compression for one refinement round. Keys from every
/// participating graph are inserted, then frozen; a key's color is its
/// rank in lexicographic key order, so equal keys in different graphs
/// get equal colors.
class ColorDictionary {
 public:
  void insert(std::span<const RefinementKey> keys);
  void freeze();
  bool frozen() const { return frozen_; }
  std::size_t size() const { return keys_.size(); }
  /// Throws InputError for a key that was never inserted or before freeze().
  Color lookup(const RefinementKey& key) const;
  std::vector<Color> lookup_all(std::span<const RefinementKey> keys) const;

 private:
  std::vector<RefinementKey> keys_;
  bool frozen_ = false;
};

/// Round-0 coloring: the node label value, or 0 for unlabeled graphs.
Labeling initial_labeling(const Graph& g);

/// (own color, sorted neighbor colors) for every node.
std::vector<RefinementKey> refinement_keys(const Graph& g, const Labeling& l);

/// One WL round under a shared, frozen dictionary that already holds the
/// keys of `g`.
Labeling wl_step(const Graph& g, const Labeling& l, const ColorDictionary& dict);
/// One WL round with a dictionary private to this graph.
Labeling wl_step(const Graph& g, const Labeling& l);

/// Labelings for rounds 0..T+1 where T is the first round whose partition
/// equals the next one. With `max_rounds` set, stops after that many
/// refinement steps; `converged` is then false if stability was not seen.
struct WLTrace {
  std::vector<Labeling> rounds;
  std::size_t convergence_round = 0;
  bool converged = false;

  const Labeling& at(std::size_t t) const { return rounds.at(t); }
  const Labeling& stable() const { return rounds.at(convergence_round); }
  Partition partition(std::size_t t) const { return Partition::from_colors(rounds.at(t).colors); }
};

WLTrace wl_run(const Graph& g, std::optional<std::size_t> max_rounds = std::nullopt);

struct DistinguishOutcome {
  /// First round whose color multisets differ; empty when undistinguished.
  std::optional<std::size_t> distinguished_at;
  /// Rounds examined (including round 0).
  std::size_t rounds_examined = 0;

  bool distinguished() const { return distinguished_at.has_value(); }
};

/// Joint WL on two graphs with one dictionary per round. Stops at the first
/// round whose color multisets differ, or once the partition of the
/// disjoint union is stable, or after `max_rounds` steps (default
/// n1 + n2).
DistinguishOutcome wl_distinguish(const Graph& g1, const Graph& g2,
                                  std::optional<std::size_t> max_rounds = std::nullopt);

/// Groups a corpus by WL equivalence using one dictionary per round shared
/// by every graph; equal ids iff no round separates the graphs.
std::vector<std::size_t> wl_equivalence_classes(std::span<const Graph> graphs);

/// Sorted copy of the colors: the color multiset of one round.
std::vector<Color> color_multiset(std::span<const Color> colors);

}  // namespace wlsim
