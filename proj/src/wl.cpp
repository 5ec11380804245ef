#include "wlsim/wl.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>

#include "wlsim/error.hpp"

namespace wlsim {

Partition Partition::from_colors(std::span<const Color> colors) {
  Partition p;
  p.block_of_.resize(colors.size());
  std::unordered_map<Color, std::uint32_t> index;
  index.reserve(colors.size());
  for (std::uint32_t i = 0; i < colors.size(); ++i) {
    auto [it, inserted] = index.try_emplace(colors[i], static_cast<std::uint32_t>(p.blocks_.size()));
    if (inserted) p.blocks_.emplace_back();
    p.block_of_[i] = it->second;
    p.blocks_[it->second].push_back(i);
  }
  return p;
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.element_count() != element_count()) return false;
  for (const auto& block : blocks_) {
    const auto target = coarser.block_of_[block.front()];
    for (auto e : block) {
      if (coarser.block_of_[e] != target) return false;
    }
  }
  return true;
}

std::size_t count_classes(std::span<const Color> colors) {
  std::vector<Color> sorted(colors.begin(), colors.end());
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

bool partitions_equivalent(std::span<const Color> l1, std::span<const Color> l2) {
  if (l1.size() != l2.size()) {
    throw InputError("labelings cover " + std::to_string(l1.size()) + " and " +
                     std::to_string(l2.size()) + " elements");
  }
  // Equivalent iff the pairing i -> (l1[i], l2[i]) is a bijection between
  // the two color sets.
  std::unordered_map<Color, Color> forward;
  std::unordered_map<Color, Color> backward;
  for (std::size_t i = 0; i < l1.size(); ++i) {
    auto [f, fnew] = forward.try_emplace(l1[i], l2[i]);
    if (!fnew && f->second != l2[i]) return false;
    auto [b, bnew] = backward.try_emplace(l2[i], l1[i]);
    if (!bnew && b->second != l1[i]) return false;
  }
  return true;
}

bool partitions_equivalent(const Labeling& l1, const Labeling& l2) {
  return partitions_equivalent(l1.colors, l2.colors);
}

void ColorDictionary::insert(std::span<const RefinementKey> keys) {
  if (frozen_) throw InputError("ColorDictionary: insert after freeze");
  keys_.insert(keys_.end(), keys.begin(), keys.end());
}

void ColorDictionary::freeze() {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  frozen_ = true;
}

Color ColorDictionary::lookup(const RefinementKey& key) const {
  if (!frozen_) throw InputError("ColorDictionary: lookup before freeze");
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) throw InputError("ColorDictionary: unknown refinement key");
  return static_cast<Color>(it - keys_.begin());
}

std::vector<Color> ColorDictionary::lookup_all(std::span<const RefinementKey> keys) const {
  std::vector<Color> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(lookup(k));
  return out;
}

Labeling initial_labeling(const Graph& g) {
  Labeling l;
  l.colors.resize(g.node_count());
  for (Node v = 0; v < g.node_count(); ++v) l.colors[v] = g.label(v).value;
  return l;
}

std::vector<RefinementKey> refinement_keys(const Graph& g, const Labeling& l) {
  if (l.colors.size() != g.node_count()) throw InputError("labeling does not cover the graph");
  std::vector<RefinementKey> keys(g.node_count());
  for (Node v = 0; v < g.node_count(); ++v) {
    auto nb = g.neighbors(v);
    auto& key = keys[v];
    key.reserve(nb.size() + 1);
    key.push_back(l.colors[v]);
    for (Node u : nb) key.push_back(l.colors[u]);
    std::sort(key.begin() + 1, key.end());
  }
  return keys;
}

Labeling wl_step(const Graph& g, const Labeling& l, const ColorDictionary& dict) {
  return {dict.lookup_all(refinement_keys(g, l)), l.round + 1};
}

Labeling wl_step(const Graph& g, const Labeling& l) {
  auto keys = refinement_keys(g, l);
  ColorDictionary dict;
  dict.insert(keys);
  dict.freeze();
  return {dict.lookup_all(keys), l.round + 1};
}

WLTrace wl_run(const Graph& g, std::optional<std::size_t> max_rounds) {
  WLTrace trace;
  trace.rounds.push_back(initial_labeling(g));
  std::size_t classes = count_classes(trace.rounds.back().colors);
  // The partition can split at most n-1 times, so n steps always suffice.
  const std::size_t limit = max_rounds.value_or(g.node_count() + 1);
  for (std::size_t t = 0; t < limit; ++t) {
    trace.rounds.push_back(wl_step(g, trace.rounds.back()));
    const std::size_t next_classes = count_classes(trace.rounds.back().colors);
    if (next_classes == classes) {
      trace.convergence_round = t;
      trace.converged = true;
      return trace;
    }
    classes = next_classes;
  }
  trace.convergence_round = trace.rounds.size() - 1;
  return trace;
}

std::vector<Color> color_multiset(std::span<const Color> colors) {
  std::vector<Color> sorted(colors.begin(), colors.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

namespace {

std::size_t union_class_count(const Labeling& a, const Labeling& b) {
  std::vector<Color> all(a.colors);
  all.insert(all.end(), b.colors.begin(), b.colors.end());
  return count_classes(all);
}

}  // namespace

DistinguishOutcome wl_distinguish(const Graph& g1, const Graph& g2, std::optional<std::size_t> max_rounds) {
  Labeling l1 = initial_labeling(g1);
  Labeling l2 = initial_labeling(g2);
  DistinguishOutcome out;
  out.rounds_examined = 1;
  if (color_multiset(l1.colors) != color_multiset(l2.colors)) {
    out.distinguished_at = 0;
    return out;
  }
  std::size_t classes = union_class_count(l1, l2);
  const std::size_t limit = max_rounds.value_or(g1.node_count() + g2.node_count());
  for (std::size_t t = 1; t <= limit; ++t) {
    auto k1 = refinement_keys(g1, l1);
    auto k2 = refinement_keys(g2, l2);
    ColorDictionary dict;
    dict.insert(k1);
    dict.insert(k2);
    dict.freeze();
    l1 = {dict.lookup_all(k1), t};
    l2 = {dict.lookup_all(k2), t};
    out.rounds_examined = t + 1;
    if (color_multiset(l1.colors) != color_multiset(l2.colors)) {
      out.distinguished_at = t;
      return out;
    }
    const std::size_t next_classes = union_class_count(l1, l2);
    if (next_classes == classes) return out;
    classes = next_classes;
  }
  return out;
}

std::vector<std::size_t> wl_equivalence_classes(std::span<const Graph> graphs) {
  std::vector<Labeling> labelings;
  for (const Graph& g : graphs) labelings.push_back(initial_labeling(g));
  std::vector<std::vector<std::vector<Color>>> history(graphs.size());
  auto record = [&] {
    std::vector<Color> all;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      history[i].push_back(color_multiset(labelings[i].colors));
      all.insert(all.end(), labelings[i].colors.begin(), labelings[i].colors.end());
    }
    return count_classes(all);
  };
  std::size_t classes = record();
  for (std::size_t t = 1;; ++t) {
    std::vector<std::vector<RefinementKey>> keys;
    keys.reserve(graphs.size());
    ColorDictionary dict;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      keys.push_back(refinement_keys(graphs[i], labelings[i]));
      dict.insert(keys.back());
    }
    dict.freeze();
    for (std::size_t i = 0; i < graphs.size(); ++i) labelings[i] = {dict.lookup_all(keys[i]), t};
    const std::size_t next = record();
    if (next == classes) break;
    classes = next;
  }
  std::map<std::vector<std::vector<Color>>, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(graphs.size());
  for (const auto& h : history) out.push_back(ids.try_emplace(h, ids.size()).first->second);
  return out;
}

}  // namespace wlsim
