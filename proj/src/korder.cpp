#include "wlsim/korder.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "wlsim/error.hpp"

namespace wlsim {

TupleSpace::TupleSpace(std::size_t n, std::size_t k, std::size_t budget) : n_(n), k_(k), size_(1) {
  if (k < 2 || k > kMaxOrder) {
    throw InputError("tuple order k must lie in 2.." + std::to_string(kMaxOrder) + ", got " + std::to_string(k));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && size_ > budget / n) {
      throw ResourceError("n^k = " + std::to_string(n) + "^" + std::to_string(k) + " tuples exceeds the budget of " +
                          std::to_string(budget));
    }
    size_ *= n;
  }
  if (size_ > budget) {
    throw ResourceError("n^k = " + std::to_string(n) + "^" + std::to_string(k) + " = " + std::to_string(size_) +
                        " tuples exceeds the budget of " + std::to_string(budget));
  }
  strides_.assign(k, 1);
  for (std::size_t i = k - 1; i > 0; --i) strides_[i - 1] = strides_[i] * n;
}

std::size_t TupleSpace::encode(const Tuple& t) const {
  if (t.size() != k_) throw InputError("tuple has the wrong order");
  std::size_t index = 0;
  for (Node v : t) {
    if (v >= n_) throw InputError("tuple coordinate out of range");
    index = index * n_ + v;
  }
  return index;
}

Tuple TupleSpace::decode(std::size_t index) const {
  Tuple t(k_);
  for (std::size_t i = 1; i <= k_; ++i) t[i - 1] = coordinate(index, i);
  return t;
}

IsoType IsoType::of(const Graph& g, const Tuple& t) {
  IsoType out;
  out.k_ = t.size();
  out.entries_.resize(out.k_ * out.k_);
  for (std::size_t i = 0; i < out.k_; ++i) {
    for (std::size_t j = 0; j < out.k_; ++j) {
      IsoEntry e = IsoEntry::Equal;
      if (t[i] != t[j]) e = g.has_edge(t[i], t[j]) ? IsoEntry::Edge : IsoEntry::NonEdge;
      out.entries_[i * out.k_ + j] = e;
    }
  }
  return out;
}

IsoType IsoType::decode(Color code, std::size_t k) {
  IsoType out;
  out.k_ = k;
  out.entries_.assign(k * k, IsoEntry::Equal);
  for (std::size_t i = k; i-- > 0;) {
    for (std::size_t j = k; j-- > i + 1;) {
      const auto e = static_cast<IsoEntry>(code % 3);
      code /= 3;
      out.entries_[i * k + j] = e;
      out.entries_[j * k + i] = e;
    }
  }
  return out;
}

Color IsoType::code() const {
  Color c = 0;
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i + 1; j < k_; ++j) c = c * 3 + static_cast<Color>(entries_[i * k_ + j]);
  return c;
}

TupleLabeling iso_type_labeling(const Graph& g, std::size_t k, std::size_t budget) {
  const TupleSpace space(g.node_count(), k, budget);
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> adj(n * n, 0);
  for (const Edge& e : g.edges()) adj[e.u * n + e.v] = adj[e.v * n + e.u] = 1;

  TupleLabeling l;
  l.k = k;
  l.colors.resize(space.size());
  Tuple t(k);
  for (std::size_t index = 0; index < space.size(); ++index) {
    for (std::size_t i = 1; i <= k; ++i) t[i - 1] = space.coordinate(index, i);
    Color c = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        Color digit = 0;
        if (t[i] != t[j]) digit = adj[t[i] * n + t[j]] ? 2 : 1;
        c = c * 3 + digit;
      }
    }
    l.colors[index] = c;
  }
  return l;
}

std::vector<Tuple> tuple_neighbors(const Tuple& v, std::size_t i, std::size_t n) {
  if (i < 1 || i > v.size()) throw InputError("coordinate must lie in 1..k");
  std::vector<Tuple> out(n, v);
  for (Node u = 0; u < n; ++u) out[u][i - 1] = u;
  return out;
}

std::vector<RefinementKey> nwl_keys(const TupleSpace& space, const TupleLabeling& l) {
  if (l.colors.size() != space.size()) throw InputError("tuple labeling does not cover V^k");
  const std::size_t n = space.node_count();
  const std::size_t k = space.order();
  std::vector<RefinementKey> keys(space.size());
  for (std::size_t index = 0; index < space.size(); ++index) {
    auto& key = keys[index];
    key.reserve(1 + k * n);
    key.push_back(l.colors[index]);
    for (std::size_t i = 1; i <= k; ++i) {
      const std::size_t stride = space.stride(i);
      const std::size_t base = index - space.coordinate(index, i) * stride;
      const auto first = key.end() - key.begin();
      for (std::size_t u = 0; u < n; ++u) key.push_back(l.colors[base + u * stride]);
      std::sort(key.begin() + first, key.end());
    }
  }
  return keys;
}

TupleLabeling nwl_step(const Graph& g, const TupleLabeling& l, const ColorDictionary& dict, std::size_t budget) {
  const TupleSpace space(g.node_count(), l.k, budget);
  return {dict.lookup_all(nwl_keys(space, l)), l.k, l.round + 1};
}

TupleLabeling nwl_step(const Graph& g, const TupleLabeling& l, std::size_t budget) {
  const TupleSpace space(g.node_count(), l.k, budget);
  auto keys = nwl_keys(space, l);
  ColorDictionary dict;
  dict.insert(keys);
  dict.freeze();
  return {dict.lookup_all(keys), l.k, l.round + 1};
}

NwlTrace nwl_run(const Graph& g, std::size_t k, std::size_t budget) {
  NwlTrace trace;
  trace.rounds.push_back(iso_type_labeling(g, k, budget));
  std::size_t classes = count_classes(trace.rounds.back().colors);
  const std::size_t limit = trace.rounds.back().colors.size() + 1;
  for (std::size_t t = 0; t < limit; ++t) {
    trace.rounds.push_back(nwl_step(g, trace.rounds.back(), budget));
    const std::size_t next = count_classes(trace.rounds.back().colors);
    if (next == classes) {
      trace.convergence_round = t;
      trace.converged = true;
      return trace;
    }
    classes = next;
  }
  trace.convergence_round = trace.rounds.size() - 1;
  return trace;
}

DistinguishOutcome nwl_distinguish(const Graph& g1, const Graph& g2, std::size_t k, std::size_t budget,
                                   std::optional<std::size_t> max_rounds) {
  const TupleSpace s1(g1.node_count(), k, budget);
  const TupleSpace s2(g2.node_count(), k, budget);
  TupleLabeling l1 = iso_type_labeling(g1, k, budget);
  TupleLabeling l2 = iso_type_labeling(g2, k, budget);
  DistinguishOutcome out;
  out.rounds_examined = 1;
  if (color_multiset(l1.colors) != color_multiset(l2.colors)) {
    out.distinguished_at = 0;
    return out;
  }
  auto union_classes = [&] {
    std::vector<Color> all(l1.colors);
    all.insert(all.end(), l2.colors.begin(), l2.colors.end());
    return count_classes(all);
  };
  std::size_t classes = union_classes();
  const std::size_t limit = max_rounds.value_or(s1.size() + s2.size());
  for (std::size_t t = 1; t <= limit; ++t) {
    auto k1 = nwl_keys(s1, l1);
    auto k2 = nwl_keys(s2, l2);
    ColorDictionary dict;
    dict.insert(k1);
    dict.insert(k2);
    dict.freeze();
    l1 = {dict.lookup_all(k1), k, t};
    l2 = {dict.lookup_all(k2), k, t};
    out.rounds_examined = t + 1;
    if (color_multiset(l1.colors) != color_multiset(l2.colors)) {
      out.distinguished_at = t;
      return out;
    }
    const std::size_t next = union_classes();
    if (next == classes) return out;
    classes = next;
  }
  return out;
}

std::vector<std::size_t> nwl_equivalence_classes(std::span<const Graph> graphs, std::size_t k, std::size_t budget) {
  std::vector<TupleSpace> spaces;
  std::vector<TupleLabeling> labelings;
  for (const Graph& g : graphs) {
    spaces.emplace_back(g.node_count(), k, budget);
    labelings.push_back(iso_type_labeling(g, k, budget));
  }
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
      keys.push_back(nwl_keys(spaces[i], labelings[i]));
      dict.insert(keys.back());
    }
    dict.freeze();
    for (std::size_t i = 0; i < graphs.size(); ++i) labelings[i] = {dict.lookup_all(keys[i]), k, t};
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

TupleFeatures k_init_features(const Graph& g, std::size_t k, const PrecisionContext& ctx, std::size_t budget) {
  const TupleLabeling iso = iso_type_labeling(g, k, budget);
  std::vector<Color> codes(iso.colors);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  const auto primes = first_primes(codes.size());
  std::vector<BigFloat> roots;
  for (auto p : primes) roots.push_back(sqrt_uint(p, ctx));

  TupleFeatures f;
  f.k = k;
  f.values.reserve(iso.colors.size());
  for (Color c : iso.colors) {
    const auto rank = std::lower_bound(codes.begin(), codes.end(), c) - codes.begin();
    f.values.push_back(roots[static_cast<std::size_t>(rank)]);
  }
  return f;
}

TupleFeatures k_mpnn_step(const Graph& g, std::size_t k, const TupleFeatures& f, double gamma,
                          const PrecisionContext& ctx, Activation activation, std::optional<std::size_t> base_nodes,
                          std::size_t budget) {
  const TupleSpace space(g.node_count(), k, budget);
  if (f.values.size() != space.size()) throw InputError("tuple features do not cover V^k");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InputError("gamma must lie in (0, 1)");

  const unsigned long radix = base_nodes.value_or(g.node_count()) + 1;
  std::vector<unsigned long> weight(k + 1, 1);
  for (std::size_t i = 1; i <= k; ++i) {
    if (weight[i - 1] > std::numeric_limits<unsigned long>::max() / radix) {
      throw ResourceError("(n+1)^k does not fit in 64 bits");
    }
    weight[i] = weight[i - 1] * radix;
  }

  mpfr_prec_t input_prec = ctx.prec();
  for (const auto& v : f.values) input_prec = std::max(input_prec, v.precision());
  detail::ExactCombiner combine(gamma, input_prec, ctx);

  const std::size_t n = space.node_count();
  TupleFeatures next;
  next.k = k;
  next.round = f.round + 1;
  next.values.reserve(space.size());
  for (std::size_t index = 0; index < space.size(); ++index) {
    combine.clear();
    combine.add(f.values[index]);
    for (std::size_t i = 1; i <= k; ++i) {
      const std::size_t stride = space.stride(i);
      const std::size_t base = index - space.coordinate(index, i) * stride;
      for (std::size_t u = 0; u < n; ++u) combine.add(f.values[base + u * stride], weight[i]);
    }
    next.values.push_back(activation_eval(combine.result(), activation, ctx));
  }
  return next;
}

KSimulationReport k_perfect_simulation(const Graph& g, std::size_t k, double gamma, const PrecisionContext& ctx,
                                       Activation activation, std::size_t budget) {
  const NwlTrace trace = nwl_run(g, k, budget);
  KSimulationReport report;
  report.convergence_round = trace.convergence_round;
  report.nwl_classes = count_classes(trace.rounds[trace.convergence_round].colors);

  TupleFeatures f = k_init_features(g, k, ctx, budget);
  for (std::size_t t = 0;; ++t) {
    const auto classes = feature_classes(f.values);
    const bool agree = partitions_equivalent(classes, trace.rounds[t].colors);
    report.mpnn_classes.push_back(count_classes(classes));
    report.round_agreement.push_back(agree);
    if (!agree && !report.first_divergence_round) report.first_divergence_round = t;
    if (t == trace.convergence_round) break;
    f = k_mpnn_step(g, k, f, gamma, ctx, activation, std::nullopt, budget);
  }
  report.perfect = !report.first_divergence_round.has_value();
  return report;
}

}  // namespace wlsim
