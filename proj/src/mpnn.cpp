#include "wlsim/mpnn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wlsim/error.hpp"

namespace wlsim {

std::string to_string(Activation a) { return a == Activation::Logistic ? "sigmoid" : "arctan"; }
std::string to_string(WeightScheme s) { return s == WeightScheme::Theory ? "theory" : "simplified"; }
std::string to_string(Encoding e) { return e == Encoding::ConstantOne ? "constant-one" : "sqrt-primes"; }

Activation parse_activation(std::string_view s) {
  if (s == "sigmoid" || s == "logistic") return Activation::Logistic;
  if (s == "arctan" || s == "atan") return Activation::Arctan;
  throw InputError("unknown activation '" + std::string(s) + "'");
}

WeightScheme parse_scheme(std::string_view s) {
  if (s == "theory") return WeightScheme::Theory;
  if (s == "simplified") return WeightScheme::Simplified;
  throw InputError("unknown weight scheme '" + std::string(s) + "'");
}

Encoding parse_encoding(std::string_view s) {
  if (s == "constant-one") return Encoding::ConstantOne;
  if (s == "sqrt-primes") return Encoding::SqrtPrimes;
  throw InputError("unknown encoding '" + std::string(s) + "'");
}

void MpnnConfig::validate() const {
  auto check = [](double g) {
    if (!(g > 0.0 && g < 1.0)) throw InputError("gamma must lie in (0, 1), got " + std::to_string(g));
  };
  check(gamma);
  for (double g : layer_gammas) check(g);
}

double MpnnConfig::gamma_for_layer(std::size_t layer) const {
  if (layer_gammas.empty()) return gamma;
  if (layer == 0 || layer > layer_gammas.size()) {
    throw InputError("no gamma configured for layer " + std::to_string(layer));
  }
  return layer_gammas[layer - 1];
}

BigFloat activation_eval(const BigFloat& x, Activation kind, const PrecisionContext& ctx) {
  return kind == Activation::Logistic ? logistic(x, ctx) : arctan(x, ctx);
}

std::vector<unsigned long> first_primes(std::size_t count) {
  std::vector<unsigned long> primes;
  std::size_t limit = 64;
  while (primes.size() < count) {
    primes.clear();
    std::vector<bool> composite(limit + 1, false);
    for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    limit *= 2;
  }
  return primes;
}

FeatureAssignment init_features(const Graph& g, Encoding encoding, const PrecisionContext& ctx) {
  FeatureAssignment f;
  f.values.reserve(g.node_count());
  if (encoding == Encoding::ConstantOne) {
    for (std::size_t v = 0; v < g.node_count(); ++v) f.values.emplace_back(1.0, ctx.prec());
    return f;
  }
  std::vector<std::uint32_t> distinct;
  for (Node v = 0; v < g.node_count(); ++v) distinct.push_back(g.label(v).value);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const auto primes = first_primes(distinct.size());
  std::vector<BigFloat> roots;
  for (auto p : primes) roots.push_back(sqrt_uint(p, ctx));
  for (Node v = 0; v < g.node_count(); ++v) {
    const auto rank = std::lower_bound(distinct.begin(), distinct.end(), g.label(v).value) - distinct.begin();
    f.values.push_back(roots[static_cast<std::size_t>(rank)]);
  }
  return f;
}

namespace detail {

ExactCombiner::ExactCombiner(double gamma, mpfr_prec_t input_prec, const PrecisionContext& ctx)
    : gamma_(gamma, 64), term_prec_(input_prec + 64 + 64 + 8), ctx_(ctx) {}

void ExactCombiner::clear() { used_ = 0; }

void ExactCombiner::add(const BigFloat& value, unsigned long coeff) {
  if (used_ == terms_.size()) terms_.emplace_back(term_prec_);
  // value (<= input_prec bits) * gamma (53 bits) * coeff (<= 64 bits) is
  // exact at term_prec_.
  mpfr_ptr t = terms_[used_].get();
  mpfr_mul(t, value.get(), gamma_.get(), MPFR_RNDN);
  if (coeff != 1) mpfr_mul_ui(t, t, coeff, MPFR_RNDN);
  ++used_;
}

BigFloat ExactCombiner::result() const {
  BigFloat out(ctx_.prec());
  std::vector<mpfr_ptr> ptrs;
  ptrs.reserve(used_);
  for (std::size_t i = 0; i < used_; ++i) ptrs.push_back(const_cast<mpfr_ptr>(terms_[i].get()));
  mpfr_sum(out.get(), ptrs.data(), ptrs.size(), MPFR_RNDN);
  return out;
}

}  // namespace detail

namespace {

mpfr_prec_t max_precision(std::span<const BigFloat> values, const PrecisionContext& ctx) {
  mpfr_prec_t p = ctx.prec();
  for (const auto& v : values) p = std::max(p, v.precision());
  return p;
}

}  // namespace

FeatureAssignment mpnn_step(const Graph& g, const FeatureAssignment& f, const MpnnConfig& cfg,
                            const PrecisionContext& ctx) {
  if (f.values.size() != g.node_count()) throw InputError("feature assignment does not cover the graph");
  const std::size_t layer = f.round + 1;
  const unsigned long own_coeff =
      cfg.scheme == WeightScheme::Theory ? cfg.theory_node_count.value_or(g.node_count()) : 1;

  detail::ExactCombiner combine(cfg.gamma_for_layer(layer), max_precision(f.values, ctx), ctx);
  FeatureAssignment next;
  next.round = layer;
  next.values.reserve(g.node_count());
  for (Node v = 0; v < g.node_count(); ++v) {
    combine.clear();
    combine.add(f.values[v], own_coeff);
    for (Node u : g.neighbors(v)) combine.add(f.values[u]);
    next.values.push_back(activation_eval(combine.result(), cfg.activation, ctx));
  }
  return next;
}

std::vector<FeatureAssignment> mpnn_run(const Graph& g, const MpnnConfig& cfg, std::size_t rounds,
                                        const PrecisionContext& ctx) {
  cfg.validate();
  std::vector<FeatureAssignment> trace;
  trace.reserve(rounds + 1);
  trace.push_back(init_features(g, cfg.encoding, ctx));
  for (std::size_t t = 0; t < rounds; ++t) trace.push_back(mpnn_step(g, trace.back(), cfg, ctx));
  return trace;
}

BigFloat mpnn_readout(const FeatureAssignment& f, const PrecisionContext& ctx) {
  return exact_sum(f.values, ctx);
}

bool mpnn_distinguish(const Graph& g1, const Graph& g2, const MpnnConfig& cfg, std::size_t rounds,
                      const PrecisionContext& ctx) {
  MpnnConfig shared = cfg;
  if (shared.scheme == WeightScheme::Theory) shared.theory_node_count = g1.node_count() + g2.node_count();
  const auto r1 = mpnn_readout(mpnn_run(g1, shared, rounds, ctx).back(), ctx);
  const auto r2 = mpnn_readout(mpnn_run(g2, shared, rounds, ctx).back(), ctx);
  return !(r1 == r2);
}

std::vector<Color> feature_classes(std::span<const BigFloat> values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return mpfr_less_p(values[a].get(), values[b].get()) != 0;
  });
  std::vector<Color> colors(values.size());
  Color next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && !(values[order[i]] == values[order[i - 1]])) ++next;
    colors[order[i]] = next;
  }
  return colors;
}

}  // namespace wlsim
