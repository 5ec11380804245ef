#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wlsim/bigfloat.hpp"
#include "wlsim/graph.hpp"
#include "wlsim/wl.hpp"

namespace wlsim {

enum class Activation { Logistic, Arctan };
/// Theory: W1 = gamma * n, W2 = gamma. Simplified: W1 = W2 = gamma.
enum class WeightScheme { Theory, Simplified };
/// ConstantOne: f(v) = 1. SqrtPrimes: the i-th smallest label maps to the
/// square root of the i-th prime.
enum class Encoding { ConstantOne, SqrtPrimes };

std::string to_string(Activation a);
std::string to_string(WeightScheme s);
std::string to_string(Encoding e);
/// Parsers accept the names produced by to_string; throw InputError.
Activation parse_activation(std::string_view s);
WeightScheme parse_scheme(std::string_view s);
Encoding parse_encoding(std::string_view s);

/// A single-parameter one-dimensional MPNN.
struct MpnnConfig {
  double gamma = 0.5;
  Activation activation = Activation::Logistic;
  WeightScheme scheme = WeightScheme::Simplified;
  Encoding encoding = Encoding::ConstantOne;
  /// Optional per-layer gammas; layer t (1-based) uses layer_gammas[t-1].
  std::vector<double> layer_gammas;
  /// n in W1 = gamma * n. Empty means the node count of the graph the
  /// layer is applied to.
  std::optional<std::size_t> theory_node_count;

  /// Throws InputError unless every gamma lies in (0, 1).
  void validate() const;
  double gamma_for_layer(std::size_t layer) const;
};

/// One real feature per node.
struct FeatureAssignment {
  std::vector<BigFloat> values;
  std::size_t round = 0;
};

BigFloat activation_eval(const BigFloat& x, Activation kind, const PrecisionContext& ctx);

FeatureAssignment init_features(const Graph& g, Encoding encoding, const PrecisionContext& ctx);

/// f'(v) = a(W1 f(v) + W2 sum_{u in N(v)} f(u)).
///
/// The weights are exact (gamma is a double, n an integer) and the
/// pre-activation is computed exactly from the p-bit features, then
/// rounded once. Equal multisets of inputs therefore give bit-identical
/// outputs regardless of node numbering.
FeatureAssignment mpnn_step(const Graph& g, const FeatureAssignment& f, const MpnnConfig& cfg,
                            const PrecisionContext& ctx);

/// Rounds 0..T.
std::vector<FeatureAssignment> mpnn_run(const Graph& g, const MpnnConfig& cfg, std::size_t rounds,
                                        const PrecisionContext& ctx);

/// Sum of all features, exact then rounded once.
BigFloat mpnn_readout(const FeatureAssignment& f, const PrecisionContext& ctx);

/// Runs the same network on both graphs and compares readouts bit-exactly.
/// The theory scheme uses n = n1 + n2.
bool mpnn_distinguish(const Graph& g1, const Graph& g2, const MpnnConfig& cfg, std::size_t rounds,
                      const PrecisionContext& ctx);

/// Colors induced by feature equality: equal values share a color, colors
/// are ranks in ascending value order.
std::vector<Color> feature_classes(std::span<const BigFloat> values);
inline std::vector<Color> feature_classes(const FeatureAssignment& f) { return feature_classes(f.values); }

/// The first `count` primes.
std::vector<unsigned long> first_primes(std::size_t count);

namespace detail {

/// Correctly rounded gamma * sum_j coeff_j * value_j, with integer
/// coefficients. Scratch storage is reused across calls.
class ExactCombiner {
 public:
  ExactCombiner(double gamma, mpfr_prec_t input_prec, const PrecisionContext& ctx);
  void clear();
  void add(const BigFloat& value, unsigned long coeff = 1);
  BigFloat result() const;

 private:
  BigFloat gamma_;
  mpfr_prec_t term_prec_;
  PrecisionContext ctx_;
  std::vector<BigFloat> terms_;
  std::size_t used_ = 0;
};

}  // namespace detail

}  // namespace wlsim
