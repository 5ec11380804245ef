#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wlsim/bigfloat.hpp"
#include "wlsim/graph.hpp"
#include "wlsim/mpnn.hpp"
#include "wlsim/wl.hpp"

namespace wlsim {

/// Runs fn(0..count-1) on a pool of worker threads (0 = hardware
/// concurrency). Each index is handled exactly once; the first exception
/// thrown by a worker is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

/// Uniform draws from the open interval (lo, hi).
std::vector<double> draw_gammas(std::size_t count, double lo, double hi, std::uint64_t seed);

enum class GraphFamily { ErdosRenyi, BarabasiAlbert };

struct CollectionSpec {
  GraphFamily family = GraphFamily::ErdosRenyi;
  std::size_t count = 100;
  std::size_t min_nodes = 50;
  std::size_t max_nodes = 250;
  /// ER: edge probability is average_degree / n.
  double average_degree = 4.0;
  /// BA: attachments per new node.
  std::size_t attachments = 2;
  std::uint64_t seed = 1;
};

/// Graph i gets n uniform in [min_nodes, max_nodes] and seed
/// derive_seed(spec.seed, i).
std::vector<Graph> random_graph_collection(const CollectionSpec& spec);

struct SimulationReport {
  std::string graph_id;
  double gamma = 0.0;
  unsigned bits = 0;
  bool perfect = false;
  /// First round t <= T whose partitions disagree; present iff !perfect.
  std::optional<std::size_t> first_divergence_round;
  std::size_t convergence_round = 0;
  std::size_t wl_classes = 0;
  /// Distinct feature values per round 0..T.
  std::vector<std::size_t> mpnn_classes;
  /// Partition agreement per round 0..T (diagnostic only).
  std::vector<bool> round_agreement;
};

/// Perfect simulation: the MPNN partition after T rounds equals the WL
/// partition at its convergence round T. `trace` may carry a precomputed
/// wl_run(g).
SimulationReport perfect_simulation(const Graph& g, const MpnnConfig& cfg, const PrecisionContext& ctx,
                                    const WLTrace* trace = nullptr, std::string graph_id = {});

struct MinPrecisionResult {
  /// Smallest successful precision on the search lattice; empty when no
  /// precision up to p_max succeeded.
  std::optional<unsigned> bits;
  /// Largest failing precision below `bits` seen on the search path.
  std::optional<unsigned> last_failure;
  /// Every (bits, perfect) probe in evaluation order.
  std::vector<std::pair<unsigned, bool>> probes;
};

/// Doubles from 8 bits (capped at p_max) to the first success, then binary
/// searches between the last failure and that success. No monotonicity in
/// the precision is assumed beyond the search path itself: the returned
/// value is re-verified. Throws InputError when p_max < 4.
MinPrecisionResult min_precision_bits(const Graph& g, const MpnnConfig& cfg, unsigned p_max,
                                      const WLTrace* trace = nullptr);

struct LotteryResult {
  std::vector<double> gammas;
  /// Graphs perfectly simulated, per gamma.
  std::vector<std::size_t> perfect_counts;
  std::size_t graph_count = 0;
  unsigned bits = 0;

  /// Gammas that simulate every graph perfectly.
  std::vector<double> lottery_gammas() const;
  std::size_t lottery_count() const { return lottery_gammas().size(); }
};

LotteryResult lottery_experiment(std::span<const Graph> graphs, std::span<const double> gammas,
                                 const PrecisionContext& ctx, const MpnnConfig& base = {}, unsigned threads = 0);

struct SweepOptions {
  std::vector<std::size_t> sizes;
  std::vector<double> gammas;
  std::uint64_t seed = 1;
  /// ER edge probability is average_degree / n.
  double average_degree = 4.0;
  unsigned p_max = 4096;
  MpnnConfig base;
  unsigned threads = 0;
};

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t graph_seed = 0;
  double gamma = 0.0;
  std::optional<unsigned> min_bits;
  std::optional<unsigned> last_failure;
  std::size_t wl_classes = 0;
  std::size_t convergence_round = 0;
};

struct SweepSummary {
  std::size_t n = 0;
  double mean_bits = 0.0;
  double sd_bits = 0.0;
  std::size_t found = 0;
  std::size_t total = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
};

/// One ER graph per size (seed derive_seed(options.seed, n)); minimum
/// precision per gamma; mean and sample standard deviation over the
/// gammas with a finite result.
SweepResult precision_sweep(const SweepOptions& options);

struct ClassCountRow {
  double gamma = 0.0;
  unsigned bits = 0;
  std::size_t mpnn_classes = 0;
  std::size_t wl_classes = 0;
  std::size_t rounds = 0;
};

/// MPNN run to the WL convergence round; distinct feature values per
/// (gamma, bits) next to the WL class count.
std::vector<ClassCountRow> class_count_vs_precision(const Graph& g, std::span<const double> gammas,
                                                    std::span<const unsigned> bits_list,
                                                    const MpnnConfig& base = {}, unsigned threads = 0);

}  // namespace wlsim
