#include "wlsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "wlsim/error.hpp"
#include "wlsim/generators.hpp"

namespace wlsim {

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

std::vector<double> draw_gammas(std::size_t count, double lo, double hi, std::uint64_t seed) {
  if (!(lo < hi)) throw InputError("empty gamma range");
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& g : out) g = rng.uniform_open(lo, hi);
  return out;
}

std::vector<Graph> random_graph_collection(const CollectionSpec& spec) {
  if (spec.min_nodes < 1 || spec.min_nodes > spec.max_nodes) throw InputError("invalid node-count range");
  Rng sizes(spec.seed);
  std::vector<Graph> graphs;
  graphs.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const std::size_t n = spec.min_nodes + sizes.below(spec.max_nodes - spec.min_nodes + 1);
    const std::uint64_t seed = derive_seed(spec.seed, i);
    if (spec.family == GraphFamily::ErdosRenyi) {
      graphs.push_back(generate_erdos_renyi(n, std::min(1.0, spec.average_degree / static_cast<double>(n)), seed));
    } else {
      graphs.push_back(generate_barabasi_albert(n, spec.attachments, seed));
    }
  }
  return graphs;
}

SimulationReport perfect_simulation(const Graph& g, const MpnnConfig& cfg, const PrecisionContext& ctx,
                                    const WLTrace* trace, std::string graph_id) {
  WLTrace local;
  if (trace == nullptr) {
    local = wl_run(g);
    trace = &local;
  }
  const std::size_t T = trace->convergence_round;

  SimulationReport report;
  report.graph_id = std::move(graph_id);
  report.gamma = cfg.gamma;
  report.bits = ctx.bits();
  report.convergence_round = T;
  report.wl_classes = count_classes(trace->at(T).colors);

  cfg.validate();
  FeatureAssignment f = init_features(g, cfg.encoding, ctx);
  std::vector<Color> classes;
  for (std::size_t t = 0;; ++t) {
    classes = feature_classes(f);
    report.mpnn_classes.push_back(count_classes(classes));
    report.round_agreement.push_back(partitions_equivalent(classes, trace->at(t).colors));
    if (t == T) break;
    f = mpnn_step(g, f, cfg, ctx);
  }
  report.perfect = report.round_agreement.back();
  if (!report.perfect) {
    const auto it = std::find(report.round_agreement.begin(), report.round_agreement.end(), false);
    report.first_divergence_round = static_cast<std::size_t>(it - report.round_agreement.begin());
  }
  return report;
}

MinPrecisionResult min_precision_bits(const Graph& g, const MpnnConfig& cfg, unsigned p_max, const WLTrace* trace) {
  if (p_max < 4) throw InputError("p_max must be at least 4");
  WLTrace local;
  if (trace == nullptr) {
    local = wl_run(g);
    trace = &local;
  }
  MinPrecisionResult result;
  auto probe = [&](unsigned bits) {
    const bool ok = perfect_simulation(g, cfg, PrecisionContext(bits), trace).perfect;
    result.probes.emplace_back(bits, ok);
    return ok;
  };

  std::optional<unsigned> failed;
  unsigned p = std::min(8u, p_max);
  for (;;) {
    if (probe(p)) break;
    failed = p;
    if (p == p_max) return result;
    p = std::min(2 * p, p_max);
  }
  unsigned hi = p;
  if (failed) {
    unsigned lo = *failed;
    while (hi - lo > 1) {
      const unsigned mid = lo + (hi - lo) / 2;
      if (probe(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    result.last_failure = lo;
  }
  if (!probe(hi)) {
    // Deterministic arithmetic makes this unreachable; kept as a guard
    // against a nondeterministic activation.
    return result;
  }
  result.bits = hi;
  return result;
}

std::vector<double> LotteryResult::lottery_gammas() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (perfect_counts[i] == graph_count) out.push_back(gammas[i]);
  }
  return out;
}

LotteryResult lottery_experiment(std::span<const Graph> graphs, std::span<const double> gammas,
                                 const PrecisionContext& ctx, const MpnnConfig& base, unsigned threads) {
  std::vector<WLTrace> traces(graphs.size());
  parallel_for(graphs.size(), [&](std::size_t i) { traces[i] = wl_run(graphs[i]); }, threads);

  const std::size_t cells = graphs.size() * gammas.size();
  std::vector<char> perfect(cells, 0);
  parallel_for(
      cells,
      [&](std::size_t cell) {
        const std::size_t gi = cell / graphs.size();
        const std::size_t ni = cell % graphs.size();
        MpnnConfig cfg = base;
        cfg.gamma = gammas[gi];
        perfect[cell] = perfect_simulation(graphs[ni], cfg, ctx, &traces[ni]).perfect ? 1 : 0;
      },
      threads);

  LotteryResult result;
  result.gammas.assign(gammas.begin(), gammas.end());
  result.graph_count = graphs.size();
  result.bits = ctx.bits();
  result.perfect_counts.assign(gammas.size(), 0);
  for (std::size_t cell = 0; cell < cells; ++cell) result.perfect_counts[cell / graphs.size()] += perfect[cell];
  return result;
}

SweepResult precision_sweep(const SweepOptions& options) {
  struct Instance {
    std::size_t n;
    std::uint64_t seed;
    Graph graph;
    WLTrace trace;
  };
  std::vector<Instance> instances(options.sizes.size());
  parallel_for(
      options.sizes.size(),
      [&](std::size_t i) {
        const std::size_t n = options.sizes[i];
        const std::uint64_t seed = derive_seed(options.seed, n);
        const double p = std::min(1.0, options.average_degree / static_cast<double>(n));
        Graph g = generate_erdos_renyi(n, p, seed);
        WLTrace trace = wl_run(g);
        instances[i] = {n, seed, std::move(g), std::move(trace)};
      },
      options.threads);

  const std::size_t G = options.gammas.size();
  SweepResult result;
  result.rows.resize(instances.size() * G);
  parallel_for(
      result.rows.size(),
      [&](std::size_t cell) {
        const Instance& inst = instances[cell / G];
        MpnnConfig cfg = options.base;
        cfg.gamma = options.gammas[cell % G];
        const auto found = min_precision_bits(inst.graph, cfg, options.p_max, &inst.trace);
        SweepRow& row = result.rows[cell];
        row.n = inst.n;
        row.graph_seed = inst.seed;
        row.gamma = cfg.gamma;
        row.min_bits = found.bits;
        row.last_failure = found.last_failure;
        row.convergence_round = inst.trace.convergence_round;
        row.wl_classes = count_classes(inst.trace.stable().colors);
      },
      options.threads);

  for (std::size_t i = 0; i < instances.size(); ++i) {
    SweepSummary s;
    s.n = instances[i].n;
    s.total = G;
    std::vector<double> bits;
    for (std::size_t j = 0; j < G; ++j) {
      if (const auto& b = result.rows[i * G + j].min_bits) bits.push_back(*b);
    }
    s.found = bits.size();
    if (!bits.empty()) {
      double sum = 0.0;
      for (double b : bits) sum += b;
      s.mean_bits = sum / static_cast<double>(bits.size());
      if (bits.size() > 1) {
        double sq = 0.0;
        for (double b : bits) sq += (b - s.mean_bits) * (b - s.mean_bits);
        s.sd_bits = std::sqrt(sq / static_cast<double>(bits.size() - 1));
      }
    }
    result.summary.push_back(s);
  }
  return result;
}

std::vector<ClassCountRow> class_count_vs_precision(const Graph& g, std::span<const double> gammas,
                                                    std::span<const unsigned> bits_list, const MpnnConfig& base,
                                                    unsigned threads) {
  const WLTrace trace = wl_run(g);
  const std::size_t T = trace.convergence_round;
  const std::size_t wl_classes = count_classes(trace.stable().colors);
  std::vector<ClassCountRow> rows(gammas.size() * bits_list.size());
  parallel_for(
      rows.size(),
      [&](std::size_t cell) {
        MpnnConfig cfg = base;
        cfg.gamma = gammas[cell / bits_list.size()];
        const unsigned bits = bits_list[cell % bits_list.size()];
        const PrecisionContext ctx(bits);
        FeatureAssignment f = init_features(g, cfg.encoding, ctx);
        for (std::size_t t = 0; t < T; ++t) f = mpnn_step(g, f, cfg, ctx);
        rows[cell] = {cfg.gamma, bits, count_classes(feature_classes(f)), wl_classes, T};
      },
      threads);
  return rows;
}

}  // namespace wlsim
