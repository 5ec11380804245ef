// Acceptance checks. Usage: acceptance <criterion 1..8>. Prints one
// "criterion N: PASS|FAIL" line (detail lines are indented) and exits
// nonzero on failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wlsim/generators.hpp"
#include "wlsim/graph_io.hpp"
#include "wlsim/harness.hpp"
#include "wlsim/korder.hpp"
#include "wlsim/mpnn.hpp"
#include "wlsim/report.hpp"
#include "wlsim/wl.hpp"

using namespace wlsim;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "  failed: " << what << "\n";
    }
  }
  void note(const std::string& what) { detail << "  " << what << "\n"; }
};

MpnnConfig with_gamma(double gamma) {
  MpnnConfig cfg;
  cfg.gamma = gamma;
  return cfg;
}

std::vector<Graph> flat_corpus(std::size_t max_n) {
  std::vector<Graph> all;
  for (auto& by_size : oracle::graphs_by_size(max_n)) {
    for (auto& g : by_size) {
      if (g.node_count() > 0) all.push_back(std::move(g));
    }
  }
  return all;
}

// Calls fn(i, j) for every i < j, in parallel over i.
void for_each_pair(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn) {
  parallel_for(count, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < count; ++j) fn(i, j);
  });
}

std::vector<Graph> property_graphs() {
  std::vector<Graph> gs = {path_graph(9), cycle_graph(10), star_graph(6), complete_graph(5),
                           oracle::collision_graph()};
  for (std::uint64_t s = 0; s < 30; ++s) gs.push_back(generate_erdos_renyi(20 + 3 * s, 4.0 / (20 + 3 * s), s));
  for (std::uint64_t s = 0; s < 15; ++s) gs.push_back(generate_barabasi_albert(40 + 5 * s, 2, s));
  return gs;
}

// Criteria.

void criterion_1(Verdict& v) {
  const auto corpus = oracle::graphs_by_size(7);
  const std::vector<std::size_t> expected = {1, 1, 2, 4, 11, 34, 156, 1044};
  for (std::size_t n = 0; n <= 7; ++n) {
    v.check(corpus[n].size() == expected[n], "corpus size for n=" + std::to_string(n));
  }
  const auto graphs = flat_corpus(7);
  v.note("corpus: " + std::to_string(graphs.size()) + " graphs, all pairs");

  std::atomic<std::size_t> mismatches = 0;
  std::atomic<std::size_t> undistinguished = 0;
  std::atomic<std::size_t> false_merges = 0;
  for_each_pair(graphs.size(), [&](std::size_t i, std::size_t j) {
    const auto fast = wl_distinguish(graphs[i], graphs[j]).distinguished_at;
    if (fast != oracle::naive_wl_distinguish(graphs[i], graphs[j])) ++mismatches;
    if (!fast) {
      ++undistinguished;
      // A WL-equivalent pair of corpus graphs must still be non-isomorphic.
      if (oracle::brute_force_isomorphic(graphs[i], graphs[j])) ++false_merges;
    }
  });
  v.note("verdict mismatches against the naive reference: " + std::to_string(mismatches.load()));
  v.note("WL-equivalent non-isomorphic pairs: " + std::to_string(undistinguished.load()));
  v.check(mismatches == 0, "wl_distinguish disagrees with the naive reference");
  v.check(false_merges == 0, "corpus contains isomorphic duplicates");

  std::atomic<std::size_t> iso_distinguished = 0;
  std::atomic<std::size_t> iso_not_confirmed = 0;
  parallel_for(graphs.size(), [&](std::size_t i) {
    Rng rng(derive_seed(1, i));
    const Graph h = permute(graphs[i], random_permutation(graphs[i].node_count(), rng));
    if (!oracle::brute_force_isomorphic(graphs[i], h)) ++iso_not_confirmed;
    if (wl_distinguish(graphs[i], h).distinguished()) ++iso_distinguished;
  });
  v.check(iso_not_confirmed == 0, "brute force rejected a permuted copy");
  v.check(iso_distinguished == 0, "an isomorphic pair was distinguished");
}

void criterion_2(Verdict& v) {
  const Graph c6 = cycle_graph(6);
  const Graph kk = disjoint_union(complete_graph(3), complete_graph(3));
  v.check(!wl_distinguish(c6, kk).distinguished(), "WL distinguished C6 from K3+K3");
  const auto nwl3 = nwl_distinguish(c6, kk, 3);
  v.check(nwl3.distinguished(), "order-3 NWL failed to distinguish C6 from K3+K3");
  if (nwl3.distinguished()) v.note("order-3 NWL separates at round " + std::to_string(*nwl3.distinguished_at));
  const std::size_t layers = std::max<std::size_t>(wl_run(disjoint_union(c6, kk)).convergence_round, 3);
  std::size_t separated = 0;
  for (double gamma : draw_gammas(20, 0.0, 1.0, 2)) {
    separated += mpnn_distinguish(c6, kk, with_gamma(gamma), layers, PrecisionContext(256));
  }
  v.note("MPNN separations over 20 gammas at 256 bits, " + std::to_string(layers) + " layers: " +
         std::to_string(separated));
  v.check(separated == 0, "the MPNN distinguished C6 from K3+K3");
}

void criterion_3(Verdict& v) {
  const auto gammas = draw_gammas(50, 0.0, 1.0, 3);
  for (GraphFamily family : {GraphFamily::ErdosRenyi, GraphFamily::BarabasiAlbert}) {
    CollectionSpec spec;
    spec.family = family;
    spec.count = 100;
    spec.min_nodes = 50;
    spec.max_nodes = 250;
    spec.average_degree = 4;
    spec.attachments = 2;
    spec.seed = 3;
    const auto graphs = random_graph_collection(spec);
    const auto r = lottery_experiment(graphs, gammas, PrecisionContext(256));
    const std::string name = family == GraphFamily::ErdosRenyi ? "ER" : "BA";
    v.note(name + ": " + std::to_string(r.lottery_count()) + "/50 gammas perfect on all 100 graphs");
    v.check(r.lottery_count() >= 40, name + " lottery count below 40");
  }
}

void criterion_4(Verdict& v) {
  const auto graphs = flat_corpus(7);
  std::atomic<std::size_t> mismatches = 0;
  for_each_pair(graphs.size(), [&](std::size_t i, std::size_t j) {
    if (nwl_distinguish(graphs[i], graphs[j], 2).distinguished() != wl_distinguish(graphs[i], graphs[j]).distinguished()) {
      ++mismatches;
    }
  });
  v.note("pairs with differing verdicts: " + std::to_string(mismatches.load()));
  v.check(mismatches == 0, "order-2 NWL and WL disagree");

  // Order 3 refines order 2 on the n = 7 slice.
  const auto seven = oracle::graphs_by_size(7)[7];
  const auto k2 = nwl_equivalence_classes(seven, 2);
  const auto k3 = nwl_equivalence_classes(seven, 3);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < seven.size(); ++i) {
    for (std::size_t j = i + 1; j < seven.size(); ++j) violations += k3[i] == k3[j] && k2[i] != k2[j];
  }
  v.check(violations == 0, "order 3 merged graphs that order 2 separates");
}

void criterion_5(Verdict& v) {
  std::vector<Graph> graphs;
  for (std::size_t i = 0; i < 20; ++i) graphs.push_back(generate_erdos_renyi(8, 0.3, derive_seed(5, i)));
  const auto gammas = draw_gammas(20, 0.0, 1.0, 5);
  std::vector<std::atomic<std::size_t>> perfect(gammas.size());
  parallel_for(gammas.size() * graphs.size(), [&](std::size_t idx) {
    const std::size_t gi = idx / graphs.size();
    perfect[gi] += k_perfect_simulation(graphs[idx % graphs.size()], 2, gammas[gi], PrecisionContext(256)).perfect;
  });
  std::size_t all = 0;
  for (const auto& p : perfect) all += p.load() == graphs.size();
  v.note("order-2 MPNN (arctan): " + std::to_string(all) + "/20 gammas perfect on all 20 graphs");
  v.check(all >= 18, "fewer than 18 gammas perfect");
}

void criterion_6(Verdict& v) {
  SweepOptions options;
  options.sizes = {50, 100, 200, 400, 800, 1600};
  options.gammas = draw_gammas(10, 0.0, 0.5, 6);
  options.seed = 6;
  const auto r = precision_sweep(options);
  std::ostringstream line;
  line.precision(4);
  for (const auto& s : r.summary) {
    line << "n=" << s.n << " mean=" << s.mean_bits << " sd=" << s.sd_bits << "; ";
    v.check(s.found == s.total, "minimum precision not found for every gamma at n=" + std::to_string(s.n));
  }
  v.note(line.str());
  const auto& s = r.summary;
  const double first = s[1].mean_bits - s[0].mean_bits;
  const double bound = 2.0 * std::max(first, 0.0) + 8.0;
  double worst = -INFINITY;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double step = s[i + 1].mean_bits - s[i].mean_bits;
    worst = std::max(worst, step);
    v.check(step >= -std::max(s[i].sd_bits, s[i + 1].sd_bits),
            "mean decreases by more than 1 sd after n=" + std::to_string(s[i].n));
  }
  v.note("largest per-doubling increase " + std::to_string(worst) + ", bound " + std::to_string(bound));
  v.check(worst <= bound, "per-doubling increase exceeds the bound");
}

void criterion_7(Verdict& v) {
  // Seeded ER instance: the class count approaches the WL count as bits grow.
  const Graph er = generate_erdos_renyi(5000, 2.0 / 5000, 7);
  const auto gammas = draw_gammas(20, 0.0, 1.0, 7);
  const std::vector<unsigned> bits = {8, 16, 32, 64, 128, 256};
  const auto rows = class_count_vs_precision(er, gammas, bits);
  const std::size_t wl = rows.front().wl_classes;
  std::ostringstream line;
  double previous = 0.0;
  for (unsigned b : bits) {
    double sum = 0.0;
    std::size_t equal = 0;
    for (const auto& row : rows) {
      if (row.bits != b) continue;
      sum += static_cast<double>(row.mpnn_classes);
      equal += row.mpnn_classes == wl;
    }
    const double mean = sum / static_cast<double>(gammas.size());
    line << b << " bits: mean " << mean << " (" << equal << "/20 equal); ";
    v.check(mean >= previous, "mean class count fell at " + std::to_string(b) + " bits");
    previous = mean;
    if (b == 256) v.check(equal >= 18, "ER instance: fewer than 18 gammas reach the WL count at 256 bits");
  }
  v.note("ER n=5000 avg degree 2, WL classes " + std::to_string(wl));
  v.note(line.str());

  const char* cora = std::getenv("WLSIM_CORA_EDGES");
  if (cora == nullptr || *cora == '\0') {
    v.check(false, "CORA dataset unavailable (set WLSIM_CORA_EDGES to its edge list)");
    return;
  }
  const Graph g = load_edge_list(cora, std::nullopt, {true, true});
  const std::size_t cora_wl = count_classes(wl_run(g).stable().colors);
  v.note("CORA: " + std::to_string(g.node_count()) + " nodes, WL classes " + std::to_string(cora_wl));
  v.check(cora_wl == 2365, "CORA WL class count is not 2365");
  const auto cora_rows = class_count_vs_precision(g, gammas, std::vector<unsigned>{256});
  std::size_t equal = 0;
  for (const auto& row : cora_rows) equal += row.mpnn_classes == cora_wl;
  v.note("CORA: " + std::to_string(equal) + "/20 gammas reach the WL count at 256 bits");
  v.check(equal >= 18, "CORA: fewer than 18 gammas reach the WL count");
}

void criterion_8(Verdict& v) {
  const auto graphs = property_graphs();
  Rng rng(8);
  std::size_t monotone = 0;
  std::size_t invariant = 0;
  std::size_t replayed = 0;
  std::size_t coarser = 0;
  for (const Graph& g : graphs) {
    const WLTrace t = wl_run(g);
    bool ok = t.converged;
    for (std::size_t r = 0; r + 1 < t.rounds.size(); ++r) ok = ok && t.partition(r + 1).refines(t.partition(r));
    monotone += ok;

    const Graph h = permute(g, random_permutation(g.node_count(), rng));
    const WLTrace th = wl_run(h);
    bool same = th.rounds.size() == t.rounds.size();
    for (std::size_t r = 0; same && r < t.rounds.size(); ++r) {
      same = color_multiset(t.at(r).colors) == color_multiset(th.at(r).colors);
    }
    const double gamma = rng.uniform_open(0.0, 1.0);
    const PrecisionContext ctx(128);
    const auto fg = mpnn_run(g, with_gamma(gamma), t.convergence_round, ctx);
    const auto fh = mpnn_run(h, with_gamma(gamma), t.convergence_round, ctx);
    auto sorted = [](std::vector<BigFloat> xs) {
      std::sort(xs.begin(), xs.end(), [](const BigFloat& a, const BigFloat& b) { return a < b; });
      return xs;
    };
    same = same && sorted(fg.back().values) == sorted(fh.back().values);
    invariant += same;

    const WLTrace again = wl_run(g);
    const auto fg2 = mpnn_run(g, with_gamma(gamma), t.convergence_round, ctx);
    bool equal = again.rounds.size() == t.rounds.size() && fg2.back().values == fg.back().values;
    for (std::size_t r = 0; equal && r < t.rounds.size(); ++r) equal = again.at(r).colors == t.at(r).colors;
    replayed += equal;

    // WL refines the MPNN partition at every round.
    bool refines = true;
    for (std::size_t r = 0; r < fg.size(); ++r) {
      refines = refines && t.partition(r).refines(Partition::from_colors(feature_classes(fg[r])));
    }
    coarser += refines;
  }
  const std::string of = "/" + std::to_string(graphs.size());
  v.note("refinement monotonicity " + std::to_string(monotone) + of + ", permutation invariance " +
         std::to_string(invariant) + of + ", determinism " + std::to_string(replayed) + of +
         ", MPNN coarser than WL " + std::to_string(coarser) + of);
  v.check(monotone == graphs.size(), "refinement monotonicity");
  v.check(invariant == graphs.size(), "permutation invariance");
  v.check(replayed == graphs.size(), "determinism");
  v.check(coarser == graphs.size(), "MPNN partition finer than WL");

  // Replayability of a whole experiment across thread counts and renders.
  CollectionSpec spec;
  spec.count = 8;
  spec.min_nodes = 30;
  spec.max_nodes = 80;
  const auto collection = random_graph_collection(spec);
  const auto gammas = draw_gammas(6, 0.0, 1.0, 8);
  const auto a = lottery_experiment(collection, gammas, PrecisionContext(16), {}, 1);
  const auto b = lottery_experiment(collection, gammas, PrecisionContext(16), {}, 4);
  const auto ra = render_report(to_records(a), ReportFormat::Csv, RunConfig{});
  const auto rb = render_report(to_records(b), ReportFormat::Csv, RunConfig{});
  v.check(ra == rb, "lottery report differs across thread counts");

  // Q-independence probe: random small integer combinations of sqrt(p) for
  // the first 6 primes, at 512 bits, stay far from zero.
  const PrecisionContext wide(512);
  std::vector<BigFloat> roots;
  for (unsigned long p : first_primes(6)) roots.push_back(sqrt_uint(p, wide));
  Rng probe(88);
  double smallest = INFINITY;
  for (int trial = 0; trial < 200000; ++trial) {
    BigFloat acc(0.0, 1024);
    BigFloat term(1024);
    bool nonzero = false;
    for (const auto& r : roots) {
      const long c = static_cast<long>(probe.below(21)) - 10;
      nonzero = nonzero || c != 0;
      mpfr_mul_si(term.get(), r.get(), c, MPFR_RNDN);
      mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    }
    if (nonzero) smallest = std::min(smallest, std::fabs(acc.to_double()));
  }
  v.note("smallest |sum c_i sqrt(p_i)| over 200000 probes: " + std::to_string(smallest));
  v.check(smallest > std::ldexp(1.0, -400), "a rational relation among sqrt(p) appeared");

  // Soundness: (g, permuted g) is never distinguished.
  std::atomic<std::size_t> separated = 0;
  parallel_for(200, [&](std::size_t i) {
    Rng local(derive_seed(800, i));
    const std::size_t n = 20 + local.below(41);
    const Graph g = i % 2 ? generate_barabasi_albert(n, 2, derive_seed(801, i))
                          : generate_erdos_renyi(n, 4.0 / static_cast<double>(n), derive_seed(801, i));
    const Graph h = permute(g, random_permutation(n, local));
    const std::size_t layers = std::max<std::size_t>(wl_run(g).convergence_round, 1);
    separated += mpnn_distinguish(g, h, with_gamma(local.uniform_open(0.0, 1.0)), layers, PrecisionContext(256));
  });
  v.note("soundness: " + std::to_string(separated.load()) + "/200 permuted pairs distinguished");
  v.check(separated == 0, "an MPNN distinguished a graph from its permutation");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Verdict&)>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                               criterion_5, criterion_6, criterion_7, criterion_8};
  if (argc != 2) {
    std::cerr << "usage: acceptance <1..8>\n";
    return 2;
  }
  const int which = std::atoi(argv[1]);
  if (which < 1 || which > 8) {
    std::cerr << "criterion must be 1..8\n";
    return 2;
  }
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    criteria[which - 1](v);
  } catch (const std::exception& e) {
    v.check(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << v.detail.str();
  std::cout << "criterion " << which << ": " << (v.pass ? "PASS" : "FAIL") << " (" << secs << " s)" << std::endl;
  return v.pass ? 0 : 1;
}
