#include "wlsim/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "wlsim/error.hpp"
#include "wlsim/generators.hpp"
#include "wlsim/graph_io.hpp"
#include "wlsim/harness.hpp"
#include "wlsim/korder.hpp"
#include "wlsim/mpnn.hpp"
#include "wlsim/wl.hpp"

namespace wlsim {

namespace {

// Salt separating the gamma stream from the graph streams of one seed.
constexpr std::uint64_t kGammaSalt = 0x67616d6d61ULL;

struct RealFlags {
  std::string gamma;
  std::string gamma_max;
  std::string average_degree;
  std::string edge_prob;
};

double parse_real_flag(const std::string& text, const char* flag) {
  try {
    return parse_double(text);
  } catch (const InputError&) {
    throw UsageError(std::string(flag) + ": not a number: '" + text + "'");
  }
}

void add_graph_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--labels", cfg.labels, "Label file per graph, in graph order");
  cmd->add_flag("--symmetrize", cfg.symmetrize, "Treat the edge list as directed and symmetrize it");
  cmd->add_flag("--compact-ids", cfg.compact_ids, "Renumber arbitrary node ids to 0..n-1");
}

void add_model_flags(CLI::App* cmd, RunConfig& cfg, RealFlags& reals) {
  cmd->add_option("--gamma", reals.gamma, "Network parameter in (0,1); decimal or hex-float");
  cmd->add_option("--bits", cfg.bits, "Significand precision in bits");
  cmd->add_option("--activation", cfg.activation, "sigmoid or arctan");
  cmd->add_option("--scheme", cfg.scheme, "theory or simplified");
  cmd->add_option("--encoding", cfg.encoding, "constant-one or sqrt-primes");
}

MpnnConfig model_config(const RunConfig& cfg) {
  MpnnConfig m;
  m.gamma = cfg.gamma;
  m.activation = parse_activation(cfg.activation);
  m.scheme = parse_scheme(cfg.scheme);
  m.encoding = parse_encoding(cfg.encoding);
  return m;
}

void validate(const RunConfig& cfg, const std::string& group) {
  auto fail = [](const std::string& what) { throw UsageError(what); };
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) fail("--gamma must lie in (0,1)");
  if (cfg.bits < 2) fail("--bits must be at least 2");
  if (cfg.num_gammas < 1) fail("--num-gammas must be at least 1");
  if (!(cfg.gamma_max > 0.0 && cfg.gamma_max <= 1.0)) fail("--gamma-max must lie in (0,1]");
  if (cfg.k < 2 || cfg.k > kMaxOrder) fail("-k must lie in 2.." + std::to_string(kMaxOrder));
  if (cfg.p_max < 4) fail("--p-max must be at least 4");
  if (cfg.layers && *cfg.layers > 100000) fail("--layers is unreasonably large");
  for (unsigned b : cfg.bits_list) {
    if (b < 2) fail("--bits-list entries must be at least 2");
  }
  for (std::size_t n : cfg.sizes) {
    if (n < 1) fail("--sizes entries must be positive");
  }
  if (cfg.family != "er" && cfg.family != "ba") fail("--family must be er or ba");
  if (cfg.min_nodes < 1 || cfg.min_nodes > cfg.max_nodes) fail("--min-nodes must be positive and <= --max-nodes");
  if (!(cfg.average_degree > 0.0)) fail("--avg-degree must be positive");
  if (cfg.format != "csv" && cfg.format != "json") fail("--format must be csv or json");
  if (!cfg.labels.empty() && cfg.labels.size() != cfg.graphs.size()) fail("--labels needs one file per graph");
  try {
    if (group == "mpnn" || group == "kmpnn") {
      parse_activation(cfg.activation);
      parse_scheme(cfg.scheme);
      parse_encoding(cfg.encoding);
    }
  } catch (const InputError& e) {
    fail(e.what());
  }
}

std::string derived_summary_path(const std::string& out) {
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + "_summary" + p.extension().string())).string();
}

}  // namespace

RunConfig parse_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  RealFlags reals;
  std::string replay_path;
  CLI::App app{"Weisfeiler-Leman refinement and exact-precision MPNN simulation", "wlsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  auto* wl = app.add_subcommand("wl", "1-dimensional Weisfeiler-Leman refinement");
  wl->require_subcommand(1);
  auto* wl_run = wl->add_subcommand("run", "Refine one graph to convergence");
  wl_run->add_option("graph", cfg.graphs, "Edge-list file")->required()->expected(1);
  wl_run->add_option("--max-rounds", cfg.max_rounds, "Stop after this many rounds");
  wl_run->add_option("--emit-trace", cfg.emit_trace, "Write round,node,color CSV here");
  add_graph_flags(wl_run, cfg);
  auto* wl_dist = wl->add_subcommand("distinguish", "Joint WL test on two graphs (exit 1 if distinguished)");
  wl_dist->add_option("graphs", cfg.graphs, "Two edge-list files")->required()->expected(2);
  wl_dist->add_option("--max-rounds", cfg.max_rounds, "Round limit");
  add_graph_flags(wl_dist, cfg);

  auto* nwl = app.add_subcommand("nwl", "k-order non-folklore Weisfeiler-Leman");
  nwl->require_subcommand(1);
  auto* nwl_run_cmd = nwl->add_subcommand("run", "Refine V^k of one graph to convergence");
  nwl_run_cmd->add_option("graph", cfg.graphs, "Edge-list file")->required()->expected(1);
  nwl_run_cmd->add_option("-k", cfg.k, "Order k");
  add_graph_flags(nwl_run_cmd, cfg);
  auto* nwl_dist = nwl->add_subcommand("distinguish", "Joint k-order test (exit 1 if distinguished)");
  nwl_dist->add_option("graphs", cfg.graphs, "Two edge-list files")->required()->expected(2);
  nwl_dist->add_option("-k", cfg.k, "Order k");
  add_graph_flags(nwl_dist, cfg);

  auto* mpnn = app.add_subcommand("mpnn", "One-dimensional MPNN at a fixed precision");
  mpnn->require_subcommand(1);
  auto* mpnn_run_cmd = mpnn->add_subcommand("run", "Run the network on one graph");
  mpnn_run_cmd->add_option("graph", cfg.graphs, "Edge-list file")->required()->expected(1);
  mpnn_run_cmd->add_option("--layers", cfg.layers, "Rounds (default: WL convergence round)");
  mpnn_run_cmd->add_option("--emit-trace", cfg.emit_trace, "Write round,node,feature CSV here");
  add_model_flags(mpnn_run_cmd, cfg, reals);
  add_graph_flags(mpnn_run_cmd, cfg);
  auto* mpnn_dist = mpnn->add_subcommand("distinguish", "Compare readouts (exit 1 if distinguished)");
  mpnn_dist->add_option("graphs", cfg.graphs, "Two edge-list files")->required()->expected(2);
  mpnn_dist->add_option("--layers", cfg.layers, "Rounds (default: WL convergence round of the union)");
  add_model_flags(mpnn_dist, cfg, reals);
  add_graph_flags(mpnn_dist, cfg);
  auto* mpnn_sim = mpnn->add_subcommand("simulate", "Check perfect simulation of WL on one graph");
  mpnn_sim->add_option("graph", cfg.graphs, "Edge-list file")->required()->expected(1);
  mpnn_sim->add_option("--out", cfg.out, "Report path (default: stdout)");
  mpnn_sim->add_option("--format", cfg.format, "csv or json");
  add_model_flags(mpnn_sim, cfg, reals);
  add_graph_flags(mpnn_sim, cfg);

  auto* kmpnn = app.add_subcommand("kmpnn", "k-order MPNN");
  kmpnn->require_subcommand(1);
  auto* kmpnn_sim = kmpnn->add_subcommand("simulate", "Check perfect simulation of k-order WL");
  kmpnn_sim->add_option("graph", cfg.graphs, "Edge-list file")->required()->expected(1);
  kmpnn_sim->add_option("-k", cfg.k, "Order k");
  kmpnn_sim->add_option("--gamma", reals.gamma, "Network parameter in (0,1)");
  kmpnn_sim->add_option("--bits", cfg.bits, "Significand precision in bits");
  kmpnn_sim->add_option("--activation", cfg.activation, "sigmoid or arctan (default arctan)");
  add_graph_flags(kmpnn_sim, cfg);

  auto* exp = app.add_subcommand("experiment", "Verification experiments");
  exp->require_subcommand(1);
  auto add_report_flags = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out, "Report path (default: stdout)");
    cmd->add_option("--format", cfg.format, "csv or json");
    cmd->add_option("--seed", cfg.seed, "Base seed");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
    cmd->add_option("--num-gammas", cfg.num_gammas, "Number of uniform gamma draws");
    cmd->add_option("--gamma-max", reals.gamma_max, "Gammas are drawn from (0, gamma-max)");
    cmd->add_option("--activation", cfg.activation, "sigmoid or arctan");
    cmd->add_option("--scheme", cfg.scheme, "theory or simplified");
    cmd->add_option("--encoding", cfg.encoding, "constant-one or sqrt-primes");
  };
  auto* lottery = exp->add_subcommand("lottery", "Per-gamma perfect-simulation counts over a graph collection");
  add_report_flags(lottery);
  lottery->add_option("--graphs-dir", cfg.graphs_dir, "Directory of *.edges files (default: generate)");
  lottery->add_option("--bits", cfg.bits, "Significand precision in bits");
  lottery->add_option("--family", cfg.family, "Generated family: er or ba");
  lottery->add_option("--count", cfg.count, "Generated graph count");
  lottery->add_option("--min-nodes", cfg.min_nodes, "Smallest generated graph");
  lottery->add_option("--max-nodes", cfg.max_nodes, "Largest generated graph");
  lottery->add_option("--avg-degree", reals.average_degree, "ER edge probability is avg-degree / n");
  lottery->add_option("--attachments", cfg.attachments, "BA edges per new node");
  lottery->add_flag("--symmetrize", cfg.symmetrize, "Symmetrize loaded edge lists");
  lottery->add_flag("--compact-ids", cfg.compact_ids, "Renumber loaded node ids");
  auto* sweep = exp->add_subcommand("precision-sweep", "Minimum precision versus graph size");
  add_report_flags(sweep);
  sweep->add_option("--sizes", cfg.sizes, "Comma-separated node counts")->delimiter(',');
  sweep->add_option("--p-max", cfg.p_max, "Largest precision tried");
  sweep->add_option("--avg-degree", reals.average_degree, "ER edge probability is avg-degree / n");
  sweep->add_option("--summary-out", cfg.summary_out, "Per-size mean/sd report (default: <out>_summary)");
  auto* classes = exp->add_subcommand("classes", "Distinct MPNN feature values versus precision");
  add_report_flags(classes);
  classes->add_option("--graph", cfg.graphs, "Edge-list file (default: generate ER)")->expected(1);
  classes->add_option("--bits-list", cfg.bits_list, "Comma-separated precisions")->delimiter(',');
  classes->add_option("--nodes", cfg.nodes, "Generated ER node count");
  classes->add_option("--avg-degree", reals.average_degree, "ER edge probability is avg-degree / n");
  add_graph_flags(classes, cfg);

  auto* gen = app.add_subcommand("generate", "Write a random graph as an edge list");
  gen->require_subcommand(1);
  auto* gen_er = gen->add_subcommand("er", "Erdos-Renyi G(n, p)");
  gen_er->add_option("--nodes", cfg.nodes, "Node count")->required();
  gen_er->add_option("--edge-prob", reals.edge_prob, "Edge probability")->required();
  gen_er->add_option("--seed", cfg.seed, "Seed");
  gen_er->add_option("--out", cfg.out, "Output edge-list path")->required();
  auto* gen_ba = gen->add_subcommand("ba", "Barabasi-Albert preferential attachment");
  gen_ba->add_option("--nodes", cfg.nodes, "Node count")->required();
  gen_ba->add_option("--attachments", cfg.attachments, "Edges per new node");
  gen_ba->add_option("--seed", cfg.seed, "Seed");
  gen_ba->add_option("--out", cfg.out, "Output edge-list path")->required();

  auto* replay = app.add_subcommand("replay", "Re-run the config embedded in a report and compare bit-exactly");
  replay->add_option("report", replay_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream out;
    std::ostringstream err;
    app.exit(e, out, err);
    throw HelpRequested(out.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const std::vector<std::pair<CLI::App*, std::string>> groups = {
      {wl, "wl"}, {nwl, "nwl"}, {mpnn, "mpnn"}, {kmpnn, "kmpnn"}, {exp, "experiment"}, {gen, "generate"}};
  std::string group;
  for (const auto& [app_ptr, name] : groups) {
    if (app_ptr->parsed()) {
      group = name;
      cfg.subcommand = name + "-" + app_ptr->get_subcommands().front()->get_name();
    }
  }
  if (replay->parsed()) {
    cfg.subcommand = "replay";
    cfg.graphs = {replay_path};
    return cfg;
  }

  if (!reals.gamma.empty()) cfg.gamma = parse_real_flag(reals.gamma, "--gamma");
  if (!reals.gamma_max.empty()) cfg.gamma_max = parse_real_flag(reals.gamma_max, "--gamma-max");
  if (!reals.average_degree.empty()) cfg.average_degree = parse_real_flag(reals.average_degree, "--avg-degree");
  if (!reals.edge_prob.empty()) cfg.edge_prob = parse_real_flag(reals.edge_prob, "--edge-prob");

  // Per-experiment defaults for flags shared across experiments.
  if (sweep->parsed()) {
    if (sweep->count("--num-gammas") == 0) cfg.num_gammas = 20;
    if (reals.gamma_max.empty()) cfg.gamma_max = 0.5;
    if (cfg.sizes.empty()) cfg.sizes = {50, 100, 200, 400, 800};
    if (!cfg.out.empty() && cfg.summary_out.empty()) cfg.summary_out = derived_summary_path(cfg.out);
  }
  if (classes->parsed()) {
    if (classes->count("--num-gammas") == 0) cfg.num_gammas = 20;
    if (cfg.bits_list.empty()) cfg.bits_list = {8, 16, 32, 64, 128, 256};
    if (cfg.graphs.empty() && cfg.nodes == 0) cfg.nodes = 1000;
  }
  if (kmpnn_sim->parsed() && kmpnn_sim->count("--activation") == 0) cfg.activation = "arctan";
  if (gen_er->parsed() && !(cfg.edge_prob >= 0.0 && cfg.edge_prob <= 1.0)) {
    throw UsageError("--edge-prob must lie in [0,1]");
  }
  if ((gen_er->parsed() || gen_ba->parsed()) && cfg.nodes < 1) throw UsageError("--nodes must be positive");
  validate(cfg, group);
  return cfg;
}

namespace {

Graph load_graph(const RunConfig& cfg, std::size_t i) {
  std::optional<std::filesystem::path> labels;
  if (!cfg.labels.empty()) labels = cfg.labels.at(i);
  return load_edge_list(cfg.graphs.at(i), labels, {cfg.symmetrize, cfg.compact_ids});
}

std::vector<Graph> load_graph_dir(const RunConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(cfg.graphs_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".edges") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no *.edges files in '" + cfg.graphs_dir + "'");
  std::vector<Graph> graphs;
  for (const auto& f : files) graphs.push_back(load_edge_list(f, std::nullopt, {cfg.symmetrize, cfg.compact_ids}));
  return graphs;
}

std::vector<double> experiment_gammas(const RunConfig& cfg) {
  return draw_gammas(cfg.num_gammas, 0.0, cfg.gamma_max, derive_seed(cfg.seed, kGammaSalt));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw ResourceError("write to '" + path + "' failed");
}

std::size_t default_layers(const Graph& g) { return wl_run(g).convergence_round; }

}  // namespace

std::vector<RenderedFile> render_experiment(const RunConfig& cfg) {
  const ReportFormat format = parse_format(cfg.format);
  MpnnConfig model = model_config(cfg);
  std::vector<RenderedFile> files;
  auto render = [&](const std::vector<ExperimentRecord>& records, const std::string& path) {
    files.push_back({path, render_report(records, format, cfg)});
  };

  if (cfg.subcommand == "mpnn-simulate") {
    const Graph g = load_graph(cfg, 0);
    const auto report = perfect_simulation(g, model, PrecisionContext(cfg.bits), nullptr, cfg.graphs.front());
    render({to_record(report)}, cfg.out);
  } else if (cfg.subcommand == "experiment-lottery") {
    std::vector<Graph> graphs;
    if (!cfg.graphs_dir.empty()) {
      graphs = load_graph_dir(cfg);
    } else {
      CollectionSpec spec;
      spec.family = cfg.family == "ba" ? GraphFamily::BarabasiAlbert : GraphFamily::ErdosRenyi;
      spec.count = cfg.count;
      spec.min_nodes = cfg.min_nodes;
      spec.max_nodes = cfg.max_nodes;
      spec.average_degree = cfg.average_degree;
      spec.attachments = cfg.attachments;
      spec.seed = cfg.seed;
      graphs = random_graph_collection(spec);
    }
    const auto gammas = experiment_gammas(cfg);
    const auto result = lottery_experiment(graphs, gammas, PrecisionContext(cfg.bits), model, cfg.threads);
    render(to_records(result), cfg.out);
  } else if (cfg.subcommand == "experiment-precision-sweep") {
    SweepOptions options;
    options.sizes = cfg.sizes;
    options.gammas = experiment_gammas(cfg);
    options.seed = cfg.seed;
    options.average_degree = cfg.average_degree;
    options.p_max = cfg.p_max;
    options.base = model;
    options.threads = cfg.threads;
    const auto result = precision_sweep(options);
    render(to_records(std::span<const SweepRow>(result.rows)), cfg.out);
    render(to_records(std::span<const SweepSummary>(result.summary)), cfg.summary_out);
  } else if (cfg.subcommand == "experiment-classes") {
    Graph g = cfg.graphs.empty()
                  ? generate_erdos_renyi(cfg.nodes, std::min(1.0, cfg.average_degree / static_cast<double>(cfg.nodes)),
                                         cfg.seed)
                  : load_graph(cfg, 0);
    const auto gammas = experiment_gammas(cfg);
    const auto rows = class_count_vs_precision(g, gammas, cfg.bits_list, model, cfg.threads);
    render(to_records(std::span<const ClassCountRow>(rows)), cfg.out);
  } else {
    throw InputError("'" + cfg.subcommand + "' does not produce a report");
  }
  return files;
}

int execute(const RunConfig& cfg, std::ostream& out) {
  const std::string& cmd = cfg.subcommand;

  if (cmd == "wl-run") {
    const Graph g = load_graph(cfg, 0);
    const WLTrace trace = wl_run(g, cfg.max_rounds);
    out << "nodes: " << g.node_count() << "\nedges: " << g.edge_count() << "\n";
    out << "converged: " << (trace.converged ? "true" : "false") << "\n";
    out << "convergence_round: " << trace.convergence_round << "\n";
    out << "classes: " << count_classes(trace.stable().colors) << "\n";
    if (!cfg.emit_trace.empty()) {
      std::ostringstream csv;
      csv << "round,node,color\n";
      for (const auto& l : trace.rounds) {
        for (std::size_t v = 0; v < l.colors.size(); ++v) csv << l.round << ',' << v << ',' << l.colors[v] << '\n';
      }
      write_text(cfg.emit_trace, csv.str());
    }
    return kExitOk;
  }

  if (cmd == "wl-distinguish" || cmd == "nwl-distinguish") {
    const Graph g1 = load_graph(cfg, 0);
    const Graph g2 = load_graph(cfg, 1);
    const DistinguishOutcome res = cmd == "wl-distinguish" ? wl_distinguish(g1, g2, cfg.max_rounds)
                                                           : nwl_distinguish(g1, g2, cfg.k);
    if (res.distinguished()) {
      out << "distinguished at round " << *res.distinguished_at << "\n";
      return kExitDistinguished;
    }
    out << "undistinguished after " << res.rounds_examined << " rounds\n";
    return kExitOk;
  }

  if (cmd == "nwl-run") {
    const Graph g = load_graph(cfg, 0);
    const NwlTrace trace = nwl_run(g, cfg.k);
    out << "k: " << cfg.k << "\ntuples: " << trace.rounds.front().colors.size() << "\n";
    out << "convergence_round: " << trace.convergence_round << "\n";
    out << "classes: " << count_classes(trace.rounds.at(trace.convergence_round).colors) << "\n";
    return kExitOk;
  }

  if (cmd == "mpnn-run") {
    const Graph g = load_graph(cfg, 0);
    const MpnnConfig model = model_config(cfg);
    const PrecisionContext ctx(cfg.bits);
    const std::size_t layers = cfg.layers.value_or(default_layers(g));
    const auto rounds = mpnn_run(g, model, layers, ctx);
    out << "layers: " << layers << "\n";
    out << "classes: " << count_classes(feature_classes(rounds.back())) << "\n";
    const BigFloat readout = mpnn_readout(rounds.back(), ctx);
    out << "readout: " << readout.to_decimal() << "\nreadout_hex: " << readout.to_hex() << "\n";
    if (!cfg.emit_trace.empty()) {
      std::ostringstream csv;
      csv << "round,node,feature_hex,feature_decimal\n";
      for (const auto& f : rounds) {
        for (std::size_t v = 0; v < f.values.size(); ++v) {
          csv << f.round << ',' << v << ',' << f.values[v].to_hex() << ',' << f.values[v].to_decimal() << '\n';
        }
      }
      write_text(cfg.emit_trace, csv.str());
    }
    return kExitOk;
  }

  if (cmd == "mpnn-distinguish") {
    const Graph g1 = load_graph(cfg, 0);
    const Graph g2 = load_graph(cfg, 1);
    const std::size_t layers = cfg.layers.value_or(default_layers(disjoint_union(g1, g2)));
    const bool distinct = mpnn_distinguish(g1, g2, model_config(cfg), layers, PrecisionContext(cfg.bits));
    out << (distinct ? "distinguished" : "undistinguished") << " after " << layers << " layers\n";
    return distinct ? kExitDistinguished : kExitOk;
  }

  if (cmd == "kmpnn-simulate") {
    const Graph g = load_graph(cfg, 0);
    const auto rep =
        k_perfect_simulation(g, cfg.k, cfg.gamma, PrecisionContext(cfg.bits), parse_activation(cfg.activation));
    out << "perfect: " << (rep.perfect ? "true" : "false") << "\n";
    out << "convergence_round: " << rep.convergence_round << "\n";
    out << "nwl_classes: " << rep.nwl_classes << "\n";
    out << "mpnn_classes: " << rep.mpnn_classes.back() << "\n";
    if (rep.first_divergence_round) out << "first_divergence_round: " << *rep.first_divergence_round << "\n";
    return kExitOk;
  }

  if (cmd == "generate-er" || cmd == "generate-ba") {
    const Graph g = cmd == "generate-er" ? generate_erdos_renyi(cfg.nodes, cfg.edge_prob, cfg.seed)
                                         : generate_barabasi_albert(cfg.nodes, cfg.attachments, cfg.seed);
    write_edge_list(g, cfg.out);
    out << "wrote " << cfg.out << " (" << g.node_count() << " nodes, " << g.edge_count() << " edges)\n";
    return kExitOk;
  }

  if (cmd == "replay") {
    const std::string& path = cfg.graphs.front();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    const ParsedReport parsed = parse_report(buf.str());
    const auto files = render_experiment(parsed.config);
    const bool same = std::any_of(files.begin(), files.end(),
                                  [&](const RenderedFile& f) { return f.content == buf.str(); });
    out << "replay of " << parsed.config.subcommand << ": " << (same ? "identical" : "MISMATCH") << "\n";
    return same ? kExitOk : kExitRuntime;
  }

  for (const auto& f : render_experiment(cfg)) {
    if (f.path.empty()) {
      out << f.content;
    } else {
      write_text(f.path, f.content);
      out << "wrote " << f.path << "\n";
    }
  }
  return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_cli(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  try {
    return execute(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace wlsim
