#include "wlsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wlsim/error.hpp"

namespace wlsim {

using json = nlohmann::ordered_json;

std::string tool_version() { return WLSIM_VERSION; }

namespace {

std::string decimal_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
T get_key(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("config: missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

double get_real(const json& j, const char* key) { return parse_double(get_key<std::string>(j, key)); }

std::optional<std::size_t> get_optional(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("config: missing key '") + key + "'");
  if (j.at(key).is_null()) return std::nullopt;
  return get_key<std::size_t>(j, key);
}

json optional_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["graphs"] = c.graphs;
  j["labels"] = c.labels;
  j["graphs_dir"] = c.graphs_dir;
  j["symmetrize"] = c.symmetrize;
  j["compact_ids"] = c.compact_ids;
  j["gamma"] = hex_double(c.gamma);
  j["layers"] = optional_json(c.layers);
  j["bits"] = c.bits;
  j["activation"] = c.activation;
  j["scheme"] = c.scheme;
  j["encoding"] = c.encoding;
  j["k"] = c.k;
  j["max_rounds"] = optional_json(c.max_rounds);
  j["num_gammas"] = c.num_gammas;
  j["gamma_max"] = hex_double(c.gamma_max);
  j["sizes"] = c.sizes;
  j["bits_list"] = c.bits_list;
  j["p_max"] = c.p_max;
  j["family"] = c.family;
  j["count"] = c.count;
  j["min_nodes"] = c.min_nodes;
  j["max_nodes"] = c.max_nodes;
  j["average_degree"] = hex_double(c.average_degree);
  j["nodes"] = c.nodes;
  j["edge_prob"] = hex_double(c.edge_prob);
  j["attachments"] = c.attachments;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out"] = c.out;
  j["summary_out"] = c.summary_out;
  j["format"] = c.format;
  j["emit_trace"] = c.emit_trace;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  RunConfig c;
  c.subcommand = get_key<std::string>(j, "subcommand");
  c.graphs = get_key<std::vector<std::string>>(j, "graphs");
  c.labels = get_key<std::vector<std::string>>(j, "labels");
  c.graphs_dir = get_key<std::string>(j, "graphs_dir");
  c.symmetrize = get_key<bool>(j, "symmetrize");
  c.compact_ids = get_key<bool>(j, "compact_ids");
  c.gamma = get_real(j, "gamma");
  c.layers = get_optional(j, "layers");
  c.bits = get_key<unsigned>(j, "bits");
  c.activation = get_key<std::string>(j, "activation");
  c.scheme = get_key<std::string>(j, "scheme");
  c.encoding = get_key<std::string>(j, "encoding");
  c.k = get_key<std::size_t>(j, "k");
  c.max_rounds = get_optional(j, "max_rounds");
  c.num_gammas = get_key<std::size_t>(j, "num_gammas");
  c.gamma_max = get_real(j, "gamma_max");
  c.sizes = get_key<std::vector<std::size_t>>(j, "sizes");
  c.bits_list = get_key<std::vector<unsigned>>(j, "bits_list");
  c.p_max = get_key<unsigned>(j, "p_max");
  c.family = get_key<std::string>(j, "family");
  c.count = get_key<std::size_t>(j, "count");
  c.min_nodes = get_key<std::size_t>(j, "min_nodes");
  c.max_nodes = get_key<std::size_t>(j, "max_nodes");
  c.average_degree = get_real(j, "average_degree");
  c.nodes = get_key<std::size_t>(j, "nodes");
  c.edge_prob = get_real(j, "edge_prob");
  c.attachments = get_key<std::size_t>(j, "attachments");
  c.seed = get_key<std::uint64_t>(j, "seed");
  c.threads = get_key<unsigned>(j, "threads");
  c.out = get_key<std::string>(j, "out");
  c.summary_out = get_key<std::string>(j, "summary_out");
  c.format = get_key<std::string>(j, "format");
  c.emit_trace = get_key<std::string>(j, "emit_trace");
  return c;
}

namespace {

FieldValue optional_int(const std::optional<std::size_t>& v) {
  return v ? FieldValue(static_cast<std::int64_t>(*v)) : FieldValue();
}

FieldValue optional_int(const std::optional<unsigned>& v) {
  return v ? FieldValue(static_cast<std::int64_t>(*v)) : FieldValue();
}

FieldValue as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

ExperimentRecord to_record(const SimulationReport& r) {
  std::string per_round;
  for (std::size_t i = 0; i < r.mpnn_classes.size(); ++i) {
    if (i) per_round += ';';
    per_round += std::to_string(r.mpnn_classes[i]);
  }
  return {"simulation",
          {{"graph_id", r.graph_id},
           {"gamma", r.gamma},
           {"bits", as_int(r.bits)},
           {"perfect", r.perfect},
           {"first_divergence_round", optional_int(r.first_divergence_round)},
           {"convergence_round", as_int(r.convergence_round)},
           {"wl_classes", as_int(r.wl_classes)},
           {"mpnn_classes", per_round}}};
}

std::vector<ExperimentRecord> to_records(const LotteryResult& r) {
  std::vector<ExperimentRecord> out;
  for (std::size_t i = 0; i < r.gammas.size(); ++i) {
    out.push_back({"lottery",
                   {{"gamma", r.gammas[i]},
                    {"bits", as_int(r.bits)},
                    {"graphs", as_int(r.graph_count)},
                    {"perfect", as_int(r.perfect_counts[i])},
                    {"lottery", r.perfect_counts[i] == r.graph_count}}});
  }
  return out;
}

std::vector<ExperimentRecord> to_records(std::span<const SweepRow> rows) {
  std::vector<ExperimentRecord> out;
  for (const auto& r : rows) {
    out.push_back({"precision-sweep",
                   {{"n", as_int(r.n)},
                    {"graph_seed", std::to_string(r.graph_seed)},
                    {"gamma", r.gamma},
                    {"min_bits", optional_int(r.min_bits)},
                    {"last_failure", optional_int(r.last_failure)},
                    {"wl_classes", as_int(r.wl_classes)},
                    {"convergence_round", as_int(r.convergence_round)}}});
  }
  return out;
}

std::vector<ExperimentRecord> to_records(std::span<const SweepSummary> rows) {
  std::vector<ExperimentRecord> out;
  for (const auto& r : rows) {
    out.push_back({"precision-sweep-summary",
                   {{"n", as_int(r.n)},
                    {"mean_bits", r.mean_bits},
                    {"sd_bits", r.sd_bits},
                    {"found", as_int(r.found)},
                    {"total", as_int(r.total)}}});
  }
  return out;
}

std::vector<ExperimentRecord> to_records(std::span<const ClassCountRow> rows) {
  std::vector<ExperimentRecord> out;
  for (const auto& r : rows) {
    out.push_back({"classes",
                   {{"gamma", r.gamma},
                    {"bits", as_int(r.bits)},
                    {"mpnn_classes", as_int(r.mpnn_classes)},
                    {"wl_classes", as_int(r.wl_classes)},
                    {"rounds", as_int(r.rounds)}}});
  }
  return out;
}

ReportFormat parse_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw InputError("unknown report format '" + std::string(s) + "' (expected csv or json)");
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_schema(std::span<const ExperimentRecord> records) {
  for (const auto& r : records) {
    bool same = r.kind == records.front().kind && r.fields.size() == records.front().fields.size();
    for (std::size_t i = 0; same && i < r.fields.size(); ++i) {
      same = r.fields[i].name == records.front().fields[i].name;
    }
    if (!same) throw InputError("report records disagree on kind or fields");
  }
}

std::string render_csv(std::span<const ExperimentRecord> records, const RunConfig& cfg) {
  std::ostringstream out;
  out << "# wlsim " << tool_version() << '\n';
  out << "# config: " << to_json(cfg).dump() << '\n';
  if (records.empty()) return out.str();

  out << "kind";
  for (const auto& f : records.front().fields) {
    out << ',' << f.name;
    if (std::holds_alternative<double>(f.value)) out << ',' << f.name << "_hex";
  }
  out << '\n';
  for (const auto& r : records) {
    out << csv_cell(r.kind);
    for (const auto& f : r.fields) {
      out << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, std::int64_t>) {
              out << v;
            } else if constexpr (std::is_same_v<V, double>) {
              out << decimal_double(v) << ',' << hex_double(v);
            } else if constexpr (std::is_same_v<V, std::string>) {
              out << csv_cell(v);
            } else if constexpr (std::is_same_v<V, bool>) {
              out << (v ? "true" : "false");
            }
          },
          f.value);
    }
    out << '\n';
  }
  return out.str();
}

json field_json(const FieldValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<V, double>) {
          json d;
          d["decimal"] = decimal_double(v);
          d["hex"] = hex_double(v);
          return d;
        } else {
          return v;
        }
      },
      value);
}

FieldValue field_from_json(const json& j) {
  if (j.is_null()) return {};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object() && j.contains("hex")) return parse_double(j.at("hex").get<std::string>());
  throw InputError("report: unrecognized field value " + j.dump());
}

std::string render_json(std::span<const ExperimentRecord> records, const RunConfig& cfg) {
  json j;
  j["tool"] = "wlsim";
  j["version"] = tool_version();
  j["config"] = to_json(cfg);
  j["records"] = json::array();
  for (const auto& r : records) {
    json rec;
    rec["kind"] = r.kind;
    json fields = json::object();
    for (const auto& f : r.fields) fields[f.name] = field_json(f.value);
    rec["fields"] = std::move(fields);
    j["records"].push_back(std::move(rec));
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string render_report(std::span<const ExperimentRecord> records, ReportFormat format, const RunConfig& cfg) {
  if (!records.empty()) check_schema(records);
  return format == ReportFormat::Csv ? render_csv(records, cfg) : render_json(records, cfg);
}

void emit_report(std::span<const ExperimentRecord> records, ReportFormat format, const std::filesystem::path& path,
                 const RunConfig& cfg) {
  const std::string text = render_report(records, format, cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw ResourceError("write to '" + path.string() + "' failed");
}

ParsedReport parse_report(const std::string& text) {
  ParsedReport report;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    report.format = ReportFormat::Json;
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw InputError(std::string("report: malformed JSON: ") + e.what());
    }
    report.version = get_key<std::string>(j, "version");
    report.config = run_config_from_json(j.at("config"));
    for (const auto& rec : j.at("records")) {
      ExperimentRecord r;
      r.kind = get_key<std::string>(rec, "kind");
      for (const auto& [name, value] : rec.at("fields").items()) r.fields.push_back({name, field_from_json(value)});
      report.records.push_back(std::move(r));
    }
    return report;
  }

  std::istringstream in(text);
  std::string line;
  bool have_config = false;
  const std::string tool_prefix = "# wlsim ";
  const std::string config_prefix = "# config: ";
  while (std::getline(in, line)) {
    if (line.starts_with(tool_prefix)) {
      report.version = line.substr(tool_prefix.size());
    } else if (line.starts_with(config_prefix)) {
      try {
        report.config = run_config_from_json(json::parse(line.substr(config_prefix.size())));
      } catch (const json::exception& e) {
        throw InputError(std::string("report: malformed config header: ") + e.what());
      }
      have_config = true;
    } else if (!line.empty()) {
      report.csv_lines.push_back(line);
    }
  }
  if (!have_config) throw InputError("report: no config header");
  return report;
}

ParsedReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

}  // namespace wlsim
