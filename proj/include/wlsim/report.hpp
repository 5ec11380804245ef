#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "wlsim/harness.hpp"

namespace wlsim {

/// Every knob a subcommand can take. Unused fields keep their defaults and
/// are still serialized, so the JSON form is a complete replay recipe.
struct RunConfig {
  std::string subcommand;
  std::vector<std::string> graphs;
  std::vector<std::string> labels;
  std::string graphs_dir;
  bool symmetrize = false;
  bool compact_ids = false;

  // Model flags.
  double gamma = 0.5;
  std::optional<std::size_t> layers;
  unsigned bits = 256;
  std::string activation = "sigmoid";
  std::string scheme = "simplified";
  std::string encoding = "constant-one";
  std::size_t k = 2;
  std::optional<std::size_t> max_rounds;

  // Sweep parameters.
  std::size_t num_gammas = 50;
  double gamma_max = 1.0;
  std::vector<std::size_t> sizes;
  std::vector<unsigned> bits_list;
  unsigned p_max = 4096;
  std::string family = "er";
  std::size_t count = 100;
  std::size_t min_nodes = 50;
  std::size_t max_nodes = 250;
  double average_degree = 4.0;

  // Generation.
  std::size_t nodes = 0;
  double edge_prob = 0.0;
  std::size_t attachments = 2;

  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string summary_out;
  std::string format = "csv";
  std::string emit_trace;

  bool operator==(const RunConfig&) const = default;
};

/// Reals are stored as exact hex-float strings.
nlohmann::ordered_json to_json(const RunConfig& cfg);
/// Throws InputError on a missing or mistyped key.
RunConfig run_config_from_json(const nlohmann::ordered_json& j);

using FieldValue = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Field {
  std::string name;
  FieldValue value;
  bool operator==(const Field&) const = default;
};

/// One output row. Field order is the column order.
struct ExperimentRecord {
  std::string kind;
  std::vector<Field> fields;
  bool operator==(const ExperimentRecord&) const = default;
};

ExperimentRecord to_record(const SimulationReport& r);
std::vector<ExperimentRecord> to_records(const LotteryResult& r);
std::vector<ExperimentRecord> to_records(std::span<const SweepRow> rows);
std::vector<ExperimentRecord> to_records(std::span<const SweepSummary> rows);
std::vector<ExperimentRecord> to_records(std::span<const ClassCountRow> rows);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(std::string_view s);

/// CSV: two '#' header lines (tool version, RunConfig JSON), a column line
/// `kind,<fields...>` and one row per record. A double field `x` becomes
/// the columns `x` (decimal) and `x_hex` (exact); a missing value is an
/// empty cell. An empty record list yields the header lines only.
/// JSON: {"tool", "version", "config", "records": [{"kind", "fields"}]}.
/// Throws InputError when records disagree on kind or field names.
std::string render_report(std::span<const ExperimentRecord> records, ReportFormat format, const RunConfig& cfg);

/// render_report written to `path`; throws ResourceError naming the path on
/// I/O failure.
void emit_report(std::span<const ExperimentRecord> records, ReportFormat format,
                 const std::filesystem::path& path, const RunConfig& cfg);

struct ParsedReport {
  std::string version;
  RunConfig config;
  /// Records are recovered for JSON reports only; CSV keeps the text rows.
  std::vector<ExperimentRecord> records;
  std::vector<std::string> csv_lines;
  ReportFormat format = ReportFormat::Csv;
};

/// Reads either format (detected from the first character).
ParsedReport parse_report(const std::string& text);
ParsedReport read_report(const std::filesystem::path& path);

std::string tool_version();

}  // namespace wlsim
