#include "wlsim/graph_io.hpp"

#include <limits>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wlsim/error.hpp"

namespace wlsim {
namespace {

std::string_view strip(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

struct RawEdge {
  std::uint64_t u;
  std::uint64_t v;
  std::size_t line;
};

}  // namespace

Graph load_edge_list(const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& labels_path,
                     const EdgeListOptions& options) {
  auto in = open_or_throw(path);
  const std::string name = path.string();

  std::optional<std::uint64_t> declared_n;
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = strip(line);
    if (body.empty()) continue;
    if (!seen_data && body.starts_with("n=")) {
      declared_n = parse_uint(body.substr(2));
      if (!declared_n) throw IngestionError(name, line_no, "malformed node-count header");
      seen_data = true;
      continue;
    }
    seen_data = true;
    const auto tokens = split_ws(body);
    if (tokens.size() != 2) throw IngestionError(name, line_no, "expected two node ids");
    const auto u = parse_uint(tokens[0]);
    const auto v = parse_uint(tokens[1]);
    if (!u || !v) throw IngestionError(name, line_no, "node ids must be non-negative integers");
    raw.push_back({*u, *v, line_no});
  }

  // Id renumbering (identity unless compact_ids).
  std::map<std::uint64_t, Node> compact;
  std::uint64_t n = 0;
  if (options.compact_ids) {
    for (const RawEdge& e : raw) {
      compact.emplace(e.u, 0);
      compact.emplace(e.v, 0);
    }
    Node next = 0;
    for (auto& [id, idx] : compact) idx = next++;
    n = compact.size();
  } else {
    for (const RawEdge& e : raw) n = std::max({n, e.u + 1, e.v + 1});
    if (declared_n) {
      for (const RawEdge& e : raw) {
        if (e.u >= *declared_n || e.v >= *declared_n) {
          throw IngestionError(name, e.line, "node id exceeds declared n=" + std::to_string(*declared_n));
        }
      }
      n = *declared_n;
    }
  }
  if (n > std::numeric_limits<Node>::max()) throw IngestionError(name, line_no, "too many nodes");
  auto remap = [&](std::uint64_t id) -> Node {
    return options.compact_ids ? compact.at(id) : static_cast<Node>(id);
  };

  std::set<std::pair<Node, Node>> seen;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) {
    const Node u = remap(e.u);
    const Node v = remap(e.v);
    if (u == v) {
      if (options.symmetrize) continue;
      throw IngestionError(name, e.line, "self-loop at node " + std::to_string(e.u));
    }
    const auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      if (options.symmetrize) continue;
      throw IngestionError(name, e.line,
                           "duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
    edges.push_back({u, v});
  }

  std::optional<std::vector<LabelId>> labels;
  if (labels_path) {
    auto lin = open_or_throw(*labels_path);
    const std::string lname = labels_path->string();
    std::vector<std::optional<LabelId>> assigned(n);
    std::size_t lno = 0;
    while (std::getline(lin, line)) {
      ++lno;
      const auto body = strip(line);
      if (body.empty()) continue;
      const auto tokens = split_ws(body);
      if (tokens.size() != 2) throw IngestionError(lname, lno, "expected \"node label\"");
      const auto node = parse_uint(tokens[0]);
      const auto lab = parse_uint(tokens[1]);
      if (!node || !lab || *lab > std::numeric_limits<std::uint32_t>::max()) {
        throw IngestionError(lname, lno, "malformed label line");
      }
      std::uint64_t idx = *node;
      if (options.compact_ids) {
        auto it = compact.find(*node);
        if (it == compact.end()) throw IngestionError(lname, lno, "label for unknown node");
        idx = it->second;
      }
      if (idx >= n) throw IngestionError(lname, lno, "label for node outside 0..n-1");
      if (assigned[idx]) throw IngestionError(lname, lno, "node labeled twice");
      assigned[idx] = LabelId{static_cast<std::uint32_t>(*lab)};
    }
    labels.emplace();
    labels->reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (!assigned[v]) throw IngestionError(lname, lno, "node " + std::to_string(v) + " has no label");
      labels->push_back(*assigned[v]);
    }
  }

  return Graph::from_edges(static_cast<std::size_t>(n), edges, std::move(labels));
}

void write_edge_list(const Graph& g, const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& labels_path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "n=" << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());

  if (labels_path && g.is_labeled()) {
    std::ofstream lout(*labels_path);
    if (!lout) throw std::runtime_error("cannot write " + labels_path->string());
    for (Node v = 0; v < g.node_count(); ++v) lout << v << ' ' << g.label(v).value << '\n';
  }
}

}  // namespace wlsim
