#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "wlsim/graph.hpp"

namespace wlsim {

struct EdgeListOptions {
  /// Input is directed (e.g. a citation list): a reverse or repeated pair
  /// is merged into one undirected edge and self-loops are dropped instead
  /// of rejected.
  bool symmetrize = false;
  /// Ids are arbitrary non-negative integers; renumber them 0..n-1 in
  /// ascending id order. Ignores any "n=" header.
  bool compact_ids = false;
};

/// Reads a whitespace-separated "u v" edge list. '#' starts a comment; an
/// optional first data line "n=<count>" fixes the node count, otherwise it
/// is 1 + the largest id seen. The optional label file holds "node label"
/// lines and must label every node.
///
/// Throws IngestionError (with the 1-based line) on parse failures,
/// self-loops and repeated edges, and std::runtime_error when a file
/// cannot be opened.
Graph load_edge_list(const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& labels_path = std::nullopt,
                     const EdgeListOptions& options = {});

/// Writes "n=<count>" followed by one "u v" line per edge (u < v), and
/// when the graph is labeled and `labels_path` is given, the label file.
void write_edge_list(const Graph& g, const std::filesystem::path& path,
                     const std::optional<std::filesystem::path>& labels_path = std::nullopt);

}  // namespace wlsim
