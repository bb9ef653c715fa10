#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twoclubs/errors.hpp"
#include "twoclubs/graph.hpp"

namespace twoclubs {

struct EdgeRecord {
  std::string source;
  std::string target;
  std::optional<double> weight;
  std::size_t line = 0;
};

struct NodeRecord {
  std::string id;
  NodeAttributes attributes;
  std::size_t line = 0;
};

struct LoadOptions {
  /// Attribute rows naming nodes absent from the edge list become errors
  /// instead of isolated nodes.
  bool strict = false;
};

struct LoadReport {
  std::size_t edge_rows = 0;
  std::size_t self_loops = 0;
  std::size_t zero_weight = 0;
  std::size_t duplicates = 0;
  std::size_t attribute_only_nodes = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadReport report;
};

/// Builds a simple graph from interlock rows. Duplicate rows collapse, zero
/// weights are dropped, self-loops are dropped and counted. The result does
/// not depend on row order.
LoadedGraph load_graph(std::span<const EdgeRecord> edges, std::span<const NodeRecord> nodes = {},
                       LoadOptions options = {});

/// `source,target[,weight]` with a header row. An empty stream yields no rows.
std::vector<EdgeRecord> read_edges_csv(std::istream& in);
/// `id,name,country,sector[,rank]` with a header row; only `id` is required.
std::vector<NodeRecord> read_nodes_csv(std::istream& in);

LoadedGraph load_graph_files(const std::filesystem::path& edges,
                             const std::optional<std::filesystem::path>& nodes = std::nullopt,
                             LoadOptions options = {});

}  // namespace twoclubs
