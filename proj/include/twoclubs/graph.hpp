#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace twoclubs {

/// Dense node index, 0..n-1. Dense order equals the lexicographic order of
/// the external ids, so "smallest external id" and "smallest NodeId" agree.
using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

/// Undirected edge stored as (smaller, larger).
using Edge = std::pair<NodeId, NodeId>;

inline constexpr std::uint32_t kInfiniteDistance = std::numeric_limits<std::uint32_t>::max();

struct NodeAttributes {
  std::string name;
  std::string country;
  std::string sector;
  std::optional<std::uint32_t> rank;

  bool operator==(const NodeAttributes&) const = default;
};

/// Sorts and deduplicates.
NodeSet make_node_set(std::vector<NodeId> nodes);

/// Immutable simple undirected graph with a symbol table and node attributes.
///
/// Build one through GraphBuilder (or load_graph). Neighbor lists are sorted,
/// symmetric and free of self-loops; parallel input edges are collapsed and
/// the collapsed count survives only as an annotation (multiplicity()).
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  const NodeSet& neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }
  bool has_edge(NodeId u, NodeId v) const;

  /// Number of input rows collapsed into edge (u, v); 0 if no edge.
  std::uint32_t multiplicity(NodeId u, NodeId v) const;

  const std::string& id(NodeId v) const;
  const NodeAttributes& attributes(NodeId v) const;
  std::optional<NodeId> find(std::string_view external_id) const;
  /// Throws std::out_of_range for unknown ids.
  NodeId at(std::string_view external_id) const;

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<NodeSet>& adjacency() const noexcept { return adj_; }

  /// All edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Same nodes and attributes, edge set replaced by `kept` (a subset of edges()).
  Graph with_edges(const std::vector<Edge>& kept) const;

  bool operator==(const Graph& other) const {
    return ids_ == other.ids_ && adj_ == other.adj_ && attrs_ == other.attrs_;
  }

 private:
  friend class GraphBuilder;

  static std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  void check(NodeId v) const;

  std::vector<std::string> ids_;
  std::vector<NodeAttributes> attrs_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NodeSet> adj_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
  std::size_t edge_count_ = 0;
};

/// Accumulates nodes and edges by external id, then freezes them into a Graph.
class GraphBuilder {
 public:
  /// Registers a node; later calls with attributes overwrite earlier ones.
  void add_node(const std::string& id);
  void add_node(const std::string& id, NodeAttributes attributes);
  /// Adds one interlock row; repeated rows raise the multiplicity. Self-loops
  /// are the caller's business and are rejected here.
  void add_edge(const std::string& a, const std::string& b, std::uint32_t count = 1);

  bool contains(const std::string& id) const { return slots_.count(id) != 0; }

  Graph build() &&;

 private:
  std::size_t slot(const std::string& id);

  std::unordered_map<std::string, std::size_t> slots_;
  std::vector<std::string> ids_;
  std::vector<NodeAttributes> attrs_;
  std::unordered_map<std::uint64_t, std::uint32_t> edges_;
};

struct ComponentPartition {
  /// Ordered by size descending, then by smallest member.
  std::vector<NodeSet> sets;
};

/// Open neighborhood N(v).
NodeSet neighbors(const Graph& g, NodeId v);
/// Closed neighborhood N[v].
NodeSet ego_network(const Graph& g, NodeId v);
/// Subgraph on `nodes` with exactly the edges of g inside it; external ids
/// and attributes carry over.
Graph induced(const Graph& g, const NodeSet& nodes);

/// Hop distances from `source`; unreachable nodes get kInfiniteDistance.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

/// Longest shortest path; kInfiniteDistance when disconnected, 0 for one node.
/// Throws std::invalid_argument on an empty graph.
std::uint32_t diameter(const Graph& g, unsigned threads = 0);

ComponentPartition connected_components(const Graph& g);

}  // namespace twoclubs
