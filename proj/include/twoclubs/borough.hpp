#pragma once

#include <cstdint>
#include <vector>

#include "twoclubs/graph.hpp"

namespace twoclubs {

/// A maximal subgraph in which every edge lies on a triangle, square or
/// pentagon. Node ids refer to the graph the borough was computed from.
struct Borough {
  std::uint32_t id = 0;     // 1-based, in size-descending order
  NodeSet nodes;
  std::vector<Edge> edges;  // residual edges among `nodes`

  std::size_t size() const noexcept { return nodes.size(); }
};

/// True iff (u, v) lies on a cycle of length 3, 4 or 5 in g.
/// Throws std::invalid_argument if (u, v) is not an edge.
bool edge_on_short_cycle(const Graph& g, NodeId u, NodeId v);

/// Deletes, round by round, every edge that is on no short cycle of the
/// current residual graph, until nothing changes. Deletion within a round is
/// simultaneous, so the residual does not depend on edge order.
Graph peel(const Graph& g, unsigned threads = 0);

/// Connected components of peel(g) that carry at least one edge, ordered by
/// size descending, ties by smallest external id.
std::vector<Borough> boroughs(const Graph& g, unsigned threads = 0);

/// The borough as a standalone graph (its residual edges only).
Graph borough_graph(const Graph& g, const Borough& b);

}  // namespace twoclubs
