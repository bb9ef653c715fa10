#include "twoclubs/borough.hpp"

#include <algorithm>
#include <stdexcept>

#include "twoclubs/parallel.hpp"

namespace twoclubs {
namespace {

bool adjacent(const std::vector<NodeSet>& adj, NodeId a, NodeId b) {
  const auto& na = adj[a];
  return std::binary_search(na.begin(), na.end(), b);
}

constexpr NodeId kNone = static_cast<NodeId>(-1);

/// Per-worker marks for the length-4 test. `first[c]` is the first neighbor
/// a of u seen next to c; `many[c]` is set once a second one shows up.
struct Scratch {
  std::vector<NodeId> first;
  std::vector<char> many;
  std::vector<NodeId> touched;

  explicit Scratch(std::size_t n) : first(n, kNone), many(n, 0) {}

  void reset() {
    for (NodeId c : touched) {
      first[c] = kNone;
      many[c] = 0;
    }
    touched.clear();
  }
};

// Looks for a simple u-v path of length 2, 3 or 4 that avoids the edge u-v.
bool on_short_cycle(const std::vector<NodeSet>& adj, NodeId u, NodeId v, Scratch& s) {
  bool found = false;
  for (NodeId a : adj[u]) {
    if (a == v) continue;
    if (adjacent(adj, a, v)) {  // u-a-v
      found = true;
      break;
    }
    for (NodeId c : adj[a]) {
      if (c == u || c == v) continue;
      if (adjacent(adj, c, v)) {  // u-a-c-v
        found = true;
        break;
      }
      if (s.first[c] == kNone) {
        s.first[c] = a;
        s.touched.push_back(c);
      } else if (s.first[c] != a) {
        s.many[c] = 1;
      }
    }
    if (found) break;
  }
  if (!found) {
    // u-a-c-b-v with a != b; c is already known to avoid u and v.
    for (NodeId b : adj[v]) {
      if (b == u) continue;
      for (NodeId c : adj[b]) {
        if (c == u || c == v || s.first[c] == kNone) continue;
        if (s.many[c] || s.first[c] != b) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  s.reset();
  return found;
}

}  // namespace

bool edge_on_short_cycle(const Graph& g, NodeId u, NodeId v) {
  if (!g.has_edge(u, v)) {
    throw std::invalid_argument("edge_on_short_cycle: (" + g.id(u) + ", " + g.id(v) + ") is not an edge");
  }
  Scratch s(g.node_count());
  return on_short_cycle(g.adjacency(), u, v, s);
}

Graph peel(const Graph& g, unsigned threads) {
  const unsigned workers = resolve_threads(threads);
  std::vector<NodeSet> adj = g.adjacency();
  std::vector<Edge> live = g.edges();
  std::vector<Scratch> scratch;
  scratch.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) scratch.emplace_back(g.node_count());

  for (;;) {
    std::vector<char> keep(live.size(), 0);
    parallel_for(live.size(), workers, [&](std::size_t i, unsigned w) {
      keep[i] = on_short_cycle(adj, live[i].first, live[i].second, scratch[w]) ? 1 : 0;
    });
    if (std::all_of(keep.begin(), keep.end(), [](char k) { return k != 0; })) break;

    std::vector<Edge> next;
    next.reserve(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (keep[i]) next.push_back(live[i]);
    }
    live = std::move(next);
    for (auto& nbrs : adj) nbrs.clear();
    for (auto [a, b] : live) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  }
  return g.with_edges(live);
}

std::vector<Borough> boroughs(const Graph& g, unsigned threads) {
  const Graph residual = peel(g, threads);
  const auto parts = connected_components(residual);

  std::vector<Borough> out;
  for (const auto& comp : parts.sets) {
    if (comp.size() < 2) continue;
    Borough b;
    b.nodes = comp;
    for (NodeId u : comp) {
      for (NodeId v : residual.neighbors(u)) {
        if (u < v) b.edges.emplace_back(u, v);
      }
    }
    std::sort(b.edges.begin(), b.edges.end());
    out.push_back(std::move(b));
  }

  // Components of a peeling fixpoint satisfy the short-cycle property on
  // their own; a violation here is a bug in peel.
  Scratch s(g.node_count());
  for (const auto& b : out) {
    if (b.nodes.size() < 3) throw std::logic_error("borough smaller than a triangle");
    for (auto [u, v] : b.edges) {
      if (!on_short_cycle(residual.adjacency(), u, v, s)) {
        throw std::logic_error("borough edge not on a short cycle");
      }
    }
  }

  // connected_components already orders by size, then smallest member.
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<std::uint32_t>(i + 1);
  return out;
}

Graph borough_graph(const Graph& g, const Borough& b) {
  const Graph sub = g.with_edges(b.edges);
  return induced(sub, b.nodes);
}

}  // namespace twoclubs
