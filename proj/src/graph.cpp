#include "twoclubs/graph.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>

#include "twoclubs/parallel.hpp"

namespace twoclubs {

NodeSet make_node_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

void Graph::check(NodeId v) const {
  if (v >= ids_.size()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range (n=" +
                            std::to_string(ids_.size()) + ")");
  }
}

const NodeSet& Graph::neighbors(NodeId v) const {
  check(v);
  return adj_[v];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check(u);
  check(v);
  const auto& nu = adj_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::uint32_t Graph::multiplicity(NodeId u, NodeId v) const {
  check(u);
  check(v);
  auto it = multiplicity_.find(edge_key(u, v));
  return it == multiplicity_.end() ? 0 : it->second;
}

const std::string& Graph::id(NodeId v) const {
  check(v);
  return ids_[v];
}

const NodeAttributes& Graph::attributes(NodeId v) const {
  check(v);
  return attrs_[v];
}

std::optional<NodeId> Graph::find(std::string_view external_id) const {
  auto it = index_.find(std::string(external_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Graph::at(std::string_view external_id) const {
  if (auto v = find(external_id)) return *v;
  throw std::out_of_range("unknown node id '" + std::string(external_id) + "'");
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adj_.size(); ++u) {
    for (NodeId v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::with_edges(const std::vector<Edge>& kept) const {
  Graph out;
  out.ids_ = ids_;
  out.attrs_ = attrs_;
  out.index_ = index_;
  out.adj_.assign(ids_.size(), {});
  for (auto [u, v] : kept) {
    if (!has_edge(u, v)) throw std::invalid_argument("with_edges: edge not in graph");
    out.adj_[u].push_back(v);
    out.adj_[v].push_back(u);
    out.multiplicity_[edge_key(u, v)] = multiplicity(u, v);
  }
  for (auto& nbrs : out.adj_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  for (const auto& nbrs : out.adj_) out.edge_count_ += nbrs.size();
  out.edge_count_ /= 2;
  return out;
}

std::size_t GraphBuilder::slot(const std::string& id) {
  if (id.empty()) throw std::invalid_argument("empty node id");
  auto [it, inserted] = slots_.try_emplace(id, ids_.size());
  if (inserted) {
    ids_.push_back(id);
    attrs_.emplace_back();
  }
  return it->second;
}

void GraphBuilder::add_node(const std::string& id) { slot(id); }

void GraphBuilder::add_node(const std::string& id, NodeAttributes attributes) {
  attrs_[slot(id)] = std::move(attributes);
}

void GraphBuilder::add_edge(const std::string& a, const std::string& b, std::uint32_t count) {
  if (a == b) throw std::invalid_argument("self-loop on '" + a + "'");
  const auto sa = static_cast<NodeId>(slot(a));
  const auto sb = static_cast<NodeId>(slot(b));
  edges_[Graph::edge_key(sa, sb)] += count;
}

Graph GraphBuilder::build() && {
  const std::size_t n = ids_.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ids_[x] < ids_[y]; });
  std::vector<NodeId> dense(n);
  for (std::size_t i = 0; i < n; ++i) dense[order[i]] = static_cast<NodeId>(i);

  Graph g;
  g.ids_.resize(n);
  g.attrs_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    g.ids_[dense[s]] = std::move(ids_[s]);
    g.attrs_[dense[s]] = std::move(attrs_[s]);
  }
  for (NodeId v = 0; v < n; ++v) g.index_.emplace(g.ids_[v], v);

  g.adj_.assign(n, {});
  for (auto [key, count] : edges_) {
    const NodeId u = dense[key >> 32];
    const NodeId v = dense[key & 0xffffffffu];
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
    g.multiplicity_[Graph::edge_key(u, v)] = count;
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  g.edge_count_ = edges_.size();

  slots_.clear();
  ids_.clear();
  attrs_.clear();
  edges_.clear();
  return g;
}

NodeSet neighbors(const Graph& g, NodeId v) { return g.neighbors(v); }

NodeSet ego_network(const Graph& g, NodeId v) {
  NodeSet out = g.neighbors(v);
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}

Graph induced(const Graph& g, const NodeSet& nodes) {
  GraphBuilder b;
  std::vector<char> inside(g.node_count(), 0);
  for (NodeId v : nodes) {
    b.add_node(g.id(v), g.attributes(v));
    inside[v] = 1;
  }
  for (NodeId u : nodes) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v && inside[v]) b.add_edge(g.id(u), g.id(v), g.multiplicity(u, v));
    }
  }
  return std::move(b).build();
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  g.neighbors(source);  // validates
  std::vector<std::uint32_t> dist(g.node_count(), kInfiniteDistance);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    for (NodeId v : g.adjacency()[u]) {
      if (dist[v] == kInfiniteDistance) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

std::uint32_t diameter(const Graph& g, unsigned threads) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("diameter of an empty graph");
  std::atomic<std::uint32_t> best{0};
  parallel_for(n, threads, [&](std::size_t s, unsigned) {
    const auto dist = bfs_distances(g, static_cast<NodeId>(s));
    const std::uint32_t far = *std::max_element(dist.begin(), dist.end());
    std::uint32_t seen = best.load();
    while (far > seen && !best.compare_exchange_weak(seen, far)) {
    }
  });
  return best.load();
}

ComponentPartition connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<char> seen(n, 0);
  ComponentPartition out;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    NodeSet comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId v : g.adjacency()[comp[head]]) {
        if (!seen[v]) {
          seen[v] = 1;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.sets.push_back(std::move(comp));
  }
  std::stable_sort(out.sets.begin(), out.sets.end(), [](const NodeSet& a, const NodeSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

}  // namespace twoclubs
