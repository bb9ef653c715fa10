#pragma once

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "twoclubs/borough.hpp"
#include "twoclubs/classify.hpp"
#include "twoclubs/club_enum.hpp"
#include "twoclubs/club_store.hpp"
#include "twoclubs/graph.hpp"
#include "twoclubs/ingest.hpp"

namespace fixtures {

using EdgeList = std::vector<std::pair<std::string, std::string>>;

inline twoclubs::Graph make(const EdgeList& edges, const std::vector<std::string>& extra_nodes = {}) {
  twoclubs::GraphBuilder b;
  for (const auto& n : extra_nodes) b.add_node(n);
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

inline EdgeList k3() { return {{"a", "b"}, {"b", "c"}, {"a", "c"}}; }
inline EdgeList p4() { return {{"a", "b"}, {"b", "c"}, {"c", "d"}}; }
inline EdgeList c4() { return {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}; }
inline EdgeList c5() { return {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}}; }
inline EdgeList c6() { return {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"f", "a"}}; }
inline EdgeList star4() { return {{"h", "a"}, {"h", "b"}, {"h", "c"}, {"h", "d"}}; }
inline EdgeList bowtie() { return {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}, {"d", "e"}, {"c", "e"}}; }
// Two triangles joined by the bridge c-d.
inline EdgeList bridge2t() {
  return {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"d", "f"}};
}
// Outer cycle o0..o4, spokes o_i-i_i, inner pentagram i_i-i_{i+2}.
inline EdgeList petersen() {
  EdgeList e;
  for (int i = 0; i < 5; ++i) {
    const std::string o = "o" + std::to_string(i), in = "i" + std::to_string(i);
    e.emplace_back(o, "o" + std::to_string((i + 1) % 5));
    e.emplace_back(o, in);
    e.emplace_back(in, "i" + std::to_string((i + 2) % 5));
  }
  return e;
}

/// G(n, p) over ids "v00".."v{n-1}"; every node is present even when isolated.
inline twoclubs::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  twoclubs::GraphBuilder b;
  auto name = [](std::size_t i) { return std::string("v") + (i < 10 ? "0" : "") + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) b.add_node(name(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) b.add_edge(name(i), name(j));
  return std::move(b).build();
}

/// External-id edge list of g, optionally shuffled and with endpoints flipped.
inline EdgeList edge_list(const twoclubs::Graph& g) {
  EdgeList out;
  for (const auto& [u, v] : g.edges()) out.emplace_back(g.id(u), g.id(v));
  return out;
}

inline EdgeList shuffled(EdgeList e, std::mt19937_64& rng) {
  std::shuffle(e.begin(), e.end(), rng);
  for (auto& [u, v] : e)
    if (rng() & 1) std::swap(u, v);
  return e;
}

inline std::vector<std::string> ids(const twoclubs::Graph& g, const twoclubs::NodeSet& s) {
  std::vector<std::string> out;
  for (auto v : s) out.push_back(g.id(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline twoclubs::NodeSet nodes(const twoclubs::Graph& g, const std::vector<std::string>& names) {
  std::vector<twoclubs::NodeId> out;
  for (const auto& n : names) out.push_back(g.at(n));
  return twoclubs::make_node_set(std::move(out));
}

inline std::filesystem::path data_dir() { return TWOCLUBS_DATA_DIR; }

inline twoclubs::LoadedGraph mini_europe() {
  return twoclubs::load_graph_files(data_dir() / "mini_europe" / "edges.csv",
                                    data_dir() / "mini_europe" / "nodes.csv");
}

/// Every borough's classified clubs, as the analyze pipeline stores them.
inline twoclubs::ClubStore analyze(const twoclubs::Graph& g, std::size_t min_size = 4) {
  twoclubs::EnumConfig cfg;
  cfg.min_size = min_size;
  twoclubs::ClubStore store;
  for (const auto& b : twoclubs::boroughs(g))
    for (const auto& club : twoclubs::enumerate_max_2clubs(g, b, cfg))
      store.insert(twoclubs::make_record(g, twoclubs::classify(g, club)));
  store.set_node_universe(g.ids());
  return store;
}

}  // namespace fixtures
