#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "twoclubs/graph.hpp"

using namespace twoclubs;

TEST_CASE("bridge graph has six nodes and seven edges") {
  const Graph g = fixtures::make(fixtures::bridge2t());
  CHECK(g.node_count() == 6);
  CHECK(g.edge_count() == 7);
  CHECK(g.ids() == std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
}

TEST_CASE("duplicate and reversed rows collapse into one edge") {
  GraphBuilder b;
  b.add_edge("x", "y");
  b.add_edge("y", "x", 2);
  b.add_edge("x", "z");
  const Graph g = std::move(b).build();
  CHECK(g.edge_count() == 2);
  CHECK(g.multiplicity(g.at("x"), g.at("y")) == 3);
  CHECK(g.multiplicity(g.at("y"), g.at("z")) == 0);
}

TEST_CASE("self loops are rejected by the builder") {
  GraphBuilder b;
  CHECK_THROWS_AS(b.add_edge("x", "x"), std::invalid_argument);
}

TEST_CASE("dense ids follow the lexicographic order of external ids") {
  const Graph a = fixtures::make({{"q", "b"}, {"b", "z"}});
  const Graph b = fixtures::make({{"z", "b"}, {"b", "q"}});
  CHECK(a == b);
  CHECK(a.id(0) == "b");
  CHECK(a.at("z") == 2);
}

TEST_CASE("petersen neighbourhoods and ego networks") {
  const Graph g = fixtures::make(fixtures::petersen());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    CHECK(neighbors(g, v).size() == 3);
    CHECK(ego_network(g, v).size() == 4);
    CHECK(ego_network(g, v).front() <= v);
  }
  CHECK(diameter(g) == 2);
  CHECK(diameter(g) == oracle::diameter(g));
}

TEST_CASE("petersen maximum independent set induces no edges") {
  const Graph g = fixtures::make(fixtures::petersen());
  const auto adj = oracle::matrix(g);
  unsigned best = 0;
  for (unsigned m = 1; m < (1u << 10); ++m) {
    bool independent = true;
    for (NodeId a = 0; a < 10; ++a)
      for (NodeId b = a + 1; b < 10; ++b)
        if ((m >> a & 1) && (m >> b & 1) && adj[a][b]) independent = false;
    if (independent && __builtin_popcount(m) > __builtin_popcount(best)) best = m;
  }
  // The independence number of the Petersen graph is 4, not 5.
  REQUIRE(__builtin_popcount(best) == 4);
  NodeSet s;
  for (NodeId v = 0; v < 10; ++v)
    if (best >> v & 1) s.push_back(v);
  const Graph h = induced(g, s);
  CHECK(h.node_count() == 4);
  CHECK(h.edge_count() == 0);
}

TEST_CASE("induced subgraph keeps attributes and external ids") {
  GraphBuilder b;
  b.add_node("a", NodeAttributes{"Alpha", "FR", "Energy", 3});
  b.add_edge("a", "b");
  b.add_edge("b", "c");
  const Graph g = std::move(b).build();
  const Graph h = induced(g, fixtures::nodes(g, {"a", "b"}));
  CHECK(h.edge_count() == 1);
  CHECK(h.attributes(h.at("a")).name == "Alpha");
  CHECK(h.attributes(h.at("a")).rank == 3u);
  CHECK_FALSE(h.find("c").has_value());
}

TEST_CASE("unknown nodes raise") {
  const Graph g = fixtures::make(fixtures::k3());
  CHECK_THROWS_AS(g.neighbors(7), std::out_of_range);
  CHECK_THROWS_AS(g.at("nope"), std::out_of_range);
  CHECK_THROWS_AS(induced(g, {0, 9}), std::out_of_range);
}

TEST_CASE("diameter of named graphs against the oracle") {
  CHECK(diameter(fixtures::make(fixtures::k3())) == 1);
  CHECK(diameter(fixtures::make(fixtures::p4())) == 3);
  CHECK(diameter(fixtures::make(fixtures::c6())) == 3);
  CHECK(diameter(fixtures::make(fixtures::star4())) == 2);
  CHECK(diameter(fixtures::make(fixtures::bridge2t())) == 3);
  CHECK(diameter(fixtures::make({{"a", "b"}, {"c", "d"}})) == kInfiniteDistance);
  CHECK_THROWS(diameter(Graph{}));
}

TEST_CASE("bfs distances agree with floyd-warshall on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = fixtures::random_graph(3 + trial % 10, 0.3, rng);
    const auto ref = oracle::distances(g);
    for (NodeId s = 0; s < g.node_count(); ++s) {
      const auto d = bfs_distances(g, s);
      for (NodeId t = 0; t < g.node_count(); ++t)
        CHECK(d[t] == (ref[s][t] >= oracle::kInf ? kInfiniteDistance : ref[s][t]));
    }
    CHECK(diameter(g, 1) == diameter(g, 3));
  }
}

TEST_CASE("components are ordered by size then smallest member") {
  const Graph g = fixtures::make({{"e", "f"}, {"a", "b"}, {"x", "y"}, {"y", "z"}}, {"m"});
  const auto parts = connected_components(g).sets;
  REQUIRE(parts.size() == 4);
  CHECK(fixtures::ids(g, parts[0]) == std::vector<std::string>{"x", "y", "z"});
  CHECK(fixtures::ids(g, parts[1]) == std::vector<std::string>{"a", "b"});
  CHECK(fixtures::ids(g, parts[2]) == std::vector<std::string>{"e", "f"});
  CHECK(fixtures::ids(g, parts[3]) == std::vector<std::string>{"m"});
}

TEST_CASE("edge row permutation does not change the graph") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = fixtures::random_graph(12, 0.35, rng);
    const Graph h = fixtures::make(fixtures::shuffled(fixtures::edge_list(g), rng), g.ids());
    CHECK(g == h);
  }
}

TEST_CASE("small neighbourhood and induced examples") {
  const Graph star = fixtures::make(fixtures::star4());
  CHECK(fixtures::ids(star, neighbors(star, star.at("h"))) == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(ego_network(star, star.at("h")).size() == 5);
  const Graph c5 = fixtures::make(fixtures::c5());
  CHECK(fixtures::ids(c5, neighbors(c5, c5.at("a"))) == std::vector<std::string>{"b", "e"});
  CHECK(diameter(c5) == 2);
  const Graph p3 = induced(c5, fixtures::nodes(c5, {"a", "b", "c"}));
  CHECK(p3.edge_count() == 2);
  CHECK(diameter(p3) == 2);
  const Graph c4 = fixtures::make(fixtures::c4());
  CHECK(induced(c4, fixtures::nodes(c4, {"a", "c"})).edge_count() == 0);
  const Graph bowtie = fixtures::make(fixtures::bowtie());
  CHECK(ego_network(bowtie, bowtie.at("c")).size() == 5);
  const Graph k3 = fixtures::make(fixtures::k3());
  for (NodeId v = 0; v < 3; ++v) CHECK(ego_network(k3, v).size() == 3);
  CHECK(diameter(fixtures::make({}, {"solo"})) == 0);
}

TEST_CASE("component examples") {
  CHECK(connected_components(fixtures::make(fixtures::bridge2t())).sets.size() == 1);
  const auto two = connected_components(fixtures::make({{"a", "b"}, {"b", "c"}, {"a", "c"},
                                                        {"d", "e"}, {"e", "f"}, {"d", "f"}}));
  REQUIRE(two.sets.size() == 2);
  CHECK(two.sets[0].size() == 3);
  CHECK(two.sets[1].size() == 3);
  CHECK(connected_components(fixtures::make({}, {"a", "b", "c", "d"})).sets.size() == 4);
}

TEST_CASE("graph invariants on random graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = fixtures::random_graph(4 + trial % 12, 0.25, rng);
    NodeSet all;
    for (NodeId v = 0; v < g.node_count(); ++v) all.push_back(v);
    const Graph same = induced(g, all);
    CHECK(same.edges() == g.edges());
    for (NodeId v = 0; v < g.node_count(); ++v) {
      NodeSet expect = neighbors(g, v);
      expect.push_back(v);
      CHECK(ego_network(g, v) == make_node_set(expect));
      if (g.degree(v) > 0) CHECK(diameter(induced(g, ego_network(g, v))) <= 2);
    }
    std::vector<int> owner(g.node_count(), -1);
    const auto parts = connected_components(g).sets;
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (NodeId v : parts[i]) {
        CHECK(owner[v] == -1);
        owner[v] = static_cast<int>(i);
      }
    for (const auto& [u, v] : g.edges()) CHECK(owner[u] == owner[v]);
    CHECK(std::count(owner.begin(), owner.end(), -1) == 0);
  }
}
