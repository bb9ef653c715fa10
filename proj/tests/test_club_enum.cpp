#include <doctest.h>

#include <chrono>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "twoclubs/borough.hpp"
#include "twoclubs/club_enum.hpp"

using namespace twoclubs;

namespace {

using Sets = std::vector<std::vector<std::string>>;

Sets names(const Graph& g, const std::vector<NodeSet>& sets) {
  Sets out;
  for (const auto& s : sets) out.push_back(fixtures::ids(g, s));
  std::sort(out.begin(), out.end());
  return out;
}

Sets names(const Graph& g, const std::vector<TwoClub>& clubs) {
  Sets out;
  for (const auto& c : clubs) out.push_back(fixtures::ids(g, c.nodes));
  std::sort(out.begin(), out.end());
  return out;
}

EnumConfig config(std::size_t min_size, Universe u = Universe::Borough, unsigned threads = 1) {
  EnumConfig c;
  c.min_size = min_size;
  c.universe = u;
  c.threads = threads;
  return c;
}

Sets enumerate_all(const Graph& g, const EnumConfig& cfg) {
  Sets out;
  for (const auto& b : boroughs(g)) {
    auto part = names(g, enumerate_max_2clubs(g, b, cfg));
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("2-club membership examples") {
  const Graph c5 = fixtures::make(fixtures::c5());
  CHECK(is_2club(c5, {0, 1, 2, 3, 4}));
  const Graph p4 = fixtures::make(fixtures::p4());
  CHECK_FALSE(is_2club(p4, {0, 1, 2, 3}));
  const Graph c4 = fixtures::make(fixtures::c4());
  CHECK(is_2club(c4, {0, 1, 2, 3}));
  // Distances are measured inside s: {a, c} in C4 has no common neighbour in s.
  CHECK_FALSE(is_2club(c4, fixtures::nodes(c4, {"a", "c"})));
  CHECK(is_2club(c4, fixtures::nodes(c4, {"a"})));
  CHECK_THROWS_AS(is_2club(c4, {0, 9}), std::out_of_range);
  CHECK_THROWS(is_2club(c4, {}));
}

TEST_CASE("2-club membership agrees with induced diameter") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = fixtures::random_graph(9, 0.35, rng);
    for (unsigned m = 1; m < (1u << 9); m += 7) {
      NodeSet s;
      for (NodeId v = 0; v < 9; ++v)
        if (m >> v & 1) s.push_back(v);
      CHECK(is_2club(g, s) == oracle::is_2club(g, s));
    }
  }
}

TEST_CASE("maximality examples") {
  const Graph c5 = fixtures::make(fixtures::c5());
  CHECK(is_maximal(c5, {0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}));
  const Graph bowtie = fixtures::make(fixtures::bowtie());
  CHECK_FALSE(is_maximal(bowtie, fixtures::nodes(bowtie, {"a", "b", "c"}), {0, 1, 2, 3, 4}));
  const Graph p4 = fixtures::make(fixtures::p4());
  CHECK(is_maximal(p4, fixtures::nodes(p4, {"a", "b", "c"}), {0, 1, 2, 3}));
  CHECK_THROWS_AS(is_maximal(p4, {0, 1, 2, 3}, {0, 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(is_maximal(p4, {0, 1}, {0, 2, 3}), std::invalid_argument);
}

TEST_CASE("maximality needs more than single-node extensions") {
  // The path a-b-c inside C5 cannot grow by any one node, yet C5 contains it.
  const Graph c5 = fixtures::make(fixtures::c5());
  const NodeSet path = fixtures::nodes(c5, {"a", "b", "c"});
  for (NodeId w : fixtures::nodes(c5, {"d", "e"})) {
    NodeSet grown = path;
    grown.push_back(w);
    CHECK_FALSE(is_2club(c5, make_node_set(grown)));
  }
  CHECK_FALSE(is_maximal(c5, path, {0, 1, 2, 3, 4}));
}

TEST_CASE("maximality agrees with exhaustive containment") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = fixtures::random_graph(8, 0.4, rng);
    const auto all = oracle::all_maximal_clubs(g, 1);
    NodeSet universe;
    for (NodeId v = 0; v < 8; ++v) universe.push_back(v);
    for (unsigned m = 1; m < (1u << 8); ++m) {
      NodeSet s;
      for (NodeId v = 0; v < 8; ++v)
        if (m >> v & 1) s.push_back(v);
      if (!oracle::is_2club(g, s)) continue;
      const bool expect = std::find(all.begin(), all.end(), s) != all.end();
      CHECK(is_maximal(g, s, universe) == expect);
    }
  }
}

TEST_CASE("oracle examples") {
  const Graph k3 = fixtures::make(fixtures::k3());
  CHECK(names(k3, oracle_enumerate(k3, config(2))) == Sets{{"a", "b", "c"}});
  const Graph p4 = fixtures::make(fixtures::p4());
  CHECK(names(p4, oracle_enumerate(p4, config(2))) == Sets{{"a", "b", "c"}, {"b", "c", "d"}});
  const Graph c6 = fixtures::make(fixtures::c6());
  CHECK(names(c6, oracle_enumerate(c6, config(2))) == Sets{{"a", "b", "c"}, {"a", "b", "f"}, {"a", "e", "f"},
                                                           {"b", "c", "d"}, {"c", "d", "e"}, {"d", "e", "f"}});
  GraphBuilder big;
  for (int i = 0; i < 21; ++i) big.add_node("n" + std::to_string(i));
  const Graph huge = std::move(big).build();
  CHECK_THROWS_AS(oracle_enumerate(huge, config(2)), std::invalid_argument);
}

TEST_CASE("library oracle matches the independent subset oracle") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = fixtures::random_graph(4 + trial % 9, 0.3 + 0.05 * (trial % 4), rng);
    for (std::size_t k : {2u, 3u, 4u}) CHECK(oracle_enumerate(g, config(k)) == oracle::all_maximal_clubs(g, k));
  }
}

TEST_CASE("enumeration examples") {
  const Graph bowtie = fixtures::make(fixtures::bowtie());
  CHECK(enumerate_all(bowtie, config(4)) == Sets{{"a", "b", "c", "d", "e"}});
  const Graph pet = fixtures::make(fixtures::petersen());
  const auto pc = enumerate_all(pet, config(4));
  REQUIRE(pc.size() == 1);
  CHECK(pc[0].size() == 10);
  CHECK(oracle_enumerate(pet, config(4)).size() == 1);
  const Graph c4 = fixtures::make(fixtures::c4());
  CHECK(enumerate_all(c4, config(4)) == Sets{{"a", "b", "c", "d"}});
  // The triangles of BRIDGE2T are its boroughs; {a,b,c,d} spans the bridge.
  const Graph bridge = fixtures::make(fixtures::bridge2t());
  CHECK(enumerate_all(bridge, config(3)) == Sets{{"a", "b", "c"}, {"d", "e", "f"}});
  CHECK(enumerate_all(bridge, config(3, Universe::Global)).empty());
  CHECK(enumerate_all(bridge, config(4)).empty());
}

TEST_CASE("config validation") {
  EnumConfig c;
  c.min_size = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  const Graph k3 = fixtures::make(fixtures::k3());
  CHECK_THROWS_AS(enumerate_max_2clubs(k3, boroughs(k3).at(0), c), std::invalid_argument);
}

TEST_CASE("small maximal clubs are filtered after maximality") {
  // The triangle is the only club; with min_size 4 nothing remains rather
  // than some larger phantom set.
  const Graph k3 = fixtures::make(fixtures::k3());
  CHECK(enumerate_all(k3, config(4)).empty());
  CHECK(enumerate_all(k3, config(3)) == Sets{{"a", "b", "c"}});
}

TEST_CASE("enumeration matches the oracle inside each borough") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const double p = trial % 3 == 0 ? 0.15 : trial % 3 == 1 ? 0.3 : 0.5;
    const Graph g = fixtures::random_graph(5 + trial % 10, p, rng);
    for (const auto& b : boroughs(g)) {
      for (std::size_t k : {2u, 4u}) {
        const Graph sub = induced(g, b.nodes);
        CHECK(names(g, enumerate_max_2clubs(g, b, config(k))) == names(sub, oracle::all_maximal_clubs(sub, k)));
        Sets global;
        for (const auto& s : oracle::all_maximal_clubs(g, k))
          if (std::includes(b.nodes.begin(), b.nodes.end(), s.begin(), s.end())) global.push_back(fixtures::ids(g, s));
        std::sort(global.begin(), global.end());
        CHECK(names(g, enumerate_max_2clubs(g, b, config(k, Universe::Global))) == global);
      }
    }
  }
}

TEST_CASE("returned clubs satisfy their invariants") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = fixtures::random_graph(16 + trial % 8, 0.22, rng);
    for (const auto& b : boroughs(g)) {
      for (Universe u : {Universe::Borough, Universe::Global}) {
        const auto clubs = enumerate_max_2clubs(g, b, config(2, u));
        const NodeSet universe = maximality_universe(g, b, u);
        const Graph sub = induced(g, b.nodes);
        for (std::size_t i = 0; i < clubs.size(); ++i) {
          const auto& c = clubs[i].nodes;
          CHECK(clubs[i].borough_id == b.id);
          CHECK(std::is_sorted(c.begin(), c.end()));
          CHECK(is_2club(g, c));
          CHECK(oracle::is_2club(g, c));
          CHECK(is_maximal(g, c, universe));
          for (NodeId v : c) {
            const auto d = bfs_distances(g, v);
            for (NodeId w : c) CHECK(d[w] <= 2);
          }
          if (i > 0) CHECK(clubs[i - 1].nodes < c);
          for (std::size_t j = 0; j < clubs.size(); ++j)
            if (i != j) CHECK_FALSE(std::includes(clubs[j].nodes.begin(), clubs[j].nodes.end(), c.begin(), c.end()));
        }
      }
    }
  }
}

TEST_CASE("per-vertex restriction does not change the result") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = fixtures::random_graph(14, 0.3, rng);
    for (const auto& b : boroughs(g)) {
      EnumConfig with = config(2), without = config(2);
      without.per_vertex_restriction = false;
      CHECK(enumerate_max_2clubs(g, b, with) == enumerate_max_2clubs(g, b, without));
    }
  }
}

TEST_CASE("enumeration is deterministic across threads and input order") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = fixtures::random_graph(22, 0.2, rng);
    const Graph h = fixtures::make(fixtures::shuffled(fixtures::edge_list(g), rng), g.ids());
    const auto gb = boroughs(g, 1);
    const auto hb = boroughs(h, 4);
    REQUIRE(gb.size() == hb.size());
    for (std::size_t i = 0; i < gb.size(); ++i)
      CHECK(names(g, enumerate_max_2clubs(g, gb[i], config(3, Universe::Borough, 1))) ==
            names(h, enumerate_max_2clubs(h, hb[i], config(3, Universe::Borough, 4))));
  }
}

TEST_CASE("budgets produce partial results") {
  std::mt19937_64 rng(47);
  const Graph g = fixtures::random_graph(40, 0.25, rng);
  const auto bs = boroughs(g);
  REQUIRE_FALSE(bs.empty());
  EnumConfig cfg = config(2);
  cfg.node_budget = 5;
  try {
    enumerate_max_2clubs(g, bs[0], cfg);
    FAIL("expected the budget to trip");
  } catch (const BudgetExceeded& e) {
    CHECK(e.completed_fraction() >= 0.0);
    CHECK(e.completed_fraction() < 1.0);
    const auto full = enumerate_max_2clubs(g, bs[0], config(2));
    for (const auto& c : e.partial()) CHECK(std::find(full.begin(), full.end(), c) != full.end());
  }
  cfg.node_budget.reset();
  cfg.time_budget = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(enumerate_max_2clubs(g, bs[0], cfg), BudgetExceeded);
}

TEST_CASE("mini-europe clubs match the per-vertex oracle") {
  const Graph g = fixtures::mini_europe().graph;
  const auto bs = boroughs(g);
  REQUIRE(bs.size() == 2);
  const auto clubs = enumerate_max_2clubs(g, bs[0], config(4));
  CHECK(clubs.size() == 11);
  const Graph sub = induced(g, bs[0].nodes);
  NodeSet all;
  for (NodeId v = 0; v < sub.node_count(); ++v) all.push_back(v);
  CHECK(names(g, clubs) == names(sub, oracle::per_vertex_clubs(sub, all, 4)));
  CHECK(enumerate_max_2clubs(g, bs[1], config(4)).empty());
  CHECK(enumerate_max_2clubs(g, bs[1], config(3)).size() == 1);
}
