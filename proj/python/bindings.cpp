#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "twoclubs/borough.hpp"
#include "twoclubs/classify.hpp"
#include "twoclubs/club_enum.hpp"
#include "twoclubs/club_store.hpp"
#include "twoclubs/export.hpp"
#include "twoclubs/ingest.hpp"
#include "twoclubs/pivot.hpp"

namespace py = pybind11;
using namespace twoclubs;

namespace {

// Python speaks external ids throughout; dense ids stay on the C++ side.
NodeSet to_dense(const Graph& g, const std::vector<std::string>& ids) {
  NodeSet out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(g.at(id));
  return make_node_set(std::move(out));
}

std::vector<std::string> to_external(const Graph& g, const NodeSet& s) {
  std::vector<std::string> out;
  for (NodeId v : s) out.push_back(g.id(v));
  return out;
}

Universe parse_universe(const std::string& s) {
  if (s == "borough") return Universe::Borough;
  if (s == "global") return Universe::Global;
  throw std::invalid_argument("universe must be 'borough' or 'global'");
}

EnumConfig make_config(std::size_t min_size, const std::string& universe, unsigned threads) {
  EnumConfig cfg;
  cfg.min_size = min_size;
  cfg.universe = parse_universe(universe);
  cfg.threads = threads;
  return cfg;
}

Graph from_python(const std::vector<py::tuple>& edges, const std::vector<py::tuple>& nodes, bool strict) {
  std::vector<EdgeRecord> er;
  std::size_t line = 0;
  for (const auto& t : edges) {
    EdgeRecord e;
    e.line = ++line;
    e.source = t[0].cast<std::string>();
    e.target = t[1].cast<std::string>();
    if (t.size() > 2 && !t[2].is_none()) e.weight = t[2].cast<double>();
    er.push_back(std::move(e));
  }
  std::vector<NodeRecord> nr;
  line = 0;
  for (const auto& t : nodes) {
    NodeRecord n;
    n.line = ++line;
    n.id = t[0].cast<std::string>();
    if (t.size() > 1) n.attributes.name = t[1].cast<std::string>();
    if (t.size() > 2) n.attributes.country = t[2].cast<std::string>();
    if (t.size() > 3) n.attributes.sector = t[3].cast<std::string>();
    if (t.size() > 4 && !t[4].is_none()) n.attributes.rank = t[4].cast<std::uint32_t>();
    nr.push_back(std::move(n));
  }
  return load_graph(er, nr, LoadOptions{strict}).graph;
}

ClubStore analyze(const Graph& g, std::size_t min_size, const std::string& universe, unsigned threads) {
  const auto cfg = make_config(min_size, universe, threads);
  ClubStore store;
  for (const auto& b : boroughs(g, threads)) {
    for (const auto& c : enumerate_max_2clubs(g, b, cfg)) store.insert(make_record(g, classify(g, c)));
  }
  store.set_node_universe(g.ids());
  return store;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boroughs, maximal 2-clubs and regional pivots of interlock networks";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<NoClubsError>(m, "NoClubsError", PyExc_LookupError);

  py::class_<NodeAttributes>(m, "NodeAttributes")
      .def_readonly("name", &NodeAttributes::name)
      .def_readonly("country", &NodeAttributes::country)
      .def_readonly("sector", &NodeAttributes::sector)
      .def_readonly("rank", &NodeAttributes::rank);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("ids", &Graph::ids)
      .def("neighbors", [](const Graph& g, const std::string& id) { return to_external(g, g.neighbors(g.at(id))); })
      .def("ego_network", [](const Graph& g, const std::string& id) { return to_external(g, ego_network(g, g.at(id))); })
      .def("has_edge", [](const Graph& g, const std::string& a, const std::string& b) { return g.has_edge(g.at(a), g.at(b)); })
      .def("attributes", [](const Graph& g, const std::string& id) { return g.attributes(g.at(id)); })
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto [u, v] : g.edges()) out.emplace_back(g.id(u), g.id(v));
        return out;
      })
      .def("induced", [](const Graph& g, const std::vector<std::string>& ids) { return induced(g, to_dense(g, ids)); })
      .def("diameter", [](const Graph& g) -> std::optional<std::uint32_t> {
        const auto d = diameter(g);
        if (d == kInfiniteDistance) return std::nullopt;
        return d;
      }, "Longest shortest path, None when disconnected.");

  m.def("load_graph", &from_python, py::arg("edges"), py::arg("nodes") = std::vector<py::tuple>{},
        py::arg("strict") = false,
        "Build a graph from (source, target[, weight]) tuples and optional "
        "(id, name, country, sector, rank) tuples.");
  m.def("load_graph_files", [](const std::filesystem::path& edges, std::optional<std::filesystem::path> nodes,
                               bool strict) { return load_graph_files(edges, nodes, LoadOptions{strict}).graph; },
        py::arg("edges"), py::arg("nodes") = std::nullopt, py::arg("strict") = false);
  m.def("components", [](const Graph& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : connected_components(g).sets) out.push_back(to_external(g, s));
    return out;
  });

  py::class_<Borough>(m, "Borough")
      .def_readonly("id", &Borough::id)
      .def_property_readonly("size", &Borough::size)
      .def_readonly("_nodes", &Borough::nodes);

  m.def("boroughs", &boroughs, py::arg("graph"), py::arg("threads") = 0);
  m.def("borough_nodes", [](const Graph& g, const Borough& b) { return to_external(g, b.nodes); });
  m.def("edge_on_short_cycle", [](const Graph& g, const std::string& a, const std::string& b) {
    return edge_on_short_cycle(g, g.at(a), g.at(b));
  });

  m.def("is_2club", [](const Graph& g, const std::vector<std::string>& ids) { return is_2club(g, to_dense(g, ids)); });
  m.def("is_maximal", [](const Graph& g, const std::vector<std::string>& ids, const std::vector<std::string>& universe) {
    return is_maximal(g, to_dense(g, ids), to_dense(g, universe));
  });
  m.def("enumerate_clubs",
        [](const Graph& g, const Borough& b, std::size_t min_size, const std::string& universe, unsigned threads) {
          std::vector<std::vector<std::string>> out;
          for (const auto& c : enumerate_max_2clubs(g, b, make_config(min_size, universe, threads))) {
            out.push_back(to_external(g, c.nodes));
          }
          return out;
        },
        py::arg("graph"), py::arg("borough"), py::arg("min_size") = 4, py::arg("universe") = "borough",
        py::arg("threads") = 0);
  m.def("oracle_enumerate", [](const Graph& g, std::size_t min_size) {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : oracle_enumerate(g, make_config(min_size, "borough", 1))) out.push_back(to_external(g, s));
    return out;
  }, py::arg("graph"), py::arg("min_size") = 4);

  m.def("classify", [](const Graph& g, const std::vector<std::string>& ids) {
    const auto c = classify(g, TwoClub{to_dense(g, ids), 0});
    py::dict d;
    d["type"] = std::string(to_string(c.type));
    d["central_nodes"] = to_external(g, c.central_nodes);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto [u, v] : c.central_pairs) pairs.emplace_back(g.id(u), g.id(v));
    d["central_pairs"] = pairs;
    return d;
  });

  py::class_<ClubRecord>(m, "ClubRecord")
      .def_readonly("club_id", &ClubRecord::club_id)
      .def_readonly("borough_id", &ClubRecord::borough_id)
      .def_property_readonly("type", [](const ClubRecord& r) { return std::string(to_string(r.type)); })
      .def_property_readonly("size", &ClubRecord::size)
      .def_readonly("nodes", &ClubRecord::nodes)
      .def_readonly("central_nodes", &ClubRecord::central_nodes)
      .def_readonly("central_pairs", &ClubRecord::central_pairs)
      .def_readonly("countries", &ClubRecord::countries)
      .def("__repr__", [](const ClubRecord& r) {
        return "<ClubRecord " + r.club_id + " " + std::string(to_string(r.type)) + " size=" +
               std::to_string(r.size()) + ">";
      });

  py::class_<ClubStore>(m, "ClubStore")
      .def(py::init<>())
      .def_static("load", py::overload_cast<const std::filesystem::path&>(&ClubStore::load))
      .def("persist", [](const ClubStore& s, const std::filesystem::path& p) { s.persist(p); })
      .def("__len__", &ClubStore::size)
      .def_property_readonly("records", &ClubStore::records)
      .def("set_node_universe", &ClubStore::set_node_universe)
      .def("query",
           [](const ClubStore& s, std::optional<std::vector<std::string>> types, std::optional<std::size_t> min_size,
              std::optional<std::size_t> max_size, std::optional<std::vector<std::string>> contains_all,
              std::optional<std::vector<std::string>> contains_any, std::optional<std::uint32_t> borough_id,
              std::optional<std::string> country_majority) {
             ClubQuery q;
             if (types) {
               q.types.emplace();
               for (const auto& t : *types) q.types->insert(parse_club_type(t));
             }
             q.min_size = min_size;
             q.max_size = max_size;
             q.contains_all = std::move(contains_all);
             q.contains_any = std::move(contains_any);
             q.borough_id = borough_id;
             q.country_majority = std::move(country_majority);
             return s.query(q);
           },
           py::kw_only(), py::arg("types") = py::none(), py::arg("min_size") = py::none(),
           py::arg("max_size") = py::none(), py::arg("contains_all") = py::none(),
           py::arg("contains_any") = py::none(), py::arg("borough_id") = py::none(),
           py::arg("country_majority") = py::none());

  m.def("analyze", &analyze, py::arg("graph"), py::arg("min_size") = 4, py::arg("universe") = "borough",
        py::arg("threads") = 0, "Boroughs, then every borough's maximal 2-clubs, classified and stored.");

  m.def("stats", [](const ClubStore& s, std::uint32_t borough_id, std::size_t borough_size) {
    const auto st = stats(s, borough_id, borough_size);
    py::dict d;
    auto one = [&](const TypeSummary& t) {
      py::dict x;
      x["count"] = t.count;
      x["coverage_pct"] = percent_text(t.covered_nodes, borough_size);
      x["median_size"] = t.median_size;
      return x;
    };
    d["coterie"] = one(st.coterie);
    d["social_circle"] = one(st.social_circle);
    d["hamlet"] = one(st.hamlet);
    d["total"] = one(st.total);
    return d;
  });

  py::class_<ScopeResult>(m, "ScopeResult")
      .def_readonly("count", &ScopeResult::count)
      .def_readonly("total", &ScopeResult::total)
      .def_readonly("pct", &ScopeResult::pct)
      .def_readonly("pct_text", &ScopeResult::pct_text);
  m.def("scope", &scope, py::arg("store"), py::arg("borough_id"), py::arg("target"));
  m.def("percent_text", &percent_text);

  m.def("coterie_ranking", [](const ClubStore& s, const Graph& g, const std::string& region, const std::string& field) {
    return coterie_ranking(s, g, region, field == "sector" ? RegionField::Sector : RegionField::Country);
  }, py::arg("store"), py::arg("graph"), py::arg("region"), py::arg("field") = "country");

  py::class_<PivotReport>(m, "PivotReport")
      .def_readonly("region", &PivotReport::region)
      .def_readonly("seed_sequence", &PivotReport::seed_sequence)
      .def_readonly("skipped", &PivotReport::skipped)
      .def_readonly("common_clubs_final", &PivotReport::common_clubs_final)
      .def_readonly("pivot", &PivotReport::pivot)
      .def_property_readonly("rule", [](const PivotReport& p) { return std::string(to_string(p.rule)); })
      .def_readonly("scope", &PivotReport::scope)
      .def_readonly("composition", &PivotReport::composition)
      .def_readonly("decision_trace", &PivotReport::decision_trace)
      .def_readonly("tie", &PivotReport::tie);
  m.def("select_pivot", [](const ClubStore& s, std::uint32_t borough_id, const std::string& region,
                           const std::vector<std::string>& ranking, const std::string& policy) {
    return select_pivot(s, borough_id, region, ranking, parse_pivot_policy(policy));
  }, py::arg("store"), py::arg("borough_id"), py::arg("region"), py::arg("ranking"), py::arg("policy") = "stop");

  m.def("interlock_matrix", [](const std::vector<PivotReport>& pivots) {
    const auto mat = interlock_matrix(pivots);
    return py::make_tuple(mat.labels, mat.overlap);
  });

  m.def("export_club", [](const Graph& g, const ClubRecord& club, const std::string& format) {
    std::ostringstream out;
    export_club(out, g, club, parse_export_format(format));
    return out.str();
  }, py::arg("graph"), py::arg("club"), py::arg("format") = "dot");
}
