#include "twoclubs/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "twoclubs/borough.hpp"
#include "twoclubs/classify.hpp"
#include "twoclubs/club_enum.hpp"
#include "twoclubs/club_store.hpp"
#include "twoclubs/csv.hpp"
#include "twoclubs/export.hpp"
#include "twoclubs/ingest.hpp"
#include "twoclubs/pivot.hpp"

namespace twoclubs::cli {
namespace {

namespace fs = std::filesystem;

/// Raised for analytic failures that only matter under --strict.
struct StrictFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string edges;
  std::string nodes;
  std::string graphml;
  bool strict = false;
};

struct AnalyzeOptions {
  InputOptions input;
  std::string out_dir = ".";
  std::size_t min_size = 4;
  std::string universe = "borough";
  unsigned threads = 0;
  std::uint64_t node_budget = 0;
  std::uint64_t time_budget_ms = 0;
  bool no_vertex_restriction = false;
};

struct PivotOptions {
  InputOptions input;
  std::string clubs;
  std::vector<std::string> regions;
  std::string region_field = "country";
  std::uint32_t borough = 1;
  std::string policy = "stop";
  std::string out_dir = ".";
};

struct ExportOptions {
  InputOptions input;
  std::string clubs;
  std::string club_id;
  std::string region;
  std::string region_field = "country";
  std::uint32_t borough = 1;
  std::string policy = "stop";
  std::string format = "dot";
  std::string out_file;
};

void add_input(CLI::App* cmd, InputOptions& in, bool allow_graphml) {
  auto* e = cmd->add_option("--edges", in.edges, "edges.csv: source,target[,weight]");
  cmd->add_option("--nodes", in.nodes, "nodes.csv: id,name,country,sector[,rank]");
  cmd->add_flag("--strict", in.strict, "reject attribute rows for unknown nodes; fail on analytic errors");
  if (allow_graphml) {
    auto* gml = cmd->add_option("--graphml", in.graphml, "read a GraphML club export instead of CSV");
    e->excludes(gml);
  } else {
    e->required();
  }
}

LoadedGraph load_input(const InputOptions& in) {
  if (!in.graphml.empty()) {
    std::ifstream f(in.graphml, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + in.graphml);
    return read_graphml(f);
  }
  if (in.edges.empty()) throw CLI::RequiredError("--edges");
  std::optional<fs::path> nodes;
  if (!in.nodes.empty()) nodes = in.nodes;
  return load_graph_files(in.edges, nodes, LoadOptions{in.strict});
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string distance_text(std::uint32_t d) { return d == kInfiniteDistance ? "inf" : std::to_string(d); }

std::vector<std::string> external(const Graph& g, const NodeSet& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (NodeId v : s) out.push_back(g.id(v));
  return out;
}

RegionField parse_region_field(const std::string& s) {
  if (s == "country") return RegionField::Country;
  if (s == "sector") return RegionField::Sector;
  throw CLI::ValidationError("--region-field", "must be country or sector");
}

int cmd_ingest(const InputOptions& in, std::ostream& out, std::ostream& err) {
  const auto loaded = load_input(in);
  const Graph& g = loaded.graph;
  out << "nodes: " << g.node_count() << "\n";
  out << "edges: " << g.edge_count() << "\n";
  if (loaded.report.self_loops) out << "self-loops dropped: " << loaded.report.self_loops << "\n";
  if (loaded.report.zero_weight) out << "zero-weight rows dropped: " << loaded.report.zero_weight << "\n";
  if (loaded.report.duplicates) out << "duplicate rows collapsed: " << loaded.report.duplicates << "\n";
  if (loaded.report.attribute_only_nodes) {
    out << "isolated attribute-only nodes: " << loaded.report.attribute_only_nodes << "\n";
  }
  if (g.edge_count() == 0) err << "warning: the graph has no edges\n";

  const auto parts = connected_components(g);
  out << "components: " << parts.sets.size();
  if (!parts.sets.empty()) {
    out << " (sizes";
    for (std::size_t i = 0; i < parts.sets.size() && i < 10; ++i) out << ' ' << parts.sets[i].size();
    if (parts.sets.size() > 10) out << " ...";
    out << ")";
  }
  out << "\n";
  if (!parts.sets.empty()) {
    const Graph dominant = induced(g, parts.sets.front());
    out << "dominant component: " << dominant.node_count() << " nodes, diameter "
        << distance_text(diameter(dominant)) << "\n";
  }
  return kOk;
}

void print_stats(std::ostream& out, const TypeStats& s) {
  out << "  " << std::left << std::setw(15) << "type" << std::setw(8) << "count" << std::setw(12) << "coverage%"
      << "median\n";
  auto row = [&](const char* name, const TypeSummary& t) {
    std::ostringstream med;
    if (t.median_size) {
      med << *t.median_size;
    } else {
      med << "NA";
    }
    out << "  " << std::left << std::setw(15) << name << std::setw(8) << t.count << std::setw(12)
        << percent_text(t.covered_nodes, s.borough_size) << med.str() << "\n";
  };
  row("coterie", s.coterie);
  row("social_circle", s.social_circle);
  row("hamlet", s.hamlet);
  row("total", s.total);
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out, std::ostream& err) {
  const auto loaded = load_input(opt.input);
  const Graph& g = loaded.graph;

  EnumConfig cfg;
  cfg.min_size = opt.min_size;
  if (opt.universe == "borough") {
    cfg.universe = Universe::Borough;
  } else if (opt.universe == "global") {
    cfg.universe = Universe::Global;
  } else {
    throw CLI::ValidationError("--universe", "must be borough or global");
  }
  if (opt.node_budget) cfg.node_budget = opt.node_budget;
  if (opt.time_budget_ms) cfg.time_budget = std::chrono::milliseconds(opt.time_budget_ms);
  cfg.per_vertex_restriction = !opt.no_vertex_restriction;
  cfg.threads = opt.threads;
  cfg.validate();

  const auto bs = boroughs(g, opt.threads);
  const fs::path dir = opt.out_dir;
  fs::create_directories(dir);

  {
    auto f = open_out(dir / "boroughs.csv");
    csv::write_row(f, {"borough_id", "size", "diameter", "node_ids"});
    for (const auto& b : bs) {
      const auto d = diameter(borough_graph(g, b), opt.threads);
      csv::write_row(f, {std::to_string(b.id), std::to_string(b.size()), distance_text(d),
                         csv::join(external(g, b.nodes), ';')});
    }
  }

  ClubStore store;
  std::optional<double> partial;
  std::size_t finished_boroughs = 0;
  for (const auto& b : bs) {
    std::vector<TwoClub> clubs;
    try {
      clubs = enumerate_max_2clubs(g, b, cfg);
    } catch (const BudgetExceeded& e) {
      clubs = e.partial();
      partial = (static_cast<double>(finished_boroughs) + e.completed_fraction()) / static_cast<double>(bs.size());
    }
    for (const auto& c : clubs) store.insert(make_record(g, classify(g, c)));
    if (partial) break;
    ++finished_boroughs;
  }

  std::ostringstream note;
  note << "min_size=" << cfg.min_size << " universe=" << opt.universe;
  if (partial) note << " partial=1 completed=" << std::fixed << std::setprecision(3) << *partial;
  store.persist(dir / "clubs.jsonl", note.str());

  {
    auto f = open_out(dir / "stats.csv");
    if (bs.empty()) {
      csv::write_row(f, {"type", "count", "node_coverage_pct", "median_size"});
    } else {
      write_stats_csv(f, stats(store, bs.front().id, bs.front().size()));
    }
  }

  out << "nodes " << g.node_count() << ", edges " << g.edge_count() << ", boroughs " << bs.size() << ", clubs "
      << store.size() << " (size >= " << cfg.min_size << ")\n";
  for (const auto& b : bs) {
    out << "borough " << b.id << ": " << b.size() << " nodes, diameter "
        << distance_text(diameter(borough_graph(g, b), opt.threads)) << "\n";
    if (store.count_in_borough(b.id) > 0) print_stats(out, stats(store, b.id, b.size()));
  }
  if (partial) {
    err << "error: enumeration budget exceeded; artifacts are partial (completed " << std::fixed
        << std::setprecision(3) << *partial << ")\n";
    return kBudget;
  }
  return kOk;
}

ClubStore load_store(const std::string& path, const Graph& g) {
  ClubStore store = ClubStore::load(fs::path(path));
  store.set_node_universe(g.ids());
  return store;
}

int cmd_pivot(const PivotOptions& opt, std::ostream& out, std::ostream& err) {
  const auto loaded = load_input(opt.input);
  const Graph& g = loaded.graph;
  const ClubStore store = load_store(opt.clubs, g);
  const auto policy = parse_pivot_policy(opt.policy);
  const auto field = parse_region_field(opt.region_field);

  const fs::path dir = opt.out_dir;
  fs::create_directories(dir);
  auto f = open_out(dir / "pivots.csv");
  write_pivots_csv_header(f);

  std::vector<PivotReport> reports;
  bool failed = false;
  for (const auto& region : opt.regions) {
    try {
      const auto ranking = coterie_ranking(store, g, region, field);
      auto rep = select_pivot(store, opt.borough, region, ranking, policy);
      write_pivot_row(f, rep);
      out << region << ": " << to_string(rep.pivot.type) << " of size " << rep.pivot.size() << ", scope "
          << rep.scope.count << " (" << rep.scope.pct_text << "%), rule " << to_string(rep.rule) << "\n";
      for (const auto& step : rep.decision_trace) out << "  " << step << "\n";
      reports.push_back(std::move(rep));
    } catch (const NoClubsError&) {
      write_pivot_error_row(f, region, "no_clubs");
      err << "warning: region " << region << " has no clubs in borough " << opt.borough << "\n";
      failed = true;
    } catch (const std::invalid_argument& e) {
      write_pivot_error_row(f, region, "unknown_region");
      err << "warning: " << e.what() << "\n";
      failed = true;
    }
  }

  if (reports.size() >= 2) {
    const auto m = interlock_matrix(reports);
    auto fi = open_out(dir / "interlocks.csv");
    write_interlocks_csv(fi, m);
    out << "interlocks:\n";
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
      out << "  " << m.labels[i] << ":";
      for (const auto& [other, n] : m.links(i)) out << ' ' << other << " (" << n << ")";
      out << "\n";
    }
  }
  if (failed && opt.input.strict) return kStrict;
  return kOk;
}

int cmd_interlocks(const std::string& pivots_path, const std::string& out_path, std::ostream& out) {
  std::ifstream in(pivots_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + pivots_path);
  const auto m = interlock_matrix(read_pivots_csv(in));
  auto f = open_out(out_path);
  write_interlocks_csv(f, m);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i] << ":";
    for (const auto& [other, n] : m.links(i)) out << ' ' << other << " (" << n << ")";
    out << "\n";
  }
  return kOk;
}

int cmd_stats(const InputOptions& in, const std::string& clubs, std::uint32_t borough_id, std::ostream& out) {
  const auto loaded = load_input(in);
  const ClubStore store = load_store(clubs, loaded.graph);
  const auto bs = boroughs(loaded.graph);
  auto it = std::find_if(bs.begin(), bs.end(), [&](const Borough& b) { return b.id == borough_id; });
  if (it == bs.end()) throw std::invalid_argument("no borough " + std::to_string(borough_id));
  write_stats_csv(out, stats(store, borough_id, it->size()));
  return kOk;
}

int cmd_export(const ExportOptions& opt, std::ostream& out) {
  const auto loaded = load_input(opt.input);
  const Graph& g = loaded.graph;
  const ClubStore store = load_store(opt.clubs, g);
  const auto format = parse_export_format(opt.format);

  ClubRecord club;
  if (!opt.club_id.empty()) {
    club = store.at(opt.club_id);
  } else if (!opt.region.empty()) {
    const auto ranking = coterie_ranking(store, g, opt.region, parse_region_field(opt.region_field));
    club = select_pivot(store, opt.borough, opt.region, ranking, parse_pivot_policy(opt.policy)).pivot;
  } else {
    throw CLI::ValidationError("export", "give --club-id or --region");
  }

  if (opt.out_file.empty() || opt.out_file == "-") {
    export_club(out, g, club, format);
  } else {
    auto f = open_out(opt.out_file);
    export_club(f, g, club, format);
    out << "wrote " << opt.out_file << " (" << club.size() << " nodes, " << to_string(club.type) << ")\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boroughs and maximal 2-clubs of a network: enumeration, classification, regional pivots"};
  app.require_subcommand(1);

  InputOptions ingest_in;
  auto* ingest = app.add_subcommand("ingest", "load a graph and print a summary");
  add_input(ingest, ingest_in, /*allow_graphml=*/true);

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "boroughs, clubs and type statistics");
  add_input(analyze, an.input, false);
  analyze->add_option("--out", an.out_dir, "output directory")->capture_default_str();
  analyze->add_option("--min-size", an.min_size, "smallest club reported")->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  analyze->add_option("--universe", an.universe, "maximality universe: borough|global")
      ->capture_default_str()->check(CLI::IsMember({"borough", "global"}));
  analyze->add_option("--threads", an.threads, "worker threads, 0 = all")->capture_default_str();
  analyze->add_option("--node-budget", an.node_budget, "search node budget, 0 = unlimited");
  analyze->add_option("--time-budget-ms", an.time_budget_ms, "time budget per borough, 0 = unlimited");
  analyze->add_flag("--no-vertex-restriction", an.no_vertex_restriction,
                    "search the whole borough instead of per-vertex 2-neighborhoods");

  PivotOptions pv;
  auto* pivot = app.add_subcommand("pivot", "regional pivots and their interlocks");
  add_input(pivot, pv.input, false);
  pivot->add_option("--clubs", pv.clubs, "clubs.jsonl from analyze")->required();
  pivot->add_option("--regions", pv.regions, "region labels, comma separated")->required()->delimiter(',');
  pivot->add_option("--region-field", pv.region_field, "country|sector")->capture_default_str();
  pivot->add_option("--borough", pv.borough, "borough id")->capture_default_str();
  pivot->add_option("--pivot-policy", pv.policy, "stop|skip")->capture_default_str()
      ->check(CLI::IsMember({"stop", "skip"}));
  pivot->add_option("--out", pv.out_dir, "output directory")->capture_default_str();

  std::string pivots_path, interlocks_out = "interlocks.csv";
  auto* interlocks = app.add_subcommand("interlocks", "interlock matrix from a pivots.csv");
  interlocks->add_option("--pivots", pivots_path, "pivots.csv")->required();
  interlocks->add_option("--out", interlocks_out, "output file")->capture_default_str();

  InputOptions stats_in;
  std::string stats_clubs;
  std::uint32_t stats_borough = 1;
  auto* stats_cmd = app.add_subcommand("stats", "type statistics of one borough as CSV");
  add_input(stats_cmd, stats_in, false);
  stats_cmd->add_option("--clubs", stats_clubs, "clubs.jsonl")->required();
  stats_cmd->add_option("--borough", stats_borough, "borough id")->capture_default_str();

  ExportOptions ex;
  auto* exp = app.add_subcommand("export", "write one club as DOT or GraphML");
  add_input(exp, ex.input, false);
  exp->add_option("--clubs", ex.clubs, "clubs.jsonl")->required();
  auto* by_id = exp->add_option("--club-id", ex.club_id, "club to export");
  auto* by_region = exp->add_option("--region", ex.region, "export this region's pivot");
  by_id->excludes(by_region);
  exp->add_option("--region-field", ex.region_field, "country|sector")->capture_default_str();
  exp->add_option("--borough", ex.borough, "borough id")->capture_default_str();
  exp->add_option("--pivot-policy", ex.policy, "stop|skip")->capture_default_str();
  exp->add_option("--format", ex.format, "dot|graphml")->capture_default_str()
      ->check(CLI::IsMember({"dot", "graphml"}));
  exp->add_option("--out", ex.out_file, "output file, - for stdout");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(ingest_in, out, err);
    if (analyze->parsed()) return cmd_analyze(an, out, err);
    if (pivot->parsed()) return cmd_pivot(pv, out, err);
    if (interlocks->parsed()) return cmd_interlocks(pivots_path, interlocks_out, out);
    if (stats_cmd->parsed()) return cmd_stats(stats_in, stats_clubs, stats_borough, out);
    if (exp->parsed()) return cmd_export(ex, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace twoclubs::cli
