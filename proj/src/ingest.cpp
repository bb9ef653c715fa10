#include "twoclubs/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include "twoclubs/csv.hpp"

namespace twoclubs {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::map<std::string, std::size_t> header_columns(const csv::Row& header) {
  std::map<std::string, std::size_t> cols;
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    std::string name = trim(header.fields[i]);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (!cols.emplace(name, i).second) throw ParseError(header.line, "duplicate column '" + name + "'");
  }
  return cols;
}

std::optional<std::size_t> column(const std::map<std::string, std::size_t>& cols, const std::string& name) {
  auto it = cols.find(name);
  if (it == cols.end()) return std::nullopt;
  return it->second;
}

double parse_weight(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double w = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), w);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(w)) {
    throw ParseError(line, "invalid weight '" + text + "'");
  }
  return w;
}

std::uint32_t parse_rank(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  std::uint32_t r = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), r);
  if (ec != std::errc{} || ptr != t.data() + t.size() || r == 0) {
    throw ParseError(line, "rank must be a positive integer, got '" + text + "'");
  }
  return r;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

LoadedGraph load_graph(std::span<const EdgeRecord> edges, std::span<const NodeRecord> nodes,
                       LoadOptions options) {
  LoadedGraph out;
  LoadReport& report = out.report;
  GraphBuilder builder;

  for (const auto& e : edges) {
    ++report.edge_rows;
    if (e.source.empty() || e.target.empty()) throw ParseError(e.line, "empty node id");
    if (e.weight && (*e.weight < 0 || std::isnan(*e.weight))) {
      throw ParseError(e.line, "negative weight");
    }
    builder.add_node(e.source);
    builder.add_node(e.target);
    if (e.source == e.target) {
      ++report.self_loops;
      continue;
    }
    if (e.weight && *e.weight == 0) {
      ++report.zero_weight;
      continue;
    }
    builder.add_edge(e.source, e.target);
  }

  for (const auto& n : nodes) {
    if (n.id.empty()) throw ParseError(n.line, "empty node id");
    if (!builder.contains(n.id)) {
      if (options.strict) throw ParseError(n.line, "attribute row for unknown node '" + n.id + "'");
      ++report.attribute_only_nodes;
    }
    builder.add_node(n.id, n.attributes);
  }

  out.graph = std::move(builder).build();
  const std::size_t kept = report.edge_rows - report.self_loops - report.zero_weight;
  report.duplicates = kept - out.graph.edge_count();
  return out;
}

std::vector<EdgeRecord> read_edges_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<EdgeRecord> out;
  auto header = reader.next();
  if (!header) return out;
  const auto cols = header_columns(*header);
  const auto src = column(cols, "source");
  const auto dst = column(cols, "target");
  const auto wcol = column(cols, "weight");
  if (!src || !dst) throw ParseError(header->line, "edges header must contain source,target");

  while (auto row = reader.next()) {
    if (row->fields.size() != header->fields.size()) {
      throw ParseError(row->line, "expected " + std::to_string(header->fields.size()) + " fields, got " +
                                      std::to_string(row->fields.size()));
    }
    EdgeRecord e;
    e.line = row->line;
    e.source = trim(row->fields[*src]);
    e.target = trim(row->fields[*dst]);
    if (e.source.empty() || e.target.empty()) throw ParseError(row->line, "empty node id");
    if (wcol && !trim(row->fields[*wcol]).empty()) e.weight = parse_weight(row->fields[*wcol], row->line);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<NodeRecord> read_nodes_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<NodeRecord> out;
  auto header = reader.next();
  if (!header) return out;
  const auto cols = header_columns(*header);
  const auto idc = column(cols, "id");
  if (!idc) throw ParseError(header->line, "nodes header must contain id");
  const auto name = column(cols, "name");
  const auto country = column(cols, "country");
  const auto sector = column(cols, "sector");
  const auto rank = column(cols, "rank");

  while (auto row = reader.next()) {
    if (row->fields.size() != header->fields.size()) {
      throw ParseError(row->line, "expected " + std::to_string(header->fields.size()) + " fields, got " +
                                      std::to_string(row->fields.size()));
    }
    NodeRecord n;
    n.line = row->line;
    n.id = trim(row->fields[*idc]);
    if (n.id.empty()) throw ParseError(row->line, "empty node id");
    if (name) n.attributes.name = trim(row->fields[*name]);
    if (country) n.attributes.country = trim(row->fields[*country]);
    if (sector) n.attributes.sector = trim(row->fields[*sector]);
    if (rank && !trim(row->fields[*rank]).empty()) n.attributes.rank = parse_rank(row->fields[*rank], row->line);
    out.push_back(std::move(n));
  }
  return out;
}

LoadedGraph load_graph_files(const std::filesystem::path& edges,
                             const std::optional<std::filesystem::path>& nodes, LoadOptions options) {
  auto ein = open(edges);
  const auto edge_rows = read_edges_csv(ein);
  std::vector<NodeRecord> node_rows;
  if (nodes) {
    auto nin = open(*nodes);
    node_rows = read_nodes_csv(nin);
  }
  return load_graph(edge_rows, node_rows, options);
}

}  // namespace twoclubs
