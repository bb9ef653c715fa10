#include "twoclubs/export.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

namespace twoclubs {
namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string xml_unescape(const std::string& s) {
  static const std::pair<const char*, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto& [name, ch] : kEntities) {
        const std::string_view n(name);
        if (s.compare(i, n.size(), n) == 0) {
          out.push_back(ch);
          i += n.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out.push_back(s[i++]);
  }
  return out;
}

struct ClubView {
  NodeSet members;
  std::set<NodeId> central;
  std::set<Edge> pairs;
};

ClubView view(const Graph& g, const ClubRecord& club) {
  ClubView v;
  for (const auto& id : club.nodes) v.members.push_back(g.at(id));
  v.members = make_node_set(std::move(v.members));
  for (const auto& id : club.central_nodes) v.central.insert(g.at(id));
  for (const auto& [a, b] : club.central_pairs) {
    NodeId x = g.at(a), y = g.at(b);
    if (x > y) std::swap(x, y);
    v.pairs.emplace(x, y);
  }
  return v;
}

std::string label(const Graph& g, NodeId v) {
  const auto& a = g.attributes(v);
  const std::string& name = a.name.empty() ? g.id(v) : a.name;
  return a.country.empty() ? name : name + " (" + a.country + ")";
}

// Attribute value of a tag like <node id="x">.
std::string attribute(const std::string& tag, const std::string& name) {
  const std::string key = name + "=\"";
  std::size_t pos = 0;
  while ((pos = tag.find(key, pos)) != std::string::npos) {
    if (pos == 0 || tag[pos - 1] == ' ' || tag[pos - 1] == '\t' || tag[pos - 1] == '\n') {
      const std::size_t start = pos + key.size();
      const std::size_t end = tag.find('"', start);
      if (end == std::string::npos) break;
      return xml_unescape(tag.substr(start, end - start));
    }
    pos += key.size();
  }
  return {};
}

}  // namespace

ExportFormat parse_export_format(std::string_view text) {
  if (text == "dot") return ExportFormat::Dot;
  if (text == "graphml") return ExportFormat::GraphML;
  throw std::invalid_argument("export format must be dot or graphml, got '" + std::string(text) + "'");
}

void write_dot(std::ostream& out, const Graph& g, const ClubRecord& club) {
  const ClubView v = view(g, club);
  out << "graph " << dot_quote("club_" + club.club_id) << " {\n";
  out << "  graph [club_type=" << dot_quote(std::string(to_string(club.type))) << ", size=" << club.size()
      << "];\n";
  for (NodeId n : v.members) {
    out << "  " << dot_quote(g.id(n)) << " [label=" << dot_quote(label(g, n))
        << ", country=" << dot_quote(g.attributes(n).country);
    if (v.central.count(n)) out << ", central=true, shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t i = 0; i < v.members.size(); ++i) {
    for (std::size_t j = i + 1; j < v.members.size(); ++j) {
      const NodeId a = v.members[i], b = v.members[j];
      if (!g.has_edge(a, b)) continue;
      out << "  " << dot_quote(g.id(a)) << " -- " << dot_quote(g.id(b));
      if (v.pairs.count({a, b})) out << " [central_pair=true, penwidth=2]";
      out << ";\n";
    }
  }
  out << "}\n";
}

void write_graphml(std::ostream& out, const Graph& g, const ClubRecord& club) {
  const ClubView v = view(g, club);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
      << "  <key id=\"country\" for=\"node\" attr.name=\"country\" attr.type=\"string\"/>\n"
      << "  <key id=\"central\" for=\"node\" attr.name=\"central\" attr.type=\"boolean\"/>\n"
      << "  <key id=\"central_pair\" for=\"edge\" attr.name=\"central_pair\" attr.type=\"boolean\"/>\n"
      << "  <graph id=\"" << xml_escape("club_" + club.club_id) << "\" edgedefault=\"undirected\">\n";
  for (NodeId n : v.members) {
    const auto& a = g.attributes(n);
    out << "    <node id=\"" << xml_escape(g.id(n)) << "\">\n"
        << "      <data key=\"name\">" << xml_escape(a.name) << "</data>\n"
        << "      <data key=\"country\">" << xml_escape(a.country) << "</data>\n"
        << "      <data key=\"central\">" << (v.central.count(n) ? "true" : "false") << "</data>\n"
        << "    </node>\n";
  }
  for (std::size_t i = 0; i < v.members.size(); ++i) {
    for (std::size_t j = i + 1; j < v.members.size(); ++j) {
      const NodeId a = v.members[i], b = v.members[j];
      if (!g.has_edge(a, b)) continue;
      out << "    <edge source=\"" << xml_escape(g.id(a)) << "\" target=\"" << xml_escape(g.id(b)) << "\">\n"
          << "      <data key=\"central_pair\">" << (v.pairs.count({a, b}) ? "true" : "false") << "</data>\n"
          << "    </edge>\n";
    }
  }
  out << "  </graph>\n</graphml>\n";
}

void export_club(std::ostream& out, const Graph& g, const ClubRecord& club, ExportFormat format) {
  if (format == ExportFormat::Dot) {
    write_dot(out, g, club);
  } else {
    write_graphml(out, g, club);
  }
}

LoadedGraph read_graphml(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<EdgeRecord> edges;
  std::vector<NodeRecord> nodes;
  NodeRecord* current = nullptr;

  std::size_t line = 1;
  std::size_t scanned = 0;
  auto line_at = [&](std::size_t pos) {
    line += static_cast<std::size_t>(std::count(text.begin() + static_cast<std::ptrdiff_t>(scanned),
                                                text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    scanned = pos;
    return line;
  };

  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    const std::size_t end = text.find('>', pos);
    if (end == std::string::npos) throw ParseError(line_at(pos), "unterminated tag");
    const std::string tag = text.substr(pos + 1, end - pos - 1);
    const std::size_t here = line_at(pos);
    if (tag.rfind("node", 0) == 0 && (tag.size() == 4 || tag[4] == ' ')) {
      NodeRecord n;
      n.id = attribute(tag, "id");
      n.line = here;
      if (n.id.empty()) throw ParseError(here, "node without id");
      nodes.push_back(std::move(n));
      current = tag.back() == '/' ? nullptr : &nodes.back();
    } else if (tag == "/node") {
      current = nullptr;
    } else if (tag.rfind("edge", 0) == 0 && (tag.size() == 4 || tag[4] == ' ')) {
      EdgeRecord e;
      e.source = attribute(tag, "source");
      e.target = attribute(tag, "target");
      e.line = here;
      if (e.source.empty() || e.target.empty()) throw ParseError(here, "edge without endpoints");
      edges.push_back(std::move(e));
    } else if (tag.rfind("data", 0) == 0 && current && tag.back() != '/') {
      const std::string key = attribute(tag, "key");
      const std::size_t close = text.find("</data>", end);
      if (close == std::string::npos) throw ParseError(here, "unterminated data element");
      const std::string value = xml_unescape(text.substr(end + 1, close - end - 1));
      if (key == "name") current->attributes.name = value;
      if (key == "country") current->attributes.country = value;
      pos = close;
      continue;
    }
    pos = end + 1;
  }
  return load_graph(edges, nodes);
}

}  // namespace twoclubs
