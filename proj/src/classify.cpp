#include "twoclubs/classify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace twoclubs {
namespace {

void require_club(const Graph& g, const NodeSet& s, const char* who) {
  if (!is_2club(g, s)) throw std::invalid_argument(std::string(who) + ": node set is not a 2-club");
}

// In-club adjacency lists over local indices.
std::vector<NodeSet> local_neighbors(const Graph& g, const NodeSet& s) {
  std::vector<NodeSet> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (i != j && g.has_edge(s[i], s[j])) out[i].push_back(static_cast<NodeId>(j));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(ClubType t) {
  switch (t) {
    case ClubType::Coterie:
      return "coterie";
    case ClubType::SocialCircle:
      return "social_circle";
    case ClubType::Hamlet:
      return "hamlet";
  }
  return "unknown";
}

ClubType parse_club_type(std::string_view text) {
  if (text == "coterie") return ClubType::Coterie;
  if (text == "social_circle") return ClubType::SocialCircle;
  if (text == "hamlet") return ClubType::Hamlet;
  throw std::invalid_argument("unknown club type '" + std::string(text) + "'");
}

NodeId ClassifiedClub::center() const {
  if (central_nodes.empty()) throw std::logic_error("club has no central node");
  return central_nodes.front();
}

NodeSet central_nodes(const Graph& g, const NodeSet& s) {
  const NodeSet club = make_node_set(s);
  require_club(g, club, "central_nodes");
  const auto lnb = local_neighbors(g, club);
  NodeSet out;
  for (std::size_t i = 0; i < club.size(); ++i) {
    if (lnb[i].size() + 1 == club.size()) out.push_back(club[i]);
  }
  return out;
}

std::vector<Edge> central_pairs(const Graph& g, const NodeSet& s) {
  const NodeSet club = make_node_set(s);
  require_club(g, club, "central_pairs");
  const auto lnb = local_neighbors(g, club);
  const std::size_t k = club.size();
  std::vector<Edge> out;
  std::vector<char> covered(k, 0);
  for (std::size_t u = 0; u < k; ++u) {
    for (NodeId v : lnb[u]) {
      if (v <= u) continue;
      std::fill(covered.begin(), covered.end(), 0);
      covered[u] = covered[v] = 1;
      for (NodeId w : lnb[u]) covered[w] = 1;
      for (NodeId w : lnb[v]) covered[w] = 1;
      if (std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; })) {
        out.emplace_back(club[u], club[v]);
      }
    }
  }
  return out;
}

ClassifiedClub classify(const Graph& g, const TwoClub& club) {
  ClassifiedClub out;
  out.club = club;
  out.club.nodes = make_node_set(club.nodes);
  out.central_nodes = central_nodes(g, out.club.nodes);
  out.central_pairs = central_pairs(g, out.club.nodes);
  if (!out.central_nodes.empty()) {
    out.type = ClubType::Coterie;
  } else if (!out.central_pairs.empty()) {
    out.type = ClubType::SocialCircle;
  } else {
    out.type = ClubType::Hamlet;
  }
  return out;
}

}  // namespace twoclubs
