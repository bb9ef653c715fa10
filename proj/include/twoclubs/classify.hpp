#pragma once

#include <string_view>
#include <vector>

#include "twoclubs/club_enum.hpp"
#include "twoclubs/graph.hpp"

namespace twoclubs {

enum class ClubType {
  Coterie,       // has a member adjacent to all others
  SocialCircle,  // no such member, but an edge whose endpoints dominate the club
  Hamlet,        // neither
};

std::string_view to_string(ClubType t);
/// Accepts "coterie", "social_circle", "hamlet". Throws std::invalid_argument.
ClubType parse_club_type(std::string_view text);

struct ClassifiedClub {
  TwoClub club;
  ClubType type = ClubType::Hamlet;
  NodeSet central_nodes;
  std::vector<Edge> central_pairs;  // (u, v) with u < v, sorted

  /// Smallest central node; only meaningful for coteries.
  NodeId center() const;
};

/// Members adjacent to every other member. Requires is_2club(g, s).
NodeSet central_nodes(const Graph& g, const NodeSet& s);
/// Adjacent member pairs {u, v} such that every other member neighbors u or v.
/// Requires is_2club(g, s).
std::vector<Edge> central_pairs(const Graph& g, const NodeSet& s);

ClassifiedClub classify(const Graph& g, const TwoClub& club);

}  // namespace twoclubs
