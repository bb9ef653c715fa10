#pragma once

#include <istream>
#include <ostream>
#include <string_view>

#include "twoclubs/club_store.hpp"
#include "twoclubs/graph.hpp"
#include "twoclubs/ingest.hpp"

namespace twoclubs {

enum class ExportFormat { Dot, GraphML };

ExportFormat parse_export_format(std::string_view text);

/// Writes the subgraph induced by the club's members. Nodes carry name and
/// country labels and a `central` flag; central pairs get `central_pair`.
/// Throws std::out_of_range when a member is not in g.
void write_dot(std::ostream& out, const Graph& g, const ClubRecord& club);
void write_graphml(std::ostream& out, const Graph& g, const ClubRecord& club);
void export_club(std::ostream& out, const Graph& g, const ClubRecord& club, ExportFormat format);

/// Reads the GraphML this module writes (node ids, name/country data, edges).
LoadedGraph read_graphml(std::istream& in);

}  // namespace twoclubs
