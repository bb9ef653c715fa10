#include "twoclubs/pivot.hpp"

#include <algorithm>
#include <set>

#include "twoclubs/csv.hpp"
#include "twoclubs/errors.hpp"

namespace twoclubs {
namespace {

const std::string& region_value(const Graph& g, NodeId v, RegionField field) {
  return field == RegionField::Country ? g.attributes(v).country : g.attributes(v).sector;
}

/// Largest by size, ties to the lexicographically smallest node tuple.
const ClubRecord* largest(const std::vector<const ClubRecord*>& clubs, bool& tie) {
  const ClubRecord* best = nullptr;
  tie = false;
  for (const auto* c : clubs) {
    if (!best || c->size() > best->size()) {
      best = c;
      tie = false;
    } else if (c->size() == best->size()) {
      tie = true;
      if (c->nodes < best->nodes) best = c;
    }
  }
  return best;
}

std::vector<const ClubRecord*> of_type(const std::vector<ClubRecord>& clubs, ClubType t) {
  std::vector<const ClubRecord*> out;
  for (const auto& c : clubs) {
    if (c.type == t) out.push_back(&c);
  }
  return out;
}

std::size_t missing_from(const ClubRecord& circle, const ClubRecord& hamlet) {
  return static_cast<std::size_t>(std::count_if(circle.nodes.begin(), circle.nodes.end(),
                                                [&](const std::string& id) { return !hamlet.contains(id); }));
}

std::string describe(const ClubRecord& c) {
  return std::string(to_string(c.type)) + " " + c.club_id + " (size " + std::to_string(c.size()) + ")";
}

}  // namespace

ScopeResult scope(const ClubStore& store, std::uint32_t borough_id, const std::vector<std::string>& target) {
  if (target.empty()) throw std::invalid_argument("scope: empty target set");
  const std::set<std::string> wanted(target.begin(), target.end());
  ScopeResult r;
  for (const auto& c : store.records()) {
    if (c.borough_id != borough_id) continue;
    ++r.total;
    if (std::any_of(c.nodes.begin(), c.nodes.end(), [&](const std::string& id) { return wanted.count(id) != 0; })) {
      ++r.count;
    }
  }
  if (r.total == 0) throw std::invalid_argument("scope: borough " + std::to_string(borough_id) + " has no clubs");
  r.pct_text = percent_text(r.count, r.total);
  r.pct = std::stod(r.pct_text);
  return r;
}

std::vector<std::string> coterie_ranking(const ClubStore& store, const Graph& g, std::string_view region,
                                         RegionField field) {
  // Ego-network size of each firm whose ego-network is a stored coterie.
  std::map<std::string, std::size_t> coterie_size;
  for (const auto& c : store.records()) {
    if (c.type != ClubType::Coterie) continue;
    for (const auto& center : c.central_nodes) {
      auto& best = coterie_size[center];
      best = std::max(best, c.size());
    }
  }

  struct Entry {
    std::string id;
    std::size_t coterie = 0;
    std::optional<std::uint32_t> rank;
  };
  std::vector<Entry> with_coterie;
  std::vector<Entry> without;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (region_value(g, v, field) != region) continue;
    Entry e{g.id(v), 0, g.attributes(v).rank};
    if (auto it = coterie_size.find(e.id); it != coterie_size.end()) {
      e.coterie = it->second;
      with_coterie.push_back(std::move(e));
    } else {
      without.push_back(std::move(e));
    }
  }
  if (with_coterie.empty() && without.empty()) {
    throw std::invalid_argument("unknown region '" + std::string(region) + "'");
  }
  std::sort(with_coterie.begin(), with_coterie.end(), [](const Entry& a, const Entry& b) {
    if (a.coterie != b.coterie) return a.coterie > b.coterie;
    return a.id < b.id;
  });
  std::sort(without.begin(), without.end(), [](const Entry& a, const Entry& b) {
    if (a.rank.has_value() != b.rank.has_value()) return a.rank.has_value();
    if (a.rank && *a.rank != *b.rank) return *a.rank < *b.rank;
    return a.id < b.id;
  });
  std::vector<std::string> out;
  for (auto* part : {&with_coterie, &without}) {
    for (auto& e : *part) out.push_back(std::move(e.id));
  }
  return out;
}

std::string_view to_string(PivotRule r) {
  switch (r) {
    case PivotRule::LargestCommonHamlet:
      return "largest_common_hamlet";
    case PivotRule::HamletCoveringSocialCircle:
      return "hamlet_covering_social_circle";
    case PivotRule::LargestSocialCircle:
      return "largest_social_circle";
    case PivotRule::LargestCoterie:
      return "largest_coterie";
  }
  return "unknown";
}

std::string_view to_string(PivotPolicy p) { return p == PivotPolicy::Stop ? "stop" : "skip"; }

PivotPolicy parse_pivot_policy(std::string_view text) {
  if (text == "stop") return PivotPolicy::Stop;
  if (text == "skip") return PivotPolicy::Skip;
  throw std::invalid_argument("pivot policy must be stop or skip, got '" + std::string(text) + "'");
}

PivotReport select_pivot(const ClubStore& store, std::uint32_t borough_id, const std::string& region,
                         const std::vector<std::string>& ranking, PivotPolicy policy) {
  if (ranking.empty()) throw std::invalid_argument("select_pivot: empty ranking for region " + region);
  PivotReport rep;
  rep.region = region;

  std::vector<ClubRecord> common;
  for (const auto& firm : ranking) {
    ClubQuery q;
    q.borough_id = borough_id;
    q.contains_all = rep.seed_sequence;
    q.contains_all->push_back(firm);
    auto next = store.query(q);
    if (next.empty()) {
      if (rep.seed_sequence.empty() && policy == PivotPolicy::Stop) throw NoClubsError(region);
      if (policy == PivotPolicy::Stop) {
        rep.decision_trace.push_back("stop at " + firm + ": no common club");
        break;
      }
      rep.skipped.push_back(firm);
      rep.decision_trace.push_back("skip " + firm + ": no common club");
      continue;
    }
    rep.seed_sequence.push_back(firm);
    rep.decision_trace.push_back("add " + firm + ", common clubs: " + std::to_string(next.size()));
    common = std::move(next);
  }
  if (rep.seed_sequence.empty()) throw NoClubsError(region);
  for (const auto& c : common) rep.common_clubs_final.push_back(c.club_id);

  bool tie = false;
  const ClubRecord* chosen = nullptr;
  if (const auto* h = largest(of_type(common, ClubType::Hamlet), tie)) {
    chosen = h;
    rep.rule = PivotRule::LargestCommonHamlet;
    rep.decision_trace.push_back("largest common hamlet: " + describe(*h));
  } else if (const auto* circle = largest(of_type(common, ClubType::SocialCircle), tie)) {
    const bool circle_tie = tie;
    ClubQuery q;
    q.borough_id = borough_id;
    q.types = std::set<ClubType>{ClubType::Hamlet};
    const auto hamlets = store.query(q);
    std::vector<const ClubRecord*> covering;
    for (const auto& h : hamlets) {
      if (missing_from(*circle, h) <= 1) covering.push_back(&h);
    }
    rep.decision_trace.push_back("no common hamlet; largest social circle: " + describe(*circle));
    if (const auto* h = largest(covering, tie)) {
      rep.pivot = *h;
      rep.rule = PivotRule::HamletCoveringSocialCircle;
      rep.decision_trace.push_back("hamlet covering it but for " + std::to_string(missing_from(*circle, *h)) +
                                   " firm(s): " + describe(*h));
    } else {
      chosen = circle;
      tie = circle_tie;
      rep.rule = PivotRule::LargestSocialCircle;
      rep.decision_trace.push_back("no hamlet covers it; the social circle is the pivot");
    }
  } else {
    chosen = largest(of_type(common, ClubType::Coterie), tie);
    rep.rule = PivotRule::LargestCoterie;
    rep.decision_trace.push_back("only coteries in common: " + describe(*chosen));
  }
  if (chosen) rep.pivot = *chosen;
  rep.tie = tie;
  if (tie) rep.decision_trace.push_back("tie on size broken by smallest node tuple");

  rep.scope = scope(store, borough_id, rep.pivot.nodes);
  for (const auto& c : rep.pivot.countries) ++rep.composition[c];
  return rep;
}

std::vector<std::pair<std::string, std::size_t>> InterlockMatrix::links(std::size_t i) const {
  std::vector<std::pair<std::string, std::size_t>> out;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (j != i && overlap.at(i)[j] > 0) out.emplace_back(labels[j], overlap[i][j]);
  }
  return out;
}

InterlockMatrix interlock_matrix(const std::vector<std::pair<std::string, std::vector<std::string>>>& labeled_sets) {
  if (labeled_sets.size() < 2) throw std::invalid_argument("interlock_matrix needs at least two pivots");
  InterlockMatrix m;
  const std::size_t k = labeled_sets.size();
  std::vector<std::set<std::string>> sets;
  for (const auto& [label, nodes] : labeled_sets) {
    m.labels.push_back(label);
    sets.emplace_back(nodes.begin(), nodes.end());
  }
  m.overlap.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      std::size_t shared = 0;
      for (const auto& id : sets[i]) shared += sets[j].count(id);
      m.overlap[i][j] = m.overlap[j][i] = shared;
    }
  }
  return m;
}

InterlockMatrix interlock_matrix(const std::vector<PivotReport>& pivots) {
  std::vector<std::pair<std::string, std::vector<std::string>>> sets;
  for (const auto& p : pivots) sets.emplace_back(p.region, p.pivot.nodes);
  return interlock_matrix(sets);
}

void write_pivots_csv_header(std::ostream& out) {
  csv::write_row(out, {"region", "pivot_type", "size", "scope_count", "scope_pct", "rule", "node_ids"});
}

void write_pivot_row(std::ostream& out, const PivotReport& p) {
  csv::write_row(out, {p.region, std::string(to_string(p.pivot.type)), std::to_string(p.pivot.size()),
                       std::to_string(p.scope.count), p.scope.pct_text, std::string(to_string(p.rule)),
                       csv::join(p.pivot.nodes, ';')});
}

void write_pivot_error_row(std::ostream& out, const std::string& region, const std::string& reason) {
  csv::write_row(out, {region, "error", "0", "0", "", reason, ""});
}

std::vector<std::pair<std::string, std::vector<std::string>>> read_pivots_csv(std::istream& in) {
  csv::Reader reader(in);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  auto header = reader.next();
  if (!header) return out;
  if (header->fields.size() != 7 || header->fields[0] != "region" || header->fields[6] != "node_ids") {
    throw ParseError(header->line, "not a pivots.csv header");
  }
  while (auto row = reader.next()) {
    if (row->fields.size() != 7) throw ParseError(row->line, "expected 7 fields");
    if (row->fields[1] == "error") continue;
    out.emplace_back(row->fields[0], csv::split(row->fields[6], ';'));
  }
  return out;
}

void write_interlocks_csv(std::ostream& out, const InterlockMatrix& m) {
  std::vector<std::string> header{"region"};
  header.insert(header.end(), m.labels.begin(), m.labels.end());
  csv::write_row(out, header);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    std::vector<std::string> row{m.labels[i]};
    for (std::size_t j = 0; j < m.labels.size(); ++j) row.push_back(std::to_string(m.overlap[i][j]));
    csv::write_row(out, row);
  }
}

}  // namespace twoclubs
