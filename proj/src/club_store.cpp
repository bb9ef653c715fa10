#include "twoclubs/club_store.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "twoclubs/csv.hpp"
#include "twoclubs/errors.hpp"

namespace twoclubs {
namespace {

using ordered_json = nlohmann::ordered_json;

bool store_order(const ClubRecord& a, const ClubRecord& b) {
  if (a.borough_id != b.borough_id) return a.borough_id < b.borough_id;
  if (a.size() != b.size()) return a.size() > b.size();
  return a.club_id < b.club_id;
}

ordered_json to_json(const ClubRecord& r) {
  ordered_json j;
  j["club_id"] = r.club_id;
  j["borough_id"] = r.borough_id;
  j["type"] = std::string(to_string(r.type));
  j["size"] = r.size();
  j["nodes"] = r.nodes;
  j["central_nodes"] = r.central_nodes;
  auto pairs = ordered_json::array();
  for (const auto& [a, b] : r.central_pairs) pairs.push_back({a, b});
  j["central_pairs"] = std::move(pairs);
  j["countries"] = r.countries;
  return j;
}

ClubRecord from_json(const ordered_json& j) {
  ClubRecord r;
  r.club_id = j.at("club_id").get<std::string>();
  r.borough_id = j.at("borough_id").get<std::uint32_t>();
  r.type = parse_club_type(j.at("type").get<std::string>());
  r.nodes = j.at("nodes").get<std::vector<std::string>>();
  r.central_nodes = j.at("central_nodes").get<std::vector<std::string>>();
  for (const auto& p : j.at("central_pairs")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("central pair must have two ids");
    r.central_pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  r.countries = j.at("countries").get<std::vector<std::string>>();
  const auto size = j.at("size").get<std::size_t>();
  if (size != r.nodes.size()) throw std::invalid_argument("size does not match node list");
  if (r.countries.size() != size) throw std::invalid_argument("country multiset does not match size");
  if (!std::is_sorted(r.nodes.begin(), r.nodes.end())) throw std::invalid_argument("nodes not sorted");
  if (club_id_for(r.nodes) != r.club_id) throw std::invalid_argument("club_id does not match node list");
  return r;
}

std::optional<double> median(std::vector<std::size_t> sizes) {
  if (sizes.empty()) return std::nullopt;
  std::sort(sizes.begin(), sizes.end());
  const std::size_t mid = sizes.size() / 2;
  if (sizes.size() % 2) return static_cast<double>(sizes[mid]);
  return (static_cast<double>(sizes[mid - 1]) + static_cast<double>(sizes[mid])) / 2.0;
}

std::string median_text(const std::optional<double>& m) {
  if (!m) return "NA";
  char buf[32];
  if (*m == static_cast<double>(static_cast<long long>(*m))) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(*m));
  } else {
    std::snprintf(buf, sizeof buf, "%.1f", *m);
  }
  return buf;
}

}  // namespace

bool ClubRecord::contains(const std::string& id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

std::string club_id_for(const std::vector<std::string>& sorted_ids) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ull;
  };
  for (std::size_t i = 0; i < sorted_ids.size(); ++i) {
    if (i) mix(0x1f);
    for (unsigned char c : sorted_ids[i]) mix(c);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ClubRecord make_record(const Graph& g, const ClassifiedClub& club) {
  ClubRecord r;
  r.borough_id = club.club.borough_id;
  r.type = club.type;
  for (NodeId v : club.club.nodes) {
    r.nodes.push_back(g.id(v));
    r.countries.push_back(g.attributes(v).country);
  }
  // Dense order already matches external id order.
  for (NodeId v : club.central_nodes) r.central_nodes.push_back(g.id(v));
  for (auto [u, v] : club.central_pairs) r.central_pairs.emplace_back(g.id(u), g.id(v));
  std::sort(r.countries.begin(), r.countries.end());
  r.club_id = club_id_for(r.nodes);
  return r;
}

ClubStore::ClubStore(std::vector<ClubRecord> records) {
  records_.reserve(records.size());
  for (auto& r : records) {
    auto [it, inserted] = by_id_.try_emplace(r.club_id, r.nodes);
    if (!inserted) {
      if (it->second != r.nodes) throw std::runtime_error("club id collision on " + r.club_id);
      continue;
    }
    members_.insert(r.nodes.begin(), r.nodes.end());
    records_.push_back(std::move(r));
  }
  std::sort(records_.begin(), records_.end(), store_order);
}

void ClubStore::insert(ClubRecord record) {
  auto [it, inserted] = by_id_.try_emplace(record.club_id, record.nodes);
  if (!inserted) {
    if (it->second != record.nodes) throw std::runtime_error("club id collision on " + record.club_id);
    return;
  }
  members_.insert(record.nodes.begin(), record.nodes.end());
  auto pos = std::upper_bound(records_.begin(), records_.end(), record, store_order);
  records_.insert(pos, std::move(record));
}

const ClubRecord* ClubStore::find(std::string_view club_id) const {
  for (const auto& r : records_) {
    if (r.club_id == club_id) return &r;
  }
  return nullptr;
}

const ClubRecord& ClubStore::at(std::string_view club_id) const {
  if (const auto* r = find(club_id)) return *r;
  throw std::out_of_range("unknown club id '" + std::string(club_id) + "'");
}

void ClubStore::set_node_universe(const std::vector<std::string>& ids) {
  universe_.emplace(ids.begin(), ids.end());
}

bool ClubStore::knows_node(const std::string& id) const {
  return universe_ ? universe_->count(id) != 0 : members_.count(id) != 0;
}

std::vector<ClubRecord> ClubStore::query(const ClubQuery& q) const {
  auto validate = [&](const std::optional<std::vector<std::string>>& ids) {
    if (!ids) return;
    for (const auto& id : *ids) {
      if (!knows_node(id)) throw std::invalid_argument("unknown node id '" + id + "' in query");
    }
  };
  validate(q.contains_all);
  validate(q.contains_any);

  std::vector<ClubRecord> out;
  for (const auto& r : records_) {
    if (q.types && !q.types->count(r.type)) continue;
    if (q.min_size && r.size() < *q.min_size) continue;
    if (q.max_size && r.size() > *q.max_size) continue;
    if (q.borough_id && r.borough_id != *q.borough_id) continue;
    if (q.contains_all &&
        !std::all_of(q.contains_all->begin(), q.contains_all->end(), [&](const auto& id) { return r.contains(id); })) {
      continue;
    }
    if (q.contains_any &&
        std::none_of(q.contains_any->begin(), q.contains_any->end(), [&](const auto& id) { return r.contains(id); })) {
      continue;
    }
    if (q.country_majority) {
      const auto n = std::count(r.countries.begin(), r.countries.end(), *q.country_majority);
      if (static_cast<std::size_t>(n) * 2 <= r.size()) continue;
    }
    out.push_back(r);
  }
  return out;
}

std::size_t ClubStore::count_in_borough(std::uint32_t borough_id) const {
  return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(),
                                                [&](const ClubRecord& r) { return r.borough_id == borough_id; }));
}

void ClubStore::persist(std::ostream& out, std::string_view header_note) const {
  out << "# twoclubs club store v1";
  if (!header_note.empty()) out << ' ' << header_note;
  out << '\n';
  for (const auto& r : records_) out << to_json(r).dump() << '\n';
}

void ClubStore::persist(const std::filesystem::path& path, std::string_view header_note) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  persist(out, header_note);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

ClubStore ClubStore::load(std::istream& in) {
  std::vector<ClubRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    try {
      records.push_back(from_json(ordered_json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError(lineno, std::string("malformed club record: ") + e.what());
    }
  }
  return ClubStore(std::move(records));
}

ClubStore ClubStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return load(in);
}

const TypeSummary& TypeStats::of(ClubType t) const {
  switch (t) {
    case ClubType::Coterie:
      return coterie;
    case ClubType::SocialCircle:
      return social_circle;
    case ClubType::Hamlet:
      break;
  }
  return hamlet;
}

TypeStats stats(const ClubStore& store, std::uint32_t borough_id, std::size_t borough_size) {
  if (borough_size == 0) throw std::invalid_argument("stats: empty borough");
  TypeStats s;
  s.borough_id = borough_id;
  s.borough_size = borough_size;

  struct Acc {
    std::set<std::string> covered;
    std::vector<std::size_t> sizes;
  };
  std::map<ClubType, Acc> by_type;
  Acc all;
  for (const auto& r : store.records()) {
    if (r.borough_id != borough_id) continue;
    auto& acc = by_type[r.type];
    acc.covered.insert(r.nodes.begin(), r.nodes.end());
    acc.sizes.push_back(r.size());
    all.covered.insert(r.nodes.begin(), r.nodes.end());
    all.sizes.push_back(r.size());
  }
  auto summarize = [&](const Acc& acc) {
    if (acc.covered.size() > borough_size) throw std::invalid_argument("stats: clubs cover more nodes than the borough");
    TypeSummary t;
    t.count = acc.sizes.size();
    t.covered_nodes = acc.covered.size();
    t.coverage_pct = 100.0 * static_cast<double>(t.covered_nodes) / static_cast<double>(borough_size);
    t.median_size = median(acc.sizes);
    return t;
  };
  s.coterie = summarize(by_type[ClubType::Coterie]);
  s.social_circle = summarize(by_type[ClubType::SocialCircle]);
  s.hamlet = summarize(by_type[ClubType::Hamlet]);
  s.total = summarize(all);
  return s;
}

void write_stats_csv(std::ostream& out, const TypeStats& s) {
  csv::write_row(out, {"type", "count", "node_coverage_pct", "median_size"});
  auto row = [&](const char* name, const TypeSummary& t) {
    csv::write_row(out, {name, std::to_string(t.count), percent_text(t.covered_nodes, s.borough_size),
                         median_text(t.median_size)});
  };
  row("coterie", s.coterie);
  row("social_circle", s.social_circle);
  row("hamlet", s.hamlet);
  row("total", s.total);
}

std::string percent_text(std::size_t count, std::size_t total) {
  if (total == 0) throw std::invalid_argument("percent of an empty total");
  // Tenths of a percent, round half up, in integers.
  const unsigned long long tenths = (2000ull * count + total) / (2ull * total);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

}  // namespace twoclubs
