#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "twoclubs/classify.hpp"
#include "twoclubs/graph.hpp"

namespace twoclubs {

/// A classified 2-club keyed by external ids, as persisted.
struct ClubRecord {
  std::string club_id;
  std::uint32_t borough_id = 0;
  ClubType type = ClubType::Hamlet;
  std::vector<std::string> nodes;  // sorted
  std::vector<std::string> central_nodes;
  std::vector<std::pair<std::string, std::string>> central_pairs;
  std::vector<std::string> countries;  // one entry per member, sorted

  std::size_t size() const noexcept { return nodes.size(); }
  bool contains(const std::string& id) const;

  bool operator==(const ClubRecord&) const = default;
};

/// 64-bit FNV-1a over the sorted ids joined by 0x1f, as 16 lowercase hex digits.
std::string club_id_for(const std::vector<std::string>& sorted_ids);

ClubRecord make_record(const Graph& g, const ClassifiedClub& club);

/// Conjunctive filters; unset fields do not filter.
struct ClubQuery {
  std::optional<std::set<ClubType>> types;
  std::optional<std::size_t> min_size;
  std::optional<std::size_t> max_size;
  std::optional<std::vector<std::string>> contains_all;
  std::optional<std::vector<std::string>> contains_any;
  std::optional<std::uint32_t> borough_id;
  /// Country held by strictly more than half of the members.
  std::optional<std::string> country_majority;
};

/// All classified clubs of a network. Records are kept in persisted order:
/// borough id ascending, size descending, club id ascending.
class ClubStore {
 public:
  ClubStore() = default;
  explicit ClubStore(std::vector<ClubRecord> records);

  /// Throws std::runtime_error on a club id collision (same id, different nodes).
  void insert(ClubRecord record);

  const std::vector<ClubRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const ClubRecord* find(std::string_view club_id) const;
  const ClubRecord& at(std::string_view club_id) const;

  /// Node ids query filters may name. Defaults to the members of all records.
  void set_node_universe(const std::vector<std::string>& ids);
  bool knows_node(const std::string& id) const;

  /// Records matching every filter, in store order. Throws
  /// std::invalid_argument for a filter node the store does not know.
  std::vector<ClubRecord> query(const ClubQuery& q) const;

  std::size_t count_in_borough(std::uint32_t borough_id) const;

  /// One JSON object per line after a `#` header line.
  void persist(std::ostream& out, std::string_view header_note = {}) const;
  void persist(const std::filesystem::path& path, std::string_view header_note = {}) const;
  /// Throws ParseError naming the line of a malformed record.
  static ClubStore load(std::istream& in);
  static ClubStore load(const std::filesystem::path& path);

 private:
  std::vector<ClubRecord> records_;
  std::unordered_map<std::string, std::vector<std::string>> by_id_;
  std::optional<std::unordered_set<std::string>> universe_;
  std::unordered_set<std::string> members_;
};

struct TypeSummary {
  std::size_t count = 0;
  std::size_t covered_nodes = 0;
  double coverage_pct = 0.0;
  std::optional<double> median_size;
};

struct TypeStats {
  std::uint32_t borough_id = 0;
  std::size_t borough_size = 0;
  TypeSummary coterie;
  TypeSummary social_circle;
  TypeSummary hamlet;
  TypeSummary total;

  const TypeSummary& of(ClubType t) const;
};

/// Per-type club counts, node coverage of the borough and median sizes.
/// Throws std::invalid_argument when borough_size is 0.
TypeStats stats(const ClubStore& store, std::uint32_t borough_id, std::size_t borough_size);

/// `type,count,node_coverage_pct,median_size`
void write_stats_csv(std::ostream& out, const TypeStats& s);

/// count/total as a percentage with one decimal, rounded half up ("84.8").
std::string percent_text(std::size_t count, std::size_t total);

}  // namespace twoclubs
