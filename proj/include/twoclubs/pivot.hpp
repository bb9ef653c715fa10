#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twoclubs/club_store.hpp"
#include "twoclubs/graph.hpp"

namespace twoclubs {

/// Clubs of a borough sharing at least one node with a target set.
struct ScopeResult {
  std::size_t count = 0;
  std::size_t total = 0;
  double pct = 0.0;      // count / total * 100, rounded half up to 1 decimal
  std::string pct_text;  // same value as printed, e.g. "84.8"
};

/// Throws std::invalid_argument for an empty target or a borough without clubs.
ScopeResult scope(const ClubStore& store, std::uint32_t borough_id, const std::vector<std::string>& target);

/// Attribute a region label is matched against.
enum class RegionField { Country, Sector };

/// Firms of the region, those whose ego-network is a stored coterie first
/// (coterie size descending), the rest by rank ascending with unranked last.
/// Ties go to the smaller external id. Throws std::invalid_argument when no
/// firm carries the region label.
std::vector<std::string> coterie_ranking(const ClubStore& store, const Graph& g, std::string_view region,
                                         RegionField field = RegionField::Country);

enum class PivotPolicy {
  Stop,  // end accumulation at the first firm that empties the common set
  Skip,  // pass over such firms and keep going
};

enum class PivotRule {
  LargestCommonHamlet,
  HamletCoveringSocialCircle,  // a borough hamlet missing at most one member of the circle
  LargestSocialCircle,
  LargestCoterie,              // the common set holds coteries only
};

std::string_view to_string(PivotRule r);
std::string_view to_string(PivotPolicy p);
PivotPolicy parse_pivot_policy(std::string_view text);

struct PivotReport {
  std::string region;
  std::vector<std::string> seed_sequence;  // firms actually accumulated
  std::vector<std::string> skipped;        // firms passed over (Skip policy)
  std::vector<std::string> common_clubs_final;
  ClubRecord pivot;
  PivotRule rule = PivotRule::LargestCommonHamlet;
  ScopeResult scope;
  std::map<std::string, std::size_t> composition;  // country -> members
  std::vector<std::string> decision_trace;
  bool tie = false;  // more than one candidate of the winning size
};

/// The first ranked firm already has no club in the borough.
class NoClubsError : public std::runtime_error {
 public:
  explicit NoClubsError(const std::string& region)
      : std::runtime_error("region " + region + " has no clubs"), region_(region) {}
  const std::string& region() const noexcept { return region_; }

 private:
  std::string region_;
};

/// Accumulates ranked firms while they keep a non-empty set of common clubs,
/// then picks one representative club from that set.
PivotReport select_pivot(const ClubStore& store, std::uint32_t borough_id, const std::string& region,
                         const std::vector<std::string>& ranking, PivotPolicy policy = PivotPolicy::Stop);

struct InterlockMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> overlap;  // symmetric; diagonal = pivot size

  /// Other labels sharing at least one firm with label i, with the count.
  std::vector<std::pair<std::string, std::size_t>> links(std::size_t i) const;
};

/// Throws std::invalid_argument for fewer than two pivots.
InterlockMatrix interlock_matrix(const std::vector<PivotReport>& pivots);
InterlockMatrix interlock_matrix(const std::vector<std::pair<std::string, std::vector<std::string>>>& labeled_sets);

/// `region,pivot_type,size,scope_count,scope_pct,rule,node_ids`
void write_pivots_csv_header(std::ostream& out);
void write_pivot_row(std::ostream& out, const PivotReport& p);
void write_pivot_error_row(std::ostream& out, const std::string& region, const std::string& reason);
/// Reads back (region, node ids) from pivots.csv, skipping error rows.
std::vector<std::pair<std::string, std::vector<std::string>>> read_pivots_csv(std::istream& in);

/// Square matrix with a `region` header column.
void write_interlocks_csv(std::ostream& out, const InterlockMatrix& m);

}  // namespace twoclubs
