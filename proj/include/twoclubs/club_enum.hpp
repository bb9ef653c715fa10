#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twoclubs/borough.hpp"
#include "twoclubs/graph.hpp"

namespace twoclubs {

/// Which node set a 2-club must be maximal in.
enum class Universe {
  Borough,  // the parent borough (two-step pipeline)
  Global,   // the whole graph
};

struct EnumConfig {
  std::size_t min_size = 4;
  Universe universe = Universe::Borough;
  /// Search-tree nodes (splitting states plus maximality probes) allowed.
  std::optional<std::uint64_t> node_budget;
  std::optional<std::chrono::milliseconds> time_budget;
  /// Search each v's closed 2-neighborhood for clubs whose smallest member is v.
  bool per_vertex_restriction = true;
  unsigned threads = 0;

  /// Throws std::invalid_argument on min_size < 2.
  void validate() const;
};

struct TwoClub {
  NodeSet nodes;
  std::uint32_t borough_id = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  bool operator==(const TwoClub&) const = default;
};

/// The search ran out of budget. Carries the clubs already verified and the
/// fraction of root searches that completed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double completed, std::vector<TwoClub> partial)
      : std::runtime_error("enumeration budget exceeded"), completed_(completed), partial_(std::move(partial)) {}

  double completed_fraction() const noexcept { return completed_; }
  const std::vector<TwoClub>& partial() const noexcept { return partial_; }

 private:
  double completed_;
  std::vector<TwoClub> partial_;
};

/// Every pair of `s` is adjacent or has a common neighbor inside `s`.
bool is_2club(const Graph& g, const NodeSet& s);

/// True iff no 2-club T with s ⊊ T ⊆ universe exists.
///
/// Checked exactly: a one-node extension test settles most cases, the rest
/// run a splitting search over the nodes within distance 2 of all of `s`
/// with `s` pinned. Throws std::invalid_argument if s is not a 2-club or not
/// inside the universe.
bool is_maximal(const Graph& g, const NodeSet& s, const NodeSet& universe);

/// The node set a borough's clubs must be maximal in under `universe`.
NodeSet maximality_universe(const Graph& g, const Borough& b, Universe universe);

/// All maximal 2-clubs inside the borough with at least cfg.min_size nodes,
/// sorted by node tuple. Distances are measured in the subgraph of g induced
/// by each club. Throws BudgetExceeded when a configured budget runs out.
std::vector<TwoClub> enumerate_max_2clubs(const Graph& g, const Borough& borough, const EnumConfig& cfg);

/// Exhaustive reference: every subset of g is tested with is_2club and the
/// containment-maximal ones of size >= cfg.min_size are returned, sorted.
/// Refuses graphs with more than 20 nodes.
std::vector<NodeSet> oracle_enumerate(const Graph& g, const EnumConfig& cfg);

inline constexpr std::size_t kOracleMaxNodes = 20;

}  // namespace twoclubs
