#include "twoclubs/club_enum.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <unordered_set>

#include "twoclubs/bitset.hpp"
#include "twoclubs/parallel.hpp"

namespace twoclubs {
namespace {

using Clock = std::chrono::steady_clock;

struct BudgetTripped {};

/// Shared across workers; tripping it unwinds every search in flight.
class Budget {
 public:
  explicit Budget(const EnumConfig& cfg) : limit_(cfg.node_budget) {
    if (cfg.time_budget) deadline_ = Clock::now() + *cfg.time_budget;
  }
  Budget() = default;

  void tick() {
    const auto used = used_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (limit_ && used > *limit_) throw BudgetTripped{};
    if (deadline_ && (used & 0x3ff) == 1 && Clock::now() >= *deadline_) throw BudgetTripped{};
  }

 private:
  std::optional<std::uint64_t> limit_;
  std::optional<Clock::time_point> deadline_;
  std::atomic<std::uint64_t> used_{0};
};

/// Induced subgraph on a node list as bitset rows. Local index i is nodes[i].
struct LocalGraph {
  NodeSet nodes;
  std::vector<Bitset> adj;

  LocalGraph(const Graph& g, NodeSet ns) : nodes(std::move(ns)), adj(nodes.size(), Bitset(nodes.size())) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (NodeId w : g.neighbors(nodes[i])) {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), w);
        if (it != nodes.end() && *it == w) adj[i].set(static_cast<std::size_t>(it - nodes.begin()));
      }
    }
  }

  std::size_t size() const { return nodes.size(); }

  Bitset all() const {
    Bitset b(size());
    for (std::size_t i = 0; i < size(); ++i) b.set(i);
    return b;
  }

  Bitset mask(const NodeSet& members) const {
    Bitset b(size());
    for (NodeId v : members) {
      auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
      b.set(static_cast<std::size_t>(it - nodes.begin()));
    }
    return b;
  }

  NodeSet to_nodes(const Bitset& b) const {
    NodeSet out;
    out.reserve(b.count());
    b.for_each([&](std::size_t i) { out.push_back(nodes[i]); });
    return out;
  }

  /// Nodes within distance 2 of `a` inside `within` (a included).
  Bitset reach2(std::size_t a, const Bitset& within) const {
    Bitset first = adj[a] & within;
    Bitset r = first;
    first.for_each([&](std::size_t x) { r |= adj[x]; });
    r &= within;
    r.set(a);
    return r;
  }

  /// Lexicographically smallest pair at distance > 2 inside x.
  bool find_violation(const Bitset& x, std::size_t& a, std::size_t& b) const {
    for (std::size_t i = x.first(); i < x.bits(); i = x.next(i + 1)) {
      Bitset missing = x;
      missing.subtract(reach2(i, x));
      if (missing.any()) {
        a = i;
        b = missing.first();
        return true;
      }
    }
    return false;
  }
};

/// Recursive splitting: a set with a pair at distance > 2 branches into the
/// two sets that drop one endpoint each. Every 2-club inside the start set
/// ends up inside some leaf, so the containment-maximal leaves are exactly
/// the maximal 2-clubs.
class SplitSearch {
 public:
  SplitSearch(const LocalGraph& lg, Bitset locked, std::size_t min_size, Budget* budget)
      : lg_(lg), locked_(std::move(locked)), min_size_(min_size), budget_(budget) {}

  /// Collect all leaves below `start`. With `stop_at_first`, returns after the
  /// first leaf.
  void run(const Bitset& start, bool stop_at_first) {
    std::vector<Bitset> stack{start};
    while (!stack.empty()) {
      Bitset x = std::move(stack.back());
      stack.pop_back();
      if (x.count() < min_size_) continue;
      if (!visited_.insert(x).second) continue;
      if (budget_) budget_->tick();
      if (std::any_of(leaves_.begin(), leaves_.end(), [&](const Bitset& l) { return x.is_subset_of(l); })) {
        continue;
      }
      std::size_t a = 0, b = 0;
      if (!lg_.find_violation(x, a, b)) {
        leaves_.push_back(std::move(x));
        if (stop_at_first) return;
        continue;
      }
      // Pushed so that the "drop b" branch is explored first.
      if (!locked_.test(a)) {
        Bitset y = x;
        y.reset(a);
        stack.push_back(std::move(y));
      }
      if (!locked_.test(b)) {
        Bitset y = x;
        y.reset(b);
        stack.push_back(std::move(y));
      }
    }
  }

  const std::vector<Bitset>& leaves() const { return leaves_; }

 private:
  const LocalGraph& lg_;
  Bitset locked_;
  std::size_t min_size_;
  Budget* budget_;
  std::unordered_set<Bitset, BitsetHash> visited_;
  std::vector<Bitset> leaves_;
};

void require_known(const Graph& g, const NodeSet& s) {
  for (NodeId v : s) {
    if (v >= g.node_count()) throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
}

bool is_2club_unchecked(const Graph& g, const NodeSet& s, std::vector<char>& inside) {
  for (NodeId v : s) inside[v] = 1;
  bool ok = true;
  for (std::size_t i = 0; i < s.size() && ok; ++i) {
    const auto& ni = g.adjacency()[s[i]];
    for (std::size_t j = i + 1; j < s.size() && ok; ++j) {
      if (std::binary_search(ni.begin(), ni.end(), s[j])) continue;
      const auto& nj = g.adjacency()[s[j]];
      bool common = false;
      // Sorted merge over the two neighbor lists, members of s only.
      auto p = ni.begin();
      auto q = nj.begin();
      while (p != ni.end() && q != nj.end()) {
        if (*p < *q) {
          ++p;
        } else if (*q < *p) {
          ++q;
        } else {
          if (inside[*p]) {
            common = true;
            break;
          }
          ++p;
          ++q;
        }
      }
      ok = common;
    }
  }
  for (NodeId v : s) inside[v] = 0;
  return ok;
}

bool is_maximal_impl(const Graph& g, const NodeSet& s, const std::vector<char>& in_universe, Budget* budget) {
  // Any strict superset club sits within distance 2 (in the universe) of
  // every member of s.
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> hits(n, 0);
  std::vector<NodeId> touched;
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t round = 0;
  for (NodeId m : s) {
    ++round;
    auto visit = [&](NodeId w) {
      if (!in_universe[w] || stamp[w] == round) return;
      stamp[w] = round;
      if (hits[w]++ == 0) touched.push_back(w);
    };
    visit(m);
    for (NodeId x : g.adjacency()[m]) {
      if (!in_universe[x]) continue;
      visit(x);
      for (NodeId y : g.adjacency()[x]) visit(y);
    }
  }
  NodeSet candidates;
  for (NodeId w : touched) {
    if (hits[w] == s.size() && !std::binary_search(s.begin(), s.end(), w)) candidates.push_back(w);
  }
  if (candidates.empty()) return true;

  NodeSet pool = s;
  pool.insert(pool.end(), candidates.begin(), candidates.end());
  pool = make_node_set(std::move(pool));
  const LocalGraph lg(g, pool);
  const Bitset locked = lg.mask(s);

  // One-node extensions first: S + w only needs w within 2 of every member.
  for (NodeId w : candidates) {
    Bitset x = locked;
    const auto it = std::lower_bound(pool.begin(), pool.end(), w);
    const auto wi = static_cast<std::size_t>(it - pool.begin());
    x.set(wi);
    if (lg.reach2(wi, x) == x) return false;
  }

  SplitSearch search(lg, locked, s.size() + 1, budget);
  search.run(lg.all(), /*stop_at_first=*/true);
  return search.leaves().empty();
}

std::vector<char> membership(const Graph& g, const NodeSet& members) {
  std::vector<char> in(g.node_count(), 0);
  for (NodeId v : members) in[v] = 1;
  return in;
}

}  // namespace

void EnumConfig::validate() const {
  if (min_size < 2) throw std::invalid_argument("min_size must be at least 2");
}

bool is_2club(const Graph& g, const NodeSet& s) {
  if (s.empty()) throw std::invalid_argument("is_2club: empty node set");
  require_known(g, s);
  const NodeSet sorted = make_node_set(s);
  std::vector<char> inside(g.node_count(), 0);
  return is_2club_unchecked(g, sorted, inside);
}

bool is_maximal(const Graph& g, const NodeSet& s, const NodeSet& universe) {
  require_known(g, s);
  require_known(g, universe);
  const NodeSet club = make_node_set(s);
  const auto in_universe = membership(g, universe);
  for (NodeId v : club) {
    if (!in_universe[v]) throw std::invalid_argument("is_maximal: node set not inside the universe");
  }
  if (!is_2club(g, club)) throw std::invalid_argument("is_maximal: node set is not a 2-club");
  return is_maximal_impl(g, club, in_universe, nullptr);
}

NodeSet maximality_universe(const Graph& g, const Borough& b, Universe universe) {
  if (universe == Universe::Borough) return b.nodes;
  NodeSet all(g.node_count());
  for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
  return all;
}

std::vector<TwoClub> enumerate_max_2clubs(const Graph& g, const Borough& borough, const EnumConfig& cfg) {
  cfg.validate();
  require_known(g, borough.nodes);
  const LocalGraph lg(g, make_node_set(borough.nodes));
  const auto in_universe = membership(g, maximality_universe(g, borough, cfg.universe));
  const std::size_t k = lg.size();
  Budget budget(cfg);

  // One root search per smallest member, or a single global one.
  const std::size_t roots = cfg.per_vertex_restriction ? k : (k ? 1 : 0);
  std::vector<std::vector<Bitset>> leaves(roots);
  std::vector<char> done(roots, 0);
  bool tripped = false;
  try {
    parallel_for(roots, cfg.threads, [&](std::size_t r, unsigned) {
      const Bitset everything = lg.all();
      if (cfg.per_vertex_restriction) {
        Bitset start = lg.reach2(r, everything);
        for (std::size_t i = 0; i < r; ++i) start.reset(i);
        Bitset locked(k);
        locked.set(r);
        SplitSearch search(lg, std::move(locked), cfg.min_size, &budget);
        search.run(start, false);
        leaves[r] = search.leaves();
      } else {
        SplitSearch search(lg, Bitset(k), cfg.min_size, &budget);
        search.run(everything, false);
        leaves[r] = search.leaves();
      }
      done[r] = 1;
    });
  } catch (const BudgetTripped&) {
    tripped = true;
  }

  // A leaf strictly inside another leaf is a non-maximal 2-club.
  std::vector<Bitset> pool;
  for (std::size_t r = 0; r < roots; ++r) {
    if (done[r]) pool.insert(pool.end(), leaves[r].begin(), leaves[r].end());
  }
  std::sort(pool.begin(), pool.end(), [](const Bitset& a, const Bitset& b) { return a.count() > b.count(); });
  std::vector<Bitset> survivors;
  for (auto& leaf : pool) {
    const bool covered = std::any_of(survivors.begin(), survivors.end(),
                                     [&](const Bitset& s) { return leaf != s && leaf.is_subset_of(s); });
    if (!covered && std::find(survivors.begin(), survivors.end(), leaf) == survivors.end()) {
      survivors.push_back(std::move(leaf));
    }
  }

  // Inside the borough every maximal club is itself a leaf, so the
  // containment filter is already exact. A wider universe can dominate a
  // leaf with nodes the search never saw.
  std::vector<char> keep(survivors.size(), 1);
  auto check = [&](Budget* b) {
    parallel_for(survivors.size(), cfg.threads, [&](std::size_t i, unsigned) {
      keep[i] = is_maximal_impl(g, lg.to_nodes(survivors[i]), in_universe, b) ? 1 : 0;
    });
  };
  if (cfg.universe == Universe::Global) {
    if (!tripped) {
      try {
        check(&budget);
      } catch (const BudgetTripped&) {
        tripped = true;
      }
    }
    if (tripped) check(nullptr);
  }

  std::vector<TwoClub> out;
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    if (!keep[i] || survivors[i].count() < cfg.min_size) continue;
    out.push_back(TwoClub{lg.to_nodes(survivors[i]), borough.id});
  }
  std::sort(out.begin(), out.end(), [](const TwoClub& a, const TwoClub& b) { return a.nodes < b.nodes; });

  if (tripped) {
    const auto finished = static_cast<double>(std::count(done.begin(), done.end(), 1));
    throw BudgetExceeded(roots ? finished / static_cast<double>(roots) : 1.0, std::move(out));
  }
  return out;
}

std::vector<NodeSet> oracle_enumerate(const Graph& g, const EnumConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.node_count();
  if (n > kOracleMaxNodes) {
    throw std::invalid_argument("oracle_enumerate: " + std::to_string(n) + " nodes exceeds the limit of " +
                                std::to_string(kOracleMaxNodes));
  }
  std::vector<std::uint32_t> clubs;
  std::vector<char> inside(n, 0);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    NodeSet s;
    for (NodeId v = 0; v < n; ++v) {
      if (mask >> v & 1u) s.push_back(v);
    }
    if (is_2club_unchecked(g, s, inside)) clubs.push_back(mask);
  }
  std::stable_sort(clubs.begin(), clubs.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b); });
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t m : clubs) {
    if (std::none_of(maximal.begin(), maximal.end(), [&](std::uint32_t big) { return (m & ~big) == 0; })) {
      maximal.push_back(m);
    }
  }
  std::vector<NodeSet> out;
  for (std::uint32_t m : maximal) {
    if (static_cast<std::size_t>(std::popcount(m)) < cfg.min_size) continue;
    NodeSet s;
    for (NodeId v = 0; v < n; ++v) {
      if (m >> v & 1u) s.push_back(v);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace twoclubs
