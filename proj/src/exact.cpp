#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "tempspan/solver.hpp"

namespace tempspan {

namespace {

// Any source reaching everyone needs a connected underlying graph. With strict
// journeys an all-pairs spanner is also a complete gossip schedule (order the
// edges by label, ties arbitrarily), which needs 2n-4 calls for n >= 4.
bool has_four_cycle(const TemporalGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<boost::dynamic_bitset<>> adj(n, boost::dynamic_bitset<>(n));
  for (const auto& [a, b] : underlying_graph(g)) {
    adj[a].set(b);
    adj[b].set(a);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if ((adj[a] & adj[b]).count() >= 2) return true;
    }
  }
  return false;
}

// Strict all-pairs spanners are complete gossip schemes once equal labels are
// ordered arbitrarily: at least 2n-4 calls, and 2n-3 without a 4-cycle.
std::size_t global_lower_bound(const TemporalGraph& g, const ExactOptions& opts) {
  const std::size_t n = g.vertex_count();
  std::size_t lb = n - 1;
  if (!opts.call_count_bounds || !opts.requirement.is_all_pairs() || opts.strictness != Strictness::Strict) {
    return lb;
  }
  if (n >= 2 && !has_four_cycle(g)) return 2 * n - 3;
  if (n >= 4) lb = 2 * n - 4;
  return lb;
}

// Edges used by foremost trees from the requirement's sources; rarely used edges come first.
std::vector<EdgeIndex> branching_order(const TemporalGraph& g, const EdgeSet& removable, const ExactOptions& opts) {
  std::vector<std::size_t> usage(g.edge_count(), 0);
  std::vector<VertexId> roots = opts.requirement.sources;
  if (roots.empty()) {
    roots.resize(g.vertex_count());
    std::iota(roots.begin(), roots.end(), VertexId{0});
  }
  for (VertexId r : roots) {
    const auto p = earliest_arrival(g, r, 0, opts.strictness);
    for (const auto& via : p.via) {
      if (via) ++usage[*via];
    }
  }
  std::vector<EdgeIndex> order = to_indices(removable);
  std::stable_sort(order.begin(), order.end(), [&](EdgeIndex a, EdgeIndex b) {
    if (usage[a] != usage[b]) return usage[a] < usage[b];
    return g.edge(a).t > g.edge(b).t;
  });
  return order;
}

class BranchAndBound {
 public:
  BranchAndBound(ReachChecker& check, std::size_t lower_bound, std::optional<std::size_t> budget)
      : check_(check), lower_bound_(lower_bound), budget_(budget) {}

  void run(EdgeSet start, std::vector<EdgeIndex> undecided, const EdgeSet& incumbent) {
    best_ = incumbent;
    best_size_ = incumbent.count();
    if (budget_ && best_size_ <= *budget_) {
      stopped_ = true;
      return;
    }
    dfs(start, undecided, false);
  }

  const EdgeSet& best() const { return best_; }
  bool stopped_early() const { return stopped_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // `current` always satisfies the requirement. `settled` means no undecided edge
  // became forced since the last propagation.
  void dfs(EdgeSet& current, std::span<const EdgeIndex> undecided, bool settled) {
    ++nodes_;
    const std::size_t size = current.count();
    if (size < best_size_) {
      best_ = current;
      best_size_ = size;
      if (budget_ && best_size_ <= *budget_) {
        stopped_ = true;
        return;
      }
    }

    std::vector<EdgeIndex> open;
    open.reserve(undecided.size());
    if (settled) {
      open.assign(undecided.begin(), undecided.end());
    } else {
      for (EdgeIndex e : undecided) {
        if (check_.without(current, e)) open.push_back(e);
      }
    }
    const std::size_t included = size - open.size();
    if (std::max(included, lower_bound_) >= best_size_ || open.empty()) return;

    const EdgeIndex e = open.front();
    const std::span<const EdgeIndex> rest(open.begin() + 1, open.end());
    current.reset(e);
    dfs(current, rest, false);
    current.set(e);
    if (stopped_) return;
    if (included + 1 >= best_size_) return;
    dfs(current, rest, true);
  }

  ReachChecker& check_;
  std::size_t lower_bound_;
  std::optional<std::size_t> budget_;
  EdgeSet best_;
  std::size_t best_size_ = 0;
  bool stopped_ = false;
  std::uint64_t nodes_ = 0;
};

// Locally minimal spanners from random removal orders; the first pass uses `order` as is.
EdgeSet greedy_incumbent(ReachChecker& check, const EdgeSet& all, std::vector<EdgeIndex> order,
                         std::size_t restarts, std::size_t target) {
  std::mt19937_64 rng(0x5eed);
  EdgeSet best = all;
  for (std::size_t pass = 0; pass <= restarts && best.count() > target; ++pass) {
    if (pass > 0) std::shuffle(order.begin(), order.end(), rng);
    EdgeSet current = all;
    for (EdgeIndex e : order) {
      if (check.without(current, e)) current.reset(e);
    }
    if (current.count() < best.count()) best = std::move(current);
  }
  return best;
}

// Smallest kept subset of `removable` on top of `base`, by increasing size.
std::optional<EdgeSet> enumerate(ReachChecker& check, const EdgeSet& base, const std::vector<EdgeIndex>& removable,
                                 std::size_t min_extra, std::uint64_t& nodes) {
  const std::size_t r = removable.size();
  for (std::size_t k = min_extra; k <= r; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      EdgeSet cand = base;
      for (std::size_t p : pick) cand.set(removable[p]);
      ++nodes;
      if (check(cand)) return cand;
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == r - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

EdgeSet forced_edges(const TemporalGraph& g, Strictness s, const Requirement& req) {
  ReachChecker check(g, req, s);
  const EdgeSet all = g.all_edges();
  if (!check(all)) throw Error(ErrorCode::RequirementNotSatisfied, "the full graph does not meet the requirement");
  EdgeSet forced = g.no_edges();
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (!check.without(all, i)) forced.set(i);
  }
  return forced;
}

SolveResult min_spanner_exact(const TemporalGraph& g, const ExactOptions& opts) {
  ReachChecker check(g, opts.requirement, opts.strictness);
  const EdgeSet all = g.all_edges();
  if (!check(all)) throw Error(ErrorCode::RequirementNotSatisfied, "the full graph does not meet the requirement");

  EdgeSet base = g.no_edges();
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (!check.without(all, i)) base.set(i);
  }
  if (opts.keep) {
    if (opts.keep->size() != g.edge_count()) throw Error(ErrorCode::InvalidArgument, "keep mask has wrong size");
    base |= *opts.keep;
  }
  const EdgeSet removable = all - base;
  if (removable.count() > opts.removable_cap) {
    throw Error(ErrorCode::InstanceTooLarge, std::to_string(removable.count()) + " removable edges exceed the cap of " +
                                                 std::to_string(opts.removable_cap));
  }

  SolveResult res;
  const std::size_t lb = global_lower_bound(g, opts);
  if (opts.strategy == ExactStrategy::Enumerate) {
    const auto order = to_indices(removable);
    const std::size_t min_extra = lb > base.count() ? lb - base.count() : 0;
    auto found = enumerate(check, base, order, std::min(min_extra, order.size()), res.nodes);
    // The full graph is feasible, so enumeration always ends with a spanner.
    res.kept = found ? *found : all;
    res.optimal = true;
  } else {
    auto order = branching_order(g, removable, opts);
    const std::size_t target = opts.budget ? std::max(lb, *opts.budget) : lb;
    EdgeSet incumbent = greedy_incumbent(check, all, order, opts.greedy_restarts, target);
    if (opts.incumbent) {
      if (opts.incumbent->size() != g.edge_count() || !base.is_subset_of(*opts.incumbent) || !check(*opts.incumbent)) {
        throw Error(ErrorCode::InvalidArgument, "warm-start incumbent is not a feasible spanner");
      }
      if (opts.incumbent->count() < incumbent.count()) incumbent = *opts.incumbent;
    }
    BranchAndBound bb(check, lb, opts.budget);
    bb.run(all, std::move(order), incumbent);
    res.kept = bb.best();
    res.nodes = bb.nodes();
    res.optimal = !bb.stopped_early() || res.kept.count() <= lb;
  }
  res.size = res.kept.count();
  if (opts.budget) res.within_budget = res.size <= *opts.budget;
  return res;
}

}  // namespace tempspan
