#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "tempspan/solver.hpp"

namespace tempspan {

namespace {

// Internal part of one out-tree: arcs among cover vertices and placeholder images,
// plus for every remaining vertex the edges it may hang from.
struct Skeleton {
  EdgeSet edges;
  // leaf_options[v]: edges {v, x} whose label is after x's arrival; empty for cover and placeholder vertices.
  std::vector<std::vector<EdgeIndex>> leaf_options;
  std::vector<char> placed;
};

class SkeletonEnumerator {
 public:
  SkeletonEnumerator(const TemporalGraph& g, const VertexCover& cover) : g_(g), cover_(cover) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!cover.contains(v)) free_.push_back(v);
    }
  }

  std::vector<Skeleton> for_root(VertexId root, XpStats& stats) {
    std::vector<Skeleton> out;
    std::set<std::vector<EdgeIndex>> seen;
    for_each_template(cover_, [&](const Template& t) {
      if (t.root() != root || t.cover_count() != cover_.size()) return;
      ++stats.templates;
      t_ = &t;
      at_.assign(t.nodes.size(), 0);
      arrival_.assign(t.nodes.size(), 0);
      edge_.assign(t.nodes.size(), 0);
      used_.assign(g_.vertex_count(), 0);
      at_[0] = root;
      place(1, [&] {
        Skeleton s = finish();
        if (s.leaf_options.empty()) return;
        if (seen.insert(to_indices(s.edges)).second) out.push_back(std::move(s));
      });
    });
    stats.skeletons += out.size();
    return out;
  }

 private:
  // Assigns vertices to nodes in index order; parents always precede children.
  template <typename Fn>
  void place(std::size_t node, Fn&& done) {
    if (node == t_->nodes.size()) {
      done();
      return;
    }
    const auto& nd = t_->nodes[node];
    const VertexId parent = at_[nd.parent];
    const Label after = arrival_[nd.parent];
    auto try_vertex = [&](VertexId v) {
      const auto e = g_.find_edge(parent, v);
      if (!e || g_.edge(*e).t <= after) return;
      at_[node] = v;
      arrival_[node] = g_.edge(*e).t;
      edge_[node] = *e;
      place(node + 1, done);
    };
    if (nd.cover) {
      try_vertex(*nd.cover);
      return;
    }
    for (VertexId v : free_) {
      if (used_[v]) continue;
      used_[v] = 1;
      try_vertex(v);
      used_[v] = 0;
    }
  }

  Skeleton finish() const {
    Skeleton s;
    s.edges = g_.no_edges();
    s.placed.assign(g_.vertex_count(), 0);
    std::vector<std::optional<Label>> cover_arrival(g_.vertex_count());
    cover_arrival[t_->root()] = 0;
    for (std::size_t i = 1; i < t_->nodes.size(); ++i) {
      s.edges.set(edge_[i]);
      if (t_->nodes[i].cover) {
        cover_arrival[*t_->nodes[i].cover] = arrival_[i];
      } else {
        s.placed[at_[i]] = 1;
      }
    }
    s.leaf_options.assign(g_.vertex_count(), {});
    for (VertexId v : free_) {
      if (s.placed[v]) continue;
      for (EdgeIndex e : g_.incident(v)) {
        const VertexId x = g_.edge(e).other(v);
        if (cover_arrival[x] && g_.edge(e).t > *cover_arrival[x]) s.leaf_options[v].push_back(e);
      }
      if (s.leaf_options[v].empty()) return {};
    }
    return s;
  }

  const TemporalGraph& g_;
  const VertexCover& cover_;
  std::vector<VertexId> free_;
  const Template* t_ = nullptr;
  std::vector<VertexId> at_;
  std::vector<Label> arrival_;
  std::vector<EdgeIndex> edge_;
  std::vector<char> used_;
};

class Combiner {
 public:
  Combiner(const TemporalGraph& g, const VertexCover& cover, std::vector<std::vector<Skeleton>> per_root,
           std::optional<std::size_t> budget, XpStats& stats)
      : g_(g),
        cover_(cover),
        per_root_(std::move(per_root)),
        budget_(budget),
        stats_(stats),
        check_(g, Requirement::all_pairs(), Strictness::Strict) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!cover.contains(v)) free_.push_back(v);
    }
  }

  void run() {
    std::vector<const Skeleton*> picked;
    choose_roots(picked, g_.no_edges());
  }

  const std::optional<EdgeSet>& best() const { return best_; }
  bool stopped() const { return stopped_; }

 private:
  std::size_t best_size() const { return best_ ? best_->count() : std::numeric_limits<std::size_t>::max(); }

  // Distinct unions of one leaf edge per tree that leaves v hanging.
  std::vector<EdgeSet> leaf_unions(VertexId v, const std::vector<const Skeleton*>& picked) const {
    std::set<std::vector<EdgeIndex>> acc{{}};
    for (const Skeleton* s : picked) {
      const auto& opts = s->leaf_options[v];
      if (opts.empty()) continue;
      std::set<std::vector<EdgeIndex>> next;
      for (const auto& base : acc) {
        for (EdgeIndex e : opts) {
          auto grown = base;
          if (std::find(grown.begin(), grown.end(), e) == grown.end()) grown.push_back(e);
          std::sort(grown.begin(), grown.end());
          next.insert(std::move(grown));
        }
      }
      acc = std::move(next);
    }
    std::vector<EdgeSet> out;
    for (const auto& idx : acc) out.push_back(to_edge_set(g_.edge_count(), idx));
    return out;
  }

  std::size_t min_new(const std::vector<EdgeSet>& options, const EdgeSet& have) const {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& o : options) best = std::min(best, (o - have).count());
    return best;
  }

  void choose_roots(std::vector<const Skeleton*>& picked, const EdgeSet& skeleton_union) {
    if (stopped_) return;
    // Leaf edges of distinct free vertices never coincide, so per-vertex minima add up.
    std::vector<std::vector<EdgeSet>> options(g_.vertex_count());
    std::size_t lb = skeleton_union.count();
    for (VertexId v : free_) {
      options[v] = leaf_unions(v, picked);
      lb += min_new(options[v], skeleton_union);
    }
    if (lb >= best_size()) return;

    if (picked.size() == per_root_.size()) {
      // Tuples with the same skeleton union and leaf options are interchangeable.
      std::vector<std::vector<EdgeIndex>> key{to_indices(skeleton_union)};
      for (VertexId v : free_) {
        for (const auto& o : options[v]) key.push_back(to_indices(o));
        key.emplace_back();
      }
      if (!seen_tuples_.insert(std::move(key)).second) return;
      for (VertexId v : free_) {
        std::sort(options[v].begin(), options[v].end(), [&](const EdgeSet& a, const EdgeSet& b) {
          return (a - skeleton_union).count() < (b - skeleton_union).count();
        });
      }
      std::vector<std::size_t> rest(free_.size() + 1, 0);
      std::vector<EdgeSet> open(free_.size() + 1, g_.no_edges());
      for (std::size_t i = free_.size(); i-- > 0;) {
        rest[i] = rest[i + 1] + min_new(options[free_[i]], skeleton_union);
        open[i] = open[i + 1];
        for (const auto& o : options[free_[i]]) open[i] |= o;
      }
      EdgeSet u = skeleton_union;
      choose_leaves(options, rest, open, 0, u);
      return;
    }
    for (const Skeleton& s : per_root_[picked.size()]) {
      picked.push_back(&s);
      choose_roots(picked, skeleton_union | s.edges);
      picked.pop_back();
      if (stopped_) return;
    }
  }

  // Free vertices that cannot reach everyone even with every still-open leaf edge
  // will need an extra edge of their own.
  std::size_t certain_extras(const EdgeSet& upper) const {
    std::size_t k = 0;
    for (VertexId v : free_) {
      if (!earliest_arrival(g_, upper, v).reaches_all()) ++k;
    }
    return k;
  }

  void choose_leaves(const std::vector<std::vector<EdgeSet>>& options, const std::vector<std::size_t>& rest,
                     const std::vector<EdgeSet>& open, std::size_t k, EdgeSet& u) {
    if (stopped_) return;
    const std::size_t lb = u.count() + rest[k];
    if (lb >= best_size()) return;
    if (lb + free_.size() >= best_size() && lb + certain_extras(u | open[k]) >= best_size()) return;
    if (k == free_.size()) {
      evaluate(u);
      return;
    }
    for (const EdgeSet& o : options[free_[k]]) {
      EdgeSet grown = u | o;
      choose_leaves(options, rest, open, k + 1, grown);
      if (stopped_) return;
    }
  }

  void evaluate(const EdgeSet& tree_union) {
    ++stats_.unions_checked;
    const auto extras = select_extra_edges(g_, tree_union, cover_);
    if (!extras) return;
    EdgeSet s = tree_union;
    for (const auto& e : *extras) {
      if (e) s.set(*e);
    }
    if (s.count() >= best_size() || !check_(s)) return;
    best_ = s;
    if (budget_ && s.count() <= *budget_) stopped_ = true;
  }

  const TemporalGraph& g_;
  const VertexCover& cover_;
  std::vector<std::vector<Skeleton>> per_root_;
  std::optional<std::size_t> budget_;
  XpStats& stats_;
  ReachChecker check_;
  std::vector<VertexId> free_;
  std::optional<EdgeSet> best_;
  std::set<std::vector<std::vector<EdgeIndex>>> seen_tuples_;
  bool stopped_ = false;
};

}  // namespace

XpResult min_spanner_xp_vc(const TemporalGraph& g, const XpOptions& opts) {
  if (!classify(g).happy) throw Error(ErrorCode::NotHappy, "the vertex-cover algorithm needs a happy graph");
  if (!is_tc(g)) throw Error(ErrorCode::NotTemporallyConnected, "input graph is not temporally connected");

  XpResult out;
  const auto pairs = underlying_graph(g);
  out.cover = min_vertex_cover(pairs, g.vertex_count());
  if (g.vertex_count() == 1) {
    out.result = {g.no_edges(), 0, true, opts.budget ? std::optional<bool>(true) : std::nullopt, 0};
    return out;
  }

  SkeletonEnumerator skeletons(g, out.cover);
  std::vector<std::vector<Skeleton>> per_root;
  for (VertexId x : out.cover.members) per_root.push_back(skeletons.for_root(x, out.stats));

  Combiner combine(g, out.cover, std::move(per_root), opts.budget, out.stats);
  combine.run();
  if (!combine.best()) {
    throw Error(ErrorCode::InvariantViolated, "no tree combination yields a spanner of a connected graph");
  }
  out.result.kept = *combine.best();
  out.result.size = out.result.kept.count();
  out.result.optimal = !combine.stopped();
  if (opts.budget) out.result.within_budget = out.result.size <= *opts.budget;
  out.result.nodes = out.stats.unions_checked;
  return out;
}

}  // namespace tempspan
