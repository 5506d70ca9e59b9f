#include "tempspan/reach.hpp"

#include <algorithm>
#include <string>

namespace tempspan {

namespace {

using Bits = boost::dynamic_bitset<>;

// Calls fn(begin, end) for each run of active edges sharing a label, in label order.
template <typename Fn>
void for_each_label_group(const TemporalGraph& g, const EdgeSet* active, std::vector<EdgeIndex>& buf, Fn&& fn) {
  const auto order = g.by_label();
  std::size_t i = 0;
  while (i < order.size()) {
    const Label t = g.edge(order[i]).t;
    buf.clear();
    for (; i < order.size() && g.edge(order[i]).t == t; ++i) {
      if (!active || active->test(order[i])) buf.push_back(order[i]);
    }
    if (!buf.empty()) fn(std::span<const EdgeIndex>(buf));
  }
}

ArrivalProfile sweep(const TemporalGraph& g, const EdgeSet* active, VertexId source, Label start, Strictness s) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw Error(ErrorCode::InvalidArgument, "source out of range");
  if (active && active->size() != g.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "edge mask sized for a different graph");
  }
  ArrivalProfile p;
  p.source = source;
  p.start = start;
  p.arrival.assign(n, std::nullopt);
  p.via.assign(n, std::nullopt);

  // ready[x]: the label x can be left after (strict) or at (non-strict).
  std::vector<std::optional<Label>> ready(n);
  ready[source] = s == Strictness::Strict ? start - 1 : start;
  p.arrival[source] = start;

  auto can_leave = [&](VertexId x, Label t) {
    if (!ready[x]) return false;
    return s == Strictness::Strict ? *ready[x] < t : *ready[x] <= t;
  };
  auto relax = [&](EdgeIndex i) {
    const TimeEdge& e = g.edge(i);
    bool changed = false;
    for (auto [from, to] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      if (!ready[to] && can_leave(from, e.t)) {
        ready[to] = e.t;
        p.arrival[to] = e.t;
        p.via[to] = i;
        changed = true;
      }
    }
    return changed;
  };

  std::vector<EdgeIndex> buf;
  for_each_label_group(g, active, buf, [&](std::span<const EdgeIndex> group) {
    if (s == Strictness::Strict) {
      // Vertices reached inside this group get ready == t and cannot leave at t.
      for (EdgeIndex i : group) relax(i);
    } else {
      bool changed = true;
      while (changed) {
        changed = false;
        for (EdgeIndex i : group) changed |= relax(i);
      }
    }
  });
  return p;
}

// reached[v] bit j set iff sources[j] reaches v.
std::vector<Bits> propagate(const TemporalGraph& g, const EdgeSet* active, std::span<const VertexId> sources,
                            Strictness s) {
  const std::size_t n = g.vertex_count();
  if (active && active->size() != g.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "edge mask sized for a different graph");
  }
  std::vector<Bits> reached(n, Bits(sources.size()));
  for (std::size_t j = 0; j < sources.size(); ++j) {
    if (sources[j] >= n) throw Error(ErrorCode::InvalidArgument, "source out of range");
    reached[sources[j]].set(j);
  }

  std::vector<std::size_t> stamp(n, 0);
  std::size_t round = 0;
  std::vector<std::pair<VertexId, Bits>> pending;
  std::vector<EdgeIndex> buf;

  for_each_label_group(g, active, buf, [&](std::span<const EdgeIndex> group) {
    if (s == Strictness::NonStrict) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (EdgeIndex i : group) {
          const TimeEdge& e = g.edge(i);
          if (reached[e.u] != reached[e.v]) {
            reached[e.u] |= reached[e.v];
            reached[e.v] |= reached[e.u];
            changed = true;
          }
        }
      }
      return;
    }
    ++round;
    bool disjoint = true;
    for (EdgeIndex i : group) {
      const TimeEdge& e = g.edge(i);
      if (stamp[e.u] == round || stamp[e.v] == round) disjoint = false;
      stamp[e.u] = stamp[e.v] = round;
    }
    if (disjoint) {
      for (EdgeIndex i : group) {
        const TimeEdge& e = g.edge(i);
        reached[e.u] |= reached[e.v];
        reached[e.v] = reached[e.u];
      }
      return;
    }
    // Shared endpoints: only pre-group values may travel.
    pending.clear();
    for (EdgeIndex i : group) {
      const TimeEdge& e = g.edge(i);
      pending.emplace_back(e.v, reached[e.u]);
      pending.emplace_back(e.u, reached[e.v]);
    }
    for (auto& [x, bits] : pending) reached[x] |= bits;
  });
  return reached;
}

ReachMatrix matrix_from(const TemporalGraph& g, const EdgeSet* active, Strictness s) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> all(n);
  for (VertexId v = 0; v < n; ++v) all[v] = v;
  const auto reached = propagate(g, active, all, s);
  std::vector<Bits> rows(n, Bits(n));
  for (VertexId v = 0; v < n; ++v) {
    for (auto u = reached[v].find_first(); u != Bits::npos; u = reached[v].find_next(u)) rows[u].set(v);
  }
  return ReachMatrix(std::move(rows));
}

bool all_full(const std::vector<Bits>& reached) {
  return std::all_of(reached.begin(), reached.end(), [](const Bits& b) { return b.all(); });
}

TemporalOutTree tree_from(const TemporalGraph& g, const EdgeSet* active, VertexId root, Strictness s) {
  const ArrivalProfile p = sweep(g, active, root, 0, s);
  if (!p.reaches_all()) {
    throw Error(ErrorCode::RootNotSpanning, "root " + std::to_string(root) + " does not reach every vertex");
  }
  TemporalOutTree tree{root, g.no_edges()};
  for (const auto& via : p.via) {
    if (via) tree.tree_edges.set(*via);
  }
  return tree;
}

}  // namespace

bool ArrivalProfile::reaches_all() const {
  return std::all_of(arrival.begin(), arrival.end(), [](const auto& a) { return a.has_value(); });
}

ArrivalProfile earliest_arrival(const TemporalGraph& g, VertexId source, Label start, Strictness s) {
  return sweep(g, nullptr, source, start, s);
}

ArrivalProfile earliest_arrival(const TemporalGraph& g, const EdgeSet& active, VertexId source, Label start,
                                Strictness s) {
  return sweep(g, &active, source, start, s);
}

bool ReachMatrix::all() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Bits& r) { return r.all(); });
}

ReachMatrix reach_matrix(const TemporalGraph& g, Strictness s) { return matrix_from(g, nullptr, s); }

ReachMatrix reach_matrix(const TemporalGraph& g, const EdgeSet& active, Strictness s) {
  return matrix_from(g, &active, s);
}

bool is_tc(const TemporalGraph& g, Strictness s) { return satisfies(g, g.all_edges(), Requirement::all_pairs(), s); }

bool is_tc(const TemporalGraph& g, const EdgeSet& active, Strictness s) {
  return satisfies(g, active, Requirement::all_pairs(), s);
}

bool satisfies(const TemporalGraph& g, const EdgeSet& active, const Requirement& req, Strictness s) {
  if (req.is_all_pairs()) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> all(n);
    for (VertexId v = 0; v < n; ++v) all[v] = v;
    return all_full(propagate(g, &active, all, s));
  }
  return all_full(propagate(g, &active, req.sources, s));
}

TemporalOutTree foremost_out_tree(const TemporalGraph& g, VertexId root, Strictness s) {
  return tree_from(g, nullptr, root, s);
}

TemporalOutTree foremost_out_tree(const TemporalGraph& g, const EdgeSet& active, VertexId root, Strictness s) {
  return tree_from(g, &active, root, s);
}

bool verify_out_tree(const TemporalGraph& g, const EdgeSet& candidate, VertexId root, Strictness s) {
  const std::size_t n = g.vertex_count();
  if (root >= n || candidate.size() != g.edge_count() || candidate.count() != n - 1) return false;

  std::vector<std::vector<EdgeIndex>> adj(n);
  for (auto i = candidate.find_first(); i != EdgeSet::npos; i = candidate.find_next(i)) {
    adj[g.edge(i).u].push_back(i);
    adj[g.edge(i).v].push_back(i);
  }
  // Label of the edge used to enter each vertex; root enters "before time".
  std::vector<std::optional<Label>> entered(n);
  std::vector<VertexId> stack{root};
  entered[root] = 0;
  std::size_t seen = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (EdgeIndex i : adj[x]) {
      const TimeEdge& e = g.edge(i);
      const VertexId y = e.other(x);
      if (entered[y]) continue;
      if (s == Strictness::Strict ? e.t <= *entered[x] : e.t < *entered[x]) return false;
      entered[y] = e.t;
      ++seen;
      stack.push_back(y);
    }
  }
  return seen == n;
}

}  // namespace tempspan

namespace tempspan {

ReachChecker::ReachChecker(const TemporalGraph& g, Requirement req, Strictness s)
    : g_(&g), req_(std::move(req)), strictness_(s) {
  const std::size_t n = g.vertex_count();
  if (req_.is_all_pairs()) {
    sources_.resize(n);
    for (VertexId v = 0; v < n; ++v) sources_[v] = v;
  } else {
    sources_ = req_.sources;
    for (VertexId v : sources_) {
      if (v >= n) throw Error(ErrorCode::InvalidArgument, "source out of range");
    }
  }
  words_ = (sources_.size() + 63) / 64;
  reached_.assign(n * words_, 0);

  const auto order = g.by_label();
  std::vector<std::size_t> stamp(n, 0);
  std::size_t max_group = 0;
  for (std::size_t i = 0; i < order.size();) {
    const Label t = g.edge(order[i]).t;
    auto& group = groups_.emplace_back();
    bool disjoint = true;
    for (; i < order.size() && g.edge(order[i]).t == t; ++i) {
      const TimeEdge& e = g.edge(order[i]);
      if (stamp[e.u] == groups_.size() || stamp[e.v] == groups_.size()) disjoint = false;
      stamp[e.u] = stamp[e.v] = groups_.size();
      group.push_back(order[i]);
    }
    disjoint_.push_back(disjoint);
    max_group = std::max(max_group, group.size());
  }
  scratch_.assign(2 * max_group * words_, 0);
}

bool ReachChecker::operator()(const EdgeSet& active) { return run(active, std::nullopt); }

bool ReachChecker::without(const EdgeSet& active, EdgeIndex skip) { return run(active, skip); }

bool ReachChecker::run(const EdgeSet& active, std::optional<EdgeIndex> skip) {
  ++calls_;
  if (active.size() != g_->edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "edge mask sized for a different graph");
  }
  const std::size_t n = g_->vertex_count();
  const std::size_t w = words_;
  std::fill(reached_.begin(), reached_.end(), 0);
  for (std::size_t j = 0; j < sources_.size(); ++j) reached_[sources_[j] * w + j / 64] |= std::uint64_t{1} << (j % 64);

  auto row = [&](VertexId v) { return reached_.data() + v * w; };
  auto on = [&](EdgeIndex i) { return active.test(i) && (!skip || *skip != i); };

  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const auto& group = groups_[gi];
    if (strictness_ == Strictness::NonStrict) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (EdgeIndex i : group) {
          if (!on(i)) continue;
          const TimeEdge& e = g_->edge(i);
          std::uint64_t* a = row(e.u);
          std::uint64_t* b = row(e.v);
          for (std::size_t k = 0; k < w; ++k) {
            const std::uint64_t u = a[k] | b[k];
            if (u != a[k] || u != b[k]) changed = true;
            a[k] = b[k] = u;
          }
        }
      }
    } else if (disjoint_[gi]) {
      for (EdgeIndex i : group) {
        if (!on(i)) continue;
        const TimeEdge& e = g_->edge(i);
        std::uint64_t* a = row(e.u);
        std::uint64_t* b = row(e.v);
        for (std::size_t k = 0; k < w; ++k) a[k] = b[k] = a[k] | b[k];
      }
    } else {
      // Pre-group snapshot: for edge slot p, scratch holds (bits of u, bits of v).
      std::size_t p = 0;
      for (EdgeIndex i : group) {
        if (!on(i)) continue;
        const TimeEdge& e = g_->edge(i);
        std::copy_n(row(e.u), w, scratch_.data() + (2 * p) * w);
        std::copy_n(row(e.v), w, scratch_.data() + (2 * p + 1) * w);
        ++p;
      }
      p = 0;
      for (EdgeIndex i : group) {
        if (!on(i)) continue;
        const TimeEdge& e = g_->edge(i);
        const std::uint64_t* su = scratch_.data() + (2 * p) * w;
        const std::uint64_t* sv = scratch_.data() + (2 * p + 1) * w;
        std::uint64_t* a = row(e.u);
        std::uint64_t* b = row(e.v);
        for (std::size_t k = 0; k < w; ++k) {
          a[k] |= sv[k];
          b[k] |= su[k];
        }
        ++p;
      }
    }
  }

  const std::size_t full_words = sources_.size() / 64;
  const std::uint64_t tail = sources_.size() % 64 ? (std::uint64_t{1} << (sources_.size() % 64)) - 1 : 0;
  for (VertexId v = 0; v < n; ++v) {
    const std::uint64_t* r = row(v);
    for (std::size_t k = 0; k < full_words; ++k) {
      if (r[k] != ~std::uint64_t{0}) return false;
    }
    if (tail && r[full_words] != tail) return false;
  }
  return true;
}

}  // namespace tempspan
