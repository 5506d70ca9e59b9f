#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tempspan/errors.hpp"

namespace tempspan {

using VertexId = std::uint32_t;
using Label = std::int64_t;
using EdgeIndex = std::size_t;

/// Subset of a graph's time edges, one bit per edge index.
using EdgeSet = boost::dynamic_bitset<std::uint64_t>;

struct TimeEdge {
  VertexId u = 0;
  VertexId v = 0;
  Label t = 1;

  VertexId lo() const noexcept { return u < v ? u : v; }
  VertexId hi() const noexcept { return u < v ? v : u; }
  bool touches(VertexId x) const noexcept { return u == x || v == x; }
  VertexId other(VertexId x) const noexcept { return u == x ? v : u; }

  friend bool operator==(const TimeEdge& a, const TimeEdge& b) noexcept {
    return a.lo() == b.lo() && a.hi() == b.hi() && a.t == b.t;
  }
};

using VertexPair = std::pair<VertexId, VertexId>;

struct GraphClass {
  bool simple = false;
  bool proper = false;
  bool happy = false;

  friend bool operator==(const GraphClass&, const GraphClass&) = default;
};

/// Immutable temporal graph: `n` vertices, a list of time edges, lifetime = max label.
class TemporalGraph {
 public:
  /// Validates and normalizes; throws Error on self-loops, bad endpoints,
  /// non-positive labels or duplicate (pair, label) triples.
  static TemporalGraph build(std::size_t n, std::vector<TimeEdge> edges);

  TemporalGraph() = default;

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Label lifetime() const noexcept { return lifetime_; }

  const std::vector<TimeEdge>& edges() const noexcept { return edges_; }
  const TimeEdge& edge(EdgeIndex i) const { return edges_.at(i); }

  /// Edge indices ordered by (label, index).
  std::span<const EdgeIndex> by_label() const noexcept { return by_label_; }
  std::span<const EdgeIndex> incident(VertexId v) const { return incident_.at(v); }

  /// Lowest-index edge joining a and b, if any.
  std::optional<EdgeIndex> find_edge(VertexId a, VertexId b) const;
  std::optional<EdgeIndex> find_edge(VertexId a, VertexId b, Label t) const;

  EdgeSet all_edges() const { return EdgeSet(edges_.size()).set(); }
  EdgeSet no_edges() const { return EdgeSet(edges_.size()); }

 private:
  std::size_t n_ = 0;
  Label lifetime_ = 1;
  std::vector<TimeEdge> edges_;
  std::vector<EdgeIndex> by_label_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

/// Edge subset of a parent graph. The parent must outlive the spanner.
class Spanner {
 public:
  Spanner(const TemporalGraph& parent, EdgeSet kept);
  Spanner(const TemporalGraph& parent, std::span<const EdgeIndex> kept);

  const TemporalGraph& parent() const noexcept { return *parent_; }
  const EdgeSet& kept() const noexcept { return kept_; }
  std::size_t size() const noexcept { return kept_.count(); }
  std::vector<EdgeIndex> indices() const;
  bool contains(EdgeIndex i) const { return kept_.test(i); }

 private:
  const TemporalGraph* parent_;
  EdgeSet kept_;
};

GraphClass classify(const TemporalGraph& g);

/// Distinct endpoint pairs (lo, hi), sorted.
std::vector<VertexPair> underlying_graph(const TemporalGraph& g);

/// Requires a simple graph. Relabels edges 1..m by their position in the
/// (label, min endpoint, max endpoint, index) order; stored edge order is kept.
TemporalGraph relabel_to_happy(const TemporalGraph& g);

/// Subgraph on the same vertex set keeping only the edges in `keep`, in index order.
TemporalGraph restrict(const TemporalGraph& g, const EdgeSet& keep);

std::vector<EdgeIndex> to_indices(const EdgeSet& set);
EdgeSet to_edge_set(std::size_t m, std::span<const EdgeIndex> indices);

}  // namespace tempspan
