#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tempspan/temporal_graph.hpp"

namespace tempspan {

enum class Strictness { Strict, NonStrict };

struct ArrivalProfile {
  VertexId source = 0;
  Label start = 0;
  /// nullopt = unreachable.
  std::vector<std::optional<Label>> arrival;
  /// Edge by which each vertex was first reached; nullopt for the source and unreached vertices.
  std::vector<std::optional<EdgeIndex>> via;

  bool reaches_all() const;
};

/// Earliest arrival from `source` over journeys whose first edge has label >= start.
ArrivalProfile earliest_arrival(const TemporalGraph& g, VertexId source, Label start = 0,
                                Strictness s = Strictness::Strict);
/// Same, restricted to the edges in `active`.
ArrivalProfile earliest_arrival(const TemporalGraph& g, const EdgeSet& active, VertexId source,
                                Label start = 0, Strictness s = Strictness::Strict);

/// Boolean n x n matrix, row u = vertices reachable from u.
class ReachMatrix {
 public:
  explicit ReachMatrix(std::vector<boost::dynamic_bitset<>> rows) : rows_(std::move(rows)) {}

  std::size_t size() const noexcept { return rows_.size(); }
  bool operator()(VertexId from, VertexId to) const { return rows_.at(from).test(to); }
  const boost::dynamic_bitset<>& row(VertexId from) const { return rows_.at(from); }
  bool all() const;

  friend bool operator==(const ReachMatrix&, const ReachMatrix&) = default;

 private:
  std::vector<boost::dynamic_bitset<>> rows_;
};

ReachMatrix reach_matrix(const TemporalGraph& g, Strictness s = Strictness::Strict);
ReachMatrix reach_matrix(const TemporalGraph& g, const EdgeSet& active, Strictness s = Strictness::Strict);

bool is_tc(const TemporalGraph& g, Strictness s = Strictness::Strict);
bool is_tc(const TemporalGraph& g, const EdgeSet& active, Strictness s = Strictness::Strict);

/// Which sources must reach every vertex. An empty source list means all vertices (plain TC).
struct Requirement {
  std::vector<VertexId> sources;

  static Requirement all_pairs() { return {}; }
  static Requirement two_source(VertexId s1, VertexId s2) { return {{s1, s2}}; }
  bool is_all_pairs() const noexcept { return sources.empty(); }
};

bool satisfies(const TemporalGraph& g, const EdgeSet& active, const Requirement& req,
               Strictness s = Strictness::Strict);

/// Repeated requirement checks against one graph with preallocated scratch space.
/// Not thread-safe; use one per thread.
class ReachChecker {
 public:
  ReachChecker(const TemporalGraph& g, Requirement req, Strictness s);

  bool operator()(const EdgeSet& active);
  /// Same as operator() on `active` minus edge `skip`.
  bool without(const EdgeSet& active, EdgeIndex skip);

  std::size_t calls() const noexcept { return calls_; }

 private:
  bool run(const EdgeSet& active, std::optional<EdgeIndex> skip);

  const TemporalGraph* g_;
  Requirement req_;
  Strictness strictness_;
  std::size_t words_;
  std::vector<VertexId> sources_;
  // Label groups of edge indices; disjoint_ is true when no endpoint repeats within the group.
  std::vector<std::vector<EdgeIndex>> groups_;
  std::vector<char> disjoint_;
  std::vector<std::uint64_t> reached_;
  std::vector<std::uint64_t> scratch_;
  std::size_t calls_ = 0;
};

struct TemporalOutTree {
  VertexId root = 0;
  EdgeSet tree_edges;
};

/// Throws RootNotSpanning if the root misses some vertex.
TemporalOutTree foremost_out_tree(const TemporalGraph& g, VertexId root, Strictness s = Strictness::Strict);
TemporalOutTree foremost_out_tree(const TemporalGraph& g, const EdgeSet& active, VertexId root,
                                  Strictness s = Strictness::Strict);

/// n-1 edges, spanning tree, labels increasing away from the root
/// (strictly, or non-decreasing under NonStrict).
bool verify_out_tree(const TemporalGraph& g, const EdgeSet& candidate, VertexId root,
                     Strictness s = Strictness::Strict);

}  // namespace tempspan
