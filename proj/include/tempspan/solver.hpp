#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tempspan/reach.hpp"
#include "tempspan/temporal_graph.hpp"

namespace tempspan {

/// Edges whose single removal breaks the requirement. Throws RequirementNotSatisfied
/// if the full graph already fails it.
EdgeSet forced_edges(const TemporalGraph& g, Strictness s = Strictness::Strict,
                     const Requirement& req = Requirement::all_pairs());

enum class ExactStrategy { BranchAndBound, Enumerate };

struct ExactOptions {
  Strictness strictness = Strictness::Strict;
  Requirement requirement;
  /// Decision mode: stop at the first spanner with at most this many edges.
  std::optional<std::size_t> budget;
  /// Edges that every returned spanner must keep, on top of the forced ones.
  std::optional<EdgeSet> keep;
  /// Guard on edges that are neither forced nor kept.
  std::size_t removable_cap = 40;
  ExactStrategy strategy = ExactStrategy::BranchAndBound;
  /// Strict all-pairs only: start from the gossip call-count bounds (2n-4, or
  /// 2n-3 when the underlying graph has no 4-cycle) instead of n-1.
  bool call_count_bounds = true;
  /// Known feasible spanner used as the starting incumbent (warm start).
  std::optional<EdgeSet> incumbent;
  /// Randomized greedy passes that seed the incumbent (fixed seed).
  std::size_t greedy_restarts = 128;
};

struct SolveResult {
  EdgeSet kept;
  std::size_t size = 0;
  /// True when no smaller edge subset satisfies the requirement.
  bool optimal = false;
  /// Set when a budget was given.
  std::optional<bool> within_budget;
  std::uint64_t nodes = 0;
};

SolveResult min_spanner_exact(const TemporalGraph& g, const ExactOptions& opts = {});

struct VertexCover {
  std::vector<VertexId> members;  // sorted
  std::size_t size() const noexcept { return members.size(); }
  bool contains(VertexId v) const;
};

/// Minimum vertex cover by bounded search tree.
VertexCover min_vertex_cover(std::span<const VertexPair> edges, std::size_t n);
bool is_vertex_cover(std::span<const VertexPair> edges, const VertexCover& cover);

/// Out-tree skeleton over cover vertices and placeholders. Node 0 is the root.
struct Template {
  struct Node {
    /// Cover vertex id, or nullopt for a placeholder.
    std::optional<VertexId> cover;
    /// Parent node index; -1 for the root.
    int parent = -1;
  };
  std::vector<Node> nodes;

  VertexId root() const { return *nodes.front().cover; }
  std::size_t placeholder_count() const;
  std::size_t cover_count() const;
  /// Canonical text form, equal for equal trees.
  std::string canonical() const;
};

/// Yields every template over the cover exactly once.
void for_each_template(const VertexCover& cover, const std::function<void(const Template&)>& fn);
std::vector<Template> enumerate_templates(const VertexCover& cover);

/// Placeholder node index -> vertex of V \ X, in node order.
using PlaceholderMap = std::vector<std::pair<int, VertexId>>;
/// Leaf vertex of V \ X -> cover vertex it hangs from.
using LeafAttachment = std::vector<std::pair<VertexId, VertexId>>;

/// Maps arcs to the unique underlying edges; nullopt when an arc or leaf edge is missing.
std::optional<EdgeSet> instantiate_template(const TemporalGraph& g, const Template& t, const PlaceholderMap& zeta,
                                            const LeafAttachment& attach);

/// Per-vertex extra edges for V \ X, or nullopt when some vertex has no fix.
/// Entry v is nullopt for cover vertices and for vertices that need no extra edge.
std::optional<std::vector<std::optional<EdgeIndex>>> select_extra_edges(const TemporalGraph& g,
                                                                        const EdgeSet& tree_union,
                                                                        const VertexCover& cover);

struct XpOptions {
  std::optional<std::size_t> budget;
};

struct XpStats {
  std::uint64_t templates = 0;
  std::uint64_t skeletons = 0;
  std::uint64_t unions_checked = 0;
};

struct XpResult {
  SolveResult result;
  VertexCover cover;
  XpStats stats;
};

/// Requires a happy, temporally connected graph.
XpResult min_spanner_xp_vc(const TemporalGraph& g, const XpOptions& opts = {});

struct VcTreeDecomposition {
  std::vector<TemporalOutTree> trees;
  /// Indexed by vertex; set only for vertices of V \ X whose edge to its cover vertex is outside the trees.
  std::vector<std::optional<EdgeIndex>> extras;
};

/// Rebuilds the tree-plus-extras structure of a minimum spanner; nullopt when the
/// spanner does not have that shape. Throws NotTemporallyConnected.
std::optional<VcTreeDecomposition> vc_tree_decompose(const Spanner& spanner, const VertexCover& cover);

}  // namespace tempspan
