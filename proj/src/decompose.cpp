#include <algorithm>

#include "tempspan/solver.hpp"

namespace tempspan {

std::optional<VcTreeDecomposition> vc_tree_decompose(const Spanner& spanner, const VertexCover& cover) {
  const TemporalGraph& g = spanner.parent();
  const EdgeSet& kept = spanner.kept();
  if (!is_tc(g, kept)) throw Error(ErrorCode::NotTemporallyConnected, "spanner is not temporally connected");
  const std::size_t n = g.vertex_count();

  // Each free vertex joins the cover vertex across its earliest kept edge.
  std::vector<std::optional<EdgeIndex>> first_edge(n);
  for (VertexId v = 0; v < n; ++v) {
    if (cover.contains(v)) continue;
    for (EdgeIndex e : g.incident(v)) {
      if (kept.test(e) && (!first_edge[v] || g.edge(e).t < g.edge(*first_edge[v]).t)) first_edge[v] = e;
    }
    if (!first_edge[v] || !cover.contains(g.edge(*first_edge[v]).other(v))) return std::nullopt;
  }

  VcTreeDecomposition out;
  out.extras.assign(n, std::nullopt);
  EdgeSet covered = g.no_edges();
  for (VertexId x : cover.members) {
    // Latest-joining member of x's group supplies the tree.
    std::optional<VertexId> anchor;
    for (VertexId v = 0; v < n; ++v) {
      if (!first_edge[v] || g.edge(*first_edge[v]).other(v) != x) continue;
      if (!anchor || g.edge(*first_edge[v]).t > g.edge(*first_edge[*anchor]).t) anchor = v;
    }
    TemporalOutTree tree = foremost_out_tree(g, kept, anchor ? *anchor : x);
    tree.root = x;
    if (!verify_out_tree(g, tree.tree_edges, x)) return std::nullopt;
    covered |= tree.tree_edges;
    out.trees.push_back(std::move(tree));
  }
  for (VertexId v = 0; v < n; ++v) {
    if (first_edge[v] && !covered.test(*first_edge[v])) out.extras[v] = first_edge[v];
  }
  for (const auto& e : out.extras) {
    if (e) covered.set(*e);
  }
  if (covered != kept) return std::nullopt;
  return out;
}

}  // namespace tempspan
