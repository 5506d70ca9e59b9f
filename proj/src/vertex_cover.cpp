#include <algorithm>

#include "tempspan/solver.hpp"

namespace tempspan {

namespace {

bool cover_within(std::span<const VertexPair> edges, std::vector<char>& in, std::size_t budget,
                  std::vector<VertexId>& chosen) {
  const auto open = std::find_if(edges.begin(), edges.end(), [&](const VertexPair& e) {
    return !in[e.first] && !in[e.second];
  });
  if (open == edges.end()) return true;
  if (budget == 0) return false;
  for (VertexId pick : {open->first, open->second}) {
    in[pick] = 1;
    chosen.push_back(pick);
    if (cover_within(edges, in, budget - 1, chosen)) return true;
    chosen.pop_back();
    in[pick] = 0;
  }
  return false;
}

}  // namespace

bool VertexCover::contains(VertexId v) const { return std::binary_search(members.begin(), members.end(), v); }

VertexCover min_vertex_cover(std::span<const VertexPair> edges, std::size_t n) {
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw Error(ErrorCode::EndpointOutOfRange, "edge endpoint beyond vertex count");
  }
  std::vector<char> in(n, 0);
  for (std::size_t k = 0;; ++k) {
    std::vector<VertexId> chosen;
    if (cover_within(edges, in, k, chosen)) {
      std::sort(chosen.begin(), chosen.end());
      return {chosen};
    }
  }
}

bool is_vertex_cover(std::span<const VertexPair> edges, const VertexCover& cover) {
  return std::all_of(edges.begin(), edges.end(),
                     [&](const VertexPair& e) { return cover.contains(e.first) || cover.contains(e.second); });
}

}  // namespace tempspan
