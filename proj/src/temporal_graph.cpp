#include "tempspan/temporal_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace tempspan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateTimeEdge: return "DuplicateTimeEdge";
    case ErrorCode::EndpointOutOfRange: return "EndpointOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RootNotSpanning: return "RootNotSpanning";
    case ErrorCode::RequirementNotSatisfied: return "RequirementNotSatisfied";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NotHappy: return "NotHappy";
    case ErrorCode::NotTemporallyConnected: return "NotTemporallyConnected";
    case ErrorCode::AssignmentDoesNotSatisfy: return "AssignmentDoesNotSatisfy";
    case ErrorCode::OddEdgeCount: return "OddEdgeCount";
    case ErrorCode::NotASelectionEdge: return "NotASelectionEdge";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
    case ErrorCode::NotAClique: return "NotAClique";
  }
  return "Unknown";
}

TemporalGraph TemporalGraph::build(std::size_t n, std::vector<TimeEdge> edges) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "vertex count must be positive");

  std::set<std::tuple<VertexId, VertexId, Label>> seen;
  Label max_label = 1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const TimeEdge& e = edges[i];
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::EndpointOutOfRange, "edge " + std::to_string(i) + " has endpoint >= " +
                                                     std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "edge " + std::to_string(i));
    if (e.t < 1) throw Error(ErrorCode::InvalidLabel, "edge " + std::to_string(i) + " has label < 1");
    if (!seen.emplace(e.lo(), e.hi(), e.t).second) {
      throw Error(ErrorCode::DuplicateTimeEdge,
                  "({" + std::to_string(e.lo()) + "," + std::to_string(e.hi()) + "}," +
                      std::to_string(e.t) + ")");
    }
    max_label = std::max(max_label, e.t);
  }

  TemporalGraph g;
  g.n_ = n;
  g.lifetime_ = max_label;
  g.edges_ = std::move(edges);
  g.by_label_.resize(g.edges_.size());
  std::iota(g.by_label_.begin(), g.by_label_.end(), EdgeIndex{0});
  std::stable_sort(g.by_label_.begin(), g.by_label_.end(),
                   [&](EdgeIndex a, EdgeIndex b) { return g.edges_[a].t < g.edges_[b].t; });
  g.incident_.assign(n, {});
  for (EdgeIndex i = 0; i < g.edges_.size(); ++i) {
    g.incident_[g.edges_[i].u].push_back(i);
    g.incident_[g.edges_[i].v].push_back(i);
  }
  return g;
}

std::optional<EdgeIndex> TemporalGraph::find_edge(VertexId a, VertexId b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  for (EdgeIndex i : incident_[a]) {
    if (edges_[i].other(a) == b) return i;
  }
  return std::nullopt;
}

std::optional<EdgeIndex> TemporalGraph::find_edge(VertexId a, VertexId b, Label t) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  for (EdgeIndex i : incident_[a]) {
    if (edges_[i].other(a) == b && edges_[i].t == t) return i;
  }
  return std::nullopt;
}

Spanner::Spanner(const TemporalGraph& parent, EdgeSet kept) : parent_(&parent), kept_(std::move(kept)) {
  if (kept_.size() != parent.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "spanner edge set sized for a different graph");
  }
}

Spanner::Spanner(const TemporalGraph& parent, std::span<const EdgeIndex> kept)
    : parent_(&parent), kept_(parent.edge_count()) {
  for (EdgeIndex i : kept) {
    if (i >= parent.edge_count()) {
      throw Error(ErrorCode::InvalidArgument, "spanner edge index " + std::to_string(i) + " out of range");
    }
    if (kept_.test(i)) throw Error(ErrorCode::InvalidArgument, "spanner edge index repeated");
    kept_.set(i);
  }
}

std::vector<EdgeIndex> Spanner::indices() const { return to_indices(kept_); }

GraphClass classify(const TemporalGraph& g) {
  GraphClass c;
  std::set<VertexPair> pairs;
  for (const TimeEdge& e : g.edges()) pairs.emplace(e.lo(), e.hi());
  c.simple = pairs.size() == g.edge_count();

  c.proper = true;
  std::set<std::pair<VertexId, Label>> endpoint_labels;
  for (const TimeEdge& e : g.edges()) {
    if (!endpoint_labels.emplace(e.u, e.t).second || !endpoint_labels.emplace(e.v, e.t).second) {
      c.proper = false;
      break;
    }
  }
  c.happy = c.simple && c.proper;
  return c;
}

std::vector<VertexPair> underlying_graph(const TemporalGraph& g) {
  std::vector<VertexPair> pairs;
  pairs.reserve(g.edge_count());
  for (const TimeEdge& e : g.edges()) pairs.emplace_back(e.lo(), e.hi());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

TemporalGraph relabel_to_happy(const TemporalGraph& g) {
  if (!classify(g).simple) throw Error(ErrorCode::NotSimple, "relabeling needs one label per edge");
  const auto& edges = g.edges();
  std::vector<EdgeIndex> order(edges.size());
  std::iota(order.begin(), order.end(), EdgeIndex{0});
  std::sort(order.begin(), order.end(), [&](EdgeIndex a, EdgeIndex b) {
    return std::tuple(edges[a].t, edges[a].lo(), edges[a].hi(), a) <
           std::tuple(edges[b].t, edges[b].lo(), edges[b].hi(), b);
  });
  std::vector<TimeEdge> relabeled = edges;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    relabeled[order[pos]].t = static_cast<Label>(pos + 1);
  }
  return TemporalGraph::build(g.vertex_count(), std::move(relabeled));
}

TemporalGraph restrict(const TemporalGraph& g, const EdgeSet& keep) {
  std::vector<TimeEdge> edges;
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (keep.test(i)) edges.push_back(g.edge(i));
  }
  return TemporalGraph::build(g.vertex_count(), std::move(edges));
}

std::vector<EdgeIndex> to_indices(const EdgeSet& set) {
  std::vector<EdgeIndex> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != EdgeSet::npos; i = set.find_next(i)) out.push_back(i);
  return out;
}

EdgeSet to_edge_set(std::size_t m, std::span<const EdgeIndex> indices) {
  EdgeSet s(m);
  for (EdgeIndex i : indices) s.set(i);
  return s;
}

}  // namespace tempspan
