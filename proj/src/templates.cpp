#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "tempspan/solver.hpp"

namespace tempspan {

namespace {

// All set partitions of `items`, each block a sorted vector.
void for_each_partition(const std::vector<VertexId>& items, std::size_t pos, std::vector<std::vector<VertexId>>& blocks,
                        const std::function<void(const std::vector<std::vector<VertexId>>&)>& fn) {
  if (pos == items.size()) {
    fn(blocks);
    return;
  }
  // Index loop: the recursion below may grow `blocks`.
  const std::size_t existing = blocks.size();
  for (std::size_t b = 0; b < existing; ++b) {
    blocks[b].push_back(items[pos]);
    for_each_partition(items, pos + 1, blocks, fn);
    blocks[b].pop_back();
  }
  blocks.push_back({items[pos]});
  for_each_partition(items, pos + 1, blocks, fn);
  blocks.pop_back();
}

// How the cover-children of one cover vertex hang: direct arcs, or grouped under a placeholder.
struct Split {
  std::vector<VertexId> direct;
  std::vector<std::vector<VertexId>> groups;
};

std::vector<Split> splits_of(const std::vector<VertexId>& children) {
  std::vector<Split> out;
  const std::size_t c = children.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << c); ++mask) {
    Split base;
    std::vector<VertexId> grouped;
    for (std::size_t i = 0; i < c; ++i) {
      if (mask >> i & 1) {
        base.direct.push_back(children[i]);
      } else {
        grouped.push_back(children[i]);
      }
    }
    std::vector<std::vector<VertexId>> blocks;
    for_each_partition(grouped, 0, blocks, [&](const std::vector<std::vector<VertexId>>& parts) {
      Split s = base;
      s.groups = parts;
      out.push_back(std::move(s));
    });
  }
  return out;
}

class TemplateBuilder {
 public:
  TemplateBuilder(VertexId root, const std::map<VertexId, std::vector<VertexId>>& cover_children,
                  const std::function<void(const Template&)>& fn)
      : root_(root), children_(cover_children), fn_(fn) {
    for (const auto& [v, kids] : children_) order_.push_back(v);
  }

  void run() { choose(0); }

 private:
  void choose(std::size_t k) {
    if (k == order_.size()) {
      emit();
      return;
    }
    for (const Split& s : splits_of(children_.at(order_[k]))) {
      chosen_[order_[k]] = s;
      choose(k + 1);
    }
  }

  void emit() {
    Template t;
    add_cover(t, root_, -1);
    fn_(t);
  }

  void add_cover(Template& t, VertexId x, int parent) {
    const int me = static_cast<int>(t.nodes.size());
    t.nodes.push_back({x, parent});
    const auto it = chosen_.find(x);
    if (it == chosen_.end()) return;
    for (VertexId c : it->second.direct) add_cover(t, c, me);
    for (const auto& group : it->second.groups) {
      const int p = static_cast<int>(t.nodes.size());
      t.nodes.push_back({std::nullopt, me});
      for (VertexId c : group) add_cover(t, c, p);
    }
  }

  VertexId root_;
  const std::map<VertexId, std::vector<VertexId>>& children_;
  const std::function<void(const Template&)>& fn_;
  std::vector<VertexId> order_;
  std::map<VertexId, Split> chosen_;
};

std::string canonical_at(const Template& t, const std::vector<std::vector<int>>& kids, int node) {
  std::vector<std::string> parts;
  for (int c : kids[node]) parts.push_back(canonical_at(t, kids, c));
  std::sort(parts.begin(), parts.end());
  std::string s = t.nodes[node].cover ? std::to_string(*t.nodes[node].cover) : "p";
  if (parts.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + ")";
}

}  // namespace

std::size_t Template::placeholder_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return !n.cover; }));
}

std::size_t Template::cover_count() const { return nodes.size() - placeholder_count(); }

std::string Template::canonical() const {
  std::vector<std::vector<int>> kids(nodes.size());
  for (std::size_t i = 1; i < nodes.size(); ++i) kids[nodes[i].parent].push_back(static_cast<int>(i));
  return canonical_at(*this, kids, 0);
}

void for_each_template(const VertexCover& cover, const std::function<void(const Template&)>& fn) {
  const auto& xs = cover.members;
  for (VertexId root : xs) {
    std::vector<VertexId> others;
    for (VertexId x : xs) {
      if (x != root) others.push_back(x);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
      std::vector<VertexId> chosen;
      for (std::size_t i = 0; i < others.size(); ++i) {
        if (mask >> i & 1) chosen.push_back(others[i]);
      }
      // Every parent function on the chosen cover vertices that forms a tree under the root.
      std::vector<VertexId> pool = chosen;
      pool.push_back(root);
      const std::size_t k = chosen.size();
      std::vector<std::size_t> par(k, 0);
      while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
          if (pool[par[i]] == chosen[i]) ok = false;
        }
        for (std::size_t i = 0; i < k && ok; ++i) {
          std::size_t cur = i;
          for (std::size_t steps = 0; steps <= k; ++steps) {
            if (pool[par[cur]] == root) break;
            cur = par[cur];
            if (steps == k) ok = false;
          }
        }
        if (ok) {
          std::map<VertexId, std::vector<VertexId>> kids;
          for (std::size_t i = 0; i < k; ++i) kids[pool[par[i]]].push_back(chosen[i]);
          TemplateBuilder(root, kids, fn).run();
        }
        std::size_t i = 0;
        while (i < k && ++par[i] == pool.size()) par[i++] = 0;
        if (i == k) break;
      }
    }
  }
}

std::vector<Template> enumerate_templates(const VertexCover& cover) {
  std::vector<Template> out;
  for_each_template(cover, [&](const Template& t) { out.push_back(t); });
  return out;
}

std::optional<EdgeSet> instantiate_template(const TemporalGraph& g, const Template& t, const PlaceholderMap& zeta,
                                            const LeafAttachment& attach) {
  std::vector<std::optional<VertexId>> at(t.nodes.size());
  std::set<VertexId> used;
  for (const auto& node : t.nodes) {
    if (node.cover) used.insert(*node.cover);
  }
  for (const auto& [node, v] : zeta) {
    if (node < 0 || static_cast<std::size_t>(node) >= t.nodes.size() || t.nodes[node].cover) {
      throw Error(ErrorCode::InvalidArgument, "placeholder map names a non-placeholder node");
    }
    if (v >= g.vertex_count() || !used.insert(v).second) {
      throw Error(ErrorCode::InvalidArgument, "placeholder map is not injective into free vertices");
    }
    at[node] = v;
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i].cover) at[i] = t.nodes[i].cover;
    if (!at[i]) throw Error(ErrorCode::InvalidArgument, "placeholder without an image");
  }

  EdgeSet tree = g.no_edges();
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const auto e = g.find_edge(*at[t.nodes[i].parent], *at[i]);
    if (!e) return std::nullopt;
    tree.set(*e);
  }
  for (const auto& [v, x] : attach) {
    if (v >= g.vertex_count() || !used.insert(v).second) {
      throw Error(ErrorCode::InvalidArgument, "leaf attachment repeats or overlaps the template");
    }
    const auto e = g.find_edge(v, x);
    if (!e) return std::nullopt;
    tree.set(*e);
  }
  return tree;
}

std::optional<std::vector<std::optional<EdgeIndex>>> select_extra_edges(const TemporalGraph& g,
                                                                        const EdgeSet& tree_union,
                                                                        const VertexCover& cover) {
  std::vector<std::optional<EdgeIndex>> extras(g.vertex_count());
  EdgeSet trial = tree_union;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (cover.contains(v)) continue;
    if (earliest_arrival(g, tree_union, v).reaches_all()) continue;
    std::vector<EdgeIndex> incident(g.incident(v).begin(), g.incident(v).end());
    std::sort(incident.begin(), incident.end());
    for (EdgeIndex e : incident) {
      if (tree_union.test(e)) continue;
      trial.set(e);
      const bool ok = earliest_arrival(g, trial, v).reaches_all();
      trial.reset(e);
      if (ok) {
        extras[v] = e;
        break;
      }
    }
    if (!extras[v]) return std::nullopt;
  }
  return extras;
}

}  // namespace tempspan
