#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include <boost/pending/disjoint_sets.hpp>

#include "tempspan/reductions.hpp"

namespace tempspan {

namespace {

std::string pair_tag(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Cycle positions: 3l is v_{l,i}, 3l+1 is v_{l,j}, 3l+2 is u_l; cycle edge q joins q and q+1.
void append_selection_cycle(std::vector<TimeEdge>& edges, VertexId first, std::size_t e_ij, Label high_base) {
  const std::size_t len = 3 * e_ij;
  const auto half = static_cast<Label>(3 * e_ij / 2);
  for (std::size_t q = 0; q < len; ++q) {
    const VertexId a = first + static_cast<VertexId>(q);
    const VertexId b = first + static_cast<VertexId>((q + 1) % len);
    for (Label t = 5; t <= half + 4; ++t) edges.push_back({a, b, t});
    for (Label t = high_base; t < high_base + half; ++t) edges.push_back({a, b, t});
  }
}

struct CycleEdge {
  std::size_t from, to;
  Label t;
};

// Two paths leave the anchor edge in opposite directions; the r-th edge of each
// carries high_base + r and the mirrored low label.
std::vector<CycleEdge> selection_witness(std::size_t e_ij, std::size_t chosen, Label high_base) {
  const std::size_t len = 3 * e_ij;
  const std::size_t half = 3 * e_ij / 2;
  const std::size_t a = 3 * chosen, b = a + 1;
  std::vector<CycleEdge> out{{a, b, high_base}};
  for (std::size_t r = 1; r < half; ++r) {
    const Label high = high_base + static_cast<Label>(r);
    const Label low = static_cast<Label>(half - r + 4);
    const std::size_t fwd = (b + r - 1) % len, fwd_next = (b + r) % len;
    const std::size_t back = (a + len - r + 1) % len, back_next = (a + len - r) % len;
    for (Label t : {high, low}) {
      out.push_back({fwd, fwd_next, t});
      out.push_back({back, back_next, t});
    }
  }
  return out;
}

}  // namespace

EdgeSelectionGadget edge_selection_gadget(std::size_t i, std::size_t j, std::size_t e_ij, std::size_t m,
                                          std::size_t k, std::size_t n) {
  if (e_ij == 0 || e_ij % 2 != 0) {
    throw Error(ErrorCode::OddEdgeCount, "selection gadget needs a positive even edge count, got " +
                                             std::to_string(e_ij));
  }
  if (e_ij > m) throw Error(ErrorCode::InvalidArgument, "gadget edge count exceeds m");
  EdgeSelectionGadget gadget;
  gadget.selection_edges = e_ij;
  gadget.high_base = static_cast<Label>(3 * m / 2 + 4 * k * n + 5);
  const std::string tag = pair_tag(i, j);
  for (std::size_t l = 0; l < e_ij; ++l) {
    gadget.roles.push_back("v" + tag + "[" + std::to_string(l) + "," + std::to_string(i) + "]");
    gadget.roles.push_back("v" + tag + "[" + std::to_string(l) + "," + std::to_string(j) + "]");
    gadget.roles.push_back("u" + tag + "[" + std::to_string(l) + "]");
  }
  std::vector<TimeEdge> edges;
  append_selection_cycle(edges, 0, e_ij, gadget.high_base);
  gadget.graph = TemporalGraph::build(3 * e_ij, std::move(edges));
  return gadget;
}

EdgeSet gadget_witness_spanner(const EdgeSelectionGadget& gadget, std::size_t chosen) {
  if (chosen >= gadget.selection_edges) {
    throw Error(ErrorCode::NotASelectionEdge, "selection edge " + std::to_string(chosen) + " of " +
                                                  std::to_string(gadget.selection_edges));
  }
  EdgeSet kept = gadget.graph.no_edges();
  for (const CycleEdge& ce : selection_witness(gadget.selection_edges, chosen, gadget.high_base)) {
    kept.set(*gadget.graph.find_edge(static_cast<VertexId>(ce.from), static_cast<VertexId>(ce.to), ce.t));
  }
  return kept;
}

std::vector<std::pair<std::size_t, std::size_t>> MccInstance::between(std::size_t i, std::size_t j) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const MccEdge& e : edges) {
    if (e.color_a == i && e.color_b == j) out.emplace_back(e.index_a, e.index_b);
    if (e.color_a == j && e.color_b == i) out.emplace_back(e.index_b, e.index_a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void MccInstance::validate() const {
  if (color_count < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 colors");
  if (class_size == 0) throw Error(ErrorCode::InvalidArgument, "empty color classes");
  for (const MccEdge& e : edges) {
    if (e.color_a >= color_count || e.color_b >= color_count || e.index_a >= class_size ||
        e.index_b >= class_size) {
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    }
    if (e.color_a == e.color_b) throw Error(ErrorCode::InvalidArgument, "edge inside one color class");
  }
  for (std::size_t i = 0; i < color_count; ++i) {
    for (std::size_t j = i + 1; j < color_count; ++j) {
      const std::size_t count = between(i, j).size();
      if (count == 0 || count % 2 != 0) {
        throw Error(ErrorCode::InvariantViolated, "colors " + pair_tag(i, j) + " have " + std::to_string(count) +
                                                      " edges; need a positive even count");
      }
    }
  }
  for (std::size_t i = 0; i < color_count; ++i) {
    bool found = false;
    for (std::size_t a = 0; a < class_size && !found; ++a) {
      std::set<std::size_t> colors;
      for (const MccEdge& e : edges) {
        if (e.color_a == i && e.index_a == a) colors.insert(e.color_b);
        if (e.color_b == i && e.index_b == a) colors.insert(e.color_a);
      }
      found = colors.size() == color_count - 1;
    }
    if (!found) {
      throw Error(ErrorCode::InvariantViolated,
                  "color " + std::to_string(i) + " has no vertex adjacent to every other color");
    }
  }
}

MccInstance parse_mcc(std::istream& in) {
  MccInstance inst;
  std::set<MccEdge> seen;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string extra;
    if (!have_header) {
      long long k = -1, n = -1;
      if (!(ls >> k >> n) || k < 0 || n < 0 || (ls >> extra)) throw ParseError(lineno, "expected `k n`");
      inst.color_count = static_cast<std::size_t>(k);
      inst.class_size = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }
    long long i = -1, a = -1, j = -1, b = -1;
    if (!(ls >> i >> a >> j >> b) || (ls >> extra)) throw ParseError(lineno, "expected `i a j b`");
    if (i < 0 || a < 0 || j < 0 || b < 0 || static_cast<std::size_t>(i) >= inst.color_count ||
        static_cast<std::size_t>(j) >= inst.color_count || static_cast<std::size_t>(a) >= inst.class_size ||
        static_cast<std::size_t>(b) >= inst.class_size) {
      throw ParseError(lineno, "endpoint out of range");
    }
    if (i == j) throw ParseError(lineno, "edge inside one color class");
    MccEdge e{static_cast<std::size_t>(i), static_cast<std::size_t>(a), static_cast<std::size_t>(j),
              static_cast<std::size_t>(b)};
    if (e.color_a > e.color_b) e = {e.color_b, e.index_b, e.color_a, e.index_a};
    if (!seen.insert(e).second) throw ParseError(lineno, "duplicate edge");
    inst.edges.push_back(e);
  }
  if (!have_header) throw ParseError(lineno, "missing `k n` header");
  return inst;
}

MccInstance parse_mcc(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_mcc(in);
}

std::string serialize_mcc(const MccInstance& inst) {
  std::ostringstream out;
  out << inst.color_count << ' ' << inst.class_size << '\n';
  for (const MccEdge& e : inst.edges) {
    out << e.color_a << ' ' << e.index_a << ' ' << e.color_b << ' ' << e.index_b << '\n';
  }
  return out.str();
}

MccInstance pad_to_even(const MccInstance& inst) {
  MccInstance out = inst;
  for (std::size_t i = 0; i < inst.color_count; ++i) {
    for (std::size_t j = i + 1; j < inst.color_count; ++j) {
      const auto pairs = inst.between(i, j);
      if (pairs.size() % 2 != 0) out.edges.push_back({i, pairs.back().first, j, pairs.back().second});
    }
  }
  return out;
}

std::string GadgetTag::to_string() const {
  switch (kind) {
    case GadgetKind::Selection: return "selection" + pair_tag(a, b);
    case GadgetKind::Validator:
      return "validator(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    case GadgetKind::Connector: return "connector";
  }
  return "unknown";
}

namespace {

class MccBuilder {
 public:
  explicit MccBuilder(const MccInstance& inst) : inst_(inst), k_(inst.color_count), n_(inst.class_size) {}

  MccReductionOutput run() {
    MccReductionOutput& out = out_;
    out.instance = inst_;

    std::size_t total_edges = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = i + 1; j < k_; ++j) {
        MccSelectionLayout layout{i, j, 0, inst_.between(i, j)};
        m_ = std::max(m_, layout.edges.size());
        total_edges += layout.edges.size();
        selection_index_[{i, j}] = out.selections.size();
        out.selections.push_back(std::move(layout));
      }
    }
    out.high_base = static_cast<Label>(3 * m_ / 2 + 4 * k_ * n_ + 5);
    const Label hub_high = out.high_base + 1;

    build_selections();
    build_validators();
    const std::size_t before_connector = edges_.size();
    const std::vector<VertexId> hubs = build_hubs(hub_high);
    build_y_vertices(hub_high);

    out.connector_edges = edges_.size() - before_connector;
    const std::size_t pairs = k_ * (k_ - 1) / 2;
    const std::size_t validator_combos = k_ * (k_ - 1) * (k_ - 2) / 2;
    out.budget = 6 * total_edges - 2 * pairs + 8 * validator_combos + out.connector_edges;

    out.fvs = hubs;
    out.fvs.insert(out.fvs.end(), y_.begin(), y_.end());
    for (const MccSelectionLayout& s : out.selections) out.fvs.push_back(s.first_vertex);
    for (const auto& [key, vertex] : w_center_) out.fvs.push_back(vertex);
    std::sort(out.fvs.begin(), out.fvs.end());

    out.graph = TemporalGraph::build(roles_.size(), std::move(edges_));
    out.roles = std::move(roles_);
    out.gadget_map = std::move(tags_);
    return std::move(out_);
  }

 private:
  VertexId add_vertex(std::string role) {
    roles_.push_back(std::move(role));
    return static_cast<VertexId>(roles_.size() - 1);
  }

  void add_edge(VertexId a, VertexId b, Label t, const GadgetTag& tag) {
    edges_.push_back({a, b, t});
    tags_.push_back(tag);
  }

  // Vertex of color `color` on selection edge l of the gadget for {color, other}.
  VertexId endpoint(std::size_t color, std::size_t other, std::size_t l) const {
    const auto& s = out_.selections[selection_index_.at({std::min(color, other), std::max(color, other)})];
    return s.first_vertex + static_cast<VertexId>(3 * l + (color == s.color_i ? 0 : 1));
  }

  void build_selections() {
    for (std::size_t s = 0; s < out_.selections.size(); ++s) {
      MccSelectionLayout& layout = out_.selections[s];
      const std::string tag = pair_tag(layout.color_i, layout.color_j);
      layout.first_vertex = static_cast<VertexId>(roles_.size());
      for (std::size_t l = 0; l < layout.edges.size(); ++l) {
        add_vertex("v" + tag + "[" + std::to_string(l) + "," + std::to_string(layout.color_i) + "]");
        add_vertex("v" + tag + "[" + std::to_string(l) + "," + std::to_string(layout.color_j) + "]");
        add_vertex("u" + tag + "[" + std::to_string(l) + "]");
      }
      append_selection_cycle(edges_, layout.first_vertex, layout.edges.size(), out_.high_base);
      tags_.resize(edges_.size(), GadgetTag{GadgetKind::Selection, layout.color_i, layout.color_j, 0});
      out_.selection_low_top.push_back(static_cast<Label>(3 * layout.edges.size() / 2 + 4));
    }
  }

  // Selection edges of gadget {i, other} grouped by their color-i endpoint.
  std::map<std::size_t, std::vector<std::size_t>> edges_at_color(std::size_t i, std::size_t other) const {
    const auto& s = out_.selections[selection_index_.at({std::min(i, other), std::max(i, other)})];
    std::map<std::size_t, std::vector<std::size_t>> out;
    for (std::size_t l = 0; l < s.edges.size(); ++l) {
      out[i == s.color_i ? s.edges[l].first : s.edges[l].second].push_back(l);
    }
    return out;
  }

  void build_validators() {
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        for (std::size_t j2 = j + 1; j2 < k_; ++j2) {
          if (j == i || j2 == i) continue;
          w_center_[{i, j, j2}] = add_vertex("w(" + std::to_string(j) + "," + std::to_string(j2) + ")[" +
                                             std::to_string(i) + "]");
          w_center_[{i, j2, j}] = add_vertex("w(" + std::to_string(j2) + "," + std::to_string(j) + ")[" +
                                             std::to_string(i) + "]");
        }
      }
    }
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        for (std::size_t j2 = j + 1; j2 < k_; ++j2) {
          if (j == i || j2 == i) continue;
          const auto left = edges_at_color(i, j);
          const auto right = edges_at_color(i, j2);
          for (const auto& [a, ls] : left) {
            const auto it = right.find(a);
            if (it == right.end()) continue;
            for (std::size_t l : ls) {
              for (std::size_t l2 : it->second) add_validator(i, j, j2, a, l, l2);
            }
          }
        }
      }
    }
  }

  void add_validator(std::size_t i, std::size_t j, std::size_t j2, std::size_t a, std::size_t l, std::size_t l2) {
    const std::size_t h = i * n_ + a + 1;
    const Label low = static_cast<Label>(3 * m_ / 2 + 2 * h + 4);
    const Label high = static_cast<Label>(3 * m_ / 2 + 2 * n_ + 2 * h + 4);
    const std::string hs = "," + std::to_string(h - 1);
    auto name = [&](std::size_t p, std::size_t q, int which) {
      return "w(" + std::to_string(p) + "," + std::to_string(q) + ")[" + std::to_string(i) + hs + "," +
             std::to_string(which) + "]";
    };
    const VertexId w1 = add_vertex(name(j, j2, 1));
    const VertexId w2 = add_vertex(name(j, j2, 2));
    const VertexId w1r = add_vertex(name(j2, j, 1));
    const VertexId w2r = add_vertex(name(j2, j, 2));
    const VertexId va = endpoint(i, j, l);
    const VertexId vb = endpoint(i, j2, l2);
    const VertexId center = w_center_.at({i, j, j2});
    const VertexId center_r = w_center_.at({i, j2, j});
    const GadgetTag tag{GadgetKind::Validator, i, j, j2};

    out_.validators.push_back({i, j, j2, l, l2, edges_.size()});
    add_edge(va, w1, low, tag);
    add_edge(w1, center, low + 1, tag);
    add_edge(center, w2, high, tag);
    add_edge(w2, vb, high + 1, tag);
    add_edge(vb, w1r, low, tag);
    add_edge(w1r, center_r, low + 1, tag);
    add_edge(center_r, w2r, high, tag);
    add_edge(w2r, va, high + 1, tag);
  }

  std::vector<VertexId> build_hubs(Label hub_high) {
    const GadgetTag tag{GadgetKind::Connector, 0, 0, 0};
    std::vector<VertexId> hubs;
    const auto& sel = out_.selections;
    for (std::size_t g1 = 0; g1 < sel.size(); ++g1) {
      for (std::size_t g2 = 0; g2 < sel.size(); ++g2) {
        const std::set<std::size_t> colors{sel[g1].color_i, sel[g1].color_j, sel[g2].color_i, sel[g2].color_j};
        if (colors.size() != 4) continue;
        const VertexId hub = add_vertex("hub" + pair_tag(sel[g1].color_i, sel[g1].color_j) +
                                        pair_tag(sel[g2].color_i, sel[g2].color_j));
        hubs.push_back(hub);
        for (std::size_t p = 0; p < 3 * sel[g1].edges.size(); ++p) {
          add_edge(sel[g1].first_vertex + static_cast<VertexId>(p), hub, 4, tag);
        }
        for (std::size_t p = 0; p < 3 * sel[g2].edges.size(); ++p) {
          add_edge(sel[g2].first_vertex + static_cast<VertexId>(p), hub, hub_high, tag);
        }
      }
    }
    return hubs;
  }

  void build_y_vertices(Label hub_high) {
    const GadgetTag tag{GadgetKind::Connector, 0, 0, 0};
    // Everything added after the selection gadgets is a hub or an adjacency vertex.
    const auto first_outside = static_cast<VertexId>(
        out_.selections.back().first_vertex + 3 * out_.selections.back().edges.size());
    const auto last = static_cast<VertexId>(roles_.size());
    for (int q = 1; q <= 4; ++q) y_.push_back(add_vertex("y" + std::to_string(q)));
    for (VertexId x = first_outside; x < last; ++x) {
      add_edge(x, y_[0], 1, tag);
      add_edge(x, y_[1], 3, tag);
      add_edge(x, y_[2], hub_high + 1, tag);
      add_edge(x, y_[3], hub_high + 3, tag);
    }
    add_edge(y_[0], y_[1], 2, tag);
    add_edge(y_[2], y_[3], hub_high + 2, tag);
    add_edge(y_[0], y_[3], 1, tag);
    add_edge(y_[0], y_[3], hub_high + 3, tag);
    add_edge(y_[0], y_[2], 1, tag);
    add_edge(y_[1], y_[3], hub_high + 3, tag);
  }

  const MccInstance& inst_;
  std::size_t k_, n_;
  std::size_t m_ = 0;
  MccReductionOutput out_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> selection_index_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, VertexId> w_center_;
  std::vector<VertexId> y_;
  std::vector<std::string> roles_;
  std::vector<TimeEdge> edges_;
  std::vector<GadgetTag> tags_;
};

}  // namespace

MccReductionOutput mcc_to_spanner_instance(const MccInstance& inst) {
  inst.validate();
  return MccBuilder(inst).run();
}

Spanner mcc_witness_spanner(const MccReductionOutput& out, const std::vector<std::size_t>& clique) {
  const MccInstance& inst = out.instance;
  if (clique.size() != inst.color_count) {
    throw Error(ErrorCode::NotAClique, "need one vertex per color");
  }
  const TemporalGraph& g = out.graph;
  EdgeSet kept = g.no_edges();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (out.gadget_map[e].kind == GadgetKind::Connector) kept.set(e);
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> chosen;
  for (std::size_t s = 0; s < out.selections.size(); ++s) {
    const MccSelectionLayout& layout = out.selections[s];
    const std::pair<std::size_t, std::size_t> target{clique[layout.color_i], clique[layout.color_j]};
    const auto it = std::lower_bound(layout.edges.begin(), layout.edges.end(), target);
    if (it == layout.edges.end() || *it != target) {
      throw Error(ErrorCode::NotAClique, "no edge between colors " + pair_tag(layout.color_i, layout.color_j));
    }
    const auto l = static_cast<std::size_t>(it - layout.edges.begin());
    chosen[{layout.color_i, layout.color_j}] = l;
    for (const CycleEdge& ce : selection_witness(layout.edges.size(), l, out.high_base)) {
      kept.set(*g.find_edge(layout.first_vertex + static_cast<VertexId>(ce.from),
                            layout.first_vertex + static_cast<VertexId>(ce.to), ce.t));
    }
    const VertexId a = layout.first_vertex + static_cast<VertexId>(3 * l);
    kept.set(*g.find_edge(a, a + 1, out.selection_low_top[s]));
  }

  auto chosen_at = [&](std::size_t x, std::size_t y) { return chosen.at({std::min(x, y), std::max(x, y)}); };
  for (const MccValidatorLayout& val : out.validators) {
    if (val.edge_l != chosen_at(val.color, val.j) || val.edge_l2 != chosen_at(val.color, val.j2)) continue;
    for (EdgeIndex e = val.first_edge; e < val.first_edge + 8; ++e) kept.set(e);
  }
  return Spanner(g, std::move(kept));
}

std::optional<std::vector<std::size_t>> find_multicolored_clique(const MccInstance& inst) {
  std::set<MccEdge> present(inst.edges.begin(), inst.edges.end());
  auto adjacent = [&](std::size_t i, std::size_t a, std::size_t j, std::size_t b) {
    return i < j ? present.count({i, a, j, b}) > 0 : present.count({j, b, i, a}) > 0;
  };
  std::vector<std::size_t> pick;
  std::function<bool()> extend = [&]() {
    const std::size_t i = pick.size();
    if (i == inst.color_count) return true;
    for (std::size_t a = 0; a < inst.class_size; ++a) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = adjacent(j, pick[j], i, a);
      if (!ok) continue;
      pick.push_back(a);
      if (extend()) return true;
      pick.pop_back();
    }
    return false;
  };
  if (extend()) return pick;
  return std::nullopt;
}

bool is_feedback_vertex_set(const TemporalGraph& g, std::span<const VertexId> removed) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> gone(n);
  for (VertexId x : removed) gone.at(x) = true;
  boost::disjoint_sets_with_storage<> components(n);
  for (std::size_t x = 0; x < n; ++x) components.make_set(x);
  for (const auto& [a, b] : underlying_graph(g)) {
    if (gone[a] || gone[b]) continue;
    if (components.find_set(a) == components.find_set(b)) return false;
    components.union_set(a, b);
  }
  return true;
}

}  // namespace tempspan
