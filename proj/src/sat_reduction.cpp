#include <algorithm>
#include <sstream>
#include <string>

#include "tempspan/reductions.hpp"

namespace tempspan {

void SatInstance::validate() const {
  for (std::size_t p = 0; p < clauses.size(); ++p) {
    for (const Literal& lit : clauses[p]) {
      if (lit.variable >= variable_count) {
        throw Error(ErrorCode::InvalidArgument, "clause " + std::to_string(p) + " names variable " +
                                                    std::to_string(lit.variable) + " of " +
                                                    std::to_string(variable_count));
      }
    }
  }
}

bool SatInstance::satisfied_by(const std::vector<bool>& assignment) const {
  if (assignment.size() != variable_count) return false;
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return l.value_under(assignment); });
  });
}

SatInstance parse_dimacs(std::istream& in, bool pad_short) {
  SatInstance phi;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;

  auto close_clause = [&](std::size_t line) {
    if (pending.empty()) throw ParseError(line, "empty clause");
    if (pending.size() > 3) throw ParseError(line, "clause has " + std::to_string(pending.size()) + " literals");
    if (pending.size() < 3) {
      if (!pad_short) {
        throw ParseError(line, "clause has " + std::to_string(pending.size()) + " literals; use padding");
      }
      while (pending.size() < 3) pending.push_back(pending.back());
    }
    phi.clauses.push_back({pending[0], pending[1], pending[2]});
    pending.clear();
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      if (have_header) throw ParseError(lineno, "second problem line");
      std::string fmt;
      long long vars = -1, count = -1;
      if (!(ls >> fmt >> vars >> count) || fmt != "cnf" || vars < 0 || count < 0) {
        throw ParseError(lineno, "expected `p cnf VARS CLAUSES`");
      }
      phi.variable_count = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before problem line");
    ls.clear();
    ls.seekg(0);
    long long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        close_clause(lineno);
        continue;
      }
      const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
      if (var > phi.variable_count) {
        throw ParseError(lineno, "literal " + std::to_string(lit) + " exceeds variable count");
      }
      if (pending.empty()) pending_line = lineno;
      pending.push_back({var - 1, lit < 0});
    }
    if (!ls.eof()) throw ParseError(lineno, "expected integer literals");
  }
  if (!have_header) throw ParseError(lineno, "missing problem line");
  if (!pending.empty()) close_clause(pending_line);
  if (phi.clauses.size() != declared_clauses) {
    throw ParseError(0, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                            std::to_string(phi.clauses.size()));
  }
  return phi;
}

SatInstance parse_dimacs(std::string_view text, bool pad_short) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, pad_short);
}

std::string serialize_dimacs(const SatInstance& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.variable_count << ' ' << phi.clauses.size() << '\n';
  for (const Clause& c : phi.clauses) {
    for (const Literal& l : c) {
      const auto id = static_cast<long long>(l.variable) + 1;
      out << (l.negated ? -id : id) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

std::optional<std::vector<bool>> find_satisfying_assignment(const SatInstance& phi) {
  if (phi.variable_count > 24) throw Error(ErrorCode::InstanceTooLarge, "brute force limited to 24 variables");
  std::vector<bool> assignment(phi.variable_count);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << phi.variable_count); ++bits) {
    for (std::size_t q = 0; q < phi.variable_count; ++q) assignment[q] = (bits >> q) & 1;
    if (phi.satisfied_by(assignment)) return assignment;
  }
  return std::nullopt;
}

namespace {

class SatBuilder {
 public:
  explicit SatBuilder(const SatInstance& phi) : phi_(phi) {}

  SatReductionOutput run() {
    SatReductionOutput out;
    out.instance = phi_;
    out.u = add_vertex("u");
    out.v = add_vertex("v");
    out.w = add_vertex("w");
    const VertexId u = out.u, v = out.v, w = out.w;

    for (std::size_t q = 0; q < phi_.variable_count; ++q) {
      const std::string tag = "[" + std::to_string(q) + "]";
      SatVariableVertices x{};
      x.x1 = add_vertex("x1" + tag);
      x.x2 = add_vertex("x2" + tag);
      x.x_true = add_vertex("xT" + tag);
      x.x_false = add_vertex("xF" + tag);
      x.dummy = add_vertex("cx" + tag);
      x.dummy1 = add_vertex("cx1" + tag);
      x.dummy2 = add_vertex("cx2" + tag);
      out.variables.push_back(x);
    }
    for (std::size_t p = 0; p < phi_.clauses.size(); ++p) {
      const std::string tag = std::to_string(p);
      SatClauseVertices c{};
      c.c = add_vertex("c[" + tag + "]");
      for (std::size_t i = 0; i < 3; ++i) c.literal[i] = add_vertex("c[" + tag + "," + std::to_string(i + 1) + "]");
      out.clauses.push_back(c);
    }

    add_edge(u, v, 2, true);
    add_edge(u, w, 4, true);
    add_edge(v, w, 5, false);

    for (const SatVariableVertices& x : out.variables) {
      add_edge(v, x.x1, 3, true);
      add_edge(x.x1, x.x_true, 4, false);
      add_edge(x.x1, x.x_false, 4, false);
      add_edge(w, x.x2, 6, true);
      add_edge(x.x2, x.x_false, 7, true);
      add_edge(x.x1, x.x2, 8, true);
      add_edge(x.x_true, x.x_false, 8, true);
    }

    for (std::size_t p = 0; p < out.clauses.size(); ++p) {
      const SatClauseVertices& c = out.clauses[p];
      for (VertexId ci : c.literal) add_edge(c.c, ci, 7, false);
      for (VertexId ci : c.literal) add_edge(ci, v, 8, false);
      add_edge(c.c, w, p == 0 ? 2 : 3, true);
    }

    for (std::size_t p = 0; p < out.clauses.size(); ++p) {
      for (std::size_t i = 0; i < 3; ++i) {
        const Literal& lit = phi_.clauses[p][i];
        const SatVariableVertices& x = out.variables[lit.variable];
        add_edge(out.clauses[p].literal[i], lit.negated ? x.x_false : x.x_true, 6, false);
      }
    }

    for (const SatVariableVertices& x : out.variables) {
      add_edge(x.dummy, x.dummy1, 7, false);
      add_edge(x.dummy, x.dummy2, 7, false);
      add_edge(x.dummy1, v, 8, false);
      add_edge(x.dummy2, v, 8, false);
      add_edge(x.dummy1, x.x_true, 6, false);
      add_edge(x.dummy2, x.x_false, 6, false);
      add_edge(x.dummy, w, 3, true);
    }

    const VertexId c_star = out.clauses.front().c;
    for (VertexId y = 0; y < roles_.size(); ++y) {
      if (y == u || y == v || y == w || y == c_star) continue;
      add_edge(u, y, 1, true);
    }

    out.pre_relabel = TemporalGraph::build(roles_.size(), std::move(edges_));
    out.graph = relabel_to_happy(out.pre_relabel);
    out.critical = EdgeSet(critical_.size());
    for (std::size_t e = 0; e < critical_.size(); ++e) out.critical[e] = critical_[e];
    out.budget = out.graph.edge_count() - 5 * phi_.clauses.size() - 4 * phi_.variable_count;
    out.roles = std::move(roles_);
    return out;
  }

 private:
  VertexId add_vertex(std::string role) {
    roles_.push_back(std::move(role));
    return static_cast<VertexId>(roles_.size() - 1);
  }

  void add_edge(VertexId a, VertexId b, Label t, bool critical) {
    edges_.push_back({a, b, t});
    critical_.push_back(critical);
  }

  const SatInstance& phi_;
  std::vector<std::string> roles_;
  std::vector<TimeEdge> edges_;
  std::vector<bool> critical_;
};

}  // namespace

SatReductionOutput sat_to_spanner_instance(const SatInstance& phi) {
  phi.validate();
  if (phi.clauses.empty()) throw Error(ErrorCode::InvalidArgument, "formula needs at least one clause");
  return SatBuilder(phi).run();
}

Spanner sat_witness_spanner(const SatReductionOutput& out, const std::vector<bool>& assignment) {
  const SatInstance& phi = out.instance;
  if (!phi.satisfied_by(assignment)) {
    throw Error(ErrorCode::AssignmentDoesNotSatisfy, "assignment leaves a clause false");
  }
  const TemporalGraph& g = out.graph;
  EdgeSet kept = g.all_edges();
  auto drop = [&](VertexId a, VertexId b) {
    const auto e = g.find_edge(a, b);
    if (!e) throw Error(ErrorCode::InvariantViolated, "missing construction edge");
    kept.reset(*e);
  };

  for (std::size_t q = 0; q < phi.variable_count; ++q) {
    const SatVariableVertices& x = out.variables[q];
    if (assignment[q]) {
      drop(x.x1, x.x_false);
      drop(x.x_false, x.dummy2);
      drop(x.dummy2, x.dummy);
      drop(x.dummy1, out.v);
    } else {
      drop(x.x1, x.x_true);
      drop(x.x_true, x.dummy1);
      drop(x.dummy1, x.dummy);
      drop(x.dummy2, out.v);
    }
  }

  for (std::size_t p = 0; p < phi.clauses.size(); ++p) {
    const Clause& clause = phi.clauses[p];
    const SatClauseVertices& c = out.clauses[p];
    const auto chosen = static_cast<std::size_t>(
        std::find_if(clause.begin(), clause.end(), [&](const Literal& l) { return l.value_under(assignment); }) -
        clause.begin());
    drop(c.literal[chosen], out.v);
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == chosen) continue;
      const SatVariableVertices& x = out.variables[clause[i].variable];
      drop(c.c, c.literal[i]);
      drop(c.literal[i], clause[i].negated ? x.x_false : x.x_true);
    }
  }
  return Spanner(g, std::move(kept));
}

TwoSourceInstance sat_two_source_variant(const SatReductionOutput& out) {
  const TemporalGraph& g = out.graph;
  auto shift = [&](VertexId x) { return x > out.u ? x - 1 : x; };
  std::vector<TimeEdge> edges;
  std::size_t deleted = 0;
  for (const TimeEdge& e : g.edges()) {
    if (e.touches(out.u)) {
      ++deleted;
      continue;
    }
    edges.push_back({shift(e.u), shift(e.v), e.t});
  }
  TwoSourceInstance res;
  res.graph = TemporalGraph::build(g.vertex_count() - 1, std::move(edges));
  res.s1 = shift(out.v);
  res.s2 = shift(out.w);
  res.budget = out.budget - deleted;
  res.roles = out.roles;
  res.roles.erase(res.roles.begin() + out.u);
  return res;
}

}  // namespace tempspan
