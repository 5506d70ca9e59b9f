// Acceptance suite: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes or fails only where listed with
// --expect-fail; an expected failure that starts passing is reported but not fatal.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "tempspan/generate.hpp"
#include "tempspan/reductions.hpp"
#include "tempspan/solver.hpp"

using namespace tempspan;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

class Reporter {
 public:
  explicit Reporter(std::set<int> expected) : expected_(std::move(expected)) {}

  void line(int id, const Outcome& o, double secs) {
    std::printf("criterion %2d: %s  %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), secs);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    if (!o.pass && !expected_.contains(id)) unexpected_ = true;
    if (o.pass && expected_.contains(id)) std::printf("    (listed as expected failure but passed)\n");
    std::fflush(stdout);
  }

  int exit_code() const { return unexpected_ ? 1 : 0; }

 private:
  std::set<int> expected_;
  bool unexpected_ = false;
};

// ---------------------------------------------------------------------------
// Corpora

std::vector<TemporalGraph> vc_corpus(std::size_t count) {
  std::vector<TemporalGraph> out;
  for (std::uint64_t s = 1; out.size() < count; ++s) {
    RandomGraphOptions o;
    o.n = 4 + s % 7;
    o.cover = 2 + s % 2;
    o.seed = 5000 + s;
    o.density = 0.8;
    try {
      out.push_back(random_happy_tc(o));
    } catch (const Error&) {
      // Rejection sampling gave up on this seed; take the next one.
    }
  }
  return out;
}

// All clauses as sorted literal triples over `vars` variables (repetition allowed).
std::vector<Clause> all_clauses(std::size_t vars) {
  std::vector<Literal> lits;
  for (std::size_t x = 0; x < vars; ++x) {
    lits.push_back({x, false});
    lits.push_back({x, true});
  }
  std::vector<Clause> out;
  for (std::size_t a = 0; a < lits.size(); ++a) {
    for (std::size_t b = a; b < lits.size(); ++b) {
      for (std::size_t c = b; c < lits.size(); ++c) out.push_back({lits[a], lits[b], lits[c]});
    }
  }
  return out;
}

std::vector<SatInstance> sat_family() {
  std::vector<SatInstance> out;
  for (std::size_t vars = 1; vars <= 2; ++vars) {
    const auto clauses = all_clauses(vars);
    for (const auto& c : clauses) out.push_back({vars, {c}});
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      for (std::size_t j = i; j < clauses.size(); ++j) out.push_back({vars, {clauses[i], clauses[j]}});
    }
  }
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> size(1, 3);
  for (int r = 0; r < 50; ++r) {
    SatInstance phi;
    phi.variable_count = size(rng);
    const std::size_t clauses = size(rng);
    std::uniform_int_distribution<std::size_t> var(0, phi.variable_count - 1);
    for (std::size_t c = 0; c < clauses; ++c) {
      Clause cl;
      for (auto& l : cl) l = {var(rng), (rng() & 1) != 0};
      phi.clauses.push_back(cl);
    }
    out.push_back(phi);
  }
  return out;
}

bool subset_of(const EdgeSet& a, const EdgeSet& b) { return a.is_subset_of(b); }

// ---------------------------------------------------------------------------

struct SatRecord {
  SatReductionOutput out;
  bool satisfiable = false;
  std::optional<SolveResult> solved;
  std::optional<SolveResult> two_source;
  EdgeSet forced;
};

Outcome criterion1(const std::vector<TemporalGraph>& corpus, std::vector<SolveResult>& optima) {
  Outcome o;
  std::size_t mismatches = 0, max_n = 0, max_cover = 0;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& g = corpus[i];
    const auto exact = min_spanner_exact(g);
    const auto xp = min_spanner_xp_vc(g);
    optima.push_back(exact);
    max_n = std::max(max_n, g.vertex_count());
    max_cover = std::max(max_cover, xp.cover.size());
    if (xp.result.size != exact.size || !is_tc(g, xp.result.kept)) {
      ++mismatches;
      o.require(false, "graph " + std::to_string(i) + ": xp " + std::to_string(xp.result.size) + " vs exact " +
                           std::to_string(exact.size));
    }
  }
  const double secs = seconds_since(t0);
  o.require(corpus.size() >= 200, "corpus smaller than 200");
  o.require(max_n <= 10 && max_cover <= 3, "corpus outside n <= 10, vc <= 3");
  o.require(secs <= 300.0, "runtime above 5 minutes");
  o.detail << corpus.size() << " graphs (n<=" << max_n << ", vc<=" << max_cover << "), " << mismatches
           << " size mismatches";
  return o;
}

std::vector<SatRecord> solve_sat_family(const std::vector<SatInstance>& family) {
  std::vector<SatRecord> records;
  for (const auto& phi : family) {
    SatRecord r{sat_to_spanner_instance(phi)};
    r.satisfiable = find_satisfying_assignment(phi).has_value();
    r.forced = forced_edges(r.out.graph);
    try {
      r.solved = min_spanner_exact(r.out.graph);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InstanceTooLarge) throw;
    }
    if (r.solved) {
      const auto two = sat_two_source_variant(r.out);
      ExactOptions opts;
      opts.requirement = Requirement::two_source(two.s1, two.s2);
      try {
        r.two_source = min_spanner_exact(two.graph, opts);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InstanceTooLarge) throw;
      }
    }
    records.push_back(std::move(r));
  }
  return records;
}

Outcome criterion2(const std::vector<SatRecord>& records) {
  Outcome o;
  std::size_t solved = 0, sat = 0, skipped = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.solved) {
      ++skipped;
      continue;
    }
    ++solved;
    sat += r.satisfiable;
    const std::size_t k = r.out.graph.edge_count() - 5 * r.out.instance.clauses.size() - 4 * r.out.instance.variable_count;
    o.require(k == r.out.budget, "instance " + std::to_string(i) + ": budget differs from m - 5n_c - 4n_x");
    const bool ok = r.satisfiable ? r.solved->size == k : r.solved->size >= k + 1;
    o.require(ok && r.solved->optimal, "instance " + std::to_string(i) + ": optimum " +
                                           std::to_string(r.solved->size) + ", k " + std::to_string(k) +
                                           (r.satisfiable ? ", satisfiable" : ", unsatisfiable"));
  }
  o.require(solved >= 20, "fewer than 20 solved instances");
  o.detail << records.size() << " formulas, " << solved << " solved (" << sat << " satisfiable), " << skipped
           << " skipped over the removable-edge cap";
  return o;
}

Outcome criterion3(const std::vector<SatRecord>& records) {
  Outcome o;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& g = records[i].out.graph;
    const bool strict = is_tc(g, Strictness::Strict);
    const bool nonstrict = is_tc(g, Strictness::NonStrict);
    o.require(classify(g).happy, "instance " + std::to_string(i) + " is not happy");
    o.require(strict && nonstrict, "instance " + std::to_string(i) + " is not TC in both modes");
    o.require(reach_matrix(g, Strictness::Strict) == reach_matrix(g, Strictness::NonStrict),
              "instance " + std::to_string(i) + ": modes disagree");
  }
  o.detail << records.size() << " constructions happy and TC under both modes";
  return o;
}

Outcome criterion4(const std::vector<SatRecord>& records) {
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    o.require(subset_of(r.out.critical, r.forced), "instance " + std::to_string(i) + ": critical edge not forced");
    if (!r.solved) continue;
    ++checked;
    o.require(subset_of(r.out.critical, r.solved->kept),
              "instance " + std::to_string(i) + ": critical edge missing from the optimum");
  }
  o.detail << "critical sets inside forced edges on " << records.size() << " instances and inside the optimum on "
           << checked << " solved ones";
  return o;
}

Outcome criterion5() {
  Outcome o;
  // E = 2: full search with only the trivial n-1 bound.
  {
    const auto gadget = edge_selection_gadget(0, 1, 2, 2, 3, 2);
    ExactOptions opts;
    opts.call_count_bounds = false;
    opts.greedy_restarts = 0;
    opts.removable_cap = gadget.graph.edge_count();
    const auto r = min_spanner_exact(gadget.graph, opts);
    o.require(r.optimal && r.size == 9, "E=2 optimum " + std::to_string(r.size));
    o.detail << "E=2 optimum " << r.size << " by full search (" << r.nodes << " nodes); ";
  }
  // E = 4: the cycle has no 4-cycle, so 2n-3 = 6E-3 is a lower bound; the witness meets it.
  {
    const auto gadget = edge_selection_gadget(0, 1, 4, 4, 3, 2);
    ExactOptions opts;
    opts.removable_cap = gadget.graph.edge_count();
    opts.incumbent = gadget_witness_spanner(gadget, 0);
    const auto r = min_spanner_exact(gadget.graph, opts);
    o.require(r.optimal && r.size == 21, "E=4 optimum " + std::to_string(r.size));
    o.detail << "E=4 optimum " << r.size << " by call-count bound + witness incumbent; ";
  }
  std::size_t witnesses = 0;
  for (std::size_t e : {2, 4, 6, 8}) {
    const auto gadget = edge_selection_gadget(0, 1, e, e, 3, 2);
    for (std::size_t chosen = 0; chosen < e; ++chosen) {
      const EdgeSet w = gadget_witness_spanner(gadget, chosen);
      ++witnesses;
      o.require(w.count() == 6 * e - 3 && is_tc(gadget.graph, w),
                "E=" + std::to_string(e) + " anchor " + std::to_string(chosen) + ": witness size " +
                    std::to_string(w.count()));
    }
  }
  o.detail << witnesses << " witnesses of size 6E-3 verified for E in {2,4,6,8}";
  return o;
}

MccInstance complete_tripartite() {
  MccInstance inst{3, 2, {}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) inst.edges.push_back({i, a, j, b});
      }
    }
  }
  return inst;
}

Outcome criterion6(const MccReductionOutput& out) {
  Outcome o;
  const auto& g = out.graph;
  o.require(is_tc(g), "construction is not strictly TC");
  o.require(is_feedback_vertex_set(g, out.fvs), "fvs leaves a cycle");

  const EdgeSet forced = forced_edges(g);
  std::size_t connector = 0, connector_forced = 0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (out.gadget_map[e].kind != GadgetKind::Connector) continue;
    ++connector;
    connector_forced += forced.test(e);
  }
  o.require(connector == out.connector_edges, "connector count disagrees with the gadget map");
  o.require(connector_forced == connector, std::to_string(connector - connector_forced) + " of " +
                                               std::to_string(connector) + " connector edges are not forced");

  const std::size_t k = 3, edges = out.instance.edges.size();
  const std::size_t budget = 6 * edges - 2 * (k * (k - 1) / 2) + 8 * k * 1 + connector;
  o.require(out.budget == budget, "budget " + std::to_string(out.budget) + " vs " + std::to_string(budget));
  std::size_t cliques = 0;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t c = 0; c < 2; ++c) {
        const Spanner w = mcc_witness_spanner(out, {a, b, c});
        ++cliques;
        o.require(w.size() == budget && is_tc(g, w.kept()),
                  "clique (" + std::to_string(a) + std::to_string(b) + std::to_string(c) + "): witness size " +
                      std::to_string(w.size()));
      }
    }
  }
  o.detail << "n=" << g.vertex_count() << " m=" << g.edge_count() << ", fvs " << out.fvs.size() << ", "
           << connector_forced << "/" << connector << " connector edges forced, " << cliques
           << " clique witnesses of size " << budget;
  return o;
}

Outcome criterion7(const std::vector<TemporalGraph>& corpus, const std::vector<SolveResult>& optima) {
  Outcome o;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& g = corpus[i];
    const auto cover = min_vertex_cover(underlying_graph(g), g.vertex_count());
    const auto dec = vc_tree_decompose(Spanner(g, optima[i].kept), cover);
    bool ok = dec.has_value() && dec->trees.size() <= cover.size();
    if (ok) {
      EdgeSet all = g.no_edges();
      for (const auto& t : dec->trees) {
        ok = ok && cover.contains(t.root) && verify_out_tree(g, t.tree_edges, t.root);
        all |= t.tree_edges;
      }
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (const auto& e = dec->extras[v]) {
          ok = ok && !cover.contains(v) && g.edge(*e).touches(v);
          all.set(*e);
        }
      }
      ok = ok && all == optima[i].kept;
    }
    if (!ok) ++failures;
    o.require(ok, "graph " + std::to_string(i) + " does not decompose");
  }
  o.detail << corpus.size() << " optimal spanners, " << failures << " decomposition failures";
  return o;
}

void check_out_trees(const TemporalGraph& g, Outcome& o, std::size_t& roots, const std::string& name) {
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    const auto tree = foremost_out_tree(g, r);
    ++roots;
    const bool ok = tree.tree_edges.count() + 1 == g.vertex_count() && verify_out_tree(g, tree.tree_edges, r) &&
                    earliest_arrival(g, tree.tree_edges, r).reaches_all();
    o.require(ok, name + " root " + std::to_string(r));
  }
}

struct Corpora {
  const std::vector<TemporalGraph>* vc;
  const std::vector<SatRecord>* sat;
  std::vector<TemporalGraph> gadgets;
  const MccReductionOutput* mcc;
  std::vector<TemporalGraph> mixed;
};

Outcome criterion8(const Corpora& c) {
  Outcome o;
  std::size_t graphs = 0, roots = 0;
  auto visit = [&](const TemporalGraph& g, const std::string& name) {
    if (!is_tc(g)) return;
    ++graphs;
    check_out_trees(g, o, roots, name);
  };
  for (std::size_t i = 0; i < c.vc->size(); ++i) visit((*c.vc)[i], "vc graph " + std::to_string(i));
  for (std::size_t i = 0; i < c.sat->size(); ++i) {
    visit((*c.sat)[i].out.graph, "sat graph " + std::to_string(i));
    visit((*c.sat)[i].out.pre_relabel, "unrelabelled sat graph " + std::to_string(i));
  }
  for (std::size_t i = 0; i < c.gadgets.size(); ++i) visit(c.gadgets[i], "gadget " + std::to_string(i));
  visit(c.mcc->graph, "mcc graph");
  for (std::size_t i = 0; i < c.mixed.size(); ++i) visit(c.mixed[i], "mixed graph " + std::to_string(i));
  o.detail << graphs << " TC graphs, " << roots << " roots: n-1 edges and full reach from the root";
  return o;
}

Outcome criterion9(const Corpora& c) {
  Outcome o;
  std::size_t proper = 0, not_simple = 0;
  auto visit = [&](const TemporalGraph& g, const std::string& name) {
    const GraphClass cls = classify(g);
    if (!cls.proper) return;
    ++proper;
    not_simple += !cls.simple;
    o.require(reach_matrix(g, Strictness::Strict) == reach_matrix(g, Strictness::NonStrict), name);
  };
  for (std::size_t i = 0; i < c.vc->size(); ++i) visit((*c.vc)[i], "vc graph " + std::to_string(i));
  for (std::size_t i = 0; i < c.sat->size(); ++i) {
    visit((*c.sat)[i].out.graph, "sat graph " + std::to_string(i));
    visit((*c.sat)[i].out.pre_relabel, "unrelabelled sat graph " + std::to_string(i));
  }
  for (std::size_t i = 0; i < c.gadgets.size(); ++i) visit(c.gadgets[i], "gadget " + std::to_string(i));
  visit(c.mcc->graph, "mcc graph");
  for (std::size_t i = 0; i < c.mixed.size(); ++i) visit(c.mixed[i], "mixed graph " + std::to_string(i));
  o.require(proper > 0, "no proper graph in the corpora");
  o.detail << proper << " proper graphs (" << not_simple << " not simple), matrices identical";
  return o;
}

Outcome criterion10(const std::vector<SatRecord>& records) {
  Outcome o;
  std::size_t solved = 0, skipped = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (!r.two_source) {
      ++skipped;
      continue;
    }
    ++solved;
    const std::size_t budget = sat_two_source_variant(r.out).budget;
    o.require((r.two_source->size == budget) == r.satisfiable && r.two_source->optimal,
              "instance " + std::to_string(i) + ": two-source optimum " + std::to_string(r.two_source->size) +
                  ", budget " + std::to_string(budget));
  }
  o.require(solved > 0, "no two-source instance solved");
  o.detail << solved << " two-source instances solved, " << skipped << " skipped; optimum = budget iff satisfiable";
  return o;
}

std::vector<TemporalGraph> mixed_corpus() {
  std::vector<TemporalGraph> out;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    auto g = oracle::random_graph(rng, 3 + i % 6, 0.5, 2 + i % 5);
    // Second labels on some pairs make non-simple graphs.
    auto edges = g.edges();
    std::uniform_int_distribution<Label> lab(1, 6);
    for (std::size_t k = 0; k < edges.size() && k < 3; ++k) {
      const TimeEdge extra{edges[k].u, edges[k].v, lab(rng)};
      if (std::find(edges.begin(), edges.end(), extra) == edges.end()) edges.push_back(extra);
    }
    out.push_back(TemporalGraph::build(g.vertex_count(), edges));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the temporal spanner library"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "Criteria known to fail; they do not affect the exit status")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  Reporter report({expect_fail.begin(), expect_fail.end()});

  try {
    auto t0 = Clock::now();
    const auto vc = vc_corpus(200);
    std::vector<SolveResult> optima;
    report.line(1, criterion1(vc, optima), seconds_since(t0));

    t0 = Clock::now();
    const auto records = solve_sat_family(sat_family());
    const double sat_secs = seconds_since(t0);
    report.line(2, criterion2(records), sat_secs);

    t0 = Clock::now();
    report.line(3, criterion3(records), seconds_since(t0));
    t0 = Clock::now();
    report.line(4, criterion4(records), seconds_since(t0));
    t0 = Clock::now();
    report.line(5, criterion5(), seconds_since(t0));

    t0 = Clock::now();
    const auto mcc = mcc_to_spanner_instance(complete_tripartite());
    report.line(6, criterion6(mcc), seconds_since(t0));

    t0 = Clock::now();
    report.line(7, criterion7(vc, optima), seconds_since(t0));

    Corpora corpora{&vc, &records, {}, &mcc, mixed_corpus()};
    for (std::size_t e : {2, 4, 6, 8}) corpora.gadgets.push_back(edge_selection_gadget(0, 1, e, e, 3, 2).graph);
    t0 = Clock::now();
    report.line(8, criterion8(corpora), seconds_since(t0));
    t0 = Clock::now();
    report.line(9, criterion9(corpora), seconds_since(t0));
    t0 = Clock::now();
    report.line(10, criterion10(records), seconds_since(t0));
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 1;
  }
  return report.exit_code();
}
