// tempspan: command-line front end for the temporal spanner library.
//
// Exit codes: 0 property holds / solved within budget, 1 property fails, budget
// infeasible or the supplied clique/assignment is not one, 2 resource guard
// tripped, 3 usage error, 4 input or I/O error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/crc.hpp>
#include <json.hpp>

#include "tempspan/generate.hpp"
#include "tempspan/io.hpp"
#include "tempspan/reach.hpp"
#include "tempspan/reductions.hpp"
#include "tempspan/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace tempspan;

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kResourceGuard = 2;
constexpr int kUsage = 3;
constexpr int kInputError = 4;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string digest(std::string_view text) {
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return std::string("crc32:") + buf;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Run {
  bool as_json = false;
  bool timing = false;
  std::string echo;
  json report;
  std::ostringstream text;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void begin(const std::string& command, std::string_view input) {
    report["command"] = echo.empty() ? command : echo;
    report["input_digest"] = digest(input);
  }

  void finish() {
    if (timing) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      report["wall_time_s"] = secs;
      if (!as_json) text << "wall_time_s=" << secs << '\n';
    }
    if (as_json) {
      std::cout << report.dump(2) << '\n';
    } else {
      std::cout << text.str();
    }
  }
};

struct StrictnessFlags {
  bool strict = false;
  bool nonstrict = false;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_flag("--strict", strict, "Strictly increasing labels along journeys (default)");
    auto* ns = cmd->add_flag("--nonstrict", nonstrict, "Non-decreasing labels along journeys");
    s->excludes(ns);
  }
  Strictness value() const { return nonstrict ? Strictness::NonStrict : Strictness::Strict; }
  std::string name() const { return nonstrict ? "nonstrict" : "strict"; }
};

Requirement requirement_of(const std::vector<VertexId>& two_source, const TemporalGraph& g) {
  if (two_source.empty()) return Requirement::all_pairs();
  for (VertexId s : two_source) {
    if (s >= g.vertex_count()) throw UsageError("source " + std::to_string(s) + " is not a vertex");
  }
  return Requirement::two_source(two_source[0], two_source[1]);
}

json indices_json(const EdgeSet& set) { return to_indices(set); }

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& l : lines) text += l + '\n';
  write_text_file(path, text);
}

std::vector<std::string> index_lines(const EdgeSet& set) {
  std::vector<std::string> out;
  for (EdgeIndex e : to_indices(set)) out.push_back(std::to_string(e));
  return out;
}

std::vector<std::string> role_lines(const std::vector<std::string>& roles) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < roles.size(); ++x) out.push_back(std::to_string(x) + ' ' + roles[x]);
  return out;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  StrictnessFlags strictness;
  bool tc = false;
};

int cmd_check(const CheckArgs& a, Run& run) {
  const std::string text = read_text_file(a.file);
  const TemporalGraph g = parse_graph(text);
  run.begin("check", text);
  const GraphClass c = classify(g);
  const bool tc = is_tc(g, a.strictness.value());
  run.report["strictness"] = a.strictness.name();
  run.report["tc"] = tc;
  run.report["simple"] = c.simple;
  run.report["proper"] = c.proper;
  run.report["happy"] = c.happy;
  run.text << "tc=" << bool_text(tc) << " simple=" << bool_text(c.simple) << " proper=" << bool_text(c.proper)
           << " happy=" << bool_text(c.happy) << '\n';
  return tc ? kHolds : kFails;
}

struct SolveArgs {
  std::string file;
  std::string method = "exact";
  StrictnessFlags strictness;
  std::optional<std::size_t> budget;
  std::vector<VertexId> two_source;
  std::size_t cap = 40;
  std::string out;
  bool triples = false;
};

int cmd_solve(const SolveArgs& a, Run& run) {
  const std::string text = read_text_file(a.file);
  const TemporalGraph g = parse_graph(text);
  run.begin("solve", text);

  SolveResult res;
  if (a.method == "exact") {
    ExactOptions o;
    o.strictness = a.strictness.value();
    o.requirement = requirement_of(a.two_source, g);
    o.budget = a.budget;
    o.removable_cap = a.cap;
    res = min_spanner_exact(g, o);
  } else {
    if (!a.two_source.empty()) throw UsageError("--two-source is only supported by --method exact");
    XpOptions o;
    o.budget = a.budget;
    res = min_spanner_xp_vc(g, o).result;
  }

  const Spanner spanner(g, res.kept);
  const SpannerFormat fmt = a.triples ? SpannerFormat::Triples : SpannerFormat::Indices;
  if (!a.out.empty()) write_text_file(a.out, serialize_spanner(spanner, fmt));

  run.report["method"] = a.method;
  run.report["strictness"] = a.strictness.name();
  run.report["size"] = res.size;
  run.report["optimal"] = res.optimal;
  run.report["within_budget"] = res.within_budget ? json(*res.within_budget) : json(nullptr);
  run.report["spanner"] = indices_json(res.kept);
  if (a.out.empty()) run.text << serialize_spanner(spanner, fmt);
  run.text << "size=" << res.size << " optimal=" << bool_text(res.optimal) << " method=" << a.method;
  if (res.within_budget) run.text << " within_budget=" << bool_text(*res.within_budget);
  run.text << '\n';
  return res.within_budget.value_or(true) ? kHolds : kFails;
}

struct VerifyArgs {
  std::string file;
  std::string spanner;
  StrictnessFlags strictness;
  std::vector<VertexId> two_source;
  bool triples = false;
};

int cmd_verify(const VerifyArgs& a, Run& run) {
  const std::string text = read_text_file(a.file);
  const TemporalGraph g = parse_graph(text);
  const std::string sp_text = read_text_file(a.spanner);
  const Spanner s = parse_spanner(sp_text, g, a.triples ? SpannerFormat::Triples : SpannerFormat::Indices);
  run.begin("verify", text + sp_text);
  const bool ok = satisfies(g, s.kept(), requirement_of(a.two_source, g), a.strictness.value());
  run.report["strictness"] = a.strictness.name();
  run.report["valid"] = ok;
  run.report["size"] = s.size();
  run.text << "valid=" << bool_text(ok) << " size=" << s.size() << '\n';
  return ok ? kHolds : kFails;
}

struct DecomposeArgs {
  std::string file;
  std::string spanner;
  bool vc = false;
  bool triples = false;
};

int cmd_decompose(const DecomposeArgs& a, Run& run) {
  if (!a.vc) throw UsageError("decompose needs --vc");
  const std::string text = read_text_file(a.file);
  const TemporalGraph g = parse_graph(text);
  const std::string sp_text = read_text_file(a.spanner);
  const Spanner s = parse_spanner(sp_text, g, a.triples ? SpannerFormat::Triples : SpannerFormat::Indices);
  run.begin("decompose", text + sp_text);

  const VertexCover cover = min_vertex_cover(underlying_graph(g), g.vertex_count());
  run.report["cover"] = cover.members;
  std::optional<VcTreeDecomposition> dec;
  try {
    dec = vc_tree_decompose(s, cover);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotTemporallyConnected) throw;
  }
  run.report["decomposable"] = dec.has_value();
  if (!dec) {
    run.text << "NOT-DECOMPOSABLE\n";
    return kFails;
  }

  run.text << "cover=";
  for (std::size_t i = 0; i < cover.members.size(); ++i) run.text << (i ? " " : "") << cover.members[i];
  run.text << '\n';
  json trees = json::array();
  for (const TemporalOutTree& t : dec->trees) {
    const auto idx = to_indices(t.tree_edges);
    trees.push_back({{"root", t.root}, {"edges", idx}});
    run.text << "tree root=" << t.root << " edges=";
    for (std::size_t i = 0; i < idx.size(); ++i) run.text << (i ? " " : "") << idx[i];
    run.text << '\n';
  }
  json extras = json::array();
  for (VertexId v = 0; v < dec->extras.size(); ++v) {
    if (!dec->extras[v]) continue;
    extras.push_back({{"vertex", v}, {"edge", *dec->extras[v]}});
    run.text << "extra vertex=" << v << " edge=" << *dec->extras[v] << '\n';
  }
  run.report["trees"] = trees;
  run.report["extras"] = extras;
  return kHolds;
}

struct ReduceSatArgs {
  std::string file;
  bool two_source = false;
  bool pad = false;
  bool witness = false;
  std::string assignment;
  std::string prefix = "out";
};

std::vector<bool> parse_assignment(const std::string& bits, std::size_t vars) {
  if (bits.size() != vars || bits.find_first_not_of("01") != std::string::npos) {
    throw UsageError("--assignment needs " + std::to_string(vars) + " characters of 0/1");
  }
  std::vector<bool> out;
  for (char c : bits) out.push_back(c == '1');
  return out;
}

int cmd_reduce_sat(const ReduceSatArgs& a, Run& run) {
  const std::string text = read_text_file(a.file);
  const SatInstance phi = parse_dimacs(std::string_view(text), a.pad);
  run.begin("reduce-sat", text);
  const SatReductionOutput out = sat_to_spanner_instance(phi);

  std::optional<EdgeSet> witness;
  bool satisfiable = true;
  if (a.witness || !a.assignment.empty()) {
    std::optional<std::vector<bool>> assignment;
    if (!a.assignment.empty()) {
      assignment = parse_assignment(a.assignment, phi.variable_count);
    } else {
      assignment = find_satisfying_assignment(phi);
    }
    satisfiable = assignment.has_value();
    if (assignment) witness = sat_witness_spanner(out, *assignment).kept();
  }

  const TemporalGraph* graph = &out.graph;
  std::size_t budget = out.budget;
  std::vector<std::string> roles = out.roles;
  EdgeSet critical = out.critical;
  std::optional<TwoSourceInstance> two;
  if (a.two_source) {
    two = sat_two_source_variant(out);
    graph = &two->graph;
    budget = two->budget;
    roles = two->roles;
    // Edge indices shift once u's edges are gone.
    auto remap = [&](const EdgeSet& s) {
      EdgeSet r(two->graph.edge_count());
      EdgeIndex next = 0;
      for (EdgeIndex e = 0; e < out.graph.edge_count(); ++e) {
        if (out.graph.edge(e).touches(out.u)) continue;
        if (s.test(e)) r.set(next);
        ++next;
      }
      return r;
    };
    critical = remap(critical);
    if (witness) witness = remap(*witness);
  }

  const std::string p = a.prefix;
  std::vector<std::string> files{p + ".tg", p + ".budget", p + ".critical", p + ".roles"};
  write_text_file(p + ".tg", serialize_graph(*graph));
  write_text_file(p + ".budget", std::to_string(budget) + '\n');
  write_lines(p + ".critical", index_lines(critical));
  write_lines(p + ".roles", role_lines(roles));
  if (two) {
    write_text_file(p + ".sources", std::to_string(two->s1) + ' ' + std::to_string(two->s2) + '\n');
    files.push_back(p + ".sources");
  }
  if (witness) {
    write_lines(p + ".witness", index_lines(*witness));
    files.push_back(p + ".witness");
  }

  run.report["variables"] = phi.variable_count;
  run.report["clauses"] = phi.clauses.size();
  run.report["vertices"] = graph->vertex_count();
  run.report["edges"] = graph->edge_count();
  run.report["budget"] = budget;
  run.report["critical"] = critical.count();
  run.report["two_source"] = a.two_source;
  if (two) run.report["sources"] = {two->s1, two->s2};
  run.report["files"] = files;
  run.text << "vertices=" << graph->vertex_count() << " edges=" << graph->edge_count() << " budget=" << budget
           << " critical=" << critical.count() << '\n';
  if (!satisfiable) {
    run.report["witness"] = nullptr;
    run.text << "unsatisfiable: no witness written\n";
    return kFails;
  }
  return kHolds;
}

struct ReduceMccArgs {
  std::string file;
  bool pad = false;
  bool witness = false;
  std::vector<std::size_t> clique;
  std::string prefix = "out";
};

int cmd_reduce_mcc(const ReduceMccArgs& a, Run& run) {
  const std::string text = read_text_file(a.file);
  MccInstance inst = parse_mcc(std::string_view(text));
  if (a.pad) inst = pad_to_even(inst);
  run.begin("reduce-mcc", text);
  const MccReductionOutput out = mcc_to_spanner_instance(inst);

  std::optional<std::vector<std::size_t>> clique;
  if (!a.clique.empty()) {
    clique = a.clique;
  } else if (a.witness) {
    clique = find_multicolored_clique(inst);
  }

  const std::string p = a.prefix;
  std::vector<std::string> files{p + ".tg", p + ".budget", p + ".roles", p + ".fvs", p + ".gadgets"};
  write_text_file(p + ".tg", serialize_graph(out.graph));
  write_text_file(p + ".budget", std::to_string(out.budget) + '\n');
  write_lines(p + ".roles", role_lines(out.roles));
  std::vector<std::string> fvs;
  for (VertexId x : out.fvs) fvs.push_back(std::to_string(x));
  write_lines(p + ".fvs", fvs);
  std::vector<std::string> gadgets;
  for (EdgeIndex e = 0; e < out.gadget_map.size(); ++e) {
    gadgets.push_back(std::to_string(e) + ' ' + out.gadget_map[e].to_string());
  }
  write_lines(p + ".gadgets", gadgets);
  if (clique) {
    write_lines(p + ".witness", index_lines(mcc_witness_spanner(out, *clique).kept()));
    files.push_back(p + ".witness");
  }

  run.report["vertices"] = out.graph.vertex_count();
  run.report["edges"] = out.graph.edge_count();
  run.report["budget"] = out.budget;
  run.report["connector_edges"] = out.connector_edges;
  run.report["fvs"] = out.fvs.size();
  run.report["files"] = files;
  run.text << "vertices=" << out.graph.vertex_count() << " edges=" << out.graph.edge_count()
           << " budget=" << out.budget << " connector_edges=" << out.connector_edges << " fvs=" << out.fvs.size()
           << '\n';
  if (a.witness && !clique) {
    run.report["witness"] = nullptr;
    run.text << "no multicolored clique: no witness written\n";
    return kFails;
  }
  return kHolds;
}

struct GenArgs {
  RandomGraphOptions opts;
  std::optional<std::size_t> cover;
  std::string out;
};

int cmd_gen_random(GenArgs a, Run& run) {
  a.opts.cover = a.cover;
  const TemporalGraph g = random_happy_tc(a.opts);
  const std::string text = serialize_graph(g);
  if (!a.out.empty()) write_text_file(a.out, text);
  run.begin("gen-random", text);
  run.report["n"] = g.vertex_count();
  run.report["m"] = g.edge_count();
  run.report["seed"] = a.opts.seed;
  if (a.out.empty()) {
    run.report["graph"] = text;
    run.text << text;
  } else {
    run.text << "n=" << g.vertex_count() << " m=" << g.edge_count() << " seed=" << a.opts.seed << '\n';
  }
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum temporal spanners: exact and vertex-cover solvers, reductions, verification"};
  app.require_subcommand(1);
  Run run;
  app.add_flag("--json", run.as_json, "Print a machine-readable report");
  app.add_flag("--timing", run.timing, "Add wall-clock time to the report");
  run.echo = "tempspan";
  for (int i = 1; i < argc; ++i) run.echo += " " + std::string(argv[i]);

  int code = kHolds;
  std::function<int()> action;

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Classify a graph and test temporal connectivity");
  c->add_option("file", check.file, "Graph (.tg)")->required();
  c->add_flag("--tc", check.tc, "Test temporal connectivity (always on)");
  check.strictness.attach(c);
  c->callback([&] { action = [&] { return cmd_check(check, run); }; });

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Minimum temporal spanner");
  s->add_option("file", solve.file, "Graph (.tg)")->required();
  s->add_option("--method", solve.method, "exact or xp-vc")->check(CLI::IsMember({"exact", "xp-vc"}));
  solve.strictness.attach(s);
  s->add_option("--k", solve.budget, "Stop at the first spanner with at most this many edges");
  s->add_option("--two-source", solve.two_source, "Only require reachability from these two vertices")
      ->expected(2);
  s->add_option("--cap", solve.cap, "Largest number of removable edges the exact solver accepts");
  s->add_option("--out", solve.out, "Write the spanner here instead of stdout");
  s->add_flag("--triples", solve.triples, "Write `u v t` triples instead of edge indices");
  s->callback([&] { action = [&] { return cmd_solve(solve, run); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check that an edge subset meets the requirement");
  v->add_option("file", verify.file, "Graph (.tg)")->required();
  v->add_option("spanner", verify.spanner, "Spanner file")->required();
  verify.strictness.attach(v);
  v->add_option("--two-source", verify.two_source, "Only require reachability from these two vertices")
      ->expected(2);
  v->add_flag("--triples", verify.triples, "Spanner file holds `u v t` triples");
  v->callback([&] { action = [&] { return cmd_verify(verify, run); }; });

  DecomposeArgs decompose;
  auto* d = app.add_subcommand("decompose", "Split a spanner into cover-rooted out-trees plus extra edges");
  d->add_flag("--vc", decompose.vc, "Decompose along a minimum vertex cover")->required();
  d->add_option("file", decompose.file, "Graph (.tg)")->required();
  d->add_option("spanner", decompose.spanner, "Spanner file")->required();
  d->add_flag("--triples", decompose.triples, "Spanner file holds `u v t` triples");
  d->callback([&] { action = [&] { return cmd_decompose(decompose, run); }; });

  ReduceSatArgs rsat;
  auto* r = app.add_subcommand("reduce-sat", "Build the spanner instance of a 3-CNF formula");
  r->add_option("file", rsat.file, "DIMACS CNF")->required();
  r->add_flag("--two-source", rsat.two_source, "Emit the two-source variant without u");
  r->add_flag("--pad", rsat.pad, "Pad short clauses by repeating their last literal");
  r->add_flag("--witness", rsat.witness, "Also write the witness spanner of a satisfying assignment");
  r->add_option("--assignment", rsat.assignment, "Assignment for the witness as 0/1 per variable");
  r->add_option("--prefix", rsat.prefix, "Output path prefix");
  r->callback([&] { action = [&] { return cmd_reduce_sat(rsat, run); }; });

  ReduceMccArgs rmcc;
  auto* m = app.add_subcommand("reduce-mcc", "Build the strict spanner instance of a multicolored clique input");
  m->add_option("file", rmcc.file, "Instance (`k n`, then `i a j b` lines)")->required();
  m->add_flag("--pad", rmcc.pad, "Repeat an edge in color pairs with an odd edge count");
  m->add_flag("--witness", rmcc.witness, "Also write the witness spanner of a clique found by brute force");
  m->add_option("--clique", rmcc.clique, "Clique for the witness, one vertex index per color")->delimiter(',');
  m->add_option("--prefix", rmcc.prefix, "Output path prefix");
  m->callback([&] { action = [&] { return cmd_reduce_mcc(rmcc, run); }; });

  GenArgs gen;
  auto* g = app.add_subcommand("gen-random", "Random happy temporally connected graph");
  g->add_option("--n", gen.opts.n, "Vertex count");
  g->add_option("--seed", gen.opts.seed, "Random seed");
  g->add_option("--cover", gen.cover, "Force a vertex cover of this size");
  g->add_option("--density", gen.opts.density, "Probability of each optional edge");
  g->add_option("--max-retries", gen.opts.max_retries, "Samples to try before giving up");
  g->add_option("--out", gen.out, "Write the graph here instead of stdout");
  g->callback([&] { action = [&] { return cmd_gen_random(gen, run); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    code = action();
    run.finish();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::InstanceTooLarge:
        return kResourceGuard;
      case ErrorCode::NotAClique:
      case ErrorCode::AssignmentDoesNotSatisfy:
        return kFails;
      default:
        return kInputError;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }
  return code;
}
