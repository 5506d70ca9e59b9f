#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "tempspan/io.hpp"
#include "tempspan/temporal_graph.hpp"

using namespace tempspan;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvariantViolated;
}

}  // namespace

TEST_CASE("build normalizes lifetime") {
  const auto g = TemporalGraph::build(2, {{0, 1, 1}});
  CHECK(g.lifetime() == 1);
  CHECK(g.edge_count() == 1);
  CHECK(TemporalGraph::build(3, {}).lifetime() == 1);
  CHECK(TemporalGraph::build(3, {{0, 1, 7}, {1, 2, 3}}).lifetime() == 7);
}

TEST_CASE("build rejects bad edges") {
  CHECK(code_of([] { TemporalGraph::build(2, {{0, 1, 1}, {0, 1, 1}}); }) == ErrorCode::DuplicateTimeEdge);
  CHECK(code_of([] { TemporalGraph::build(2, {{0, 1, 1}, {1, 0, 1}}); }) == ErrorCode::DuplicateTimeEdge);
  CHECK(code_of([] { TemporalGraph::build(2, {{0, 2, 1}}); }) == ErrorCode::EndpointOutOfRange);
  CHECK(code_of([] { TemporalGraph::build(2, {{1, 1, 1}}); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { TemporalGraph::build(2, {{0, 1, 0}}); }) == ErrorCode::InvalidLabel);
  CHECK(code_of([] { TemporalGraph::build(0, {}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("classify") {
  CHECK(classify(TemporalGraph::build(2, {{0, 1, 1}})) == GraphClass{true, true, true});
  CHECK(classify(TemporalGraph::build(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})) == GraphClass{true, false, false});
  CHECK(classify(TemporalGraph::build(2, {{0, 1, 1}, {0, 1, 2}})) == GraphClass{false, true, false});
}

TEST_CASE("underlying graph deduplicates pairs") {
  const auto g = TemporalGraph::build(3, {{1, 0, 1}, {0, 1, 5}});
  CHECK(underlying_graph(g) == std::vector<VertexPair>{{0, 1}});
  CHECK(underlying_graph(TemporalGraph::build(3, {})).empty());
}

TEST_CASE("relabel tiebreak") {
  const auto g = TemporalGraph::build(4, {{0, 1, 3}, {2, 3, 3}, {1, 2, 1}});
  const auto h = relabel_to_happy(g);
  CHECK(h.edge(0).t == 2);
  CHECK(h.edge(1).t == 3);
  CHECK(h.edge(2).t == 1);
  CHECK(code_of([] { relabel_to_happy(TemporalGraph::build(2, {{0, 1, 1}, {0, 1, 2}})); }) == ErrorCode::NotSimple);
}

TEST_CASE("relabel is identity on labels 1..m in order") {
  const auto g = TemporalGraph::build(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}});
  CHECK(relabel_to_happy(g).edges() == g.edges());
}

TEST_CASE("relabel properties on random simple graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_graph(rng, 2 + trial % 9, 0.4, 4);
    const auto h = relabel_to_happy(g);
    REQUIRE(h.edge_count() == g.edge_count());
    CHECK(classify(h).happy);
    std::vector<Label> labels;
    for (const auto& e : h.edges()) labels.push_back(e.t);
    std::sort(labels.begin(), labels.end());
    for (std::size_t i = 0; i < labels.size(); ++i) CHECK(labels[i] == static_cast<Label>(i + 1));
    for (EdgeIndex a = 0; a < g.edge_count(); ++a) {
      CHECK(h.edge(a).u == g.edge(a).u);
      for (EdgeIndex b = 0; b < g.edge_count(); ++b) {
        if (g.edge(a).t < g.edge(b).t) CHECK(h.edge(a).t < h.edge(b).t);
      }
    }
    // Strict journeys survive relabeling.
    const auto before = oracle::reach(g, g.all_edges(), Strictness::Strict);
    const auto after = oracle::reach(h, h.all_edges(), Strictness::Strict);
    for (std::size_t u = 0; u < before.size(); ++u) {
      for (std::size_t v = 0; v < before.size(); ++v) {
        if (before[u][v]) CHECK(after[u][v]);
      }
    }
    CHECK(classify(g) == classify(g));
  }
}

TEST_CASE("figure tree as a graph") {
  // Compatible tree from the template figure: 17 vertices, 16 edges, labels 1..9.
  const auto g = TemporalGraph::build(
      17, {{0, 1, 1}, {1, 2, 3}, {2, 3, 4}, {2, 4, 5}, {0, 5, 4}, {5, 8, 6}, {5, 6, 5}, {5, 7, 6},
           {5, 9, 7}, {9, 10, 8}, {10, 11, 8}, {10, 12, 9}, {10, 13, 9}, {8, 14, 7}, {14, 15, 8}, {14, 16, 9}});
  CHECK(g.lifetime() == 9);
  const auto c = classify(g);
  CHECK(c.simple);
  CHECK_FALSE(c.proper);
}

TEST_CASE("text format") {
  const auto g = parse_graph("2 1\n0 1 1\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.lifetime() == 1);
  CHECK(g.edge_count() == 1);
  CHECK(serialize_graph(g) == "2 1\n0 1 1\n");

  const auto h = parse_graph("# comment\n4 9\n\n1 0 3\n  2 3 9\n# x\n0 2 3\n");
  CHECK(serialize_graph(h) == "4 9\n1 0 3\n2 3 9\n0 2 3\n");
  CHECK(serialize_graph(parse_graph(serialize_graph(h))) == serialize_graph(h));

  auto line_of = [](std::string_view text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  CHECK(line_of("2 1\n0 1 0\n") == 2);
  CHECK(line_of("2 1\n0 1 2\n") == 2);
  CHECK(line_of("2 1\n# c\n0 5 1\n") == 3);
  CHECK(line_of("2 1\n0 1 x\n") == 2);
  CHECK(line_of("2\n") == 1);
  CHECK(line_of("") == 0);
  CHECK_THROWS_AS(parse_graph("2 1\n0 1 1\n1 0 1\n"), ParseError);
}

TEST_CASE("text round trip on random graphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_graph(rng, 1 + trial % 8, 0.5, 6);
    const auto text = serialize_graph(g);
    const auto back = parse_graph(text);
    CHECK(back.edges() == g.edges());
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(serialize_graph(back) == text);
  }
}

TEST_CASE("spanner formats") {
  const auto g = parse_graph("3 4\n0 1 1\n1 2 2\n0 2 4\n");
  const auto s = parse_spanner("2\n0\n", g, SpannerFormat::Indices);
  CHECK(s.size() == 2);
  CHECK(serialize_spanner(s, SpannerFormat::Indices) == "0\n2\n");
  CHECK(serialize_spanner(s, SpannerFormat::Triples) == "0 1 1\n0 2 4\n");
  const auto t = parse_spanner("2 0 4\n1 0 1\n", g, SpannerFormat::Triples);
  CHECK(t.kept() == s.kept());
  CHECK_THROWS_AS(parse_spanner("3\n", g, SpannerFormat::Indices), ParseError);
  CHECK_THROWS_AS(parse_spanner("0\n0\n", g, SpannerFormat::Indices), ParseError);
  CHECK_THROWS_AS(parse_spanner("0 1 2\n", g, SpannerFormat::Triples), ParseError);
}
