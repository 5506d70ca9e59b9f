#include "tempspan/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "tempspan/reach.hpp"

namespace tempspan {

namespace {

bool connected(std::size_t n, const std::vector<VertexPair>& pairs) {
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = n;
  for (const auto& [a, b] : pairs) {
    const VertexId ra = find(a);
    const VertexId rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --parts;
    }
  }
  return parts == 1;
}

std::vector<VertexPair> sample_pairs(std::mt19937_64& rng, const RandomGraphOptions& opts) {
  const std::size_t n = opts.n;
  std::bernoulli_distribution coin(opts.density);
  std::vector<VertexPair> pairs;
  if (opts.cover) {
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::size_t d = *opts.cover;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        if (coin(rng)) pairs.emplace_back(perm[i], perm[j]);
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (std::size_t j = d; j < n; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < d; ++i) {
        if (coin(rng)) {
          pairs.emplace_back(perm[i], perm[j]);
          any = true;
        }
      }
      if (!any) pairs.emplace_back(perm[pick(rng)], perm[j]);
    }
  } else {
    for (VertexId v = 1; v < n; ++v) {
      std::uniform_int_distribution<VertexId> pick(0, v - 1);
      pairs.emplace_back(pick(rng), v);
    }
    std::vector<std::pair<VertexId, VertexId>> have(pairs.begin(), pairs.end());
    for (auto& p : have) {
      if (p.first > p.second) std::swap(p.first, p.second);
    }
    std::sort(have.begin(), have.end());
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        if (!std::binary_search(have.begin(), have.end(), VertexPair{a, b}) && coin(rng)) pairs.emplace_back(a, b);
      }
    }
  }
  return pairs;
}

}  // namespace

TemporalGraph random_happy_tc(const RandomGraphOptions& opts) {
  if (opts.n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (opts.cover && (*opts.cover == 0 || *opts.cover >= opts.n)) {
    if (opts.n > 1) throw Error(ErrorCode::InvalidArgument, "cover size must be in [1, n)");
  }
  if (opts.density < 0 || opts.density > 1) throw Error(ErrorCode::InvalidArgument, "density must be in [0, 1]");
  if (opts.n == 1) return TemporalGraph::build(1, {});

  std::mt19937_64 rng(opts.seed);
  for (std::size_t attempt = 0; attempt < opts.max_retries; ++attempt) {
    auto pairs = sample_pairs(rng, opts);
    if (!connected(opts.n, pairs)) continue;
    std::vector<Label> labels(pairs.size());
    std::iota(labels.begin(), labels.end(), Label{1});
    std::shuffle(labels.begin(), labels.end(), rng);
    std::vector<TimeEdge> edges;
    edges.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) edges.push_back({pairs[i].first, pairs[i].second, labels[i]});
    auto g = TemporalGraph::build(opts.n, std::move(edges));
    if (is_tc(g)) return g;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no temporally connected sample within " + std::to_string(opts.max_retries) + " retries");
}

}  // namespace tempspan
