#pragma once

#include <cstdint>
#include <optional>

#include "tempspan/temporal_graph.hpp"

namespace tempspan {

struct RandomGraphOptions {
  std::size_t n = 8;
  std::uint64_t seed = 1;
  /// When set, every edge touches one of the first `cover` vertices of a random relabeling.
  std::optional<std::size_t> cover;
  /// Probability of each optional underlying edge.
  double density = 0.5;
  std::size_t max_retries = 10000;
};

/// Random happy TC graph: random connected underlying graph, labels a random
/// permutation of 1..m, resampled until TC. Throws InvalidArgument after max_retries.
TemporalGraph random_happy_tc(const RandomGraphOptions& opts);

}  // namespace tempspan
