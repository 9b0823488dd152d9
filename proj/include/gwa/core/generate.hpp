#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gwa/core/graph.hpp"

namespace gwa {

/// Seeded generator. Only the raw mt19937_64 stream is used (its output is
/// fixed by the standard); bounded draws are derived here, so suites are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n);
  bool chance(std::uint32_t numerator, std::uint32_t denominator) { return below(denominator) < numerator; }

 private:
  std::mt19937_64 engine_;
};

/// All valid connected graphs over `sig` with 1..max_nodes nodes, one per
/// isomorphism class, in a deterministic order (by node count first). Node
/// ids are v0, v1, ...; v0 is the initial node.
std::vector<Graph> enumerate_graphs(const SignaturePtr& sig, std::size_t max_nodes);

/// A random valid connected graph with node count in [min_nodes, max_nodes],
/// drawn by rejection: random labels, then a random perfect matching of edge
/// slots. Throws PreconditionError if no valid graph is found in `attempts`.
Graph random_graph(const SignaturePtr& sig, Rng& rng, std::size_t min_nodes, std::size_t max_nodes,
                   std::size_t attempts = 10000);

}  // namespace gwa
