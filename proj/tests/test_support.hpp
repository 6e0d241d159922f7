// Shared helpers for the test suites: fixture shortcuts and deterministic
// random corpora.
#pragma once

#include <random>
#include <vector>

#include "delfair/core.hpp"
#include "delfair/gen.hpp"

namespace delfair::test {

inline Instance caterpillar() { return gen::fixture("caterpillar"); }
inline Instance twinpath() { return gen::fixture("twinpath"); }

inline Instance spider6(int agents = 2) {
  const std::vector<int> legs = {3, 3, 3, 6, 6, 1};
  return Instance{agents, gen::spider_from_integers(legs)};
}

inline Instance single_edge(int agents = 2) {
  std::vector<std::pair<VertexId, VertexId>> edges = {{0, 1}};
  return Instance{agents, RootedTree(2, 0, edges)};
}

inline Instance path_instance(int vertices, VertexId hub, int agents) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < vertices; ++v) edges.emplace_back(v - 1, v);
  return Instance{agents, RootedTree(vertices, hub, edges)};
}

// Deterministic corpus of random instances: sizes in [min_size, max_size],
// agent counts in [min_agents, max_agents].
inline std::vector<Instance> random_corpus(int count, int min_size,
                                           int max_size, int min_agents,
                                           int max_agents,
                                           std::uint64_t seed) {
  std::vector<Instance> corpus;
  corpus.reserve(count);
  std::mt19937_64 rng(seed);
  for (int k = 0; k < count; ++k) {
    int size = min_size + static_cast<int>(gen::draw_below(
                              rng, static_cast<std::uint64_t>(max_size -
                                                              min_size + 1)));
    int agents =
        min_agents + static_cast<int>(gen::draw_below(
                         rng, static_cast<std::uint64_t>(max_agents -
                                                         min_agents + 1)));
    corpus.push_back(Instance{agents, gen::random_tree_prufer(size, rng())});
  }
  return corpus;
}

// Uniform random subset of non-hub vertices.
inline std::vector<VertexId> random_order_set(const RootedTree& tree,
                                              std::mt19937_64& rng) {
  std::vector<VertexId> set;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    if (v != tree.hub() && (rng() & 1)) set.push_back(v);
  }
  return set;
}

}  // namespace delfair::test
