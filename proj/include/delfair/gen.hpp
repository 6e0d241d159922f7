// Instance generators: uniform random labeled trees via Pruefer sequences,
// spider trees, and the small fixtures used throughout the tests.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "delfair/core.hpp"

namespace delfair::gen {

// splitmix64 round; used to derive well-spread per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for sample `index` of size `size` under a base seed. Independent of
// the agent count so every agent-count cell of a sweep sees the same trees.
std::uint64_t sample_seed(std::uint64_t base, std::uint64_t size,
                          std::uint64_t index);

// Uniform draw from [0, bound) by rejection sampling; bit-portable, unlike
// std::uniform_int_distribution.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound);

// Uniform random labeled tree on `size` vertices (Pruefer decode of a
// uniform sequence), rooted at vertex 0. Requires size >= 2.
RootedTree random_tree_prufer(int size, std::uint64_t seed);

// Spider: one path per entry, all attached to hub 0. Leg k with length L
// occupies the next L ids, so hub branches match leg_lengths in order.
RootedTree spider_from_integers(std::span<const int> leg_lengths);

// Named fixtures: "caterpillar" (8-vertex tree, 2 agents) and "twinpath" (5-vertex
// path with an interior hub, 2 agents). Labeled for readable output.
Instance fixture(std::string_view name);

}  // namespace delfair::gen
