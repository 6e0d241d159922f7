#include "delfair/gen.hpp"

#include <algorithm>
#include <queue>
#include <vector>

namespace delfair::gen {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t base, std::uint64_t size,
                          std::uint64_t index) {
  std::uint64_t h = splitmix64(base ^ (size * 0x9e3779b97f4a7c15ULL));
  return splitmix64(h ^ (index + 0x632be59bd9b4e019ULL));
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("draw_below: bound must be positive");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

RootedTree random_tree_prufer(int size, std::uint64_t seed) {
  if (size < 2) throw std::invalid_argument("random tree needs size >= 2");
  std::mt19937_64 rng(seed);
  std::vector<int> sequence(size - 2);
  for (int& s : sequence) s = static_cast<int>(draw_below(rng, size));

  std::vector<int> degree(size, 1);
  for (int s : sequence) ++degree[s];
  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 0; v < size; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(size - 1);
  for (int s : sequence) {
    int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, s);
    if (--degree[s] == 1) leaves.push(s);
  }
  int a = leaves.top();
  leaves.pop();
  int b = leaves.top();
  edges.emplace_back(a, b);
  return RootedTree(size, 0, edges);
}

RootedTree spider_from_integers(std::span<const int> leg_lengths) {
  if (leg_lengths.empty()) throw std::invalid_argument("spider needs at least one leg");
  int total = 1;
  for (int length : leg_lengths) {
    if (length < 1) throw std::invalid_argument("spider leg length must be positive");
    total += length;
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(total - 1);
  VertexId next = 1;
  for (int length : leg_lengths) {
    VertexId prev = 0;
    for (int step = 0; step < length; ++step) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return RootedTree(total, 0, edges);
}

Instance fixture(std::string_view name) {
  if (name == "caterpillar") {
    // Hub with a pendant leaf on one side and a 6-vertex branch on the other.
    std::vector<std::pair<VertexId, VertexId>> edges = {
        {0, 1}, {0, 2}, {2, 3}, {2, 4}, {4, 5}, {5, 6}, {6, 7}};
    RootedTree tree(8, 0, edges);
    tree.set_labels({"h", "a", "b", "c", "d", "e", "f", "g"});
    return Instance{2, std::move(tree)};
  }
  if (name == "twinpath") {
    // Path a-b-h-c-d with the hub in the middle.
    std::vector<std::pair<VertexId, VertexId>> edges = {
        {1, 2}, {0, 2}, {0, 3}, {3, 4}};
    RootedTree tree(5, 0, edges);
    tree.set_labels({"h", "a", "b", "c", "d"});
    return Instance{2, std::move(tree)};
  }
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace delfair::gen
