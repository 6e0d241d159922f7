#include "delfair/fairness.hpp"

#include <algorithm>
#include <limits>

#include "delfair/frontier.hpp"
#include "delfair/oracle.hpp"

namespace delfair {

bool is_ef(const Instance& instance, const Allocation& allocation) {
  std::vector<int> costs = bundle_costs(instance, allocation);
  auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
  return *lo == *hi;
}

bool is_ef1(const Instance& instance, const Allocation& allocation) {
  allocation.validate(instance);
  const RootedTree& tree = instance.tree;
  const int n = allocation.agents();
  if (n == 1) return true;

  // uses[x] = number of bundle members whose hub path passes through x; a
  // maximal chain of uses==1 vertices above a member is what its removal
  // saves.
  std::vector<int> costs(n, 0);
  std::vector<int> after_removal(n, 0);
  std::vector<int> uses(tree.vertex_count());
  for (int i = 0; i < n; ++i) {
    const auto& bundle = allocation.bundle(i);
    std::fill(uses.begin(), uses.end(), 0);
    int cost = 0;
    for (VertexId v : bundle) {
      for (VertexId x = v; x != tree.hub(); x = tree.parent(x)) {
        if (uses[x] == 0) ++cost;
        ++uses[x];
      }
    }
    costs[i] = cost;
    int best_saving = 0;
    for (VertexId v : bundle) {
      int saving = 0;
      for (VertexId x = v; x != tree.hub() && uses[x] == 1; x = tree.parent(x)) {
        ++saving;
      }
      best_saving = std::max(best_saving, saving);
    }
    after_removal[i] = cost - best_saving;
  }

  for (int i = 0; i < n; ++i) {
    if (allocation.bundle(i).empty()) continue;
    for (int j = 0; j < n; ++j) {
      if (j != i && after_removal[i] > costs[j]) return false;
    }
  }
  return true;
}

MmsResult mms_cost(const Instance& instance, MmsMethod method,
                   const SolverLimits& limits) {
  if (method == MmsMethod::Frontier) {
    Frontier frontier = find_pareto_frontier(instance, limits);
    const FrontierEntry* best = nullptr;
    for (const auto& entry : frontier.entries()) {
      if (best == nullptr || entry.profile.max() < best->profile.max()) {
        best = &entry;
      }
    }
    return MmsResult{best->profile.max(), best->allocation, method};
  }

  int value = std::numeric_limits<int>::max();
  Allocation witness(instance.agents);
  oracle::enumerate_allocations(
      instance,
      [&](const Allocation& allocation) {
        int worst = 0;
        for (const auto& bundle : allocation.bundles()) {
          worst = std::max(worst, service_cost(instance.tree, bundle));
        }
        if (worst < value) {
          value = worst;
          witness = allocation;
        }
      },
      limits.enumeration_guard);
  return MmsResult{value, std::move(witness), method};
}

bool is_mms(const Instance& instance, const Allocation& allocation,
            int mms_value) {
  std::vector<int> costs = bundle_costs(instance, allocation);
  return *std::max_element(costs.begin(), costs.end()) <= mms_value;
}

Allocation envy_graph_ef1(const Instance& instance) {
  if (instance.agents < 1) {
    throw std::invalid_argument("agent count must be positive");
  }
  const RootedTree& tree = instance.tree;
  const int n = instance.agents;
  const int vertex_count = tree.vertex_count();

  std::vector<std::vector<VertexId>> bundles(n);
  std::vector<int> cost(n, 0);
  std::vector<char> taken(vertex_count, 0);
  taken[tree.hub()] = 1;
  std::vector<std::vector<char>> visited(n,
                                         std::vector<char>(vertex_count, 0));
  for (int i = 0; i < n; ++i) visited[i][tree.hub()] = 1;

  for (int remaining = vertex_count - 1; remaining > 0; --remaining) {
    int agent = 0;
    for (int i = 1; i < n; ++i) {
      if (cost[i] < cost[agent]) agent = i;
    }
    VertexId best = -1;
    int best_marginal = std::numeric_limits<int>::max();
    for (VertexId v = 0; v < vertex_count; ++v) {
      if (taken[v]) continue;
      int marginal = 0;
      for (VertexId x = v; !visited[agent][x]; x = tree.parent(x)) ++marginal;
      if (marginal < best_marginal) {
        best_marginal = marginal;
        best = v;
      }
    }
    for (VertexId x = best; !visited[agent][x]; x = tree.parent(x)) {
      visited[agent][x] = 1;
    }
    cost[agent] += best_marginal;
    bundles[agent].push_back(best);
    taken[best] = 1;
  }
  return Allocation::from_bundles(std::move(bundles));
}

}  // namespace delfair
