#include "delfair/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace delfair::oracle {

long long count_allocations(const Instance& instance) {
  if (instance.agents < 1) {
    throw std::invalid_argument("agent count must be positive");
  }
  long long count = 1;
  for (int i = 0; i < instance.tree.vertex_count() - 1; ++i) {
    if (count > std::numeric_limits<long long>::max() / instance.agents) {
      return std::numeric_limits<long long>::max();
    }
    count *= instance.agents;
  }
  return count;
}

void enumerate_allocations(const Instance& instance,
                           const std::function<void(const Allocation&)>& visit,
                           long long guard) {
  long long total = count_allocations(instance);
  if (total > guard) {
    throw ResourceLimitError("allocation count " + std::to_string(total) +
                             " exceeds enumeration guard " +
                             std::to_string(guard));
  }
  const RootedTree& tree = instance.tree;
  const int n = instance.agents;
  std::vector<VertexId> vertices;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    if (v != tree.hub()) vertices.push_back(v);
  }
  std::vector<int> digits(vertices.size(), 0);
  std::vector<std::vector<VertexId>> bundles(n);
  while (true) {
    for (auto& bundle : bundles) bundle.clear();
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      bundles[digits[k]].push_back(vertices[k]);
    }
    visit(Allocation::from_bundles(bundles));

    int k = static_cast<int>(digits.size()) - 1;
    while (k >= 0 && digits[k] == n - 1) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
  }
}

int walk_service_cost(const RootedTree& tree,
                      std::span<const VertexId> order_set) {
  std::vector<char> contains(tree.vertex_count(), 0);
  for (VertexId v : order_set) {
    if (v < 0 || v >= tree.vertex_count()) {
      throw std::invalid_argument("vertex id out of range: " +
                                  std::to_string(v));
    }
    if (v == tree.hub()) {
      throw std::invalid_argument("order set may not contain the hub");
    }
    contains[v] = 1;
  }
  std::vector<VertexId> order{tree.hub()};
  order.reserve(tree.vertex_count());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (VertexId w : tree.children(order[head])) order.push_back(w);
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != tree.hub() && contains[*it]) contains[tree.parent(*it)] = 1;
  }

  // Walk the tour: every edge into a populated subtree is traversed down and
  // back up.
  long long steps = 0;
  struct Frame {
    VertexId vertex;
    std::size_t next_child = 0;
  };
  std::vector<Frame> stack{{tree.hub(), 0}};
  while (!stack.empty()) {
    Frame& frame = stack.back();
    const auto& children = tree.children(frame.vertex);
    bool descended = false;
    while (frame.next_child < children.size()) {
      VertexId child = children[frame.next_child++];
      if (contains[child]) {
        ++steps;  // walk down
        stack.push_back(Frame{child, 0});
        descended = true;
        break;
      }
    }
    if (!descended) {
      if (stack.back().vertex != tree.hub()) ++steps;  // walk back up
      stack.pop_back();
    }
  }
  return static_cast<int>(steps / 2);
}

namespace {

std::vector<int> walk_costs(const Instance& instance,
                            const Allocation& allocation) {
  std::vector<int> costs;
  costs.reserve(allocation.agents());
  for (const auto& bundle : allocation.bundles()) {
    costs.push_back(walk_service_cost(instance.tree, bundle));
  }
  return costs;
}

std::vector<int> sorted_desc(std::vector<int> values) {
  std::sort(values.begin(), values.end(), std::greater<int>());
  return values;
}

// Literal EF1 from the definition, with costs recomputed by walk simulation.
bool walk_is_ef1(const Instance& instance, const Allocation& allocation,
                 const std::vector<int>& costs) {
  const int n = allocation.agents();
  for (int i = 0; i < n; ++i) {
    const auto& bundle = allocation.bundle(i);
    if (bundle.empty()) continue;
    int after_best_removal = std::numeric_limits<int>::max();
    for (std::size_t drop = 0; drop < bundle.size(); ++drop) {
      std::vector<VertexId> rest;
      rest.reserve(bundle.size() - 1);
      for (std::size_t k = 0; k < bundle.size(); ++k) {
        if (k != drop) rest.push_back(bundle[k]);
      }
      after_best_removal = std::min(after_best_removal,
                                    walk_service_cost(instance.tree, rest));
    }
    for (int j = 0; j < n; ++j) {
      if (j != i && after_best_removal > costs[j]) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CostProfile> brute_pareto_profiles(const Instance& instance,
                                               long long guard) {
  std::set<std::vector<int>> seen;
  enumerate_allocations(
      instance,
      [&](const Allocation& allocation) {
        seen.insert(sorted_desc(walk_costs(instance, allocation)));
      },
      guard);

  std::vector<CostProfile> undominated;
  for (const auto& p : seen) {
    bool dominated = false;
    for (const auto& q : seen) {
      if (q == p) continue;
      bool weak = true;
      for (std::size_t t = 0; t < p.size(); ++t) {
        if (q[t] > p[t]) {
          weak = false;
          break;
        }
      }
      if (weak) {
        dominated = true;
        break;
      }
    }
    if (!dominated) undominated.push_back(CostProfile::from_sorted(p));
  }
  return undominated;  // std::set iteration already gives ascending order
}

BruteMms brute_mms(const Instance& instance, long long guard) {
  BruteMms result{std::numeric_limits<int>::max(), Allocation(instance.agents)};
  enumerate_allocations(
      instance,
      [&](const Allocation& allocation) {
        std::vector<int> costs = walk_costs(instance, allocation);
        int worst = *std::max_element(costs.begin(), costs.end());
        if (worst < result.value) {
          result.value = worst;
          result.witness = allocation;
        }
      },
      guard);
  return result;
}

ExistenceVerdict brute_exists(const Instance& instance,
                              FairnessCriterion fairness,
                              EfficiencyCriterion efficiency, long long guard) {
  int mms_value = 0;
  int min_total = 0;
  if (fairness == FairnessCriterion::Mms ||
      efficiency == EfficiencyCriterion::So) {
    int best_worst = std::numeric_limits<int>::max();
    int best_total = std::numeric_limits<int>::max();
    enumerate_allocations(
        instance,
        [&](const Allocation& allocation) {
          std::vector<int> costs = walk_costs(instance, allocation);
          best_worst =
              std::min(best_worst, *std::max_element(costs.begin(), costs.end()));
          best_total = std::min(
              best_total, std::accumulate(costs.begin(), costs.end(), 0));
        },
        guard);
    mms_value = best_worst;
    min_total = best_total;
  }
  std::vector<CostProfile> undominated;
  if (efficiency == EfficiencyCriterion::Po) {
    undominated = brute_pareto_profiles(instance, guard);
  }

  std::optional<Allocation> witness;
  enumerate_allocations(
      instance,
      [&](const Allocation& allocation) {
        if (witness) return;
        std::vector<int> costs = walk_costs(instance, allocation);
        switch (fairness) {
          case FairnessCriterion::Ef: {
            auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
            if (*lo != *hi) return;
            break;
          }
          case FairnessCriterion::Ef1:
            if (!walk_is_ef1(instance, allocation, costs)) return;
            break;
          case FairnessCriterion::Mms:
            if (*std::max_element(costs.begin(), costs.end()) > mms_value) {
              return;
            }
            break;
        }
        switch (efficiency) {
          case EfficiencyCriterion::None:
            break;
          case EfficiencyCriterion::So:
            if (std::accumulate(costs.begin(), costs.end(), 0) != min_total) {
              return;
            }
            break;
          case EfficiencyCriterion::Po: {
            CostProfile profile = CostProfile::from_sorted(sorted_desc(costs));
            bool on_frontier = false;
            for (const auto& p : undominated) {
              if (p == profile) {
                on_frontier = true;
                break;
              }
            }
            if (!on_frontier) return;
            break;
          }
        }
        witness = allocation;
      },
      guard);

  if (witness) {
    return ExistenceVerdict{true, VerdictReason::FrontierSearch,
                            std::move(witness)};
  }
  return ExistenceVerdict{false, VerdictReason::FrontierSearch, std::nullopt};
}

}  // namespace delfair::oracle
