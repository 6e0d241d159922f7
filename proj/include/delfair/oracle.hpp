// Brute-force ground truth, deliberately independent of the solver modules:
// exhaustive allocation enumeration with a walk-simulation cost routine.
// Intended for small instances; every operation is guarded by an allocation
// count limit.
#pragma once

#include <functional>

#include "delfair/core.hpp"
#include "delfair/efficiency.hpp"

namespace delfair::oracle {

inline constexpr long long kDefaultGuard = 10'000'000;

// agents^(V-1), clamped to LLONG_MAX on overflow.
long long count_allocations(const Instance& instance);

// Visits every complete allocation exactly once, in mixed-radix order:
// non-hub vertices ascending, agent digits from agent 0. Throws
// ResourceLimitError when the allocation count exceeds the guard.
void enumerate_allocations(const Instance& instance,
                           const std::function<void(const Allocation&)>& visit,
                           long long guard = kDefaultGuard);

// Cost by walk simulation: depth-first tour from the hub descending only
// into subtrees containing an order, each traversed edge counted in both
// directions, halved at the end.
int walk_service_cost(const RootedTree& tree,
                      std::span<const VertexId> order_set);

// All Pareto-undominated sorted profiles, lexicographically ascending.
std::vector<CostProfile> brute_pareto_profiles(const Instance& instance,
                                               long long guard = kDefaultGuard);

struct BruteMms {
  int value = 0;
  Allocation witness;
};
BruteMms brute_mms(const Instance& instance, long long guard = kDefaultGuard);

enum class FairnessCriterion { Ef, Ef1, Mms };
enum class EfficiencyCriterion { None, So, Po };

// First allocation in enumeration order satisfying the requested
// combination, if any. Thresholds (MMS value, minimum total, undominated
// profiles) are derived by enumeration only.
ExistenceVerdict brute_exists(const Instance& instance,
                              FairnessCriterion fairness,
                              EfficiencyCriterion efficiency,
                              long long guard = kDefaultGuard);

}  // namespace delfair::oracle
