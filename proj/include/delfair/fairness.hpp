// Fairness notions over allocations: envy-freeness, envy-freeness up to one
// order (EF1), the maximin-share threshold (MMS), and an envy-graph style
// constructive EF1 algorithm.
#pragma once

#include "delfair/core.hpp"

namespace delfair {

// No agent costs more than any other agent. With identical cost functions
// this means all bundle costs are equal.
bool is_ef(const Instance& instance, const Allocation& allocation);

// For every pair (i, j): bundle i is empty, or removing some single order
// from bundle i brings its cost down to at most bundle j's cost.
bool is_ef1(const Instance& instance, const Allocation& allocation);

enum class MmsMethod { Frontier, BruteForce };

struct MmsResult {
  int value = 0;
  Allocation witness;  // complete allocation whose max bundle cost == value
  MmsMethod method = MmsMethod::Frontier;
};

// Smallest achievable maximum bundle cost over complete allocations. The
// frontier method reads it off the Pareto frontier; brute force enumerates
// every allocation (guarded by limits.enumeration_guard).
MmsResult mms_cost(const Instance& instance,
                   MmsMethod method = MmsMethod::Frontier,
                   const SolverLimits& limits = {});

// Max bundle cost does not exceed the MMS threshold.
bool is_mms(const Instance& instance, const Allocation& allocation,
            int mms_value);

// Constructive EF1: repeatedly hand the cheapest-so-far agent (lowest index
// on ties) the unassigned order of minimum marginal cost (lowest id on
// ties). Always returns a complete EF1 allocation.
Allocation envy_graph_ef1(const Instance& instance);

}  // namespace delfair
