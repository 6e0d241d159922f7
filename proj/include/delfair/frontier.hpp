// Exact Pareto frontier of cost profiles over complete allocations, built
// branch by branch: the frontier of a branch through hub child u is computed
// recursively on the subtree rooted at u, lifted by one edge, and combined
// with the frontier accumulated so far under all agent pairings. Profiles are
// additive across branches, so only undominated combinations survive.
#pragma once

#include <cstdint>
#include <vector>

#include "delfair/core.hpp"

namespace delfair {

struct FrontierEntry {
  Allocation allocation;  // bundles ordered to match the profile
  CostProfile profile;
};

// Set of Pareto-undominated sorted profiles, one witness allocation each.
// Entries are kept in canonical order: lexicographically ascending profiles,
// so the leximin-best entry comes first. A frontier produced for a full
// instance carries that instance's fingerprint; partial (branch) frontiers
// carry zero.
class Frontier {
 public:
  // Identity element for combination: one all-empty allocation.
  static Frontier initial(int agents);

  int agents() const { return agents_; }
  std::uint64_t fingerprint() const { return fingerprint_; }
  const std::vector<FrontierEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }

  std::vector<CostProfile> profiles() const;
  bool contains_profile(const CostProfile& profile) const;

 private:
  friend Frontier make_frontier(int agents, std::uint64_t fingerprint,
                                std::vector<FrontierEntry> entries);
  int agents_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::vector<FrontierEntry> entries_;
};

// True iff p[i] <= q[i] for every i (p at least as good everywhere).
bool weakly_dominates(const CostProfile& p, const CostProfile& q);
// Weak domination with at least one strict improvement.
bool strictly_dominates(const CostProfile& p, const CostProfile& q);

// Frontier of complete allocations for the instance. Throws
// ResourceLimitError when agents exceed limits.max_agents or an intermediate
// combination would exceed limits.combine_budget.
Frontier find_pareto_frontier(const Instance& instance,
                              const SolverLimits& limits = {});

// Frontier of the branch through `child` (a hub child), expressed in whole-
// tree ids and whole-tree costs: the subtree frontier with `child` added to
// the top bundle and every nonempty bundle paying the hub edge.
Frontier branch_frontier(const Instance& instance, VertexId child,
                         const SolverLimits& limits = {});

// Combination step: all profile sums of one entry from each side under every
// agent pairing, reduced to the undominated set. Operands must have equal
// agent counts and disjoint vertex sets. Identity: combining with
// Frontier::initial returns the other operand's entries.
Frontier combine_frontiers(const Frontier& first, const Frontier& second,
                           const SolverLimits& limits = {});

// (total cost, max pairwise gap) per frontier entry, reduced to the minimum
// total per gap value, sorted by gap ascending.
struct FrontierStat {
  int gap = 0;
  int total = 0;
};
std::vector<FrontierStat> frontier_stats(const Frontier& frontier);

}  // namespace delfair
