// Efficiency notions and existence procedures: social optimality, Pareto
// optimality against a computed frontier, leximin selection, and decision
// procedures for fairness+efficiency combinations.
#pragma once

#include <compare>
#include <optional>
#include <string>

#include "delfair/core.hpp"
#include "delfair/frontier.hpp"

namespace delfair {

enum class VerdictReason {
  BalancedBranchPartition,
  CenterPreconditionFailed,
  LeximinGap,
  BranchPacking,
  FrontierSearch,
};
std::string to_string(VerdictReason reason);

struct ExistenceVerdict {
  bool exists = false;
  VerdictReason reason = VerdictReason::FrontierSearch;
  std::optional<Allocation> witness;
};

// Single-line record: `exists=<true|false> reason=<tag> witness=<inline or ->`.
std::string serialize_verdict(const ExistenceVerdict& verdict);

// Total cost equals the number of edges, the unimprovable minimum. Checked
// two ways (total == edge count, and every hub branch lies inside a single
// bundle); disagreement raises std::logic_error.
bool is_so(const Instance& instance, const Allocation& allocation);

// Profile membership in the instance's Pareto frontier. The frontier must
// carry the instance's fingerprint.
bool is_po(const Instance& instance, const Allocation& allocation,
           const Frontier& frontier);

// Lexicographic comparison of sorted profiles; less means leximin-better.
std::strong_ordering leximin_compare(const CostProfile& p,
                                     const CostProfile& q);

// Frontier entry with the leximin-best profile.
const FrontierEntry& leximin_select(const Frontier& frontier);

// EF1 and Pareto-optimal allocations exist iff the leximin profile's
// max-min gap is at most 1; the leximin witness is then EF1 itself.
ExistenceVerdict exists_ef1_po(const Frontier& frontier);

// EF1 and socially optimal allocations exist iff hub branches can be split
// into bundles of whole branches with sizes pairwise within 1 (for two or
// more agents this also requires the hub to be a tree center). Backtracking
// over branches, guarded by limits.max_branches.
ExistenceVerdict exists_ef1_so(const Instance& instance,
                               const SolverLimits& limits = {});

// MMS and socially optimal allocations exist iff branch sizes pack into
// `agents` bins of capacity mms_value.
ExistenceVerdict exists_mms_so(const Instance& instance, int mms_value,
                               const SolverLimits& limits = {});

// For an EF1 allocation: false when its cost gap is at most 1; otherwise
// confirms by enumeration that the allocation is Pareto dominated and
// returns true. Non-EF1 input is rejected with std::invalid_argument.
bool cost_gap_dominated_check(const Instance& instance,
                              const Allocation& allocation,
                              const SolverLimits& limits = {});

}  // namespace delfair
