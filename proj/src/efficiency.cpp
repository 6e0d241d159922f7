#include "delfair/efficiency.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "delfair/fairness.hpp"
#include "delfair/oracle.hpp"

namespace delfair {

std::string to_string(VerdictReason reason) {
  switch (reason) {
    case VerdictReason::BalancedBranchPartition:
      return "balanced-branch-partition";
    case VerdictReason::CenterPreconditionFailed:
      return "center-precondition-failed";
    case VerdictReason::LeximinGap:
      return "leximin-gap";
    case VerdictReason::BranchPacking:
      return "branch-packing";
    case VerdictReason::FrontierSearch:
      return "frontier-search";
  }
  throw std::logic_error("unhandled verdict reason");
}

std::string serialize_verdict(const ExistenceVerdict& verdict) {
  std::string out = "exists=";
  out += verdict.exists ? "true" : "false";
  out += " reason=" + to_string(verdict.reason);
  out += " witness=";
  out += verdict.witness ? format_allocation_inline(*verdict.witness) : "-";
  return out;
}

bool is_so(const Instance& instance, const Allocation& allocation) {
  if (!allocation.is_complete(instance)) {
    throw std::invalid_argument("social optimality needs a complete allocation");
  }
  std::vector<int> costs = bundle_costs(instance, allocation);
  bool total_minimal = std::accumulate(costs.begin(), costs.end(), 0) ==
                       instance.tree.edge_count();

  std::vector<int> owner(instance.tree.vertex_count(), -1);
  for (int i = 0; i < allocation.agents(); ++i) {
    for (VertexId v : allocation.bundle(i)) owner[v] = i;
  }
  bool branches_whole = true;
  for (const auto& branch : branches(instance.tree)) {
    for (VertexId v : branch) {
      if (owner[v] != owner[branch.front()]) {
        branches_whole = false;
        break;
      }
    }
    if (!branches_whole) break;
  }

  if (total_minimal != branches_whole) {
    throw std::logic_error(
        "social optimality criteria disagree: total==edges is " +
        std::string(total_minimal ? "true" : "false") +
        " but whole-branch containment is " +
        std::string(branches_whole ? "true" : "false"));
  }
  return total_minimal;
}

bool is_po(const Instance& instance, const Allocation& allocation,
           const Frontier& frontier) {
  if (frontier.fingerprint() != instance.fingerprint()) {
    throw std::invalid_argument("frontier was built for a different instance");
  }
  if (!allocation.is_complete(instance)) {
    throw std::invalid_argument("Pareto optimality needs a complete allocation");
  }
  return frontier.contains_profile(cost_profile(instance, allocation));
}

std::strong_ordering leximin_compare(const CostProfile& p,
                                     const CostProfile& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("profiles of different lengths");
  }
  return p <=> q;
}

const FrontierEntry& leximin_select(const Frontier& frontier) {
  if (frontier.entries().empty()) {
    throw std::invalid_argument("frontier is empty");
  }
  const FrontierEntry* best = &frontier.entries().front();
  for (const auto& entry : frontier.entries()) {
    if (leximin_compare(entry.profile, best->profile) < 0) best = &entry;
  }
  return *best;
}

ExistenceVerdict exists_ef1_po(const Frontier& frontier) {
  const FrontierEntry& best = leximin_select(frontier);
  if (best.profile.gap() <= 1) {
    return ExistenceVerdict{true, VerdictReason::LeximinGap, best.allocation};
  }
  return ExistenceVerdict{false, VerdictReason::LeximinGap, std::nullopt};
}

namespace {

// Branch indices ordered by size descending (stable), the usual heuristic
// for set-partition backtracking.
std::vector<int> descending_order(const std::vector<int>& sizes) {
  std::vector<int> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sizes[a] > sizes[b]; });
  return order;
}

// Assigns items (in `order`) to `parts` bins so that no bin exceeds `cap`;
// `accept` judges the completed sums. Bins with equal current sums are
// interchangeable, so only the first of each sum value is tried.
bool assign_items(const std::vector<int>& sizes, const std::vector<int>& order,
                  std::size_t k, int cap, std::vector<int>& sums,
                  std::vector<int>& choice,
                  const std::function<bool(const std::vector<int>&)>& accept) {
  if (k == order.size()) return accept(sums);
  int item = order[k];
  for (std::size_t p = 0; p < sums.size(); ++p) {
    bool symmetric = false;
    for (std::size_t q = 0; q < p; ++q) {
      if (sums[q] == sums[p]) {
        symmetric = true;
        break;
      }
    }
    if (symmetric) continue;
    if (sums[p] + sizes[item] > cap) continue;
    sums[p] += sizes[item];
    choice[item] = static_cast<int>(p);
    if (assign_items(sizes, order, k + 1, cap, sums, choice, accept)) {
      return true;
    }
    sums[p] -= sizes[item];
  }
  return false;
}

// Bundles from a branch-to-part assignment, in canonical order: cost
// descending, ties by lexicographic vertex order.
Allocation parts_to_allocation(const Instance& instance,
                               const std::vector<std::vector<VertexId>>& branch_sets,
                               const std::vector<int>& choice, int parts) {
  std::vector<std::vector<VertexId>> bundles(parts);
  for (std::size_t b = 0; b < branch_sets.size(); ++b) {
    bundles[choice[b]].insert(bundles[choice[b]].end(), branch_sets[b].begin(),
                              branch_sets[b].end());
  }
  for (auto& bundle : bundles) std::sort(bundle.begin(), bundle.end());
  std::stable_sort(bundles.begin(), bundles.end(),
                   [](const std::vector<VertexId>& x,
                      const std::vector<VertexId>& y) {
                     if (x.size() != y.size()) return x.size() > y.size();
                     return x < y;
                   });
  Allocation allocation = Allocation::from_bundles(std::move(bundles));
  allocation.validate(instance);
  return allocation;
}

void check_branch_guard(std::size_t count, const SolverLimits& limits) {
  if (count > static_cast<std::size_t>(limits.max_branches)) {
    throw ResourceLimitError("branch count " + std::to_string(count) +
                             " exceeds max_branches limit " +
                             std::to_string(limits.max_branches));
  }
}

}  // namespace

ExistenceVerdict exists_ef1_so(const Instance& instance,
                               const SolverLimits& limits) {
  if (instance.agents < 1) {
    throw std::invalid_argument("agent count must be positive");
  }
  const RootedTree& tree = instance.tree;
  const int n = instance.agents;
  const int m = tree.edge_count();

  // A balanced whole-branch partition forces every bundle size to at most
  // ceil(m/n) <= m/2 when n >= 2, which in turn forces the hub into the tree
  // center. With one agent the partition is trivially the whole tree.
  if (n >= 2) {
    std::vector<VertexId> center = tree_center(tree);
    if (std::find(center.begin(), center.end(), tree.hub()) == center.end()) {
      return ExistenceVerdict{false, VerdictReason::CenterPreconditionFailed,
                              std::nullopt};
    }
  }

  std::vector<std::vector<VertexId>> branch_sets = branches(tree);
  check_branch_guard(branch_sets.size(), limits);
  std::vector<int> sizes;
  sizes.reserve(branch_sets.size());
  for (const auto& branch : branch_sets) {
    sizes.push_back(static_cast<int>(branch.size()));
  }

  const int lo = m / n;
  const int hi = (m + n - 1) / n;
  const int remainder = m % n;
  std::vector<int> sums(n, 0);
  std::vector<int> choice(branch_sets.size(), -1);
  bool found = assign_items(
      sizes, descending_order(sizes), 0, hi, sums, choice,
      [&](const std::vector<int>& final_sums) {
        int at_hi = 0;
        for (int s : final_sums) {
          if (s != lo && s != hi) return false;
          if (remainder != 0 && s == hi) ++at_hi;
        }
        return remainder == 0 || at_hi == remainder;
      });
  if (!found) {
    return ExistenceVerdict{false, VerdictReason::BalancedBranchPartition,
                            std::nullopt};
  }
  return ExistenceVerdict{true, VerdictReason::BalancedBranchPartition,
                          parts_to_allocation(instance, branch_sets, choice, n)};
}

ExistenceVerdict exists_mms_so(const Instance& instance, int mms_value,
                               const SolverLimits& limits) {
  if (instance.agents < 1) {
    throw std::invalid_argument("agent count must be positive");
  }
  if (mms_value < 0) {
    throw std::invalid_argument("mms value cannot be negative");
  }
  std::vector<std::vector<VertexId>> branch_sets = branches(instance.tree);
  check_branch_guard(branch_sets.size(), limits);
  std::vector<int> sizes;
  sizes.reserve(branch_sets.size());
  for (const auto& branch : branch_sets) {
    sizes.push_back(static_cast<int>(branch.size()));
  }
  std::vector<int> sums(instance.agents, 0);
  std::vector<int> choice(branch_sets.size(), -1);
  bool found = assign_items(sizes, descending_order(sizes), 0, mms_value, sums,
                            choice,
                            [](const std::vector<int>&) { return true; });
  if (!found) {
    return ExistenceVerdict{false, VerdictReason::BranchPacking, std::nullopt};
  }
  return ExistenceVerdict{
      true, VerdictReason::BranchPacking,
      parts_to_allocation(instance, branch_sets, choice, instance.agents)};
}

bool cost_gap_dominated_check(const Instance& instance,
                              const Allocation& allocation,
                              const SolverLimits& limits) {
  if (!allocation.is_complete(instance)) {
    throw std::invalid_argument("gap check needs a complete allocation");
  }
  if (!is_ef1(instance, allocation)) {
    throw std::invalid_argument("gap check needs an EF1 allocation");
  }
  CostProfile profile = cost_profile(instance, allocation);
  if (profile.gap() <= 1) return false;

  bool dominated = false;
  oracle::enumerate_allocations(
      instance,
      [&](const Allocation& other) {
        if (dominated) return;
        CostProfile q = cost_profile(instance, other);
        if (q != profile && weakly_dominates(q, profile)) dominated = true;
      },
      limits.enumeration_guard);
  if (!dominated) {
    throw std::logic_error(
        "EF1 allocation with cost gap above 1 is not dominated; invariant "
        "violated");
  }
  return true;
}

}  // namespace delfair
