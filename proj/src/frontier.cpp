#include "delfair/frontier.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>

namespace delfair {

Frontier make_frontier(int agents, std::uint64_t fingerprint,
                       std::vector<FrontierEntry> entries) {
  Frontier f;
  f.agents_ = agents;
  f.fingerprint_ = fingerprint;
  f.entries_ = std::move(entries);
  return f;
}

Frontier Frontier::initial(int agents) {
  if (agents < 1) throw std::invalid_argument("agent count must be positive");
  std::vector<FrontierEntry> entries;
  entries.push_back(FrontierEntry{
      Allocation(agents), CostProfile::from_sorted(std::vector<int>(agents, 0))});
  return make_frontier(agents, 0, std::move(entries));
}

std::vector<CostProfile> Frontier::profiles() const {
  std::vector<CostProfile> result;
  result.reserve(entries_.size());
  for (const auto& entry : entries_) result.push_back(entry.profile);
  return result;
}

bool Frontier::contains_profile(const CostProfile& profile) const {
  for (const auto& entry : entries_) {
    if (entry.profile == profile) return true;
  }
  return false;
}

bool weakly_dominates(const CostProfile& p, const CostProfile& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("profiles of different lengths");
  }
  for (int i = 0; i < p.size(); ++i) {
    if (p[i] > q[i]) return false;
  }
  return true;
}

bool strictly_dominates(const CostProfile& p, const CostProfile& q) {
  return weakly_dominates(p, q) && p != q;
}

namespace {

constexpr int kMaxAgentsHard = 10;

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<long long>::max() / i) {
      return std::numeric_limits<long long>::max();
    }
    f *= i;
  }
  return f;
}

// (m+1)^n clamped; m is the number of allocated vertices.
long long size_bound(int m, int n) {
  long long bound = 1;
  for (int i = 0; i < n; ++i) {
    if (bound > std::numeric_limits<long long>::max() / (m + 1)) {
      return std::numeric_limits<long long>::max();
    }
    bound *= m + 1;
  }
  return bound;
}

void check_agent_count(int agents, const SolverLimits& limits) {
  if (agents < 1) throw std::invalid_argument("agent count must be positive");
  if (agents > limits.max_agents || agents > kMaxAgentsHard) {
    throw ResourceLimitError(
        "agent count " + std::to_string(agents) + " exceeds max_agents limit " +
        std::to_string(std::min(limits.max_agents, kMaxAgentsHard)));
  }
}

// A surviving combination, profile plus enough bookkeeping to materialize
// its bundles later: output slot t merges first[a].bundle(order[t]) with
// second[b].bundle(b_slot[order[t]]).
struct Kept {
  std::array<int, kMaxAgentsHard> profile;
  int a = 0;
  int b = 0;
  std::array<std::int8_t, kMaxAgentsHard> b_slot{};
  std::array<std::int8_t, kMaxAgentsHard> order{};
};

std::vector<VertexId> merge_sorted(const std::vector<VertexId>& x,
                                   const std::vector<VertexId>& y) {
  std::vector<VertexId> out;
  out.reserve(x.size() + y.size());
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

// Core combination: every way of pairing one entry of `fa` with one of `fb`
// under an agent permutation, reduced to the set of undominated sorted
// profiles. Permutations that only shuffle equal costs of the second entry
// are collapsed by enumerating distinct cost arrangements instead.
std::vector<FrontierEntry> combine_entries(const std::vector<FrontierEntry>& fa,
                                           const std::vector<FrontierEntry>& fb,
                                           int n, const SolverLimits& limits) {
  long long estimate = factorial(n);
  if (estimate > limits.combine_budget / static_cast<long long>(fa.size()) /
                     static_cast<long long>(fb.size())) {
    throw ResourceLimitError(
        "combine work estimate " + std::to_string(fa.size()) + "*" +
        std::to_string(fb.size()) + "*" + std::to_string(n) +
        "! exceeds combine_budget " + std::to_string(limits.combine_budget));
  }

  std::vector<Kept> kept;
  std::array<int, kMaxAgentsHard> arrangement{};
  std::array<int, kMaxAgentsHard> candidate{};
  std::array<std::int8_t, kMaxAgentsHard> slot_of{};
  std::array<int, kMaxAgentsHard> cursor{};

  for (int a_idx = 0; a_idx < static_cast<int>(fa.size()); ++a_idx) {
    const auto& pa = fa[a_idx].profile.costs();
    for (int b_idx = 0; b_idx < static_cast<int>(fb.size()); ++b_idx) {
      const auto& qb = fb[b_idx].profile.costs();
      for (int i = 0; i < n; ++i) arrangement[i] = qb[n - 1 - i];  // ascending
      do {
        // Assign second-entry bundle indices: equal costs are consumed in
        // index order, so each arrangement maps to one concrete pairing.
        std::fill(cursor.begin(), cursor.begin() + n, 0);
        for (int i = 0; i < n; ++i) {
          int c = arrangement[i];
          int group = 0;
          while (qb[group] != c) ++group;  // first index of the cost group
          slot_of[i] = static_cast<std::int8_t>(group + cursor[group]);
          ++cursor[group];
          candidate[i] = pa[i] + c;
        }

        Kept entry;
        entry.a = a_idx;
        entry.b = b_idx;
        entry.b_slot = slot_of;
        // Stable argsort descending; ties keep the lower input slot first.
        for (int i = 0; i < n; ++i) {
          int j = i;
          while (j > 0 && candidate[entry.order[j - 1]] < candidate[i]) {
            entry.order[j] = entry.order[j - 1];
            --j;
          }
          entry.order[j] = static_cast<std::int8_t>(i);
        }
        for (int t = 0; t < n; ++t) entry.profile[t] = candidate[entry.order[t]];

        bool dominated = false;
        for (const Kept& k : kept) {
          bool weak = true;
          for (int t = 0; t < n; ++t) {
            if (k.profile[t] > entry.profile[t]) {
              weak = false;
              break;
            }
          }
          if (weak) {
            dominated = true;
            break;
          }
        }
        if (dominated) continue;

        // Evict entries the candidate strictly dominates.
        for (std::size_t k = 0; k < kept.size();) {
          bool weak = true;
          for (int t = 0; t < n; ++t) {
            if (entry.profile[t] > kept[k].profile[t]) {
              weak = false;
              break;
            }
          }
          if (weak) {
            kept[k] = kept.back();
            kept.pop_back();
          } else {
            ++k;
          }
        }
        kept.push_back(entry);
      } while (std::next_permutation(arrangement.begin(),
                                     arrangement.begin() + n));
    }
  }

  std::vector<FrontierEntry> result;
  result.reserve(kept.size());
  for (const Kept& k : kept) {
    std::vector<std::vector<VertexId>> bundles(n);
    std::vector<int> profile(n);
    for (int t = 0; t < n; ++t) {
      int src = k.order[t];
      bundles[t] = merge_sorted(fa[k.a].allocation.bundle(src),
                                fb[k.b].allocation.bundle(k.b_slot[src]));
      profile[t] = k.profile[t];
    }
    result.push_back(FrontierEntry{Allocation::from_bundles(std::move(bundles)),
                                   CostProfile::from_sorted(std::move(profile))});
  }
  std::sort(result.begin(), result.end(),
            [](const FrontierEntry& x, const FrontierEntry& y) {
              return x.profile < y.profile;
            });

  int covered = 0;
  if (!result.empty()) {
    for (const auto& bundle : result.front().allocation.bundles()) {
      covered += static_cast<int>(bundle.size());
    }
  }
  if (static_cast<long long>(result.size()) > size_bound(covered, n)) {
    throw std::logic_error("frontier exceeds its (m+1)^n size bound");
  }
  for (std::size_t i = 1; i < result.size(); ++i) {
    if (result[i - 1].profile == result[i].profile) {
      throw std::logic_error("duplicate profile in frontier");
    }
  }
  return result;
}

std::vector<FrontierEntry> initial_entries(int n) {
  std::vector<FrontierEntry> entries;
  entries.push_back(FrontierEntry{
      Allocation(n), CostProfile::from_sorted(std::vector<int>(n, 0))});
  return entries;
}

std::vector<FrontierEntry> branch_entries(const RootedTree& tree,
                                          VertexId child, int n,
                                          const SolverLimits& limits);

// Frontier of the tree rooted at its hub, folding hub branches one by one.
std::vector<FrontierEntry> root_entries(const RootedTree& tree, int n,
                                        const SolverLimits& limits) {
  std::vector<FrontierEntry> entries = initial_entries(n);
  for (VertexId child : tree.children(tree.hub())) {
    entries = combine_entries(entries, branch_entries(tree, child, n, limits), n,
                              limits);
  }
  return entries;
}

// Branch frontier in `tree` ids: subtree frontier lifted by the hub edge.
// Adding `child` to the top bundle keeps it a max-cost bundle, and every
// agent active in the branch pays one extra edge.
std::vector<FrontierEntry> branch_entries(const RootedTree& tree,
                                          VertexId child, int n,
                                          const SolverLimits& limits) {
  SubtreeView view = subtree(tree, child);
  std::vector<FrontierEntry> sub = root_entries(view.tree, n, limits);
  std::vector<FrontierEntry> lifted;
  lifted.reserve(sub.size());
  for (const auto& entry : sub) {
    std::vector<std::vector<VertexId>> bundles(n);
    std::vector<int> profile(n);
    for (int i = 0; i < n; ++i) {
      const auto& bundle = entry.allocation.bundle(i);
      bundles[i].reserve(bundle.size() + (i == 0 ? 1 : 0));
      for (VertexId v : bundle) bundles[i].push_back(view.to_original[v]);
      if (i == 0) bundles[i].push_back(child);
      profile[i] =
          entry.profile[i] + (bundles[i].empty() ? 0 : 1);
    }
    lifted.push_back(FrontierEntry{Allocation::from_bundles(std::move(bundles)),
                                   CostProfile::from_sorted(std::move(profile))});
  }
  return lifted;
}

std::vector<VertexId> covered_vertices(const Frontier& frontier) {
  std::vector<VertexId> covered;
  if (frontier.entries().empty()) return covered;
  for (const auto& bundle : frontier.entries().front().allocation.bundles()) {
    covered.insert(covered.end(), bundle.begin(), bundle.end());
  }
  std::sort(covered.begin(), covered.end());
  return covered;
}

}  // namespace

Frontier find_pareto_frontier(const Instance& instance,
                              const SolverLimits& limits) {
  check_agent_count(instance.agents, limits);
  std::vector<FrontierEntry> entries =
      root_entries(instance.tree, instance.agents, limits);
  return make_frontier(instance.agents, instance.fingerprint(),
                       std::move(entries));
}

Frontier branch_frontier(const Instance& instance, VertexId child,
                         const SolverLimits& limits) {
  check_agent_count(instance.agents, limits);
  const RootedTree& tree = instance.tree;
  if (child < 0 || child >= tree.vertex_count() || child == tree.hub() ||
      tree.parent(child) != tree.hub()) {
    throw std::invalid_argument("vertex " + std::to_string(child) +
                                " is not a hub child");
  }
  return make_frontier(
      instance.agents, 0,
      branch_entries(tree, child, instance.agents, limits));
}

Frontier combine_frontiers(const Frontier& first, const Frontier& second,
                           const SolverLimits& limits) {
  if (first.agents() != second.agents()) {
    throw std::invalid_argument("frontiers have different agent counts");
  }
  if (first.entries().empty() || second.entries().empty()) {
    throw std::invalid_argument("cannot combine an empty frontier");
  }
  std::vector<VertexId> lhs = covered_vertices(first);
  std::vector<VertexId> rhs = covered_vertices(second);
  std::vector<VertexId> overlap;
  std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty()) {
    throw std::invalid_argument("frontiers cover overlapping vertex sets");
  }
  return make_frontier(
      first.agents(), 0,
      combine_entries(first.entries(), second.entries(), first.agents(),
                      limits));
}

std::vector<FrontierStat> frontier_stats(const Frontier& frontier) {
  std::vector<FrontierStat> stats;
  for (const auto& entry : frontier.entries()) {
    int gap = entry.profile.gap();
    int total = entry.profile.total();
    bool found = false;
    for (auto& stat : stats) {
      if (stat.gap == gap) {
        stat.total = std::min(stat.total, total);
        found = true;
        break;
      }
    }
    if (!found) stats.push_back(FrontierStat{gap, total});
  }
  std::sort(stats.begin(), stats.end(),
            [](const FrontierStat& x, const FrontierStat& y) {
              return x.gap < y.gap;
            });
  return stats;
}

}  // namespace delfair
