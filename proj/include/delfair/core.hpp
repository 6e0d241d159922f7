// Core domain model for fair division of delivery orders on rooted trees:
// rooted trees with a hub, allocations of non-hub vertices to agents, and the
// coverage cost c(S) = number of non-hub vertices on root paths of S.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace delfair {

using VertexId = int;

// Thrown when text input is malformed; message names the offending line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation would exceed a configured guard; message names
// the bound that tripped.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what)
      : std::runtime_error(what) {}
};

// Guards for the exponential-worst-case solvers. Defaults keep desk-scale
// runs responsive; raise them deliberately for bigger sweeps.
struct SolverLimits {
  int max_agents = 6;                         // frontier recursion cap
  long long combine_budget = 1'000'000'000;   // |F| * |F2| * n! per combine
  long long enumeration_guard = 10'000'000;   // brute-force allocation count
  int max_branches = 24;                      // branch-partition backtracking
};

// Tree rooted at a hub vertex. Ids are dense 0..V-1; children lists are
// sorted ascending so traversal order is canonical.
class RootedTree {
 public:
  RootedTree(int vertex_count, VertexId hub,
             std::span<const std::pair<VertexId, VertexId>> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return vertex_count_ - 1; }
  VertexId hub() const { return hub_; }
  VertexId parent(VertexId v) const { return parent_[check_id(v)]; }
  const std::vector<VertexId>& children(VertexId v) const {
    return children_[check_id(v)];
  }
  int depth(VertexId v) const { return depth_[check_id(v)]; }

  // Optional display labels; fall back to the numeric id.
  void set_labels(std::vector<std::string> labels);
  std::string label(VertexId v) const;
  bool has_labels() const { return !labels_.empty(); }

  bool same_structure(const RootedTree& other) const {
    return vertex_count_ == other.vertex_count_ && hub_ == other.hub_ &&
           parent_ == other.parent_;
  }
  // FNV-1a over (V, hub, parent array); used to bind frontiers to instances.
  std::uint64_t structural_hash() const;

 private:
  VertexId check_id(VertexId v) const;

  int vertex_count_ = 0;
  VertexId hub_ = 0;
  std::vector<VertexId> parent_;  // parent_[hub] == -1
  std::vector<std::vector<VertexId>> children_;
  std::vector<int> depth_;
  std::vector<std::string> labels_;
};

// A division problem: n identical agents and one rooted tree.
struct Instance {
  int agents = 0;
  RootedTree tree;

  std::uint64_t fingerprint() const;
};

// Bundles of vertices per agent. May be partial; completeness (bundles
// partition V minus the hub) is a separate predicate.
class Allocation {
 public:
  explicit Allocation(int agents) : bundles_(agents) {}
  // Sorts each bundle ascending; rejects duplicates within a bundle.
  static Allocation from_bundles(std::vector<std::vector<VertexId>> bundles);

  int agents() const { return static_cast<int>(bundles_.size()); }
  const std::vector<VertexId>& bundle(int agent) const;
  const std::vector<std::vector<VertexId>>& bundles() const { return bundles_; }

  // Structural checks against an instance: agent count, id range, hub
  // exclusion, pairwise disjointness. Throws std::invalid_argument.
  void validate(const Instance& instance) const;
  // True iff the bundles cover every non-hub vertex exactly once.
  bool is_complete(const Instance& instance) const;

  bool operator==(const Allocation& other) const = default;

 private:
  std::vector<std::vector<VertexId>> bundles_;
};

// Bundle costs sorted non-increasing. Comparing sorted profiles is sound
// because agents are identical.
class CostProfile {
 public:
  CostProfile() = default;
  explicit CostProfile(std::vector<int> costs);        // sorts non-increasing
  static CostProfile from_sorted(std::vector<int> costs);  // input pre-sorted

  int size() const { return static_cast<int>(costs_.size()); }
  int operator[](int i) const { return costs_[i]; }
  const std::vector<int>& costs() const { return costs_; }
  int total() const;
  int max() const { return costs_.empty() ? 0 : costs_.front(); }
  int min() const { return costs_.empty() ? 0 : costs_.back(); }
  int gap() const { return max() - min(); }

  bool operator==(const CostProfile& other) const = default;
  // Lexicographic order on the sorted vectors; smaller means leximin-better.
  std::strong_ordering operator<=>(const CostProfile& other) const {
    return costs_ <=> other.costs_;
  }

 private:
  std::vector<int> costs_;
};

// Cost of serving S from the hub: the number of distinct non-hub vertices on
// the hub paths of members of S. Computed by ancestor marking.
// Throws std::invalid_argument on out-of-range ids or the hub itself.
int service_cost(const RootedTree& tree, std::span<const VertexId> order_set);

// service_cost(S + {v}) - service_cost(S), without recomputing S's marking
// from scratch on the caller's side.
int marginal_cost(const RootedTree& tree, std::span<const VertexId> order_set,
                  VertexId v);

// All vertices an agent serving S visits: hub plus every vertex on a hub
// path of a member. Sorted ascending. |visited| == service_cost + 1.
std::vector<VertexId> visited_vertices(const RootedTree& tree,
                                       std::span<const VertexId> order_set);

// Vertex sets of the subtrees hanging off the hub, one per hub child, in
// child-id order. Each set is sorted ascending.
std::vector<std::vector<VertexId>> branches(const RootedTree& tree);

// Subtree below u re-rooted at u, with ids renumbered by BFS from u.
// to_original maps new ids back; to_original[0] == u.
struct SubtreeView {
  RootedTree tree;
  std::vector<VertexId> to_original;
};
SubtreeView subtree(const RootedTree& tree, VertexId u);

// Vertices minimizing the sum of distances to all vertices (one or two, and
// two only when adjacent). Sorted ascending. Root placement is irrelevant.
std::vector<VertexId> tree_center(const RootedTree& tree);

// Per-agent costs in agent order, and the sorted profile.
std::vector<int> bundle_costs(const Instance& instance,
                              const Allocation& allocation);
CostProfile cost_profile(const Instance& instance,
                         const Allocation& allocation);

// Text format: '#' starts a comment; lines are `agents <n>`, `hub <id>`,
// `edge <u> <v>`. Vertex count is inferred from edge endpoints.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

// Text format: one line per agent, `agent <i>: <v1> <v2> ...`, agents
// ascending from 0; an empty bundle is written as `agent <i>:`.
Allocation parse_allocation(std::string_view text, int agents);
std::string serialize_allocation(const Allocation& allocation);

// Compact single-line allocation form used in verdict records: bundles
// joined by '|', ids joined by ','. Example: `1,3|2,4`.
std::string format_allocation_inline(const Allocation& allocation);

}  // namespace delfair
