#include "delfair/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <numeric>
#include <sstream>

namespace delfair {

namespace {

std::string id_str(VertexId v) { return std::to_string(v); }

}  // namespace

RootedTree::RootedTree(int vertex_count, VertexId hub,
                       std::span<const std::pair<VertexId, VertexId>> edges)
    : vertex_count_(vertex_count), hub_(hub) {
  if (vertex_count < 1) {
    throw std::invalid_argument("vertex count must be positive, got " +
                                std::to_string(vertex_count));
  }
  if (hub < 0 || hub >= vertex_count) {
    throw std::invalid_argument("hub out of range: " + id_str(hub));
  }
  if (static_cast<int>(edges.size()) != vertex_count - 1) {
    throw std::invalid_argument(
        "not a tree: " + std::to_string(edges.size()) + " edges for " +
        std::to_string(vertex_count) + " vertices");
  }

  std::vector<std::vector<VertexId>> adjacency(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range: " + id_str(u) +
                                  " " + id_str(v));
    }
    if (u == v) {
      throw std::invalid_argument("self-loop at vertex " + id_str(u));
    }
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  for (const auto& list : adjacency) {
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("duplicate edge");
    }
  }

  parent_.assign(vertex_count, -1);
  children_.assign(vertex_count, {});
  depth_.assign(vertex_count, -1);
  std::vector<VertexId> queue;
  queue.reserve(vertex_count);
  queue.push_back(hub);
  depth_[hub] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (VertexId w : adjacency[v]) {
      if (depth_[w] >= 0) continue;
      depth_[w] = depth_[v] + 1;
      parent_[w] = v;
      children_[v].push_back(w);  // adjacency sorted, so children sorted
      queue.push_back(w);
    }
  }
  if (static_cast<int>(queue.size()) != vertex_count) {
    throw std::invalid_argument("not a tree: disconnected or cyclic");
  }
}

VertexId RootedTree::check_id(VertexId v) const {
  if (v < 0 || v >= vertex_count_) {
    throw std::invalid_argument("vertex id out of range: " + id_str(v));
  }
  return v;
}

void RootedTree::set_labels(std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != vertex_count_) {
    throw std::invalid_argument("label count does not match vertex count");
  }
  labels_ = std::move(labels);
}

std::string RootedTree::label(VertexId v) const {
  check_id(v);
  if (labels_.empty()) return id_str(v);
  return labels_[v];
}

std::uint64_t RootedTree::structural_hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(vertex_count_));
  mix(static_cast<std::uint64_t>(hub_));
  for (VertexId p : parent_) mix(static_cast<std::uint64_t>(p + 1));
  return h;
}

std::uint64_t Instance::fingerprint() const {
  return tree.structural_hash() * 31 + static_cast<std::uint64_t>(agents);
}

Allocation Allocation::from_bundles(
    std::vector<std::vector<VertexId>> bundles) {
  Allocation a(static_cast<int>(bundles.size()));
  a.bundles_ = std::move(bundles);
  for (auto& bundle : a.bundles_) {
    std::sort(bundle.begin(), bundle.end());
    if (std::adjacent_find(bundle.begin(), bundle.end()) != bundle.end()) {
      throw std::invalid_argument("duplicate vertex within a bundle");
    }
  }
  return a;
}

const std::vector<VertexId>& Allocation::bundle(int agent) const {
  if (agent < 0 || agent >= agents()) {
    throw std::invalid_argument("agent index out of range: " +
                                std::to_string(agent));
  }
  return bundles_[agent];
}

void Allocation::validate(const Instance& instance) const {
  if (agents() != instance.agents) {
    throw std::invalid_argument("allocation has " + std::to_string(agents()) +
                                " bundles for " +
                                std::to_string(instance.agents) + " agents");
  }
  std::vector<char> seen(instance.tree.vertex_count(), 0);
  for (const auto& bundle : bundles_) {
    for (VertexId v : bundle) {
      if (v < 0 || v >= instance.tree.vertex_count()) {
        throw std::invalid_argument("vertex id out of range: " + id_str(v));
      }
      if (v == instance.tree.hub()) {
        throw std::invalid_argument("hub cannot be allocated");
      }
      if (seen[v]) {
        throw std::invalid_argument("vertex " + id_str(v) +
                                    " assigned to more than one bundle");
      }
      seen[v] = 1;
    }
  }
}

bool Allocation::is_complete(const Instance& instance) const {
  validate(instance);
  int assigned = 0;
  for (const auto& bundle : bundles_) assigned += static_cast<int>(bundle.size());
  return assigned == instance.tree.vertex_count() - 1;
}

CostProfile::CostProfile(std::vector<int> costs) : costs_(std::move(costs)) {
  std::sort(costs_.begin(), costs_.end(), std::greater<int>());
}

CostProfile CostProfile::from_sorted(std::vector<int> costs) {
  if (!std::is_sorted(costs.begin(), costs.end(), std::greater<int>())) {
    throw std::invalid_argument("profile costs not sorted non-increasing");
  }
  CostProfile p;
  p.costs_ = std::move(costs);
  return p;
}

int CostProfile::total() const {
  return std::accumulate(costs_.begin(), costs_.end(), 0);
}

namespace {

// Marks root paths of order_set members into seen (hub pre-marked) and
// returns the number of newly marked vertices.
int mark_root_paths(const RootedTree& tree, std::span<const VertexId> order_set,
                    std::vector<char>& seen) {
  int marked = 0;
  for (VertexId v : order_set) {
    if (v < 0 || v >= tree.vertex_count()) {
      throw std::invalid_argument("vertex id out of range: " + id_str(v));
    }
    if (v == tree.hub()) {
      throw std::invalid_argument("order set may not contain the hub");
    }
    for (VertexId x = v; !seen[x]; x = tree.parent(x)) {
      seen[x] = 1;
      ++marked;
    }
  }
  return marked;
}

}  // namespace

int service_cost(const RootedTree& tree, std::span<const VertexId> order_set) {
  std::vector<char> seen(tree.vertex_count(), 0);
  seen[tree.hub()] = 1;
  return mark_root_paths(tree, order_set, seen);
}

int marginal_cost(const RootedTree& tree, std::span<const VertexId> order_set,
                  VertexId v) {
  std::vector<char> seen(tree.vertex_count(), 0);
  seen[tree.hub()] = 1;
  mark_root_paths(tree, order_set, seen);
  VertexId single[1] = {v};
  return mark_root_paths(tree, single, seen);
}

std::vector<VertexId> visited_vertices(const RootedTree& tree,
                                       std::span<const VertexId> order_set) {
  std::vector<char> seen(tree.vertex_count(), 0);
  seen[tree.hub()] = 1;
  mark_root_paths(tree, order_set, seen);
  std::vector<VertexId> visited;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    if (seen[v]) visited.push_back(v);
  }
  return visited;
}

std::vector<std::vector<VertexId>> branches(const RootedTree& tree) {
  std::vector<std::vector<VertexId>> result;
  for (VertexId child : tree.children(tree.hub())) {
    std::vector<VertexId> branch;
    std::vector<VertexId> stack{child};
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      branch.push_back(v);
      for (VertexId w : tree.children(v)) stack.push_back(w);
    }
    std::sort(branch.begin(), branch.end());
    result.push_back(std::move(branch));
  }
  return result;
}

SubtreeView subtree(const RootedTree& tree, VertexId u) {
  if (u < 0 || u >= tree.vertex_count()) {
    throw std::invalid_argument("vertex id out of range: " + id_str(u));
  }
  std::vector<VertexId> to_original{u};
  std::vector<VertexId> new_id(tree.vertex_count(), -1);
  new_id[u] = 0;
  for (std::size_t head = 0; head < to_original.size(); ++head) {
    VertexId v = to_original[head];
    for (VertexId w : tree.children(v)) {
      new_id[w] = static_cast<VertexId>(to_original.size());
      to_original.push_back(w);
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(to_original.size() - 1);
  for (std::size_t i = 1; i < to_original.size(); ++i) {
    edges.emplace_back(new_id[tree.parent(to_original[i])],
                       static_cast<VertexId>(i));
  }
  return SubtreeView{
      RootedTree(static_cast<int>(to_original.size()), 0, edges),
      std::move(to_original)};
}

std::vector<VertexId> tree_center(const RootedTree& tree) {
  const int n = tree.vertex_count();
  // BFS order from the hub; reverse order visits children before parents.
  std::vector<VertexId> order{tree.hub()};
  order.reserve(n);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (VertexId w : tree.children(order[head])) order.push_back(w);
  }

  std::vector<long long> below(n, 1);     // subtree sizes
  std::vector<long long> dist_sum(n, 0);  // sum of distances within subtree
  for (int i = n - 1; i >= 1; --i) {
    VertexId v = order[i];
    VertexId p = tree.parent(v);
    below[p] += below[v];
    dist_sum[p] += dist_sum[v] + below[v];
  }
  // Reroot: moving from parent p to child v shifts distances by n - 2*below[v].
  std::vector<long long> total(n, 0);
  total[tree.hub()] = dist_sum[tree.hub()];
  for (std::size_t i = 1; i < order.size(); ++i) {
    VertexId v = order[i];
    total[v] = total[tree.parent(v)] + n - 2 * below[v];
  }

  long long best = *std::min_element(total.begin(), total.end());
  std::vector<VertexId> center;
  for (VertexId v = 0; v < n; ++v) {
    if (total[v] == best) center.push_back(v);
  }
  return center;
}

std::vector<int> bundle_costs(const Instance& instance,
                              const Allocation& allocation) {
  allocation.validate(instance);
  std::vector<int> costs;
  costs.reserve(allocation.agents());
  for (const auto& bundle : allocation.bundles()) {
    costs.push_back(service_cost(instance.tree, bundle));
  }
  return costs;
}

CostProfile cost_profile(const Instance& instance,
                         const Allocation& allocation) {
  return CostProfile(bundle_costs(instance, allocation));
}

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::istringstream stream{std::string(raw)};
    std::string token;
    while (stream >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw ParseError("line " + std::to_string(line) + ": " + message);
}

int parse_int(const std::string& token, int line, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(),
                                   value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    parse_fail(line, std::string("expected ") + what + ", got '" + token + "'");
  }
  return value;
}

// Union-find over edge endpoints, used to report the line of a cycle edge.
struct UnionFind {
  std::vector<int> parent;
  int find(int v) {
    if (static_cast<int>(parent.size()) <= v) {
      int old = static_cast<int>(parent.size());
      parent.resize(v + 1);
      std::iota(parent.begin() + old, parent.end(), old);
    }
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<int> agents;
  std::optional<VertexId> hub;
  int hub_line = 0;
  std::vector<std::pair<VertexId, VertexId>> edges;
  UnionFind uf;
  VertexId max_id = -1;

  for (const Line& line : tokenize(text)) {
    const std::string& head = line.tokens.front();
    if (head == "agents") {
      if (line.tokens.size() != 2) parse_fail(line.number, "agents takes one value");
      if (agents) parse_fail(line.number, "duplicate agents line");
      int n = parse_int(line.tokens[1], line.number, "agent count");
      if (n < 1) parse_fail(line.number, "agent count must be positive");
      agents = n;
    } else if (head == "hub") {
      if (line.tokens.size() != 2) parse_fail(line.number, "hub takes one value");
      if (hub) parse_fail(line.number, "duplicate hub line");
      hub = parse_int(line.tokens[1], line.number, "hub id");
      hub_line = line.number;
    } else if (head == "edge") {
      if (line.tokens.size() != 3) parse_fail(line.number, "edge takes two ids");
      VertexId u = parse_int(line.tokens[1], line.number, "vertex id");
      VertexId v = parse_int(line.tokens[2], line.number, "vertex id");
      if (u < 0 || v < 0) parse_fail(line.number, "vertex ids must be non-negative");
      if (u == v) parse_fail(line.number, "self-loop is not a tree edge");
      for (const auto& [a, b] : edges) {
        if ((a == u && b == v) || (a == v && b == u)) {
          parse_fail(line.number, "duplicate edge " + id_str(u) + " " + id_str(v));
        }
      }
      if (!uf.unite(u, v)) {
        parse_fail(line.number, "edge " + id_str(u) + " " + id_str(v) +
                                    " creates a cycle: not a tree");
      }
      edges.emplace_back(u, v);
      max_id = std::max({max_id, u, v});
    } else {
      parse_fail(line.number, "unknown directive '" + head + "'");
    }
  }

  if (!agents) throw ParseError("missing agents line");
  if (!hub) throw ParseError("missing hub line");

  int vertex_count = edges.empty() ? 1 : max_id + 1;
  if (*hub < 0 || *hub >= vertex_count) {
    parse_fail(hub_line, "hub out of range: " + id_str(*hub));
  }
  if (static_cast<int>(edges.size()) != vertex_count - 1) {
    throw ParseError("not a tree: " + std::to_string(edges.size()) +
                     " edges for " + std::to_string(vertex_count) +
                     " vertices (ids must be dense)");
  }
  try {
    return Instance{*agents, RootedTree(vertex_count, *hub, edges)};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  if (instance.tree.has_labels()) {
    out << "# labels:";
    for (VertexId v = 0; v < instance.tree.vertex_count(); ++v) {
      out << ' ' << v << '=' << instance.tree.label(v);
    }
    out << '\n';
  }
  out << "agents " << instance.agents << '\n';
  out << "hub " << instance.tree.hub() << '\n';
  for (VertexId v = 0; v < instance.tree.vertex_count(); ++v) {
    if (v == instance.tree.hub()) continue;
    out << "edge " << instance.tree.parent(v) << ' ' << v << '\n';
  }
  return out.str();
}

Allocation parse_allocation(std::string_view text, int agents) {
  if (agents < 1) throw std::invalid_argument("agent count must be positive");
  std::vector<std::vector<VertexId>> bundles(agents);
  int next_agent = 0;
  for (const Line& line : tokenize(text)) {
    if (line.tokens.front() != "agent") {
      parse_fail(line.number, "expected 'agent <i>:'");
    }
    if (line.tokens.size() < 2) parse_fail(line.number, "missing agent index");
    std::string index_token = line.tokens[1];
    if (index_token.empty() || index_token.back() != ':') {
      parse_fail(line.number, "agent index must end with ':'");
    }
    index_token.pop_back();
    int agent = parse_int(index_token, line.number, "agent index");
    if (agent != next_agent) {
      parse_fail(line.number, "expected agent " + std::to_string(next_agent) +
                                  ", got " + std::to_string(agent));
    }
    ++next_agent;
    for (std::size_t i = 2; i < line.tokens.size(); ++i) {
      bundles[agent].push_back(
          parse_int(line.tokens[i], line.number, "vertex id"));
    }
  }
  if (next_agent != agents) {
    throw ParseError("expected " + std::to_string(agents) +
                     " agent lines, got " + std::to_string(next_agent));
  }
  return Allocation::from_bundles(std::move(bundles));
}

std::string serialize_allocation(const Allocation& allocation) {
  std::ostringstream out;
  for (int agent = 0; agent < allocation.agents(); ++agent) {
    out << "agent " << agent << ':';
    for (VertexId v : allocation.bundle(agent)) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::string format_allocation_inline(const Allocation& allocation) {
  std::ostringstream out;
  for (int agent = 0; agent < allocation.agents(); ++agent) {
    if (agent > 0) out << '|';
    const auto& bundle = allocation.bundle(agent);
    for (std::size_t i = 0; i < bundle.size(); ++i) {
      if (i > 0) out << ',';
      out << bundle[i];
    }
  }
  return out.str();
}

}  // namespace delfair
