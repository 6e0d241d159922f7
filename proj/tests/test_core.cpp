#include <algorithm>

#include "delfair/core.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace delfair;

namespace {

int cost(const Instance& instance, std::vector<VertexId> s) {
  return service_cost(instance.tree, s);
}

}  // namespace

TEST_CASE("service cost on the caterpillar fixture") {
  Instance cat = test::caterpillar();
  // ids: 0=h 1=a 2=b 3=c 4=d 5=e 6=f 7=g
  CHECK(cost(cat, {6}) == 4);         // {f}: b,d,e,f
  CHECK(cost(cat, {6, 7}) == 5);      // {f,g}
  CHECK(cost(cat, {1, 3}) == 3);      // {a,c}: a,b,c
  CHECK(cost(cat, {}) == 0);
  CHECK(cost(cat, {1, 2, 3, 4, 5, 6, 7}) == 7);
  CHECK(cost(cat, {7}) == 5);
  CHECK(cost(cat, {1}) == 1);
}

TEST_CASE("service cost rejects bad inputs") {
  Instance cat = test::caterpillar();
  CHECK_THROWS_AS(cost(cat, {0}), std::invalid_argument);   // hub
  CHECK_THROWS_AS(cost(cat, {8}), std::invalid_argument);   // out of range
  CHECK_THROWS_AS(cost(cat, {-1}), std::invalid_argument);
}

TEST_CASE("marginal cost") {
  Instance cat = test::caterpillar();
  std::vector<VertexId> f = {6};
  CHECK(marginal_cost(cat.tree, f, 7) == 1);   // g extends f's path
  CHECK(marginal_cost(cat.tree, {}, 6) == 4);
  std::vector<VertexId> g = {7};
  CHECK(marginal_cost(cat.tree, g, 6) == 0);   // f already on g's path
  // consistency with service_cost
  std::vector<VertexId> ac = {1, 3};
  CHECK(marginal_cost(cat.tree, ac, 6) ==
        cost(cat, {1, 3, 6}) - cost(cat, {1, 3}));
}

TEST_CASE("visited vertices") {
  Instance cat = test::caterpillar();
  std::vector<VertexId> f = {6};
  std::vector<VertexId> expected = {0, 2, 4, 5, 6};  // h,b,d,e,f
  CHECK(visited_vertices(cat.tree, f) == expected);
  CHECK(visited_vertices(cat.tree, {}) == std::vector<VertexId>{0});
  std::vector<VertexId> ac = {1, 3};
  CHECK(static_cast<int>(visited_vertices(cat.tree, ac).size()) ==
        cost(cat, {1, 3}) + 1);
}

TEST_CASE("branches") {
  Instance cat = test::caterpillar();
  auto cat_branches = branches(cat.tree);
  REQUIRE(cat_branches.size() == 2);
  CHECK(cat_branches[0] == std::vector<VertexId>{1});
  CHECK(cat_branches[1] == std::vector<VertexId>{2, 3, 4, 5, 6, 7});

  Instance edge = test::single_edge();
  auto edge_branches = branches(edge.tree);
  REQUIRE(edge_branches.size() == 1);
  CHECK(edge_branches[0] == std::vector<VertexId>{1});

  Instance spider = test::spider6();
  auto spider_branches = branches(spider.tree);
  REQUIRE(spider_branches.size() == 6);
  std::vector<int> sizes;
  for (const auto& branch : spider_branches) {
    sizes.push_back(static_cast<int>(branch.size()));
  }
  CHECK(sizes == std::vector<int>{3, 3, 3, 6, 6, 1});
}

TEST_CASE("subtree view") {
  Instance cat = test::caterpillar();
  SubtreeView below_d = subtree(cat.tree, 4);
  CHECK(below_d.tree.vertex_count() == 4);
  CHECK(below_d.tree.hub() == 0);
  CHECK(below_d.to_original == std::vector<VertexId>{4, 5, 6, 7});
  // the d-e-f-g chain stays a path
  CHECK(below_d.tree.parent(1) == 0);
  CHECK(below_d.tree.parent(2) == 1);
  CHECK(below_d.tree.parent(3) == 2);

  SubtreeView whole = subtree(cat.tree, cat.tree.hub());
  CHECK(whole.tree.same_structure(cat.tree));
  std::vector<VertexId> identity = {0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(whole.to_original == identity);
}

TEST_CASE("tree center") {
  Instance cat = test::caterpillar();
  CHECK(tree_center(cat.tree) == std::vector<VertexId>{2, 4});  // b and d

  Instance path4 = test::path_instance(4, 0, 2);
  CHECK(tree_center(path4.tree) == std::vector<VertexId>{1, 2});

  RootedTree lone(1, 0, {});
  CHECK(tree_center(lone) == std::vector<VertexId>{0});

  Instance edge = test::single_edge();
  CHECK(tree_center(edge.tree) == std::vector<VertexId>{0, 1});

  // center does not depend on where the tree is rooted
  Instance cat_at_b{2, RootedTree(8, 2,
                                   std::vector<std::pair<VertexId, VertexId>>{
                                       {0, 1},
                                       {0, 2},
                                       {2, 3},
                                       {2, 4},
                                       {4, 5},
                                       {5, 6},
                                       {6, 7}})};
  CHECK(tree_center(cat_at_b.tree) == std::vector<VertexId>{2, 4});
}

TEST_CASE("total cost lower bound and whole-branch equality") {
  Instance cat = test::caterpillar();
  auto total = [&](const Allocation& a) {
    int sum = 0;
    for (const auto& bundle : a.bundles()) sum += cost(cat, bundle);
    return sum;
  };
  // whole branches within single bundles: total equals edge count
  Allocation whole = Allocation::from_bundles({{1}, {2, 3, 4, 5, 6, 7}});
  CHECK(total(whole) == cat.tree.edge_count());
  // a split branch pays the shared prefix twice
  Allocation split = Allocation::from_bundles({{1, 2, 6}, {3, 4, 5, 7}});
  CHECK(total(split) > cat.tree.edge_count());
}

TEST_CASE("rooted tree construction rejects malformed input") {
  using Edges = std::vector<std::pair<VertexId, VertexId>>;
  CHECK_THROWS_AS(RootedTree(0, 0, Edges{}), std::invalid_argument);
  CHECK_THROWS_AS(RootedTree(2, 2, Edges{{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(RootedTree(2, 0, Edges{}), std::invalid_argument);
  CHECK_THROWS_AS(RootedTree(3, 0, Edges{{0, 1}, {0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RootedTree(3, 0, Edges{{0, 1}, {1, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RootedTree(4, 0, Edges{{0, 1}, {1, 2}, {2, 0}}),
                  std::invalid_argument);
}

TEST_CASE("instance text round trip") {
  Instance cat = test::caterpillar();
  std::string text = serialize_instance(cat);
  Instance back = parse_instance(text);
  CHECK(back.agents == cat.agents);
  CHECK(back.tree.same_structure(cat.tree));

  Instance commented = parse_instance(
      "# a comment\n"
      "agents 2\n"
      "\n"
      "hub 0   # trailing comment\n"
      "edge 0 1\n");
  CHECK(commented.agents == 2);
  CHECK(commented.tree.vertex_count() == 2);
}

TEST_CASE("instance parse errors name the offending line") {
  CHECK_THROWS_WITH_AS(parse_instance("hub 0\n"), "missing agents line",
                       ParseError);
  CHECK_THROWS_AS(parse_instance("agents 2\n"), ParseError);
  // cycle reported on its line
  try {
    parse_instance("agents 2\nhub 0\nedge 0 1\nedge 1 2\nedge 2 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
    CHECK(std::string(e.what()).find("not a tree") != std::string::npos);
  }
  // duplicate edge
  try {
    parse_instance("agents 2\nhub 0\nedge 0 1\nedge 1 0\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("duplicate edge") != std::string::npos);
  }
  // hub out of range
  try {
    parse_instance("agents 2\nhub 9\nedge 0 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("hub out of range") != std::string::npos);
  }
  // disconnected (sparse ids)
  CHECK_THROWS_AS(parse_instance("agents 2\nhub 0\nedge 0 1\nedge 2 3\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance("agents 2\nhub 0\nedge 0 x\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("agents 0\nhub 0\nedge 0 1\n"), ParseError);
}

TEST_CASE("allocation structure and text format") {
  Instance cat = test::caterpillar();
  Allocation a = Allocation::from_bundles({{6, 1, 3}, {2, 4, 5, 7}});
  CHECK(a.bundle(0) == std::vector<VertexId>{1, 3, 6});
  a.validate(cat);
  CHECK(a.is_complete(cat));

  Allocation partial = Allocation::from_bundles({{1}, {2}});
  CHECK_FALSE(partial.is_complete(cat));

  CHECK_THROWS_AS(Allocation::from_bundles({{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Allocation::from_bundles({{0}, {1}}).validate(cat),
                  std::invalid_argument);  // hub allocated
  CHECK_THROWS_AS(Allocation::from_bundles({{1}, {1}}).validate(cat),
                  std::invalid_argument);  // overlap
  CHECK_THROWS_AS(Allocation::from_bundles({{1}}).validate(cat),
                  std::invalid_argument);  // wrong agent count

  std::string text = serialize_allocation(a);
  CHECK(text == "agent 0: 1 3 6\nagent 1: 2 4 5 7\n");
  Allocation back = parse_allocation(text, 2);
  CHECK(back == a);
  CHECK(format_allocation_inline(a) == "1,3,6|2,4,5,7");

  Allocation with_empty = Allocation::from_bundles({{1, 2, 3, 4, 5, 6, 7}, {}});
  CHECK(serialize_allocation(with_empty) ==
        "agent 0: 1 2 3 4 5 6 7\nagent 1:\n");
  CHECK(parse_allocation("agent 0: 1 2 3 4 5 6 7\nagent 1:\n", 2) ==
        with_empty);
  CHECK(format_allocation_inline(with_empty) == "1,2,3,4,5,6,7|");

  CHECK_THROWS_AS(parse_allocation("agent 1: 1\nagent 0: 2\n", 2), ParseError);
  CHECK_THROWS_AS(parse_allocation("agent 0: 1\n", 2), ParseError);
}

TEST_CASE("cost profile ordering") {
  CostProfile p({3, 5});  // sorts to (5,3)
  CHECK(p[0] == 5);
  CHECK(p[1] == 3);
  CHECK(p.total() == 8);
  CHECK(p.gap() == 2);
  CHECK(CostProfile({5, 3}) < CostProfile({6, 1}));
  CHECK(CostProfile({6, 1}) < CostProfile({7, 0}));
  CHECK_THROWS_AS(CostProfile::from_sorted({1, 2}), std::invalid_argument);
  CHECK(CostProfile::from_sorted({2, 2, 0}).gap() == 2);
}

TEST_CASE("cost function is monotone and submodular on random trees") {
  std::mt19937_64 rng(2024);
  for (Instance& instance :
       test::random_corpus(60, 3, 12, 2, 2, 77)) {
    const RootedTree& tree = instance.tree;
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<VertexId> s = test::random_order_set(tree, rng);
      std::vector<VertexId> t = s;
      std::vector<VertexId> extra;
      for (VertexId v = 0; v < tree.vertex_count(); ++v) {
        if (v == tree.hub()) continue;
        if (std::find(s.begin(), s.end(), v) == s.end() && (rng() & 1)) {
          t.push_back(v);
          extra.push_back(v);
        }
      }
      // monotone: S subset T implies c(S) <= c(T)
      CHECK(service_cost(tree, s) <= service_cost(tree, t));
      // submodular: marginals shrink on supersets
      if (!extra.empty()) {
        VertexId v = extra.front();
        std::vector<VertexId> t_minus = t;
        t_minus.erase(std::find(t_minus.begin(), t_minus.end(), v));
        CHECK(marginal_cost(tree, s, v) >= marginal_cost(tree, t_minus, v));
      }
    }
  }
}
