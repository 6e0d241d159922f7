#include <algorithm>
#include <random>
#include <vector>

#include "delfair/core.hpp"
#include "delfair/fairness.hpp"
#include "delfair/oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace delfair;

namespace {

Allocation alloc(std::vector<std::vector<VertexId>> bundles) {
  return Allocation::from_bundles(std::move(bundles));
}

// Literal EF1 check: for every ordered pair, try removing each order from
// the envied bundle and recompute the cost from scratch via walk simulation.
// Slow but independent of the production implementation.
bool literal_ef1(const Instance& instance, const Allocation& allocation) {
  std::vector<int> costs(instance.agents);
  for (int i = 0; i < instance.agents; ++i)
    costs[i] = oracle::walk_service_cost(instance.tree, allocation.bundle(i));
  for (int i = 0; i < instance.agents; ++i) {
    const auto& bundle = allocation.bundle(i);
    int best_after = costs[i];
    for (size_t k = 0; k < bundle.size(); ++k) {
      std::vector<VertexId> rest = bundle;
      rest.erase(rest.begin() + static_cast<long>(k));
      best_after = std::min(
          best_after, oracle::walk_service_cost(instance.tree, rest));
    }
    for (int j = 0; j < instance.agents; ++j) {
      if (j == i) continue;
      if (!bundle.empty() && best_after > costs[j]) return false;
      if (bundle.empty() && costs[i] > costs[j]) return false;
    }
  }
  return true;
}

// Uniform random complete allocation.
Allocation random_complete(const Instance& instance, std::mt19937_64& rng) {
  std::vector<std::vector<VertexId>> bundles(instance.agents);
  for (VertexId v = 0; v < instance.tree.vertex_count(); ++v) {
    if (v == instance.tree.hub()) continue;
    bundles[gen::draw_below(rng, instance.agents)].push_back(v);
  }
  return Allocation::from_bundles(std::move(bundles));
}

}  // namespace

TEST_CASE("envy-freeness holds only for equal costs") {
  Instance tp = test::twinpath();
  // Crossed split: both agents walk three vertices.
  CHECK(is_ef(tp, alloc({{1, 3}, {2, 4}})));
  // Natural split: both walk two.
  CHECK(is_ef(tp, alloc({{1, 2}, {3, 4}})));
  // Lopsided split: costs differ.
  CHECK_FALSE(is_ef(tp, alloc({{1, 2, 3, 4}, {}})));

  Instance cat = test::caterpillar();
  CHECK_FALSE(is_ef(cat, alloc({{1}, {2, 3, 4, 5, 6, 7}})));

  // One agent never envies.
  Instance solo = test::caterpillar();
  solo.agents = 1;
  CHECK(is_ef(solo, alloc({{1, 2, 3, 4, 5, 6, 7}})));
}

TEST_CASE("EF1 on caterpillar splits") {
  Instance cat = test::caterpillar();
  // Costs (5, 6): each bundle has a removal that ends the envy.
  CHECK(is_ef1(cat, alloc({{1, 2, 6}, {3, 4, 5, 7}})));
  // Costs (5, 3): no single removal brings 5 down to 3.
  CHECK_FALSE(is_ef1(cat, alloc({{4, 5, 6, 7}, {1, 2, 3}})));
  // The grand bundle against an empty-handed agent is hopeless.
  CHECK_FALSE(is_ef1(cat, alloc({{1, 2, 3, 4, 5, 6, 7}, {}})));
  // Every envy-free allocation is EF1.
  Instance tp = test::twinpath();
  CHECK(is_ef1(tp, alloc({{1, 3}, {2, 4}})));
  // Empty bundles are never envious.
  CHECK(is_ef1(cat, alloc({{}, {1, 2, 3, 4, 5, 6, 7}})) ==
        is_ef1(cat, alloc({{1, 2, 3, 4, 5, 6, 7}, {}})));
}

TEST_CASE("EF1 agrees with literal removal recomputation") {
  std::mt19937_64 rng(911);
  auto corpus = test::random_corpus(40, 3, 10, 2, 4, 77);
  int checked = 0;
  for (const auto& instance : corpus) {
    for (int k = 0; k < 8; ++k) {
      Allocation a = random_complete(instance, rng);
      CHECK(is_ef1(instance, a) == literal_ef1(instance, a));
      ++checked;
    }
  }
  CHECK(checked == 320);
}

TEST_CASE("maximin share on the fixtures") {
  Instance cat = test::caterpillar();
  MmsResult cat_mms = mms_cost(cat);
  CHECK(cat_mms.value == 5);
  CHECK(cat_mms.witness.is_complete(cat));
  CHECK(cost_profile(cat, cat_mms.witness).max() == 5);

  Instance tp = test::twinpath();
  CHECK(mms_cost(tp).value == 2);

  Instance spider = test::spider6();
  MmsResult spider_mms = mms_cost(spider);
  CHECK(spider_mms.value == 12);
  CHECK(cost_profile(spider, spider_mms.witness).max() == 12);

  Instance edge = test::single_edge();
  CHECK(mms_cost(edge).value == 1);

  // One agent: the share is the whole tree.
  Instance solo = test::caterpillar();
  solo.agents = 1;
  CHECK(mms_cost(solo).value == 7);
}

TEST_CASE("maximin share methods agree") {
  auto corpus = test::random_corpus(30, 3, 9, 2, 3, 4242);
  for (const auto& instance : corpus) {
    MmsResult fast = mms_cost(instance, MmsMethod::Frontier);
    MmsResult brute = mms_cost(instance, MmsMethod::BruteForce);
    CHECK(fast.value == brute.value);
    CHECK(fast.method == MmsMethod::Frontier);
    CHECK(brute.method == MmsMethod::BruteForce);
    CHECK(cost_profile(instance, fast.witness).max() == fast.value);
    CHECK(cost_profile(instance, brute.witness).max() == brute.value);
    CHECK(oracle::brute_mms(instance).value == fast.value);
  }
}

TEST_CASE("the MMS predicate compares the worst bundle to the share") {
  Instance tp = test::twinpath();
  int share = mms_cost(tp).value;
  REQUIRE(share == 2);
  CHECK(is_mms(tp, alloc({{1, 2}, {3, 4}}), share));
  // The crossed split is envy-free yet costs three per agent.
  CHECK_FALSE(is_mms(tp, alloc({{1, 3}, {2, 4}}), share));

  Instance cat = test::caterpillar();
  CHECK(is_mms(cat, alloc({{1, 2, 3}, {4, 5, 6, 7}}), 5));
  CHECK_FALSE(is_mms(cat, alloc({{1}, {2, 3, 4, 5, 6, 7}}), 5));
}

TEST_CASE("envy-graph construction on the caterpillar") {
  Instance cat = test::caterpillar();
  Allocation a = envy_graph_ef1(cat);
  CHECK(a.bundle(0) == std::vector<VertexId>{1, 3, 6});
  CHECK(a.bundle(1) == std::vector<VertexId>{2, 4, 5, 7});
  CHECK(bundle_costs(cat, a) == std::vector<int>{6, 5});
  CHECK(a.is_complete(cat));
  CHECK(is_ef1(cat, a));
}

TEST_CASE("envy-graph construction always yields complete EF1") {
  auto corpus = test::random_corpus(120, 3, 40, 2, 5, 555);
  for (const auto& instance : corpus) {
    Allocation a = envy_graph_ef1(instance);
    a.validate(instance);
    CHECK(a.is_complete(instance));
    CHECK(is_ef1(instance, a));
  }

  // Degenerate shapes.
  Instance solo = test::caterpillar();
  solo.agents = 1;
  Allocation everything = envy_graph_ef1(solo);
  CHECK(everything.bundle(0) ==
        std::vector<VertexId>({1, 2, 3, 4, 5, 6, 7}));

  Instance crowded = test::single_edge(4);
  Allocation one_order = envy_graph_ef1(crowded);
  CHECK(one_order.is_complete(crowded));
  CHECK(is_ef1(crowded, one_order));
}

TEST_CASE("envy-graph construction is deterministic") {
  Instance spider = test::spider6(3);
  Allocation a = envy_graph_ef1(spider);
  Allocation b = envy_graph_ef1(spider);
  CHECK(a == b);
}
