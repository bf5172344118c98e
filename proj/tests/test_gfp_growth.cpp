#include <gtest/gtest.h>

#include <random>

#include "gfpm/error.hpp"
#include "gfpm/fp_growth.hpp"
#include "gfpm/gfp_growth.hpp"
#include "gfpm/oracle.hpp"
#include "support/test_support.hpp"

namespace gfpm {
namespace {

using test::WorkedExample;

TEST(GfpGrowth, WorkedExampleCounts) {
  WorkedExample ex;
  auto tis = fp_growth(ex.fp1, 1);
  MiningStats stats;
  gfp_growth(tis, ex.fp0, &stats);
  const std::vector<TisEntry> expect = {
      {{ex.m}, 1, 3, true}, {{ex.m, ex.f}, 1, 3, true}, {{ex.b}, 1, 3, true},
      {{ex.c}, 1, 4, true}, {{ex.f}, 1, 4, true},
  };
  EXPECT_EQ(enumerate(tis), expect);
  // Only {m} has children, and its conditional tree keeps f alone.
  EXPECT_EQ(stats.conditional_trees_built, 1u);
  EXPECT_EQ(stats.nodes_allocated, 1u);
}

TEST(GfpGrowth, AbsentItemStaysZero) {
  const auto db = test::parse_db("a b\na\n", SymbolTable{"a", "b", "q"});
  auto order = std::make_shared<const ItemOrder>(
      ItemOrder({db.item("a"), db.item("b"), db.item("q")}, OrderDirection::kTreeBuilding));
  const auto tree = build_fp_tree(db, order);
  TisTree tis(order->reversed());
  const auto q = tis.insert({db.item("q")}, 0, true);
  const auto qa = tis.insert({db.item("q"), db.item("a")}, 0, true);
  const auto ba = tis.insert({db.item("b"), db.item("a")}, 0, true);
  gfp_growth(tis, tree);
  EXPECT_EQ(tis.node(q).g_count, 0u);
  EXPECT_EQ(tis.node(qa).g_count, 0u);
  EXPECT_EQ(tis.node(ba).g_count, 1u);
}

TEST(GfpGrowth, SingleLeafNeedsNoConditionalTree) {
  WorkedExample ex;
  TisTree tis(ex.order->reversed());
  const auto f = tis.insert({ex.f}, 0, true);
  MiningStats stats;
  gfp_growth(tis, ex.fp0, &stats);
  EXPECT_EQ(tis.node(f).g_count, 4u);
  EXPECT_EQ(stats.conditional_trees_built, 0u);
  EXPECT_EQ(stats.header_probes, 1u);
}

TEST(GfpGrowth, OrderMismatchThrowsBeforeWriting) {
  WorkedExample ex;
  // Pattern-growth direction but not the reverse of the tree order.
  TisTree tis(ItemOrder({ex.f, ex.c, ex.b, ex.m}, OrderDirection::kPatternGrowth));
  const auto node = tis.insert({ex.f, ex.m}, 1, true);
  tis.set_g_count(node, 42);
  EXPECT_THROW(gfp_growth(tis, ex.fp0), Error);
  EXPECT_EQ(tis.node(node).g_count, 42u);
}

TEST(GfpGrowth, NonTargetInteriorLeftAlone) {
  WorkedExample ex;
  TisTree tis(ex.order->reversed());
  const auto mf = tis.insert({ex.m, ex.f}, 0, true);
  gfp_growth(tis, ex.fp0);
  EXPECT_EQ(tis.node(mf).g_count, 3u);
  EXPECT_EQ(tis.node(tis.child(TisTree::kRoot, ex.m)).g_count, 0u);
}

struct RandomCase {
  TransactionDb db;
  std::shared_ptr<const ItemOrder> order;
  FpTree tree;
  TisTree tis;
};

RandomCase make_case(std::mt19937_64& rng) {
  const std::uint32_t n_items = 1 + static_cast<std::uint32_t>(rng() % 12);
  auto db = test::random_db(rng, n_items, rng() % 65, 0.1 + 0.5 * (rng() % 100) / 100.0);
  Itemset all(n_items);
  for (Item a = 0; a < n_items; ++a) all[a] = a;
  auto order = std::make_shared<const ItemOrder>(support_descending_order(db, all));
  auto tree = build_fp_tree(db, order);
  TisTree tis(order->reversed());
  // Targets from the whole lattice, so many have count 0.
  const std::size_t n_targets = 1 + rng() % 30;
  for (std::size_t k = 0; k < n_targets; ++k) {
    Itemset s;
    const auto density = 1 + rng() % 4;
    for (Item a = 0; a < n_items; ++a)
      if (rng() % (density + 1) == 0) s.push_back(a);
    if (!s.empty()) tis.insert(s, 0, true);
  }
  return {std::move(db), order, std::move(tree), std::move(tis)};
}

class GfpProperties : public ::testing::TestWithParam<int> {};

TEST_P(GfpProperties, TargetCountsMatchBruteForce) {
  std::mt19937_64 rng(9000 + GetParam());
  auto rc = make_case(rng);
  MiningStats stats;
  gfp_growth(rc.tis, rc.tree, &stats);

  std::uint64_t expected_trees = 0;
  for (std::size_t id = 1; id <= rc.tis.size(); ++id) {
    const auto nid = static_cast<TisTree::NodeId>(id);
    const auto& n = rc.tis.node(nid);
    const auto items = rc.tis.path_items(nid);
    const Count bf = oracle::bf_count(rc.db, items);
    if (n.target) {
      EXPECT_EQ(n.g_count, bf);
    } else {
      EXPECT_EQ(n.g_count, 0u);
    }
    // A conditional tree is built exactly for the internal nodes that occur.
    if (!n.children.empty() && bf > 0) ++expected_trees;
  }
  EXPECT_EQ(stats.conditional_trees_built, expected_trees);

  std::uint64_t internal_in_header = 0;
  for (std::size_t id = 1; id <= rc.tis.size(); ++id) {
    const auto& n = rc.tis.node(static_cast<TisTree::NodeId>(id));
    if (!n.children.empty() && rc.tree.contains(n.item)) ++internal_in_header;
  }
  EXPECT_LE(stats.conditional_trees_built, internal_in_header);
}

TEST_P(GfpProperties, AllTargetsAgreeWithRealFlags) {
  std::mt19937_64 rng(9000 + GetParam());
  auto rc = make_case(rng);
  TisTree all = rc.tis;
  all.mark_all_targets();
  gfp_growth(rc.tis, rc.tree);
  gfp_growth(all, rc.tree);
  const auto a = enumerate(rc.tis);
  const auto b = enumerate(all);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].target) EXPECT_EQ(a[i].g_count, b[i].g_count);
    EXPECT_EQ(b[i].g_count, oracle::bf_count(rc.db, b[i].itemset));
  }
}

INSTANTIATE_TEST_SUITE_P(Random, GfpProperties, ::testing::Range(0, 250));

TEST(GfpGrowth, SubtreeStartCountsWithinContext) {
  // Starting below a node counts relative to that node's conditional tree.
  WorkedExample ex;
  TisTree tis(ex.order->reversed());
  const auto m = tis.insert({ex.m}, 0, true);
  const auto mf = tis.insert({ex.m, ex.f}, 0, true);
  const auto cond = conditional_tree(ex.fp0, ex.m);
  gfp_growth(tis, m, cond);
  EXPECT_EQ(tis.node(mf).g_count, 3u);
  EXPECT_EQ(tis.node(m).g_count, 0u);
}

}  // namespace
}  // namespace gfpm
