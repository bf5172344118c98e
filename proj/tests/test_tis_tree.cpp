#include <gtest/gtest.h>

#include <random>

#include "gfpm/error.hpp"
#include "gfpm/tis_tree.hpp"
#include "support/test_support.hpp"

namespace gfpm {
namespace {

using test::WorkedExample;

std::shared_ptr<const ItemOrder> pattern_order(const WorkedExample& ex) {
  return std::make_shared<const ItemOrder>(ex.order->reversed());
}

TEST(TisInsert, MfPathRunsMThenF) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  const auto leaf = tis.insert({ex.f, ex.m}, 1, true);
  EXPECT_EQ(tis.path_items(leaf), (Itemset{ex.m, ex.f}));
  const auto m_node = tis.child(TisTree::kRoot, ex.m);
  ASSERT_NE(m_node, TisTree::kNone);
  EXPECT_FALSE(tis.node(m_node).target);
  EXPECT_EQ(tis.node(m_node).count, 0u);
  EXPECT_EQ(tis.node(m_node).subtree_items, Itemset{ex.f});
  EXPECT_EQ(tis.node(leaf).count, 1u);
  EXPECT_TRUE(tis.node(leaf).target);
  EXPECT_EQ(tis.node(TisTree::kRoot).subtree_items, test::sorted({ex.m, ex.f}));
}

TEST(TisInsert, EmptySetIsRoot) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  EXPECT_EQ(tis.insert({}, 5, true), TisTree::kRoot);
  EXPECT_TRUE(tis.empty());
}

TEST(TisInsert, TwiceKeepsTarget) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  const auto a = tis.insert({ex.c}, 1, true);
  const auto b = tis.insert({ex.c}, 2, false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(tis.size(), 1u);
  EXPECT_TRUE(tis.node(a).target);
  EXPECT_EQ(tis.node(a).count, 2u);
}

TEST(TisInsert, UnrankedItemThrows) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  EXPECT_THROW(tis.insert({ex.db.item("a")}, 1, true), Error);
}

TEST(TisInsert, RequiresPatternGrowthOrder) {
  WorkedExample ex;
  EXPECT_THROW(TisTree tis(ex.order), Error);
}

TEST(TisAddChild, RejectsOutOfOrderItem) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  const auto f_node = tis.add_child(TisTree::kRoot, ex.f, 1, true);
  EXPECT_THROW(tis.add_child(f_node, ex.m, 1, true), Error);
  const auto m_node = tis.add_child(TisTree::kRoot, ex.m, 1, true);
  const auto mf = tis.add_child(m_node, ex.f, 1, true);
  EXPECT_EQ(mf, tis.find(std::vector<Item>{ex.f, ex.m}));
}

TEST(BuildTisFromTargets, DropsUnknownItems) {
  WorkedExample ex;
  const Item z = 1000;
  const std::vector<Itemset> targets = {{ex.f}, {ex.f, z}};
  const auto built = build_tis_from_target_list(targets, pattern_order(ex), ex.selected);
  EXPECT_EQ(built.tree.size(), 1u);
  ASSERT_EQ(built.dropped.size(), 1u);
  EXPECT_EQ(built.dropped[0], (Itemset{ex.f, z}));
}

TEST(BuildTisFromTargets, FiveItemsetsShape) {
  WorkedExample ex;
  const std::vector<Itemset> targets = {{ex.f}, {ex.c}, {ex.b}, {ex.m}, {ex.m, ex.f}};
  const auto built = build_tis_from_target_list(targets, pattern_order(ex), ex.selected);
  EXPECT_TRUE(built.dropped.empty());
  const auto entries = enumerate(built.tree);
  const std::vector<TisEntry> expect = {
      {{ex.m}, 0, 0, true}, {{ex.m, ex.f}, 0, 0, true}, {{ex.b}, 0, 0, true},
      {{ex.c}, 0, 0, true}, {{ex.f}, 0, 0, true},
  };
  EXPECT_EQ(entries, expect);
}

TEST(BuildTisFromTargets, EmptyList) {
  WorkedExample ex;
  const auto built = build_tis_from_target_list({}, pattern_order(ex), ex.selected);
  EXPECT_TRUE(built.tree.empty());
  EXPECT_TRUE(built.dropped.empty());
  EXPECT_TRUE(enumerate(built.tree).empty());
}

TEST(Enumerate, SingleInsertBeforeCounting) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  tis.insert({ex.b}, 1, true);
  EXPECT_EQ(enumerate(tis), (std::vector<TisEntry>{{{ex.b}, 1, 0, true}}));
}

TEST(TisTree, ResetAndMarkTargets) {
  WorkedExample ex;
  TisTree tis(pattern_order(ex));
  const auto leaf = tis.insert({ex.m, ex.f}, 1, true);
  tis.set_g_count(leaf, 3);
  tis.reset_g_counts();
  EXPECT_EQ(tis.node(leaf).g_count, 0u);
  tis.mark_all_targets();
  for (const auto& e : enumerate(tis)) EXPECT_TRUE(e.target);
}

Itemset brute_subtree_union(const TisTree& tis, TisTree::NodeId id) {
  Itemset out;
  for (auto c : tis.node(id).children) {
    out.push_back(tis.node(c).item);
    const auto below = brute_subtree_union(tis, c);
    out.insert(out.end(), below.begin(), below.end());
  }
  normalize(out);
  return out;
}

class TisProperties : public ::testing::TestWithParam<int> {};

TEST_P(TisProperties, StructureInvariants) {
  std::mt19937_64 rng(3000 + GetParam());
  const std::uint32_t n_items = 2 + static_cast<std::uint32_t>(rng() % 11);
  Itemset ids(n_items);
  for (Item a = 0; a < n_items; ++a) ids[a] = a;
  std::shuffle(ids.begin(), ids.end(), rng);
  auto order = std::make_shared<const ItemOrder>(ids, OrderDirection::kPatternGrowth);
  const auto tree_order = order->reversed();

  TisTree tis(order);
  std::vector<Itemset> inserted;
  const std::size_t n_inserts = rng() % 40;
  for (std::size_t k = 0; k < n_inserts; ++k) {
    Itemset s;
    for (Item a = 0; a < n_items; ++a)
      if (rng() % 4 == 0) s.push_back(a);
    if (s.empty()) continue;
    tis.insert(s, 1 + rng() % 9, true);
    inserted.push_back(test::sorted(s));
  }

  for (std::size_t id = 0; id <= tis.size(); ++id) {
    const auto nid = static_cast<TisTree::NodeId>(id);
    EXPECT_EQ(tis.node(nid).subtree_items, brute_subtree_union(tis, nid));
    for (auto c : tis.node(nid).children) {
      if (nid == TisTree::kRoot) continue;
      // pattern-growth rank ascends; tree-building rank does not
      EXPECT_LT(order->rank(tis.node(nid).item), order->rank(tis.node(c).item));
      EXPECT_LE(tree_order.rank(tis.node(c).item), tree_order.rank(tis.node(nid).item));
    }
  }

  // Every prefix exists and exactly the inserted sets are targets.
  std::sort(inserted.begin(), inserted.end());
  inserted.erase(std::unique(inserted.begin(), inserted.end()), inserted.end());
  std::vector<Itemset> targets;
  for (const auto& e : enumerate(tis))
    if (e.target) targets.push_back(test::sorted(e.itemset));
  std::sort(targets.begin(), targets.end());
  EXPECT_EQ(targets, inserted);
  for (const auto& s : inserted) {
    Itemset path(s);
    std::sort(path.begin(), path.end(), [&](Item x, Item y) { return order->rank(x) < order->rank(y); });
    for (std::size_t len = 1; len <= path.size(); ++len)
      EXPECT_NE(tis.find(std::span<const Item>(path.data(), len)), TisTree::kNone);
  }

  // Re-inserting the enumerated targets reproduces the tree.
  TisTree again(order);
  const auto entries = enumerate(tis);
  for (const auto& e : entries)
    if (e.target) again.insert(e.itemset, e.count, true);
  EXPECT_EQ(enumerate(again), entries);
}

INSTANTIATE_TEST_SUITE_P(Random, TisProperties, ::testing::Range(0, 50));

}  // namespace
}  // namespace gfpm
