#include <gtest/gtest.h>

#include "cfp/elementary.hpp"
#include "cfp/gen.hpp"
#include "cfp/oracle.hpp"
#include "support/graphs.hpp"

using namespace cfp;

namespace {

// Root K_{2,3} whose flat pair at R0 is replaced by a (2,2) augment: |X ∪ Y| = 4.
ElementaryStructure k23_with_augment() {
  ElementaryStructure s;
  s.root = fixtures::complete_bipartite(2, 3);
  s.edge_to_vertex = {-1, 0, 1, -1, 2, 3};
  Augment a;
  a.edge_x = 0;
  a.edge_y = 3;
  a.x = {4, 5};
  a.y = {6, 7};
  a.xy_edges = {{4, 6}, {4, 7}, {5, 6}};
  s.augments.push_back(a);
  return s;
}

// Root on L0, L1 | R0, R1, R3, R4 with pendant edges L0-R3, L0-R4 (vertices 2, 3) and the
// flat pair L1-R0, L1-R1 replaced by an augment.
ElementaryStructure pendant_hub() {
  ElementaryStructure s;
  for (int i = 0; i < 2; ++i) s.root.add_vertex(Side::left);
  for (int j = 0; j < 4; ++j) s.root.add_vertex(Side::right);
  s.root.add_edge(0, 2);  // 0: L0-R0
  s.root.add_edge(0, 3);  // 1: L0-R1
  s.root.add_edge(1, 2);  // 2: L1-R0
  s.root.add_edge(1, 3);  // 3: L1-R1
  s.root.add_edge(0, 4);  // 4: L0-R3
  s.root.add_edge(0, 5);  // 5: L0-R4
  s.edge_to_vertex = {0, 1, -1, -1, 2, 3};
  Augment a;
  a.edge_x = 2;
  a.edge_y = 3;
  a.x = {4, 5};
  a.y = {6, 7};
  a.xy_edges = {{4, 6}, {5, 7}, {4, 7}};
  s.augments.push_back(a);
  return s;
}

void expect_proper(const Graph& g, const ListAssignment& l, const Coloring& f) {
  auto v = oracle::validate_coloring(g, l, f);
  EXPECT_TRUE(v.ok()) << v.describe();
}

}  // namespace

TEST(ColorElementary, LineGraphOfK23WithThreeColors) {
  Graph g = fixtures::line_graph_k(2, 3);
  auto s = recover_structure(g);
  ASSERT_EQ(s.h(), 0);
  auto l = ListAssignment::uniform(g.n(), {1, 2, 3});
  ElementaryStats st;
  auto f = color_elementary(g, s, l, {}, &st);
  expect_proper(g, l, f);
  EXPECT_EQ(st.base_colorings, 1);
  EXPECT_EQ(st.merges, 0);
}

TEST(ColorElementary, SmallAugmentMerges) {
  auto s = k23_with_augment();
  Graph g = replay(s);
  ElementaryStats st;
  auto l = gen::equal_lists(g.n(), 4);
  auto f = color_elementary(g, s, l, {}, &st);
  expect_proper(g, l, f);
  EXPECT_EQ(st.merges, 1);
  EXPECT_EQ(st.case1 + st.case2 + st.case3, 0);
}

TEST(ColorElementary, AllListFamiliesOnGeneratedAtoms) {
  ElementaryStats total;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    gen::ElementaryParams p;
    p.augments = 1 + static_cast<int>(seed % 3);
    p.cobipartite = seed % 4 == 0;
    if (p.cobipartite) p.augments = 1;
    auto e = gen::gen_elementary(seed, p);
    gen::Rng rng(seed);
    for (const auto& l : {gen::equal_lists(e.g.n(), 4), gen::shifted_lists(rng, e.g.n(), 4, 2),
                          gen::uniform_lists(rng, e.g.n(), 4, 8)}) {
      ElementaryStats st;
      auto f = color_elementary(e.g, e.structure, l, {}, &st);
      expect_proper(e.g, l, f);
      EXPECT_LE(st.max_depth, e.structure.h() + e.g.n());
      total += st;
    }
  }
  EXPECT_GT(total.case1, 0);
  EXPECT_GT(total.case2, 0);
  EXPECT_GT(total.case3, 0);
  EXPECT_GT(total.badf_rerolls, 0);
  EXPECT_GT(total.badf2_rerolls, 0);
}

TEST(ColorElementary, LongListsAreTruncated) {
  auto e = gen::gen_elementary(5, {.augments = 2});
  gen::Rng rng(5);
  auto l = gen::uniform_lists(rng, e.g.n(), 7, 10);
  expect_proper(e.g, l, color_elementary(e.g, e.structure, l));
}

TEST(ColorElementary, PinsAreHonored) {
  auto s = pendant_hub();
  ASSERT_EQ(structure_shape_defect(s), "");
  Graph g = replay(s);
  ASSERT_LE(omega(g), 4);
  gen::Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    auto l = gen::uniform_lists(rng, g.n(), 4, 6);
    Coloring pins(g.n());
    int c1 = rng.uniform(1, 4), c2 = rng.uniform(1, 4);
    pins[2] = c1;
    if (c2 != c1) pins[3] = c2;
    auto f = color_elementary(g, s, l, pins);
    EXPECT_EQ(f[2], c1);
    if (c2 != c1) {
      EXPECT_EQ(f[3], c2);
    }
    for (auto [a, b] : g.edges()) EXPECT_NE(f[a], f[b]);
    for (int v = 0; v < g.n(); ++v)
      if (!pins.has(v)) {
        EXPECT_TRUE(colors::contains(l[v], f[v]));
      }
  }
}

TEST(ColorElementary, ContractViolations) {
  auto s = pendant_hub();
  Graph g = replay(s);
  auto four = gen::equal_lists(g.n(), 4);
  EXPECT_THROW(color_elementary(g, s, gen::equal_lists(g.n(), 3)), ContractError);
  Coloring same(g.n());
  same[2] = 1;
  same[3] = 1;
  EXPECT_THROW(color_elementary(g, s, four, same), ContractError);
  Coloring not_pendant(g.n());
  not_pendant[0] = 1;
  EXPECT_THROW(color_elementary(g, s, four, not_pendant), ContractError);
  auto tampered = s;
  std::swap(tampered.edge_to_vertex[0], tampered.edge_to_vertex[4]);
  EXPECT_THROW(color_elementary(g, tampered, four), ContractError);
}

TEST(ColorElementary, SmallInstancesAgreeWithOracle) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 400 && checked < 60; ++seed) {
    gen::ElementaryInstance e;
    try {
      e = gen::gen_elementary(seed, {.augments = 1, .max_side = 2, .root_edges = 6, .max_vertices = 12, .retries = 200});
    } catch (const gen::Exhausted&) {
      continue;
    }
    gen::Rng rng(seed);
    auto l = gen::uniform_lists(rng, e.g.n(), 4, 5);
    EXPECT_EQ(oracle::brute_l_color(e.g, l).status, oracle::Status::yes);
    expect_proper(e.g, l, color_elementary(e.g, e.structure, l));
    ++checked;
  }
  EXPECT_GE(checked, 20);
}
