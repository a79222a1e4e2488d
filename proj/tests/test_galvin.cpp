#include <gtest/gtest.h>

#include "cfp/galvin.hpp"
#include "cfp/gen.hpp"
#include "cfp/oracle.hpp"
#include "support/graphs.hpp"

using namespace cfp;

namespace {

BipartiteMultigraph single_edge() {
  BipartiteMultigraph b;
  b.add_vertex(Side::left);
  b.add_vertex(Side::right);
  b.add_edge(0, 1);
  return b;
}

int max_of(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

bool proper_list_edge_coloring(const BipartiteMultigraph& b, const ListAssignment& l, const std::vector<int>& col) {
  for (int e = 0; e < b.num_edges(); ++e)
    if (!colors::contains(l[e], col[e])) return false;
  return is_proper_edge_coloring(b, col);
}

}  // namespace

TEST(EdgeColorBipartite, SingleEdgeAndK22) {
  EXPECT_EQ(edge_color_bipartite(single_edge()), (std::vector<int>{1}));
  auto k22 = fixtures::complete_bipartite(2, 2);
  auto f = edge_color_bipartite(k22);
  EXPECT_TRUE(is_proper_edge_coloring(k22, f));
  EXPECT_EQ(max_of(f), 2);
}

TEST(EdgeColorBipartite, ParallelEdges) {
  BipartiteMultigraph b;
  b.add_vertex(Side::left);
  b.add_vertex(Side::right);
  for (int i = 0; i < 4; ++i) b.add_edge(0, 1);
  auto f = edge_color_bipartite(b);
  EXPECT_TRUE(is_proper_edge_coloring(b, f));
  EXPECT_EQ(max_of(f), 4);
}

TEST(EdgeColorBipartite, RandomMultigraphsUseMaxDegreeColors) {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    gen::Rng rng(seed);
    int left = rng.uniform(2, 8), right = rng.uniform(2, 8);
    int edges = rng.uniform(1, std::min(20, 4 * std::min(left, right)));
    auto b = gen::gen_bipartite_multigraph(seed, left, right, edges, 4);
    auto f = edge_color_bipartite(b);
    ASSERT_TRUE(is_proper_edge_coloring(b, f)) << "seed " << seed;
    EXPECT_LE(max_of(f), b.max_degree());
  }
}

TEST(Orient, TwoEdgePathThroughXVertex) {
  // X vertex 0 with Y neighbors 1, 2
  BipartiteMultigraph b;
  b.add_vertex(Side::left);
  b.add_vertex(Side::right);
  b.add_vertex(Side::right);
  int e1 = b.add_edge(0, 1), e2 = b.add_edge(0, 2);
  auto d = orient(b, {1, 2});
  EXPECT_TRUE(d.arc(e1, e2));
  EXPECT_FALSE(d.arc(e2, e1));
  auto flipped = orient(b, {1, 2}, Side::right);
  EXPECT_TRUE(flipped.arc(e2, e1));
  EXPECT_FALSE(flipped.arc(e1, e2));
}

TEST(Orient, K22OutDegreeAtMostOne) {
  auto b = fixtures::complete_bipartite(2, 2);
  auto d = orient(b, edge_color_bipartite(b));
  for (int e = 0; e < b.num_edges(); ++e) EXPECT_LE(d.out_degree[e], 1);
}

TEST(Orient, RejectsImproperColoring) {
  auto b = fixtures::complete_bipartite(2, 2);
  EXPECT_THROW(orient(b, {1, 1, 2, 2}), ContractError);
}

TEST(Orient, RandomOutDegreeBelowColorCount) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto b = gen::gen_bipartite_multigraph(seed, 6, 6, 20, 4);
    auto f = edge_color_bipartite(b);
    auto d = orient(b, f);
    for (int e = 0; e < b.num_edges(); ++e) {
      EXPECT_LE(d.out_degree[e], max_of(f) - 1);
      // simple adjacencies get one arc, parallel edges a digon
      for (int t = 0; t < b.num_edges(); ++t) {
        if (t == e || !b.shares_endpoint(e, t)) continue;
        if (b.edge(e) == b.edge(t)) {
          EXPECT_TRUE(d.arc(e, t) && d.arc(t, e));
        } else {
          EXPECT_NE(d.arc(e, t), d.arc(t, e));
        }
      }
    }
  }
}

TEST(Kernel, Examples) {
  auto one = single_edge();
  auto d1 = orient(one, {1});
  std::vector<int> cand{0};
  EXPECT_EQ(kernel(d1, cand), (std::vector<int>{0}));

  BipartiteMultigraph p;
  p.add_vertex(Side::left);
  p.add_vertex(Side::right);
  p.add_vertex(Side::right);
  p.add_edge(0, 1);
  p.add_edge(0, 2);
  auto d2 = orient(p, {1, 2});  // 0 -> 1
  std::vector<int> both{0, 1};
  EXPECT_EQ(kernel(d2, both), (std::vector<int>{1}));
  EXPECT_TRUE(is_kernel(d2, both, {1}));
  EXPECT_FALSE(is_kernel(d2, both, {0}));
  EXPECT_FALSE(is_kernel(d2, both, {0, 1}));
}

TEST(Kernel, EveryCandidateSubsetOfK23) {
  auto b = fixtures::complete_bipartite(2, 3);
  auto d = orient(b, edge_color_bipartite(b));
  for (std::uint32_t m = 1; m < (1u << b.num_edges()); ++m) {
    std::vector<int> cand;
    for (int e = 0; e < b.num_edges(); ++e)
      if (m >> e & 1u) cand.push_back(e);
    EXPECT_TRUE(is_kernel(d, cand, kernel(d, cand))) << "mask " << m;
  }
}

TEST(GalvinListEdgeColor, FourCycleWithTwoColorLists) {
  auto b = fixtures::complete_bipartite(2, 2);
  auto l = ListAssignment::uniform(4, {1, 2});
  auto col = galvin_list_edge_color(b, l);
  EXPECT_TRUE(proper_list_edge_coloring(b, l, col));
}

TEST(GalvinListEdgeColor, MaxDegreeListsAgreeWithOracle) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gen::Rng rng(seed * 7919);
    int edges = rng.uniform(1, 12);
    auto b = gen::gen_bipartite_multigraph(seed, 4, 4, edges, 4);
    int delta = b.max_degree();
    auto l = gen::uniform_lists(rng, b.num_edges(), delta, delta + 3);
    auto col = galvin_list_edge_color(b, l);
    ASSERT_TRUE(proper_list_edge_coloring(b, l, col)) << "seed " << seed;
    auto brute = oracle::brute_l_color(line_graph(b), l);
    EXPECT_EQ(brute.status, oracle::Status::yes);
  }
}

TEST(GalvinListEdgeColor, ExactOutDegreePlusOneLists) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto b = gen::gen_bipartite_multigraph(seed, 5, 5, 16, 4);
    auto d = orient(b, edge_color_bipartite(b));
    gen::Rng rng(seed);
    std::vector<ColorSet> lists;
    for (int e = 0; e < b.num_edges(); ++e) {
      ColorSet pool = colors::range(1, 6);
      rng.shuffle(pool);
      lists.push_back(colors::normalized({pool.begin(), pool.begin() + d.out_degree[e] + 1}));
    }
    ListAssignment l(lists);
    auto col = galvin_list_edge_color(d, l);
    EXPECT_TRUE(proper_list_edge_coloring(b, l, col)) << "seed " << seed;
  }
}

TEST(GalvinListEdgeColor, ShortListIsRejected) {
  auto b = fixtures::complete_bipartite(2, 2);
  auto d = orient(b, edge_color_bipartite(b));
  std::vector<ColorSet> lists(4, ColorSet{1, 2});
  for (int e = 0; e < 4; ++e)
    if (d.out_degree[e] == 1) {
      lists[e] = {1};
      break;
    }
  EXPECT_THROW(galvin_list_edge_color(d, ListAssignment(lists)), ContractError);
}

TEST(PrescribedPendants, SinglePin) {
  // u = 0 on the left with three pendant edges and one edge into a 4-cycle
  BipartiteMultigraph b;
  for (int i = 0; i < 2; ++i) b.add_vertex(Side::left);
  for (int j = 0; j < 5; ++j) b.add_vertex(Side::right);
  int p0 = b.add_edge(0, 2), p1 = b.add_edge(0, 3), p2 = b.add_edge(0, 4);
  b.add_edge(0, 5);
  b.add_edge(1, 5);
  b.add_edge(1, 6);
  auto natural = edge_color_bipartite(b);
  for (int c = 1; c <= 4; ++c) {
    // covers both the color already on the pin and a color used elsewhere at u
    auto f = edge_color_prescribed_pendants(b, 0, {{p0, c}});
    EXPECT_EQ(f[p0], c);
    EXPECT_TRUE(is_proper_edge_coloring(b, f));
  }
  EXPECT_EQ(edge_color_prescribed_pendants(b, 0, {{p0, natural[p0]}})[p0], natural[p0]);
  for (int c1 = 1; c1 <= 4; ++c1)
    for (int c2 = 1; c2 <= 4; ++c2) {
      if (c1 == c2) continue;
      auto f = edge_color_prescribed_pendants(b, 0, {{p1, c1}, {p2, c2}});
      EXPECT_EQ(f[p1], c1);
      EXPECT_EQ(f[p2], c2);
      EXPECT_TRUE(is_proper_edge_coloring(b, f));
    }
}

TEST(PrescribedPendants, ContractViolations) {
  BipartiteMultigraph b;
  b.add_vertex(Side::left);
  b.add_vertex(Side::left);
  b.add_vertex(Side::right);
  b.add_vertex(Side::right);
  int pend = b.add_edge(0, 2);
  int shared = b.add_edge(0, 3);
  b.add_edge(1, 3);
  EXPECT_THROW(edge_color_prescribed_pendants(b, 0, {{shared, 1}}), ContractError);
  EXPECT_THROW(edge_color_prescribed_pendants(b, 0, {{pend, 5}}), ContractError);
  EXPECT_THROW(edge_color_prescribed_pendants(b, 1, {{pend, 1}}), ContractError);
  EXPECT_THROW(edge_color_prescribed_pendants(b, 0, {{pend, 1}, {pend, 2}}), ContractError);
}

TEST(LineGraph, ParallelEdgesAreAdjacent) {
  BipartiteMultigraph b;
  b.add_vertex(Side::left);
  b.add_vertex(Side::right);
  b.add_edge(0, 1);
  b.add_edge(0, 1);
  EXPECT_TRUE(line_graph(b).adjacent(0, 1));
  EXPECT_EQ(line_graph(fixtures::complete_bipartite(3, 3)).num_edges(), 18);
  EXPECT_EQ(line_graph(b), gen::line_graph_of(b));
}
