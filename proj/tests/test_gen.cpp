#include <gtest/gtest.h>

#include "cfp/decompose.hpp"
#include "cfp/gen.hpp"
#include "cfp/oracle.hpp"
#include "cfp/structure.hpp"
#include "support/graphs.hpp"

using namespace cfp;

TEST(GenBipartiteMultigraph, DeterministicAndBounded) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto a = gen::gen_bipartite_multigraph(seed, 5, 6, 18, 4);
    EXPECT_EQ(a, gen::gen_bipartite_multigraph(seed, 5, 6, 18, 4));
    EXPECT_EQ(a.num_edges(), 18);
    EXPECT_LE(a.max_degree(), 4);
  }
  EXPECT_THROW(gen::gen_bipartite_multigraph(1, 2, 2, 9, 4), ContractError);
}

TEST(GenBipartiteMultigraph, LineGraphIsClawFree) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto b = gen::gen_bipartite_multigraph(seed, 5, 5, 16, 4);
    Graph g = gen::line_graph_of(b);
    EXPECT_FALSE(find_claw(g));
    EXPECT_LE(omega(g), 4);
  }
}

TEST(GenElementary, Deterministic) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto a = gen::gen_elementary(seed, {.augments = 2});
    auto b = gen::gen_elementary(seed, {.augments = 2});
    EXPECT_EQ(a.g, b.g);
    EXPECT_EQ(a.structure.root, b.structure.root);
    EXPECT_EQ(a.seed, seed);
  }
}

TEST(GenElementary, NoAugmentsGivesLineGraph) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto e = gen::gen_elementary(seed, {.augments = 0});
    EXPECT_EQ(e.structure.h(), 0);
    EXPECT_EQ(e.g, replay(e.structure));
    EXPECT_EQ(e.g.n(), e.structure.root.num_edges());
  }
}

TEST(GenElementary, AtomsAreClawFreeWithCliqueNumberFour) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    gen::ElementaryParams p;
    p.augments = static_cast<int>(seed % 4);
    p.cobipartite = seed % 5 == 0;
    if (p.cobipartite) p.augments = 1;
    auto e = gen::gen_elementary(seed, p);
    EXPECT_FALSE(find_claw(e.g));
    EXPECT_EQ(omega(e.g), 4);
    EXPECT_TRUE(is_atom(e.g));
    EXPECT_LE(e.g.n(), p.max_vertices);
    EXPECT_TRUE(verify_structure(e.g, e.structure));
    if (p.cobipartite) {
      EXPECT_TRUE(is_cobipartite(e.g));
    }
  }
}

TEST(GenElementary, SmallAtomsArePerfect) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 300 && checked < 40; ++seed) {
    gen::ElementaryInstance e;
    try {
      e = gen::gen_elementary(seed, {.augments = 1, .max_side = 2, .root_edges = 6, .max_vertices = 12, .retries = 200});
    } catch (const gen::Exhausted&) {
      continue;
    }
    EXPECT_EQ(oracle::is_perfect_small(e.g).status, oracle::Status::yes) << "seed " << seed;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(GenPeculiar, NineVerticesCliqueNumberFour) {
  Graph g = gen::gen_peculiar();
  EXPECT_EQ(g.n(), 9);
  EXPECT_EQ(omega(g), 4);
  EXPECT_FALSE(find_claw(g));
  EXPECT_TRUE(find_peculiar_partition(g));
}

TEST(Glue, TwoCliquesAlongATriangle) {
  auto r = gen::glue(7, {complete_graph(4), complete_graph(4)});
  EXPECT_EQ(r.parts.size(), 2u);
  EXPECT_LE(omega(r.g), 4);
  EXPECT_FALSE(find_claw(r.g));
  EXPECT_GE(r.g.n(), 5);
  EXPECT_LE(r.g.n(), 7);
  for (const auto& part : r.parts) EXPECT_TRUE(is_clique(r.g, part));
}

TEST(Glue, ElementaryPartsStayClawFree) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto a = gen::gen_elementary(seed, {.augments = 1});
    auto b = gen::gen_elementary(seed + 100, {.augments = 1});
    gen::GlueResult r;
    try {
      r = gen::glue(seed, {a.g, b.g});
    } catch (const gen::Exhausted&) {
      continue;
    }
    EXPECT_FALSE(find_claw(r.g));
    EXPECT_LE(omega(r.g), 4);
    EXPECT_EQ(r.g.n(), static_cast<int>(detail::set_union(r.parts[0], r.parts[1]).size()));
    EXPECT_EQ(induced_subgraph(r.g, r.parts[0]), a.g);
  }
}

TEST(Glue, ChainOfFourCliquesHasAtMostFourLeaves) {
  std::vector<Graph> parts(4, complete_graph(4));
  auto r = gen::glue(11, parts);
  EXPECT_LE(decompose_full(r.g).leaves().size(), 4u);
}

TEST(GenGlued, EveryInstanceIsAdmissible) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto r = gen::gen_glued(seed, {.max_vertices = 30});
    if (seed <= 20) {
      EXPECT_EQ(gen::gen_glued(seed, {.max_vertices = 30}).g, r.g);
    }
    EXPECT_FALSE(find_claw(r.g)) << "seed " << seed;
    EXPECT_LE(omega(r.g), 4);
    EXPECT_LE(r.g.n(), 30);
    EXPECT_GE(r.parts.size(), 2u);
    if (r.g.n() <= 12) {
      EXPECT_EQ(oracle::is_perfect_small(r.g).status, oracle::Status::yes);
    }
  }
}

TEST(ListFamilies, Shapes) {
  gen::Rng rng(9);
  auto u = gen::uniform_lists(rng, 20, 4, 7);
  for (const auto& s : u.lists()) {
    EXPECT_EQ(s.size(), 4u);
    EXPECT_GE(s.front(), 1);
    EXPECT_LE(s.back(), 7);
  }
  auto e = gen::equal_lists(5, 4);
  for (const auto& s : e.lists()) EXPECT_EQ(s, (ColorSet{1, 2, 3, 4}));
  auto sh = gen::shifted_lists(rng, 20, 4, 3);
  for (const auto& s : sh.lists()) {
    EXPECT_EQ(s.size(), 4u);
    EXPECT_EQ(s.back() - s.front(), 3);
    EXPECT_LE(s.front(), 4);
  }
  EXPECT_THROW(gen::uniform_lists(rng, 3, 5, 4), ContractError);
}
