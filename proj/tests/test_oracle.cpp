#include <gtest/gtest.h>

#include "cfp/gen.hpp"
#include "cfp/oracle.hpp"
#include "cfp/structure.hpp"
#include "support/fixtures.hpp"
#include "support/graphs.hpp"

using namespace cfp;
using oracle::Status;

TEST(BruteLColor, CompleteGraphOnFour) {
  Graph g = complete_graph(4);
  auto yes = oracle::brute_l_color(g, gen::equal_lists(4, 4));
  ASSERT_EQ(yes.status, Status::yes);
  EXPECT_TRUE(oracle::validate_coloring(g, gen::equal_lists(4, 4), *yes.coloring).ok());
  EXPECT_EQ(oracle::brute_l_color(g, gen::equal_lists(4, 3)).status, Status::no);
}

TEST(BruteLColor, BudgetExhaustion) {
  Graph g = complete_graph(9);
  auto r = oracle::brute_l_color(g, gen::equal_lists(9, 8), {.node_limit = 100});
  EXPECT_EQ(r.status, Status::exhausted);
}

TEST(BruteLColor, FourCycleWithMixedTwoLists) {
  // C4 with lists {1,2}, {1,3}, {2,3}, {1,2}: colorable
  Graph g = cycle_graph(4);
  ListAssignment l(std::vector<ColorSet>{{1, 2}, {1, 3}, {2, 3}, {1, 2}});
  EXPECT_EQ(oracle::brute_l_color(g, l).status, Status::yes);
  // vertex 1 sees both forced colors
  ListAssignment tight(std::vector<ColorSet>{{1}, {1, 2}, {2}, {1, 2}});
  EXPECT_EQ(oracle::brute_l_color(g, tight).status, Status::no);
}

TEST(ChromaticNumber, Examples) {
  EXPECT_EQ(oracle::chromatic_number(cycle_graph(5)).chi, 3);
  EXPECT_EQ(oracle::chromatic_number(cycle_graph(6)).chi, 2);
  EXPECT_EQ(oracle::chromatic_number(cycle_graph(7)).chi, 3);
  EXPECT_EQ(oracle::chromatic_number(peculiar_graph()).chi, 4);
  EXPECT_EQ(oracle::chromatic_number(fixtures::line_graph_k(2, 3)).chi, 3);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(oracle::chromatic_number(complete_graph(n)).chi, n);
  EXPECT_EQ(oracle::chromatic_number(Graph(0)).chi, 0);
}

TEST(IsPerfectSmall, Examples) {
  auto c5 = oracle::is_perfect_small(cycle_graph(5));
  EXPECT_EQ(c5.status, Status::no);
  EXPECT_EQ(c5.imperfect_subgraph.size(), 5u);
  EXPECT_EQ(oracle::is_perfect_small(peculiar_graph()).status, Status::yes);
  EXPECT_EQ(oracle::is_perfect_small(fixtures::line_graph_k(3, 3)).status, Status::yes);
  EXPECT_EQ(oracle::is_perfect_small(fixtures::line_graph_k(2, 4)).status, Status::yes);
  EXPECT_EQ(oracle::is_perfect_small(Graph(13)).status, Status::exhausted);
}

TEST(IsPerfectSmall, WitnessHasChiAboveOmega) {
  // C7 complement contains no C5 but is imperfect itself
  auto r = oracle::is_perfect_small(complement(cycle_graph(7)));
  ASSERT_EQ(r.status, Status::no);
  Graph h = induced_subgraph(complement(cycle_graph(7)), r.imperfect_subgraph);
  EXPECT_GT(oracle::chromatic_number(h).chi, omega(h));
}

TEST(CheckChoosable, Examples) {
  auto k4 = oracle::check_choosable(complete_graph(4), 4, 5);
  EXPECT_EQ(k4.status, Status::yes);
  EXPECT_GT(k4.assignments, 0u);
  auto k4_3 = oracle::check_choosable(complete_graph(4), 3, 4);
  ASSERT_EQ(k4_3.status, Status::no);
  EXPECT_EQ(oracle::brute_l_color(complete_graph(4), *k4_3.counterexample).status, Status::no);
  // K_{3,3} is not 2-choosable
  Graph k33 = complement(graph_from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}));
  EXPECT_EQ(oracle::check_choosable(k33, 2, 3).status, Status::no);
  EXPECT_EQ(oracle::check_choosable(cycle_graph(4), 2, 4).status, Status::yes);
}

TEST(CheckChoosable, CanonicalRenamingMatchesFullEnumeration) {
  // C4 with 2-lists over {1..4}: the full enumeration agrees with the canonical one
  Graph g = cycle_graph(4);
  auto choices = fixtures::exact_choices({2, 2, 2, 2}, 4);
  bool all = true;
  fixtures::for_each_assignment(choices, [&](const ListAssignment& l) {
    all = all && oracle::brute_l_color(g, l).status == Status::yes;
    return true;
  });
  auto r = oracle::check_choosable(g, 2, 4);
  EXPECT_EQ(r.status == Status::yes, all);
  EXPECT_LT(r.assignments, 6u * 6u * 6u * 6u);
}

TEST(CheckChoosable, EnumerationGuard) {
  EXPECT_THROW(oracle::check_choosable(Graph(10), 2, 3), ContractError);
  EXPECT_THROW(oracle::check_choosable(Graph(3), 2, 7), ContractError);
}

TEST(CheckChoosable, CounterexampleOnTwoByTwoShape) {
  // two 2-cliques missing one cross edge: 3-choosable, not 2-choosable
  auto s = fixtures::x2y2();
  auto r = oracle::check_choosable(s.h, 2, 3);
  ASSERT_EQ(r.status, Status::no);
  EXPECT_EQ(oracle::brute_l_color(s.h, *r.counterexample).status, Status::no);
  EXPECT_EQ(oracle::check_choosable(s.h, 3, 5).status, Status::yes);
}

TEST(ValidateColoring, Witnesses) {
  Graph g = fixtures::path_graph(3);
  auto l = ListAssignment::uniform(3, {1, 2});
  Coloring f(3);
  EXPECT_EQ(oracle::validate_coloring(g, l, Coloring(2)).kind, oracle::Validation::Kind::size_mismatch);
  auto unc = oracle::validate_coloring(g, l, f);
  EXPECT_EQ(unc.kind, oracle::Validation::Kind::uncolored);
  EXPECT_EQ(unc.vertex, 0);
  f[0] = 1;
  f[1] = 3;
  f[2] = 1;
  auto off = oracle::validate_coloring(g, l, f);
  EXPECT_EQ(off.kind, oracle::Validation::Kind::off_list);
  EXPECT_EQ(off.vertex, 1);
  f[1] = 1;
  auto mono = oracle::validate_coloring(g, l, f);
  EXPECT_EQ(mono.kind, oracle::Validation::Kind::monochromatic_edge);
  EXPECT_EQ(mono.edge, (Edge{0, 1}));
  EXPECT_EQ(mono.describe(), "edge 0-1 monochromatic");
  f[1] = 2;
  EXPECT_TRUE(oracle::validate_coloring(g, l, f).ok());
}
