#pragma once

#include <vector>

#include "cfp/galvin.hpp"
#include "cfp/gen.hpp"
#include "cfp/graph.hpp"

namespace cfp::fixtures {

inline Graph random_graph(gen::Rng& rng, int n, double p) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.coin(p)) g.add_edge(u, v);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph star(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline BipartiteMultigraph complete_bipartite(int p, int q) {
  BipartiteMultigraph b;
  for (int i = 0; i < p; ++i) b.add_vertex(Side::left);
  for (int j = 0; j < q; ++j) b.add_vertex(Side::right);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) b.add_edge(i, p + j);
  return b;
}

inline Graph line_graph_k(int p, int q) { return line_graph(complete_bipartite(p, q)); }

// Two cliques of the given sizes sharing `shared` vertices (the first `shared` ids).
inline Graph cliques_sharing(int a, int b, int shared) {
  int n = a + b - shared;
  Graph g(n);
  auto clique = [&](const VertexSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) g.add_edge(s[i], s[j]);
  };
  VertexSet first, second;
  for (int v = 0; v < a; ++v) first.push_back(v);
  for (int v = 0; v < shared; ++v) second.push_back(v);
  for (int v = a; v < n; ++v) second.push_back(v);
  clique(first);
  clique(second);
  return g;
}

// K4 chain: consecutive K4's overlap in a triangle, `count` cliques on count + 3 vertices.
inline Graph k4_chain(int count) {
  Graph g(count + 3);
  for (int s = 0; s < count; ++s)
    for (int i = s; i < s + 4; ++i)
      for (int j = i + 1; j < s + 4; ++j) g.add_edge(i, j);
  return g;
}

// Host for the solver's |W| = 2, |C| = 3 extension: the extremal cutset is {x, y, z} = {0, 1, 2}
// with A2 = {3, 4} and W = {5, 6}, where 6 misses y = 1. Found by random search over the far side.
inline Graph c3b_host() {
  return graph_from_edges(12, {{0, 1}, {0, 2}, {0, 3}, {0, 5}, {0, 6}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
                               {2, 4}, {2, 5}, {2, 6}, {3, 4}, {5, 6}, {6, 7}, {6, 10}, {6, 11}, {7, 9},
                               {7, 10}, {7, 11}, {8, 9}, {8, 10}, {8, 11}, {9, 11}, {10, 11}});
}

}  // namespace cfp::fixtures
