#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cfp/cobip.hpp"
#include "cfp/gen.hpp"
#include "cfp/graph.hpp"

namespace cfp::fixtures {

// Cobipartite graph on X = 0..p-1, Y = p..p+r-1 with the given X-Y non-edges (local indices).
inline Graph cobipartite(int p, int r, const std::vector<std::pair<int, int>>& non_edges) {
  Graph h(p + r);
  for (int i = 0; i < p + r; ++i)
    for (int j = i + 1; j < p + r; ++j) {
      bool cross = i < p && j >= p;
      if (!cross) {
        h.add_edge(i, j);
        continue;
      }
      bool missing = false;
      for (auto [a, b] : non_edges)
        if (a == i && b + p == j) missing = true;
      if (!missing) h.add_edge(i, j);
    }
  return h;
}

inline VertexSet iota_set(int lo, int hi) {
  VertexSet s;
  for (int v = lo; v < hi; ++v) s.push_back(v);
  return s;
}

struct Shape {
  Graph h;
  CobipartitePartition part;
};

inline Shape make_shape(int p, int r, const std::vector<std::pair<int, int>>& non_edges) {
  Graph h = cobipartite(p, r, non_edges);
  auto part = make_partition(h, iota_set(0, p), iota_set(p, p + r));
  return {std::move(h), std::move(part)};
}

// x1 x2 | y1 y2, non-edge x2y2.
inline Shape x2y2() { return make_shape(2, 2, {{1, 1}}); }
// x1 x2 x3 | y1 y2, non-edge x3y2.
inline Shape x3y2() { return make_shape(3, 2, {{2, 1}}); }
// x1 x2 x3 | y1 y2 y3, non-edges x2y2, x3y3.
inline Shape x3y3() { return make_shape(3, 3, {{1, 1}, {2, 2}}); }
// non-edges x1y1, x2y2, x3y3, x3y1, x1y2.
inline Shape c3elem() { return make_shape(3, 3, {{0, 0}, {1, 1}, {2, 2}, {2, 0}, {0, 1}}); }
// non-edges x1y1, x1y3, x1y4, x2y2, x2y3, x2y4, x3y3, x4y4.
inline Shape c4() {
  return make_shape(4, 4, {{0, 0}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 3}});
}
// |X| = p <= |Y| = r, non-edges x_i y_i.
inline Shape xy4(int p, int r) {
  std::vector<std::pair<int, int>> ne;
  for (int i = 0; i < p; ++i) ne.emplace_back(i, i);
  return make_shape(p, r, ne);
}

inline const std::vector<std::size_t>& x2y2_sizes() { static const std::vector<std::size_t> s{2, 2, 2, 2}; return s; }
inline const std::vector<std::size_t>& x3y2_sizes() { static const std::vector<std::size_t> s{3, 3, 3, 2, 2}; return s; }
inline const std::vector<std::size_t>& x3y3_sizes() { static const std::vector<std::size_t> s{3, 3, 3, 3, 3, 3}; return s; }
inline const std::vector<std::size_t>& c3elem_sizes() { static const std::vector<std::size_t> s{3, 3, 2, 3, 2, 3}; return s; }
inline const std::vector<std::size_t>& c4_sizes() { static const std::vector<std::size_t> s{2, 2, 4, 4, 4, 4, 4, 4}; return s; }
inline std::vector<std::size_t> xy4_sizes(int p, int r) {
  std::vector<std::size_t> s(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
  s.resize(static_cast<std::size_t>(p + r), static_cast<std::size_t>(r));
  return s;
}

// All k-subsets of 1..u in lexicographic order.
inline std::vector<ColorSet> subsets(int u, int k) {
  std::vector<ColorSet> out;
  ColorSet cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int c = next; c <= u; ++c) {
      cur.push_back(c);
      rec(c + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

// All subsets of 1..u with at least k elements.
inline std::vector<ColorSet> subsets_at_least(int u, int k) {
  std::vector<ColorSet> out;
  for (int s = k; s <= u; ++s)
    for (auto& c : subsets(u, s)) out.push_back(std::move(c));
  return out;
}

// Calls visit on every assignment drawing vertex v's list from choices[v]; stops when visit returns false.
inline std::uint64_t for_each_assignment(const std::vector<std::vector<ColorSet>>& choices,
                                         const std::function<bool(const ListAssignment&)>& visit) {
  const std::size_t n = choices.size();
  std::vector<std::size_t> idx(n, 0);
  ListAssignment l(static_cast<int>(n));
  for (std::size_t v = 0; v < n; ++v) {
    if (choices[v].empty()) return 0;
    l.set(static_cast<int>(v), choices[v][0]);
  }
  std::uint64_t count = 0;
  while (true) {
    ++count;
    if (!visit(l)) return count;
    std::size_t v = 0;
    while (v < n) {
      if (++idx[v] < choices[v].size()) {
        l.set(static_cast<int>(v), choices[v][idx[v]]);
        break;
      }
      idx[v] = 0;
      l.set(static_cast<int>(v), choices[v][0]);
      ++v;
    }
    if (v == n) return count;
  }
}

inline std::vector<std::vector<ColorSet>> exact_choices(const std::vector<std::size_t>& sizes, int u) {
  std::vector<std::vector<ColorSet>> out;
  for (auto k : sizes) out.push_back(subsets(u, static_cast<int>(k)));
  return out;
}

inline std::vector<std::vector<ColorSet>> at_least_choices(const std::vector<std::size_t>& sizes, int u) {
  std::vector<std::vector<ColorSet>> out;
  for (auto k : sizes) out.push_back(subsets_at_least(u, static_cast<int>(k)));
  return out;
}

inline ListAssignment random_lists(gen::Rng& rng, const std::vector<std::size_t>& sizes, int u) {
  ListAssignment l(static_cast<int>(sizes.size()));
  for (std::size_t v = 0; v < sizes.size(); ++v) {
    ColorSet all = colors::range(1, u);
    rng.shuffle(all);
    all.resize(sizes[v]);
    l.set(static_cast<int>(v), all);
  }
  return l;
}

// Graph for the two-vertex lemma: x = 0, y = 1; A = N(x) \ N[y], B = N(y) \ N[x], I = common neighbors.
struct C2Instance {
  Graph h;
  int x = 0, y = 1;
};

inline std::optional<C2Instance> random_c2(gen::Rng& rng) {
  int ni = rng.uniform(0, 2), na = rng.uniform(0, 3 - ni), nb = rng.uniform(0, 3 - ni);
  int n = 2 + ni + na + nb;
  Graph h(n);
  h.add_edge(0, 1);
  VertexSet i = iota_set(2, 2 + ni), a = iota_set(2 + ni, 2 + ni + na), b = iota_set(2 + ni + na, n);
  auto clique_with = [&](VertexSet s, int hub) {
    s.push_back(hub);
    for (std::size_t p = 0; p < s.size(); ++p)
      for (std::size_t q = p + 1; q < s.size(); ++q) h.add_edge(s[p], s[q]);
  };
  clique_with(cfp::detail::set_union(i, a), 0);
  clique_with(cfp::detail::set_union(i, b), 1);
  for (int u : a)
    for (int v : b)
      if (rng.coin()) h.add_edge(u, v);
  if (omega(h) > 4 || !is_cobipartite(h)) return std::nullopt;
  return C2Instance{std::move(h), 0, 1};
}

inline std::vector<std::size_t> c2_sizes(const C2Instance& c) {
  std::vector<std::size_t> s(static_cast<std::size_t>(c.h.n()), 4);
  s[c.x] = s[c.y] = 2;
  return s;
}

// X = {0, 1, 2} with 0 complete to Y = 3..; other X-Y edges random.
inline std::optional<Shape> random_c3b(gen::Rng& rng, int ny) {
  std::vector<std::pair<int, int>> ne;
  for (int xi = 1; xi < 3; ++xi)
    for (int yj = 0; yj < ny; ++yj)
      if (rng.coin()) ne.emplace_back(xi, yj);
  Graph h = cobipartite(3, ny, ne);
  if (omega(h) > 4) return std::nullopt;
  auto part = make_partition(h, iota_set(0, 3), iota_set(3, 3 + ny));
  return Shape{std::move(h), std::move(part)};
}

inline std::vector<std::size_t> c3b_sizes(int ny) {
  std::vector<std::size_t> s{3, 2, 2};
  s.resize(static_cast<std::size_t>(3 + ny), 4);
  return s;
}

// Cobipartite graph on n vertices with C = {0, 1, 2} a triangle whose members see cliques outside C.
struct C3Instance {
  Graph h;
  VertexSet c{0, 1, 2};
};

inline bool c3_hypothesis(const Graph& h, const VertexSet& c) {
  if (!is_clique(h, c) || c.size() != 3 || omega(h) > 4 || !is_cobipartite(h)) return false;
  for (int w : c)
    if (!is_clique(h, cfp::detail::set_minus(h.neighbors(w), c))) return false;
  return true;
}

inline std::optional<C3Instance> random_c3(gen::Rng& rng, int n) {
  Graph h(n);
  h.add_edge(0, 1);
  h.add_edge(0, 2);
  h.add_edge(1, 2);
  // outside C: two cliques split randomly, random cross edges
  VertexSet p, q;
  for (int v = 3; v < n; ++v) (rng.coin() ? p : q).push_back(v);
  for (const auto* s : {&p, &q})
    for (std::size_t i = 0; i < s->size(); ++i)
      for (std::size_t j = i + 1; j < s->size(); ++j) h.add_edge((*s)[i], (*s)[j]);
  double density = rng.uniform(1, 9) / 10.0;
  for (int u : p)
    for (int v : q)
      if (rng.uniform(1, 1000) <= density * 1000) h.add_edge(u, v);
  for (int w = 0; w < 3; ++w)
    for (int v = 3; v < n; ++v)
      if (rng.coin()) h.add_edge(w, v);
  if (!c3_hypothesis(h, {0, 1, 2})) return std::nullopt;
  return C3Instance{std::move(h)};
}

inline std::vector<std::size_t> c3_sizes(int n) {
  std::vector<std::size_t> s(static_cast<std::size_t>(n), 4);
  s[0] = s[1] = s[2] = 3;
  return s;
}

}  // namespace cfp::fixtures
