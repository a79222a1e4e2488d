#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfp/graph.hpp"
#include "cfp/multigraph.hpp"

namespace cfp {

// Line graph on edge ids; parallel edges are adjacent.
inline Graph line_graph(const BipartiteMultigraph& b) {
  Graph g(b.num_edges());
  for (int v = 0; v < b.num_vertices(); ++v) {
    const auto& inc = b.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) g.add_edge(inc[i], inc[j]);
  }
  return g;
}

inline bool is_proper_edge_coloring(const BipartiteMultigraph& b, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != b.num_edges()) return false;
  for (int v = 0; v < b.num_vertices(); ++v) {
    std::vector<int> cs;
    for (int e : b.incident(v)) cs.push_back(f[e]);
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end()) return false;
  }
  return true;
}

// Proper edge coloring with colors 1..max_degree, by insertion with alternating-path swaps.
inline std::vector<int> edge_color_bipartite(const BipartiteMultigraph& b) {
  const int delta = b.max_degree();
  const int nv = b.num_vertices();
  // at[v][c] = edge of color c at v, or -1
  std::vector<std::vector<int>> at(static_cast<std::size_t>(nv), std::vector<int>(static_cast<std::size_t>(delta + 1), -1));
  std::vector<int> f(static_cast<std::size_t>(b.num_edges()), 0);
  auto free_at = [&](int v) {
    for (int c = 1; c <= delta; ++c)
      if (at[v][c] < 0) return c;
    throw InternalError("no free color at a vertex below max degree");
  };
  for (int e = 0; e < b.num_edges(); ++e) {
    int u = b.edge(e).left, w = b.edge(e).right;
    int alpha = free_at(u), beta = free_at(w);
    if (at[w][alpha] >= 0) {
      // alternating alpha/beta path from w; it cannot reach u in a bipartite graph
      std::vector<int> path;
      int v = w, c = alpha;
      while (at[v][c] >= 0) {
        int x = at[v][c];
        path.push_back(x);
        v = b.other_end(x, v);
        c = c == alpha ? beta : alpha;
      }
      for (int x : path) {
        at[b.edge(x).left][f[x]] = -1;
        at[b.edge(x).right][f[x]] = -1;
      }
      for (int x : path) {
        f[x] = f[x] == alpha ? beta : alpha;
        at[b.edge(x).left][f[x]] = x;
        at[b.edge(x).right][f[x]] = x;
      }
      detail::check_internal(at[u][alpha] < 0 && at[w][alpha] < 0, "alternating path reached the other endpoint");
    }
    f[e] = alpha;
    at[u][alpha] = e;
    at[w][alpha] = e;
  }
  return f;
}

// Orientation of the line graph: for adjacent edges e, e' with f(e) < f(e'), e -> e' at an
// endpoint on the X side, e' -> e at an endpoint on the Y side.
struct OrientedLineGraph {
  const BipartiteMultigraph* base = nullptr;
  std::vector<int> f;
  Side x_side = Side::left;
  std::vector<std::vector<int>> out;  // out-neighbors per edge id
  std::vector<int> out_degree;

  int x_end(int e) const { return base->end_on(e, x_side); }
  int y_end(int e) const { return base->end_on(e, opposite(x_side)); }

  bool arc(int e, int t) const { return std::find(out[e].begin(), out[e].end(), t) != out[e].end(); }
};

inline OrientedLineGraph orient(const BipartiteMultigraph& b, const std::vector<int>& f, Side x_side = Side::left) {
  detail::check_contract(is_proper_edge_coloring(b, f), "orientation needs a proper edge coloring");
  OrientedLineGraph d;
  d.base = &b;
  d.f = f;
  d.x_side = x_side;
  d.out.assign(static_cast<std::size_t>(b.num_edges()), {});
  for (int v = 0; v < b.num_vertices(); ++v) {
    const auto& inc = b.incident(v);
    bool on_x = b.side(v) == x_side;
    for (int e : inc)
      for (int t : inc) {
        if (e == t) continue;
        bool fwd = on_x ? f[e] < f[t] : f[e] > f[t];
        if (fwd) d.out[e].push_back(t);
      }
  }
  int max_color = 0;
  for (int c : f) max_color = std::max(max_color, c);
  for (auto& o : d.out) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    d.out_degree.push_back(static_cast<int>(o.size()));
    detail::check_internal(static_cast<int>(o.size()) <= std::max(0, max_color - 1), "out-degree exceeds colors - 1");
  }
  return d;
}

inline bool is_kernel(const OrientedLineGraph& d, std::span<const int> candidates, const std::vector<int>& k) {
  const BipartiteMultigraph& b = *d.base;
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j)
      if (b.shares_endpoint(k[i], k[j])) return false;
  for (int e : candidates) {
    if (std::find(k.begin(), k.end(), e) != k.end()) continue;
    bool absorbed = std::any_of(k.begin(), k.end(), [&](int t) { return d.arc(e, t); });
    if (!absorbed) return false;
  }
  return true;
}

// Kernel of the sub-digraph on `candidates` by deferred acceptance: Y-side endpoints propose
// their candidate edges in increasing color, X-side endpoints hold the highest color offered.
inline std::vector<int> kernel(const OrientedLineGraph& d, std::span<const int> candidates) {
  const BipartiteMultigraph& b = *d.base;
  std::vector<std::vector<int>> prefs(static_cast<std::size_t>(b.num_vertices()));
  for (int e : candidates) prefs[d.y_end(e)].push_back(e);
  for (auto& p : prefs) std::sort(p.begin(), p.end(), [&](int a, int c) { return d.f[a] < d.f[c]; });
  std::vector<std::size_t> next(static_cast<std::size_t>(b.num_vertices()), 0);
  std::vector<int> held(static_cast<std::size_t>(b.num_vertices()), -1);
  std::vector<int> free_y;
  for (int v = b.num_vertices() - 1; v >= 0; --v)
    if (!prefs[v].empty()) free_y.push_back(v);
  while (!free_y.empty()) {
    int y = free_y.back();
    free_y.pop_back();
    if (next[y] >= prefs[y].size()) continue;
    int e = prefs[y][next[y]++];
    int x = d.x_end(e);
    if (held[x] < 0) {
      held[x] = e;
    } else if (d.f[e] > d.f[held[x]]) {
      free_y.push_back(d.y_end(held[x]));
      held[x] = e;
    } else {
      free_y.push_back(y);
    }
  }
  std::vector<int> k;
  for (int e : held)
    if (e >= 0) k.push_back(e);
  std::sort(k.begin(), k.end());
  detail::check_internal(is_kernel(d, candidates, k), "deferred acceptance produced a non-kernel");
  return k;
}

// Colors every edge from its list given |L(e)| >= d+(e) + 1, one color at a time in increasing
// order: the kernel of the edges still accepting that color takes it.
inline std::vector<int> galvin_list_edge_color(const OrientedLineGraph& d, const ListAssignment& l) {
  const int m = d.base->num_edges();
  detail::check_contract(l.size() == m, "one list per root edge required");
  for (int e = 0; e < m; ++e)
    detail::check_contract(static_cast<int>(l[e].size()) >= d.out_degree[e] + 1,
                           "list of edge " + std::to_string(e) + " shorter than out-degree + 1");
  std::vector<ColorSet> lists = l.lists();
  ColorSet palette = l.union_over([&] {
    VertexSet all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[i] = i;
    return all;
  }());
  std::vector<int> col(static_cast<std::size_t>(m), kNoColor);
  for (Color c : palette) {
    std::vector<int> cand;
    for (int e = 0; e < m; ++e)
      if (col[e] == kNoColor && colors::contains(lists[e], c)) cand.push_back(e);
    if (cand.empty()) continue;
    for (int e : kernel(d, cand)) col[e] = c;
    for (int e : cand)
      if (col[e] == kNoColor) lists[e] = colors::minus(lists[e], c);
  }
  for (int e = 0; e < m; ++e) detail::check_internal(col[e] != kNoColor, "edge left uncolored by kernel rounds");
  return col;
}

inline std::vector<int> galvin_list_edge_color(const BipartiteMultigraph& b, const ListAssignment& l) {
  auto f = edge_color_bipartite(b);
  auto d = orient(b, f);
  return galvin_list_edge_color(d, l);
}

struct PendantPin {
  int edge;
  int color;  // 1..4
};

// 4-edge-coloring in which each pinned pendant edge at u has its pinned color. Pendant edges
// touch no other edge away from u, so renaming colors at u is enough: the pins are permuted
// onto their target colors across the whole graph.
inline std::vector<int> edge_color_prescribed_pendants(const BipartiteMultigraph& b, int u,
                                                        const std::vector<PendantPin>& pins) {
  detail::check_contract(b.max_degree() <= 4, "prescribed pendant coloring needs max degree <= 4");
  detail::check_contract(pins.size() <= 2, "at most two pins");
  for (std::size_t i = 0; i < pins.size(); ++i) {
    const auto& p = pins[i];
    detail::check_contract(p.color >= 1 && p.color <= 4, "pin color outside 1..4");
    auto ends = b.edge(p.edge);
    detail::check_contract(ends.left == u || ends.right == u, "pinned edge not at u");
    detail::check_contract(b.degree(b.other_end(p.edge, u)) == 1, "pinned edge not pendant");
    for (std::size_t j = 0; j < i; ++j)
      detail::check_contract(pins[j].color != p.color && pins[j].edge != p.edge, "pins not distinct");
  }
  auto f = edge_color_bipartite(b);
  std::vector<int> perm = {0, 1, 2, 3, 4};  // old color -> new color
  std::vector<int> target_of(5, 0);
  std::vector<char> taken(5, 0);
  for (const auto& p : pins) {
    target_of[f[p.edge]] = p.color;
    taken[p.color] = 1;
  }
  int next = 1;
  for (int c = 1; c <= 4; ++c) {
    if (target_of[c]) {
      perm[c] = target_of[c];
      continue;
    }
    while (taken[next]) ++next;
    perm[c] = next;
    taken[next] = 1;
  }
  for (auto& c : f) c = perm[c];
  for (const auto& p : pins) detail::check_internal(f[p.edge] == p.color, "pin not honored");
  detail::check_internal(is_proper_edge_coloring(b, f), "renamed coloring improper");
  return f;
}

}  // namespace cfp
