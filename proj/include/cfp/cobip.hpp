#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cfp/decompose.hpp"
#include "cfp/graph.hpp"
#include "cfp/matching.hpp"

namespace cfp {

struct CobipartitePartition {
  VertexSet x;
  VertexSet y;
  std::vector<Edge> non_edges;  // (x-vertex, y-vertex) pairs that are not adjacent
};

inline CobipartitePartition make_partition(const Graph& h, VertexSet x, VertexSet y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  detail::check_contract(is_clique(h, x) && is_clique(h, y), "partition sides must be cliques");
  detail::check_contract(detail::set_intersect(x, y).empty() && static_cast<int>(x.size() + y.size()) == h.n(),
                         "partition sides must split the vertex set");
  CobipartitePartition p{x, y, {}};
  for (int u : x)
    for (int v : y)
      if (!h.adjacent(u, v)) p.non_edges.emplace_back(u, v);
  return p;
}

struct LemmaResult {
  std::optional<Coloring> coloring;
  VertexSet violating_clique;  // set when no coloring exists

  explicit operator bool() const { return coloring.has_value(); }
};

// Least clique Q (by size, then lexicographically) with |L(Q)| < |Q|.
inline std::optional<VertexSet> find_violating_clique(const Graph& h, const ListAssignment& l) {
  const int n = h.n();
  detail::check_contract(n <= 20, "clique enumeration limited to small graphs");
  std::optional<VertexSet> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet q;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) q.push_back(v);
    if (best && (q.size() > best->size() || (q.size() == best->size() && q >= *best))) continue;
    if (!is_clique(h, q)) continue;
    if (l.union_over(q).size() < q.size()) best = q;
  }
  return best;
}

namespace detail {

using Lists = std::vector<ColorSet>;

// Working instance for the constructive steps: a graph, per-vertex lists and a partial coloring.
// Available colors of a vertex exclude the colors of its colored neighbors.
struct Work {
  Graph g;
  Lists l;
  Coloring f;

  Work(Graph graph, Lists lists) : g(std::move(graph)), l(std::move(lists)), f(g.n()) {}

  ColorSet avail(int v) const { return colors::minus(l[v], neighbor_colors(g, f, v)); }

  void put(int v, Color c) {
    check_internal(!f.has(v) && colors::contains(avail(v), c), "color not available at assignment");
    f[v] = c;
  }

  bool can_greedy(const std::vector<int>& order) const {
    Work copy = *this;
    for (int v : order) {
      ColorSet a = copy.avail(v);
      if (a.empty()) return false;
      copy.f[v] = a.front();
    }
    return true;
  }

  void greedy(const std::vector<int>& order) {
    for (int v : order) {
      ColorSet a = avail(v);
      check_internal(!a.empty(), "greedy order ran out of colors at vertex " + std::to_string(v));
      f[v] = a.front();
    }
  }

  // Distinct representatives for the available lists of `vs`; assigns and returns true if found.
  bool sdr(const VertexSet& vs) {
    Lists fam;
    for (int v : vs) fam.push_back(avail(v));
    auto r = cfp::sdr(fam);
    if (!r) return false;
    for (std::size_t i = 0; i < vs.size(); ++i) f[vs[i]] = (*r.representatives)[i];
    return true;
  }

  // Even cycle given in cyclic order with at least two available colors per vertex. Equal lists
  // alternate two colors; otherwise some v_i holds a color missing from its predecessor, and the
  // greedy walk from v_i ends at the predecessor with only one blocked color.
  void color_even_cycle(const std::vector<int>& cyc) {
    const std::size_t k = cyc.size();
    check_internal(k % 2 == 0 && k >= 4, "even cycle expected");
    for (std::size_t i = 0; i < k; ++i) {
      ColorSet own = avail(cyc[i]), pred = avail(cyc[(i + k - 1) % k]);
      ColorSet only = colors::minus(own, pred);
      if (only.empty()) continue;
      put(cyc[i], only.front());
      std::vector<int> rest;
      for (std::size_t j = 1; j < k; ++j) rest.push_back(cyc[(i + j) % k]);
      greedy(rest);
      return;
    }
    ColorSet a = avail(cyc[0]);
    check_internal(a.size() >= 2, "even cycle list shorter than 2");
    for (std::size_t i = 0; i < k; ++i) put(cyc[i], a[i % 2]);
  }

  VertexSet uncolored() const {
    VertexSet out;
    for (int v = 0; v < g.n(); ++v)
      if (!f.has(v)) out.push_back(v);
    return out;
  }

  void finish_sdr(const std::string& step) { check_internal(sdr(uncolored()), step + ": Hall's condition failed"); }
};

inline Lists truncate_lists(const ListAssignment& l, const std::vector<std::size_t>& sizes) {
  Lists out;
  for (int v = 0; v < l.size(); ++v) out.push_back(colors::truncated(l[v], sizes[v]));
  return out;
}

inline void require_sizes(const ListAssignment& l, const std::vector<std::size_t>& sizes, const std::string& lemma) {
  check_contract(l.size() == static_cast<int>(sizes.size()), lemma + ": one list per vertex required");
  for (int v = 0; v < l.size(); ++v)
    check_contract(l[v].size() >= sizes[v], lemma + ": list of vertex " + std::to_string(v) + " too short");
}

inline Coloring checked(const Graph& h, const Lists& l, const Coloring& f, const std::string& lemma) {
  Coloring out = f;
  out.color.resize(static_cast<std::size_t>(h.n()));
  for (int v = 0; v < h.n(); ++v) {
    check_internal(out.has(v) && colors::contains(l[v], out[v]), lemma + ": vertex left uncolored or off-list");
  }
  for (auto [a, b] : h.edges()) check_internal(out[a] != out[b], lemma + ": monochromatic edge");
  return out;
}

// Labels X and Y (as permutations) so that the X-Y non-edges are exactly `pattern`
// (pairs of label indices) and each labelled vertex has at least the required list size.
inline std::optional<std::pair<VertexSet, VertexSet>> label_shape(const Graph& h, const CobipartitePartition& part,
                                                                  const std::vector<std::pair<int, int>>& pattern,
                                                                  const std::vector<std::size_t>& xsize,
                                                                  const std::vector<std::size_t>& ysize,
                                                                  const ListAssignment& l) {
  if (part.x.size() != xsize.size() || part.y.size() != ysize.size()) return std::nullopt;
  if (part.non_edges.size() != pattern.size()) return std::nullopt;
  VertexSet xs = part.x, ys = part.y;
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < xs.size() && ok; ++i) ok = l[xs[i]].size() >= xsize[i];
    if (!ok) continue;
    VertexSet yy = ys;
    do {
      bool fine = true;
      for (std::size_t j = 0; j < yy.size() && fine; ++j) fine = l[yy[j]].size() >= ysize[j];
      for (auto [i, j] : pattern)
        if (fine && h.adjacent(xs[i], yy[j])) fine = false;
      if (fine) return std::make_pair(xs, yy);
    } while (std::next_permutation(yy.begin(), yy.end()));
  } while (std::next_permutation(xs.begin(), xs.end()));
  return std::nullopt;
}

// ---- lemma cores on a Work instance; vertex ids are positions in that instance

// Non-edges between X and Y form a matching covering X. Merge a non-adjacent pair on a
// common color whenever Hall's condition fails.
inline void xy4_core(Work& w, VertexSet xs, VertexSet ys) {
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  while (true) {
    VertexSet all = set_union(xs, ys);
    Lists fam;
    for (int v : all) fam.push_back(w.avail(v));
    auto r = cfp::sdr(fam);
    if (r) {
      for (std::size_t i = 0; i < all.size(); ++i) w.f[all[i]] = (*r.representatives)[i];
      return;
    }
    check_internal(!xs.empty(), "x-y-4: clique part fails Hall's condition");
    VertexSet t;
    for (int i : r.deficient) t.push_back(all[i]);
    bool merged = false;
    for (int x : t) {
      if (!set_contains(xs, x)) continue;
      for (int y : t) {
        if (!set_contains(ys, y) || w.g.adjacent(x, y)) continue;
        ColorSet common = colors::intersect(w.avail(x), w.avail(y));
        if (common.empty()) continue;
        w.put(x, common.front());
        w.put(y, common.front());
        xs = set_minus(xs, {x});
        ys = set_minus(ys, {y});
        merged = true;
        break;
      }
      if (merged) break;
    }
    check_internal(merged, "x-y-4: deficient set without a mergeable non-edge");
  }
}

// X = {x1,x2}, Y = {y1,y2}, sole non-edge x2y2. Exact: either all four colors differ or
// x2, y2 share one.
inline bool x2y2_core(Work& w, int x1, int x2, int y1, int y2) {
  if (w.sdr({x1, x2, y1, y2})) return true;
  for (Color c : colors::intersect(w.avail(x2), w.avail(y2))) {
    Work trial = w;
    trial.put(x2, c);
    trial.put(y2, c);
    if (trial.sdr({x1, y1})) {
      w = trial;
      return true;
    }
  }
  return false;
}

// X = {x1,x2,x3}, Y = {y1,y2}, sole non-edge x3y2. Exact by the same dichotomy, trying the
// list-inclusion shortcut first.
inline bool x3y2_core(Work& w, int x1, int x2, int x3, int y1, int y2) {
  if (colors::subset(w.avail(y2), w.avail(x3))) {
    Work trial = w;
    if (trial.sdr({x1, x2, y1, y2})) {
      trial.put(x3, trial.f[y2]);
      w = trial;
      return true;
    }
  }
  if (w.sdr({x1, x2, x3, y1, y2})) return true;
  for (Color c : colors::intersect(w.avail(x3), w.avail(y2))) {
    Work trial = w;
    trial.put(x3, c);
    trial.put(y2, c);
    if (trial.sdr({x1, x2, y1})) {
      w = trial;
      return true;
    }
  }
  return false;
}

inline VertexSet work_violating_clique(const Work& w, const VertexSet& vs) {
  Graph h = induced_subgraph(w.g, vs);
  Lists sub;
  for (int v : vs) sub.push_back(w.avail(v));
  auto q = find_violating_clique(h, ListAssignment(sub));
  VertexSet out;
  if (q)
    for (int i : *q) out.push_back(vs[i]);
  return out;
}

// X = {x1,x2,x3}, Y = {y1,y2,y3}, non-edges x2y2 and x3y3, every clique satisfying Hall's
// condition. Follows the reduction to |L(xi) ∩ L(yi)| <= 1, then the SDR, then the two
// shared-color branches.
inline void x3y3_core(Work& w, std::array<int, 3> x, std::array<int, 3> y) {
  for (int i : {1, 2}) {
    int j = 3 - i;  // the other non-edge index
    ColorSet shared = colors::intersect(w.avail(x[i]), w.avail(y[i]));
    if (shared.size() < 2) continue;
    // drop x_i and restrict y_i to the shared colors; what is left is a 3+2 instance
    Work sub = w;
    sub.l[y[i]] = shared;
    for (int v = 0; v < sub.g.n(); ++v)
      if (v != x[i]) sub.g.remove_edge(x[i], v);
    if (x3y2_core(sub, y[0], y[i], y[j], x[0], x[j])) {
      Work done = w;
      for (int v : {x[0], x[j], y[0], y[i], y[j]}) done.put(v, sub.f[v]);
      done.put(x[i], sub.f[y[i]]);
      w = done;
      return;
    }
    // The 3+2 instance has a 4-clique {x1, y1, y_i, z} on three colors a, b, c.
    VertexSet five{x[0], x[j], y[0], y[i], y[j]};
    std::sort(five.begin(), five.end());
    VertexSet q = work_violating_clique(sub, five);
    check_internal(q.size() == 4, "x-3-y-3 reduction: expected a 4-clique witness");
    check_internal(set_contains(q, x[0]) && set_contains(q, y[0]) && set_contains(q, y[i]),
                   "x-3-y-3 reduction: witness misses x1, y1 or y_i");
    int z = set_contains(q, y[j]) ? y[j] : x[j];
    int zp = z == y[j] ? x[j] : y[j];
    ColorSet abc = w.avail(x[0]);
    check_internal(abc.size() == 3 && w.avail(y[0]) == abc && w.avail(z) == abc,
                   "x-3-y-3 reduction: witness lists are not one 3-set");
    ColorSet dset = colors::minus(w.avail(y[i]), abc), eset = colors::minus(w.avail(x[i]), abc);
    check_internal(!dset.empty() && !eset.empty(), "x-3-y-3 reduction: missing extra colors");
    Color d = dset.front(), e = eset.front();
    ColorSet zp_abc = colors::intersect(w.avail(zp), abc);
    Work done = w;
    if (!zp_abc.empty()) {
      Color a = zp_abc.front();
      ColorSet rest = colors::minus(abc, a);
      done.put(zp, a);
      done.put(z, a);
      done.put(x[0], rest[0]);
      done.put(y[0], rest[1]);
      done.put(x[i], e);
      done.put(y[i], d);
    } else {
      done.put(x[0], abc[0]);
      done.put(y[0], abc[1]);
      done.put(z, abc[2]);
      done.put(x[i], e);
      done.put(y[i], d);
      done.greedy({zp});
    }
    w = done;
    return;
  }

  if (w.sdr({x[0], x[1], x[2], y[0], y[1], y[2]})) return;

  ColorSet s2 = colors::intersect(w.avail(x[1]), w.avail(y[1]));
  ColorSet s3 = colors::intersect(w.avail(x[2]), w.avail(y[2]));
  check_internal(s2.size() == 1 && s3.size() == 1, "x-3-y-3: Hall failure without single shared colors");
  Color c2 = s2.front(), c3 = s3.front();

  if (c2 != c3) {
    Work t = w;
    t.put(x[1], c2);
    t.put(y[1], c2);
    t.put(x[2], c3);
    t.put(y[2], c3);
    if (t.sdr({x[0], y[0]})) {
      w = t;
      return;
    }
    // L(x1) = L(y1) = {b, c2, c3}: put c2, c3 on x1, y1 and pick x2, y2 leaving room for x3, y3
    for (auto [p, q] : {std::pair{c2, c3}, std::pair{c3, c2}}) {
      Work base = w;
      base.put(x[0], p);
      base.put(y[0], q);
      for (Color a : base.avail(x[1]))
        for (Color b : base.avail(y[1])) {
          Work t2 = base;
          t2.put(x[1], a);
          if (!colors::contains(t2.avail(y[1]), b)) continue;
          t2.put(y[1], b);
          if (!t2.can_greedy({x[2], y[2]})) continue;
          t2.greedy({x[2], y[2]});
          w = t2;
          return;
        }
    }
    throw InternalError("x-3-y-3: distinct shared colors branch failed");
  }

  Color c = c2;
  Work t = w;
  for (int v : {x[0], x[1], y[0], y[1]}) t.l[v] = colors::minus(t.l[v], c);
  if (x2y2_core(t, x[0], x[1], y[0], y[1])) {
    t.put(x[2], c);
    t.put(y[2], c);
    for (int v : {x[0], x[1], y[0], y[1]}) t.l[v] = w.l[v];
    w = t;
    return;
  }
  ColorSet ab = colors::minus(w.avail(x[0]), c);
  check_internal(ab.size() == 2 && colors::minus(w.avail(y[0]), c) == ab, "x-3-y-3: equal shared colors branch shape");
  Work done = w;
  done.put(x[0], ab[0]);
  done.put(y[0], ab[1]);
  done.put(x[1], c);
  done.put(y[1], c);
  done.greedy({x[2], y[2]});
  w = done;
}

// c3elem shape: non-edges x1y1, x2y2, x3y3, x3y1, x1y2; lists of size 2 on x3, y2 and 3 elsewhere.
inline void c3elem_core(Work& w, std::array<int, 3> x, std::array<int, 3> y) {
  auto [x1, x2, x3] = x;
  auto [y1, y2, y3] = y;
  auto merge = [&](int a, int b, const std::vector<int>& order) {
    ColorSet common = colors::intersect(w.avail(a), w.avail(b));
    if (common.empty()) return false;
    w.put(a, common.front());
    w.put(b, common.front());
    w.greedy(order);
    return true;
  };
  if (merge(x2, y2, {x3, x1, y3, y1})) return;
  // the same with the symmetry x1<->y1, x2<->y3, x3<->y2
  if (merge(x3, y3, {y2, y1, x2, x1})) return;
  {
    ColorSet common = colors::intersect(w.avail(x1), w.avail(y2));
    if (!common.empty()) {
      Color a = common.front();
      bool in_y3 = colors::contains(w.avail(y3), a);
      w.put(x1, a);
      w.put(y2, a);
      w.greedy(in_y3 ? std::vector<int>{y3, y1, x2, x3} : std::vector<int>{x3, x2, y1, y3});
      return;
    }
  }
  {
    ColorSet common = colors::intersect(w.avail(x3), w.avail(y1));
    if (!common.empty()) {
      Color a = common.front();
      bool in_x2 = colors::contains(w.avail(x2), a);
      w.put(x3, a);
      w.put(y1, a);
      w.greedy(in_x2 ? std::vector<int>{x2, x1, y3, y2} : std::vector<int>{y2, y3, x1, x2});
      return;
    }
  }
  {
    ColorSet common = colors::intersect(w.avail(x1), w.avail(y1));
    if (!common.empty()) {
      w.put(x1, common.front());
      w.put(y1, common.front());
      // the rest is the 4-cycle x2-x3-y2-y3 with lists of size >= 2
      w.color_even_cycle({x2, x3, y2, y3});
      return;
    }
  }
  w.finish_sdr("c3elem");
}

// Solver shape: X = {x1,x2,x3,x4}, Y = {y1,...,y4}, non-edges x1y1, x1y3, x1y4, x2y2, x2y3,
// x2y4, x3y3, x4y4; lists of size 2 on x1, x2 and 4 elsewhere.
inline void c4_core(Work& w, std::array<int, 4> x, std::array<int, 4> y) {
  ColorSet ly1 = w.avail(y[0]), ly2 = w.avail(y[1]);
  ColorSet lx1 = w.avail(x[0]), lx2 = w.avail(x[1]);
  Color c1 = -1, c2 = -1;
  if (colors::intersect(ly1, ly2).size() == 3) {
    Color alpha = colors::minus(ly1, ly2).front();
    ColorSet opts = colors::minus(lx2, alpha);
    check_internal(!opts.empty(), "c4: no color for x2");
    c2 = opts.front();
  } else {
    c2 = lx2.front();
  }
  ColorSet opts1 = colors::minus(lx1, c2);
  check_internal(!opts1.empty(), "c4: no color for x1");
  c1 = opts1.front();
  w.put(x[0], c1);
  w.put(x[1], c2);
  check_internal(colors::unite(w.avail(y[0]), w.avail(y[1])).size() >= 4, "c4: |L'(y1) u L'(y2)| < 4");
  for (auto [a, b] : {std::pair{2, 3}, std::pair{3, 2}}) {
    ColorSet common = colors::intersect(w.avail(x[a]), w.avail(y[a]));
    if (common.empty()) continue;
    w.put(x[a], common.front());
    w.put(y[a], common.front());
    w.greedy({x[b]});
    check_internal(w.sdr({y[0], y[1]}), "c4: y1, y2 not colorable after merge");
    w.greedy({y[b]});
    return;
  }
  w.finish_sdr("c4");
}

}  // namespace detail

// ---------------------------------------------------------------- public lemma entry points

inline Coloring color_xy4(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "x-y-4";
  detail::check_contract(part.x.size() <= part.y.size(), name + ": |X| <= |Y| required");
  detail::check_contract(part.non_edges.size() == part.x.size(), name + ": exactly |X| non-edges required");
  VertexSet xs, ys;
  for (auto [a, b] : part.non_edges) {
    xs.push_back(a);
    ys.push_back(b);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  detail::check_contract(std::adjacent_find(xs.begin(), xs.end()) == xs.end() &&
                             std::adjacent_find(ys.begin(), ys.end()) == ys.end() && xs == part.x,
                         name + ": non-edges must be a matching covering X");
  for (int v : part.x) detail::check_contract(l[v].size() >= part.x.size(), name + ": list on X too short");
  for (int v : part.y) detail::check_contract(l[v].size() >= part.y.size(), name + ": list on Y too short");
  detail::Work w(h, l.lists());
  detail::xy4_core(w, part.x, part.y);
  return detail::checked(h, l.lists(), w.f, name);
}

inline LemmaResult color_x2y2(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "x-2-y-2";
  auto lab = detail::label_shape(h, part, {{1, 1}}, {2, 2}, {2, 2}, l);
  detail::check_contract(lab.has_value(), name + ": shape or list sizes do not match");
  auto& [xs, ys] = *lab;
  detail::Work w(h, l.lists());
  if (detail::x2y2_core(w, xs[0], xs[1], ys[0], ys[1])) return {detail::checked(h, l.lists(), w.f, name), {}};
  auto q = find_violating_clique(h, l);
  detail::check_internal(q.has_value(), name + ": uncolorable without a violating clique");
  return {std::nullopt, *q};
}

inline LemmaResult color_x3y2(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "x-3-y-2";
  auto lab = detail::label_shape(h, part, {{2, 1}}, {3, 3, 3}, {2, 2}, l);
  detail::check_contract(lab.has_value(), name + ": shape or list sizes do not match");
  auto& [xs, ys] = *lab;
  detail::Work w(h, l.lists());
  if (detail::x3y2_core(w, xs[0], xs[1], xs[2], ys[0], ys[1])) return {detail::checked(h, l.lists(), w.f, name), {}};
  auto q = find_violating_clique(h, l);
  detail::check_internal(q.has_value(), name + ": uncolorable without a violating clique");
  return {std::nullopt, *q};
}

inline LemmaResult color_x3y3(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "x-3-y-3";
  auto lab = detail::label_shape(h, part, {{1, 1}, {2, 2}}, {3, 3, 3}, {3, 3, 3}, l);
  detail::check_contract(lab.has_value(), name + ": shape or list sizes do not match");
  if (auto q = find_violating_clique(h, l)) return {std::nullopt, *q};
  auto& [xs, ys] = *lab;
  detail::Work w(h, l.lists());
  detail::x3y3_core(w, {xs[0], xs[1], xs[2]}, {ys[0], ys[1], ys[2]});
  return {detail::checked(h, l.lists(), w.f, name), {}};
}

inline Coloring color_c3elem(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "c3elem";
  auto lab = detail::label_shape(h, part, {{0, 0}, {1, 1}, {2, 2}, {2, 0}, {0, 1}}, {3, 3, 2}, {3, 2, 3}, l);
  detail::check_contract(lab.has_value(), name + ": shape or list sizes do not match");
  auto& [xs, ys] = *lab;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(h.n()), 3);
  sizes[xs[2]] = 2;
  sizes[ys[1]] = 2;
  detail::Work w(h, detail::truncate_lists(l, sizes));
  detail::c3elem_core(w, {xs[0], xs[1], xs[2]}, {ys[0], ys[1], ys[2]});
  return detail::checked(h, l.lists(), w.f, name);
}

inline Coloring color_c4(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "c4";
  auto lab = detail::label_shape(h, part, {{0, 0}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}, {2, 2}, {3, 3}},
                                 {2, 2, 4, 4}, {4, 4, 4, 4}, l);
  detail::check_contract(lab.has_value(), name + ": shape or list sizes do not match");
  auto& [xs, ys] = *lab;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(h.n()), 4);
  sizes[xs[0]] = 2;
  sizes[xs[1]] = 2;
  detail::Work w(h, detail::truncate_lists(l, sizes));
  detail::c4_core(w, {xs[0], xs[1], xs[2], xs[3]}, {ys[0], ys[1], ys[2], ys[3]});
  return detail::checked(h, l.lists(), w.f, name);
}

// X = {x1,x2,x3} with x1 complete to Y; lists of size >= 3 on x1, >= 2 on x2, x3, >= 4 on Y.
inline Coloring color_c3b(const Graph& h, const CobipartitePartition& part, const ListAssignment& l) {
  const std::string name = "c3b";
  detail::check_contract(part.x.size() == 3, name + ": |X| = 3 required");
  detail::check_contract(omega(h) <= 4, name + ": clique number above 4");
  int x1 = -1;
  for (int v : part.x)
    if (l[v].size() >= 3 && is_complete_to(h, {v}, part.y)) {
      x1 = v;
      break;
    }
  detail::check_contract(x1 >= 0, name + ": no X vertex with a 3-list complete to Y");
  VertexSet rest = detail::set_minus(part.x, {x1});
  for (int v : rest) detail::check_contract(l[v].size() >= 2, name + ": list on X too short");
  for (int v : part.y) detail::check_contract(l[v].size() >= 4, name + ": list on Y too short");
  std::vector<std::size_t> sizes(static_cast<std::size_t>(h.n()), 4);
  sizes[x1] = 3;
  for (int v : rest) sizes[v] = 2;
  detail::Work w(h, detail::truncate_lists(l, sizes));

  if (part.y.size() <= 2) {
    // a Hall failure forces all lists into four colors; then any non-edge can share a color
    if (!w.sdr(w.uncolored())) {
      bool done = false;
      for (auto [a, b] : part.non_edges) {
        for (Color c : colors::intersect(w.avail(a), w.avail(b))) {
          detail::Work t = w;
          t.put(a, c);
          t.put(b, c);
          if (t.sdr(t.uncolored())) {
            w = t;
            done = true;
            break;
          }
        }
        if (done) break;
      }
      detail::check_internal(done, name + ": small case not colorable");
    }
    return detail::checked(h, l.lists(), w.f, name);
  }

  // |Y| = 3: label Y so that x2y2 and x3y3 are non-edges (edges elsewhere only help)
  std::array<int, 3> xs{x1, rest[0], rest[1]};
  std::array<int, 3> ys{};
  bool labelled = false;
  VertexSet yperm = part.y;
  do {
    for (int swap = 0; swap < 2 && !labelled; ++swap) {
      std::array<int, 3> xx{x1, rest[swap], rest[1 - swap]};
      if (!h.adjacent(xx[1], yperm[1]) && !h.adjacent(xx[2], yperm[2])) {
        xs = xx;
        ys = {yperm[0], yperm[1], yperm[2]};
        labelled = true;
      }
    }
  } while (!labelled && std::next_permutation(yperm.begin(), yperm.end()));
  detail::check_contract(labelled, name + ": |Y| = 3 needs two disjoint X-Y non-edges (clique number)");
  Graph sat = h;
  for (int a : part.x)
    for (int b : part.y)
      if (!(a == xs[1] && b == ys[1]) && !(a == xs[2] && b == ys[2]) && !sat.adjacent(a, b)) sat.add_edge(a, b);
  w.g = sat;
  if (w.sdr(w.uncolored())) return detail::checked(h, l.lists(), w.f, name);
  for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}}) {
    ColorSet common = colors::intersect(w.avail(xs[i]), w.avail(ys[i]));
    if (common.empty()) continue;
    w.put(xs[i], common.front());
    w.put(ys[i], common.front());
    ColorSet cj = colors::intersect(w.avail(xs[j]), w.avail(ys[j]));
    if (!cj.empty()) {
      w.put(xs[j], cj.front());
      w.put(ys[j], cj.front());
      detail::check_internal(w.sdr({xs[0], ys[0]}), name + ": x1, y1 not colorable after merges");
    } else {
      w.finish_sdr(name);
    }
    return detail::checked(h, l.lists(), w.f, name);
  }
  throw InternalError(name + ": Hall failure without a shared color on a non-edge");
}

// x, y adjacent, N(x)\{y} and N(y)\{x} cliques covering V(h); lists >= 2 on x, y and >= 4 elsewhere.
inline Coloring color_c2(const Graph& h, int x, int y, const ListAssignment& l) {
  const std::string name = "c2";
  detail::check_contract(h.adjacent(x, y), name + ": x and y must be adjacent");
  VertexSet xs = detail::set_minus(h.neighbors(x), {y}), ys = detail::set_minus(h.neighbors(y), {x});
  detail::check_contract(is_clique(h, xs) && is_clique(h, ys), name + ": neighborhoods must be cliques");
  detail::check_contract(static_cast<int>(detail::set_union(detail::set_union(xs, ys), {x, y}).size()) == h.n(),
                         name + ": V(H) must equal N(x) u N(y)");
  detail::check_contract(omega(h) <= 4, name + ": clique number above 4");
  std::vector<std::size_t> sizes(static_cast<std::size_t>(h.n()), 4);
  sizes[x] = sizes[y] = 2;
  detail::require_sizes(l, sizes, name);

  VertexSet in = detail::set_intersect(xs, ys);
  VertexSet xo = detail::set_minus(xs, in), yo = detail::set_minus(ys, in);
  Color fresh = std::max(0, l.max_color()) + 1;

  // saturated instance: original vertices first, dummies after
  std::vector<Edge> edges = h.edges();
  detail::Lists lists = detail::truncate_lists(l, sizes);
  int n = h.n();
  auto dummy = [&]() {
    lists.push_back(colors::range(fresh, fresh + 3));
    fresh += 4;
    return n++;
  };
  auto finish = [&](const std::vector<std::pair<VertexSet, VertexSet>>& complete_pairs) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    for (const auto& [p, q] : complete_pairs)
      for (int a : p)
        for (int b : q)
          if (a != b && !g.adjacent(a, b)) g.add_edge(a, b);
    return detail::Work(std::move(g), lists);
  };

  if (in.size() == 2) {
    int w1 = in[0], w2 = in[1];
    int u = xo.empty() ? dummy() : xo[0];
    int v = yo.empty() ? dummy() : yo[0];
    detail::Work w = finish({{{x, w1, w2, u}, {x, w1, w2, u}}, {{y, w1, w2, v}, {y, w1, w2, v}}, {{u}, {v}}});
    auto attempt = [&](int p, int q, int pv, int qu) {
      ColorSet common = colors::intersect(w.avail(p), w.avail(pv));
      if (common.empty()) return false;
      w.put(p, common.front());
      w.put(pv, common.front());
      w.greedy({q, w1, w2, qu});
      return true;
    };
    if (!attempt(x, y, v, u) && !attempt(y, x, u, v)) w.finish_sdr(name);
    return detail::checked(h, l.lists(), w.f, name);
  }

  if (in.size() == 1) {
    int wv = in[0];
    // slots u, v on the X side and s, t on the Y side; vt is the only non-edge between them
    VertexSet xslots = xo, yslots = yo;
    while (xslots.size() < 2) xslots.push_back(-1);
    while (yslots.size() < 2) yslots.push_back(-1);
    std::sort(xslots.begin(), xslots.end());
    std::sort(yslots.begin(), yslots.end());
    std::optional<std::array<int, 4>> pick;
    do {
      VertexSet ys2 = yslots;
      do {
        int vv = xslots[1], tt = ys2[1];
        if (vv >= 0 && tt >= 0 && h.adjacent(vv, tt)) continue;
        pick = std::array<int, 4>{xslots[0], xslots[1], ys2[0], ys2[1]};
      } while (!pick && std::next_permutation(ys2.begin(), ys2.end()));
    } while (!pick && std::next_permutation(xslots.begin(), xslots.end()));
    detail::check_contract(pick.has_value(), name + ": no non-edge between the private neighborhoods (clique number)");
    auto [u, v, s, t] = *pick;
    if (u < 0) u = dummy();
    if (v < 0) v = dummy();
    if (s < 0) s = dummy();
    if (t < 0) t = dummy();
    detail::Work w =
        finish({{{x, wv, u, v}, {x, wv, u, v}}, {{y, wv, s, t}, {y, wv, s, t}}, {{u}, {s, t}}, {{v}, {s}}});
    // the argument is symmetric under x<->y, u<->s, v<->t
    struct Roles {
      int x, y, u, v, s, t;
    };
    for (const Roles& r : {Roles{x, y, u, v, s, t}, Roles{y, x, s, t, u, v}}) {
      ColorSet common = colors::intersect(w.avail(r.x), w.avail(r.s));
      if (common.empty()) continue;
      w.put(r.x, common.front());
      w.put(r.s, common.front());
      w.greedy({r.y, r.t, wv, r.u, r.v});
      return detail::checked(h, l.lists(), w.f, name);
    }
    for (const Roles& r : {Roles{x, y, u, v, s, t}, Roles{y, x, s, t, u, v}}) {
      ColorSet common = colors::intersect(w.avail(r.x), w.avail(r.t));
      if (common.empty()) continue;
      w.put(r.x, common.front());
      w.put(r.t, common.front());
      ColorSet yv = colors::intersect(w.avail(r.y), w.avail(r.v));
      if (!yv.empty()) {
        w.put(r.y, yv.front());
        w.put(r.v, yv.front());
        w.greedy({wv, r.u, r.s});
      } else {
        w.finish_sdr(name);
      }
      return detail::checked(h, l.lists(), w.f, name);
    }
    ColorSet tv = colors::intersect(w.avail(t), w.avail(v));
    if (!tv.empty()) {
      w.put(t, tv.front());
      w.put(v, tv.front());
    }
    w.finish_sdr(name);
    return detail::checked(h, l.lists(), w.f, name);
  }

  // no common neighbor: X = {u1,u2,u3}, Y = {v1,v2,v3} with non-edges u2v2, u3v3
  VertexSet xslots = xs, yslots = ys;
  while (xslots.size() < 3) xslots.push_back(-1 - static_cast<int>(xslots.size()));
  while (yslots.size() < 3) yslots.push_back(-1 - static_cast<int>(yslots.size()));
  std::sort(xslots.begin(), xslots.end());
  std::sort(yslots.begin(), yslots.end());
  std::optional<std::pair<VertexSet, VertexSet>> pick;
  auto nonadj = [&](int a, int b) { return a < 0 || b < 0 || !h.adjacent(a, b); };
  do {
    VertexSet ys2 = yslots;
    do {
      if (nonadj(xslots[1], ys2[1]) && nonadj(xslots[2], ys2[2])) pick = std::make_pair(xslots, ys2);
    } while (!pick && std::next_permutation(ys2.begin(), ys2.end()));
  } while (!pick && std::next_permutation(xslots.begin(), xslots.end()));
  detail::check_contract(pick.has_value(), name + ": fewer than two disjoint X-Y non-edges (clique number)");
  auto [uu, vv] = *pick;
  for (auto& a : uu)
    if (a < 0) a = dummy();
  for (auto& b : vv)
    if (b < 0) b = dummy();
  std::vector<std::pair<VertexSet, VertexSet>> full = {{{x, uu[0], uu[1], uu[2]}, {x, uu[0], uu[1], uu[2]}},
                                                       {{y, vv[0], vv[1], vv[2]}, {y, vv[0], vv[1], vv[2]}},
                                                       {{uu[0]}, {vv[0], vv[1], vv[2]}},
                                                       {{vv[0]}, {uu[0], uu[1], uu[2]}},
                                                       {{uu[1]}, {vv[2]}},
                                                       {{uu[2]}, {vv[1]}}};
  detail::Work w = finish(full);
  bool chosen = false;
  for (Color a : w.l[x]) {
    for (Color b : w.l[y]) {
      if (a == b) continue;
      if (colors::unite(colors::minus(w.l[uu[0]], a), colors::minus(w.l[vv[0]], b)).size() < 4) continue;
      w.put(x, a);
      w.put(y, b);
      chosen = true;
      break;
    }
    if (chosen) break;
  }
  detail::check_internal(chosen, name + ": no colors for x, y keeping |L'(u1) u L'(v1)| >= 4");
  detail::x3y3_core(w, {uu[0], uu[1], uu[2]}, {vv[0], vv[1], vv[2]});
  return detail::checked(h, l.lists(), w.f, name);
}

namespace detail {

struct C3Shape {
  int n;
  VertexSet c;                               // 1-based labels
  std::vector<std::pair<int, int>> non_edges;  // 1-based label pairs
};

inline const std::vector<C3Shape>& c3_shapes() {
  static const std::vector<C3Shape> shapes = {
      {5, {3, 4, 5}, {{1, 2}}},
      {5, {1, 3, 4}, {{1, 2}}},
      {6, {1, 5, 6}, {{1, 3}, {2, 4}, {1, 2}}},
      {6, {1, 2, 5}, {{1, 3}, {2, 4}}},
      {7, {1, 2, 3}, {{1, 4}, {2, 5}, {3, 6}}},
      {7, {1, 2, 7}, {{1, 4}, {2, 5}, {3, 6}, {1, 6}, {2, 6}}},
      {7, {1, 2, 7}, {{1, 4}, {2, 5}, {3, 6}, {1, 6}, {2, 3}}},
      {8, {1, 2, 3}, {{1, 5}, {2, 6}, {3, 7}, {4, 8}, {1, 8}, {2, 8}, {3, 8}}},
      {8, {1, 2, 3}, {{1, 5}, {2, 6}, {3, 7}, {4, 8}, {1, 8}, {2, 8}, {3, 4}}},
  };
  return shapes;
}

// Labelling lab[1..n] of V(h) with C onto the shape's C and every shape non-edge a non-edge of h.
inline std::optional<std::vector<int>> c3_label(const Graph& h, const VertexSet& c, const C3Shape& s) {
  std::vector<int> lab(static_cast<std::size_t>(s.n + 1), -1);
  std::vector<char> used(static_cast<std::size_t>(h.n()), 0);
  std::vector<char> in_c(static_cast<std::size_t>(s.n + 1), 0);
  for (int i : s.c) in_c[i] = 1;
  auto rec = [&](auto& self, int i) -> bool {
    if (i > s.n) return true;
    for (int v = 0; v < h.n(); ++v) {
      if (used[v] || (set_contains(c, v) != static_cast<bool>(in_c[i]))) continue;
      bool ok = true;
      for (auto [a, b] : s.non_edges) {
        int other = a == i ? b : (b == i ? a : 0);
        if (other && other < i && h.adjacent(v, lab[other])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      lab[i] = v;
      used[v] = 1;
      if (self(self, i + 1)) return true;
      used[v] = 0;
    }
    lab[i] = -1;
    return false;
  };
  if (!rec(rec, 1)) return std::nullopt;
  return lab;
}

inline Graph c3_target(const C3Shape& s, const std::vector<int>& lab, int n) {
  Graph g(n);
  for (int i = 1; i <= s.n; ++i)
    for (int j = i + 1; j <= s.n; ++j) {
      bool non = std::find(s.non_edges.begin(), s.non_edges.end(), std::pair{i, j}) != s.non_edges.end();
      if (!non) g.add_edge(lab[i], lab[j]);
    }
  return g;
}

}  // namespace detail

// C a triangle whose members each have a clique as outside neighborhood; lists of size >= 3
// on C and >= 4 elsewhere.
inline Coloring color_c3(const Graph& h, const VertexSet& c_in, const ListAssignment& l) {
  const std::string name = "c3";
  VertexSet c = c_in;
  std::sort(c.begin(), c.end());
  detail::check_contract(c.size() == 3 && is_clique(h, c), name + ": C must be a triangle");
  detail::check_contract(is_cobipartite(h) && omega(h) <= 4, name + ": cobipartite graph with clique number <= 4 required");
  for (int w : c)
    detail::check_contract(is_clique(h, detail::set_minus(h.neighbors(w), c)), name + ": N(w) \\ C must be a clique");
  std::vector<std::size_t> sizes(static_cast<std::size_t>(h.n()), 4);
  for (int w : c) sizes[w] = 3;
  detail::require_sizes(l, sizes, name);
  detail::Lists lists = detail::truncate_lists(l, sizes);

  auto comps = connected_components(h);
  if (comps.size() > 1 || h.n() == 4) {
    detail::Work w(h, lists);
    for (const auto& comp : comps) detail::check_internal(w.sdr(comp), name + ": clique component fails Hall");
    return detail::checked(h, l.lists(), w.f, name);
  }
  detail::check_contract(h.n() >= 4 && h.n() <= 8, name + ": connected case needs 4 <= n <= 8");

  // at n = 7 a labelling with v7 in C is preferred when one exists; any labelling is valid
  for (std::size_t si : {0, 1, 2, 3, 5, 6, 4, 7, 8}) {
    const auto& s = detail::c3_shapes()[si];
    if (s.n != h.n()) continue;
    auto lab = detail::c3_label(h, c, s);
    if (!lab) continue;
    const auto& v = *lab;
    detail::Work w(detail::c3_target(s, v, h.n()), lists);
    switch (si) {
      case 0: w.greedy({v[3], v[4], v[5], v[1], v[2]}); break;
      case 1: w.greedy({v[1], v[3], v[4], v[5], v[2]}); break;
      case 2: w.greedy({v[1], v[5], v[6], v[4], v[3], v[2]}); break;
      case 3: detail::x3y3_core(w, {v[5], v[1], v[2]}, {v[6], v[3], v[4]}); break;
      case 4: detail::xy4_core(w, {v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}); break;
      case 5:
        w.greedy({v[7]});
        detail::xy4_core(w, {v[1], v[2]}, {v[3], v[4], v[5]});
        w.greedy({v[6]});
        break;
      case 6: {
        w.greedy({v[7]});
        std::vector<std::size_t> sz(static_cast<std::size_t>(h.n()), 3);
        sz[v[1]] = sz[v[2]] = 2;
        for (int u = 1; u <= 6; ++u) w.l[v[u]] = colors::truncated(w.avail(v[u]), sz[v[u]]);
        detail::c3elem_core(w, {v[3], v[5], v[1]}, {v[6], v[2], v[4]});
        break;
      }
      case 7:
        detail::xy4_core(w, {v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]});
        w.greedy({v[8]});
        break;
      case 8: {
        auto shared = [&](int a, int b) { return colors::intersect(w.avail(v[a]), w.avail(v[b])); };
        if (auto s37 = shared(3, 7); !s37.empty()) {
          w.put(v[3], s37.front());
          w.put(v[7], s37.front());
          detail::xy4_core(w, {v[1], v[2]}, {v[4], v[5], v[6]});
          w.greedy({v[8]});
          break;
        }
        bool done = false;
        // v1v5 shared, or the mirror image v2v6 under 1<->2, 5<->6
        for (auto [a, b, x2, y2] : {std::array{1, 5, 6, 2}, std::array{2, 6, 5, 1}}) {
          auto s = shared(a, b);
          if (s.empty()) continue;
          w.put(v[a], s.front());
          w.put(v[b], s.front());
          std::vector<std::size_t> sz(static_cast<std::size_t>(h.n()), 3);
          sz[v[3]] = sz[v[y2]] = 2;
          for (int u : {3, 4, 7, 8, x2, y2}) w.l[v[u]] = colors::truncated(w.avail(v[u]), sz[v[u]]);
          detail::c3elem_core(w, {v[8], v[x2], v[3]}, {v[4], v[y2], v[7]});
          done = true;
          break;
        }
        if (done) break;
        for (auto [a, b] : {std::pair{3, 4}, std::pair{4, 8}}) {
          auto s = shared(a, b);
          if (s.empty()) continue;
          w.put(v[a], s.front());
          w.put(v[b], s.front());
          w.finish_sdr(name + " n=8");
          done = true;
          break;
        }
        if (!done) w.finish_sdr(name + " n=8");
        break;
      }
      default: throw InternalError("unknown c3 shape");
    }
    return detail::checked(h, l.lists(), w.f, name);
  }
  throw ContractError(name + ": graph matches no case of the analysis (hypotheses violated)");
}

}  // namespace cfp
