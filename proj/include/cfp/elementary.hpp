#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cfp/cobip.hpp"
#include "cfp/galvin.hpp"
#include "cfp/graph.hpp"
#include "cfp/matching.hpp"
#include "cfp/structure.hpp"

namespace cfp {

struct ElementaryStats {
  long merges = 0;
  long case1 = 0;
  long case2 = 0;
  long case3 = 0;
  long badf_rerolls = 0;
  long badf2_rerolls = 0;
  long base_colorings = 0;
  int max_depth = 0;

  ElementaryStats& operator+=(const ElementaryStats& o) {
    merges += o.merges;
    case1 += o.case1;
    case2 += o.case2;
    case3 += o.case3;
    badf_rerolls += o.badf_rerolls;
    badf2_rerolls += o.badf2_rerolls;
    base_colorings += o.base_colorings;
    max_depth = std::max(max_depth, o.max_depth);
    return *this;
  }
};

// The active augment after saturation and orientation, with the lists an outside coloring leaves.
struct AugmentFrame {
  VertexSet x, y;    // global ids; Case 3 has |X| = 3, Case 1 has |Y| = 4
  VertexSet nx, ny;  // attachment cliques
  Graph local;       // G[X u Y] with X-Y non-edges reduced to a matching; local ids: X then Y
  int case_id = 0;   // 1, 2 or 3
};

enum class BadKind { none, badf, badf2 };

struct BadProperty {
  BadKind kind = BadKind::none;
  int u = -1;  // the vertex of N_X
  int v = -1;  // the vertex of N_Y (Case 2)
  Color d = kNoColor, d_prime = kNoColor;
};

namespace detail {

// Editable elementary structure over global vertex ids; removed root edges stay as dead slots.
struct ElemFrame {
  std::vector<Side> side;
  std::vector<std::array<int, 2>> ends;  // (left, right)
  std::vector<int> vertex;               // -1 on augmented edges
  std::vector<char> alive;
  std::vector<Augment> augments;

  static ElemFrame from(const ElementaryStructure& s) {
    ElemFrame fr;
    for (int p = 0; p < s.root.num_vertices(); ++p) fr.side.push_back(s.root.side(p));
    for (int e = 0; e < s.root.num_edges(); ++e) {
      fr.ends.push_back({s.root.edge(e).left, s.root.edge(e).right});
      fr.vertex.push_back(s.edge_to_vertex[e]);
      fr.alive.push_back(1);
    }
    fr.augments = s.augments;
    return fr;
  }

  int add_root_vertex(Side s) {
    side.push_back(s);
    return static_cast<int>(side.size()) - 1;
  }

  int add_edge(int a, int b, int v) {
    check_internal(side[a] != side[b], "root edge inside one side");
    if (side[a] == Side::right) std::swap(a, b);
    ends.push_back({a, b});
    vertex.push_back(v);
    alive.push_back(1);
    return static_cast<int>(ends.size()) - 1;
  }

  std::vector<int> incident(int p) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(ends.size()); ++e)
      if (alive[e] && (ends[e][0] == p || ends[e][1] == p)) out.push_back(e);
    return out;
  }

  int other(int e, int p) const { return ends[e][0] == p ? ends[e][1] : ends[e][0]; }

  VertexSet bag(int e) const {
    if (vertex[e] >= 0) return {vertex[e]};
    for (const auto& a : augments) {
      if (a.edge_x == e) return a.x;
      if (a.edge_y == e) return a.y;
    }
    throw InternalError("augmented root edge without an augment");
  }

  int common_end(int e, int f) const {
    for (int p : ends[e])
      if (p == ends[f][0] || p == ends[f][1]) return p;
    return -1;
  }
};

struct ElemRun {
  std::vector<int> pins;  // global ids d_1, d_2 in pin order
  ElementaryStats stats;
  int depth_limit = 0;
};

inline Coloring elem_base(const ElemFrame& fr, const Lists& l, ElemRun& run) {
  ++run.stats.base_colorings;
  BipartiteMultigraph b;
  for (Side s : fr.side) b.add_vertex(s);
  std::vector<int> vert;
  std::vector<ColorSet> elists;
  std::vector<int> pin_edges(run.pins.size(), -1);
  for (int e = 0; e < static_cast<int>(fr.ends.size()); ++e) {
    if (!fr.alive[e]) continue;
    check_internal(fr.vertex[e] >= 0, "augmented edge reached the base case");
    int id = b.add_edge(fr.ends[e][0], fr.ends[e][1]);
    vert.push_back(fr.vertex[e]);
    elists.push_back(l[fr.vertex[e]]);
    for (std::size_t i = 0; i < run.pins.size(); ++i)
      if (run.pins[i] == fr.vertex[e]) pin_edges[i] = id;
  }
  Coloring out(static_cast<int>(l.size()));
  if (b.num_edges() == 0) return out;
  std::vector<int> col;
  if (run.pins.empty()) {
    col = galvin_list_edge_color(b, ListAssignment(elists));
  } else {
    // u sits on the Y side and d_i is colored i, so d_i has out-degree i - 1 and fits L*(d_i) = {c_1..c_i}
    int e1 = pin_edges[0];
    check_internal(e1 >= 0, "pinned vertex missing from the base graph");
    auto ends1 = b.edge(e1);
    int u = -1;
    if (pin_edges.size() == 2) {
      auto ends2 = b.edge(pin_edges[1]);
      u = ends1.left == ends2.left ? ends1.left : ends1.right;
    } else {
      u = b.degree(ends1.left) > 1 ? ends1.left : ends1.right;
    }
    std::vector<PendantPin> pins;
    for (std::size_t i = 0; i < pin_edges.size(); ++i) pins.push_back({pin_edges[i], static_cast<int>(i) + 1});
    auto f = edge_color_prescribed_pendants(b, u, pins);
    auto d = orient(b, f, opposite(b.side(u)));
    col = galvin_list_edge_color(d, ListAssignment(elists));
  }
  for (int e = 0; e < b.num_edges(); ++e) out[vert[e]] = col[e];
  return out;
}

inline VertexSet attachment_of(const ElemFrame& fr, int root_vertex, int except_edge) {
  VertexSet out;
  for (int e : fr.incident(root_vertex))
    if (e != except_edge) out = set_union(out, fr.bag(e));
  return out;
}

// Frame for the last augment: saturate X-Y to a cobipartite graph with clique number 4 and orient.
inline AugmentFrame make_augment_frame(const ElemFrame& fr, const Augment& a) {
  int q = fr.common_end(a.edge_x, a.edge_y);
  int qx = fr.other(a.edge_x, q), qy = fr.other(a.edge_y, q);
  AugmentFrame af;
  af.x = a.x;
  af.y = a.y;
  af.nx = attachment_of(fr, qx, a.edge_x);
  af.ny = attachment_of(fr, qy, a.edge_y);
  bool swap = false;
  if (af.x.size() == 4 || af.y.size() == 4) {
    af.case_id = 1;
    swap = af.y.size() != 4;
  } else if (af.x.size() == 3 && af.y.size() == 3) {
    af.case_id = 2;
  } else {
    af.case_id = 3;
    swap = af.x.size() == 2;
  }
  if (swap) {
    std::swap(af.x, af.y);
    std::swap(af.nx, af.ny);
  }
  const int p = static_cast<int>(af.x.size()), r = static_cast<int>(af.y.size());
  // complement between X and Y, then keep a matching of size |X| + |Y| - 4 as the only non-edges
  Graph co(p + r);
  auto local_of = [&](int v) {
    auto it = std::lower_bound(af.x.begin(), af.x.end(), v);
    if (it != af.x.end() && *it == v) return static_cast<int>(it - af.x.begin());
    return p + static_cast<int>(std::lower_bound(af.y.begin(), af.y.end(), v) - af.y.begin());
  };
  std::vector<Edge> cross;
  for (auto [u, v] : a.xy_edges) cross.emplace_back(local_of(u), local_of(v));
  for (int i = 0; i < p; ++i)
    for (int j = p; j < p + r; ++j) {
      Edge e = i < j ? Edge{i, j} : Edge{j, i};
      bool adj = std::find_if(cross.begin(), cross.end(), [&](const Edge& c) {
                   return (c.first == i && c.second == j) || (c.first == j && c.second == i);
                 }) != cross.end();
      if (!adj) co.add_edge(e.first, e.second);
    }
  VertexSet lx, ly;
  for (int i = 0; i < p; ++i) lx.push_back(i);
  for (int j = p; j < p + r; ++j) ly.push_back(j);
  auto mm = max_matching_bipartite(co, lx, ly);
  const int need = p + r - 4;
  check_contract(mm.mu >= need, "augment has a clique larger than 4");
  af.local = Graph(p + r);
  for (int i = 0; i < p + r; ++i)
    for (int j = i + 1; j < p + r; ++j) af.local.add_edge(i, j);
  for (int k = 0; k < need; ++k) af.local.remove_edge(mm.matching[k].first, mm.matching[k].second);
  return af;
}

inline Lists reduced_lists(const AugmentFrame& af, const Lists& l, const Coloring& f) {
  ColorSet fx = f.colors_of(af.nx), fy = f.colors_of(af.ny);
  Lists out;
  for (int v : af.x) out.push_back(colors::minus(l[v], fx));
  for (int v : af.y) out.push_back(colors::minus(l[v], fy));
  return out;
}

// Local index of the X vertex with no non-edge, and of matched pairs (x_i, y_i).
inline int unmatched(const Graph& local, int from, int to, int other_from, int other_to) {
  for (int i = from; i < to; ++i) {
    bool full = true;
    for (int j = other_from; j < other_to; ++j) full = full && local.adjacent(i, j);
    if (full) return i;
  }
  return -1;
}

inline BadProperty case2_bad(const AugmentFrame& af, const Lists& l, const Coloring& f) {
  BadProperty bp;
  if (af.nx.size() != 1 || af.ny.size() != 1) return bp;
  const int p = 3;
  int x1 = af.x[unmatched(af.local, 0, p, p, p + 3)];
  int y1 = af.y[unmatched(af.local, p, p + 3, 0, p) - p];
  int u = af.nx[0], v = af.ny[0];
  Color fu = f[u], fv = f[v];
  if (colors::contains(l[x1], fu) && colors::contains(l[y1], fv) &&
      colors::minus(l[x1], fu) == colors::minus(l[y1], fv))
    bp = {BadKind::badf, u, v, fu, fv};
  return bp;
}

inline BadProperty case3_bad(const AugmentFrame& af, const Lists& l, const Coloring& f) {
  BadProperty bp;
  if (af.nx.size() != 1) return bp;
  const int p = 3;
  int x1 = -1;
  for (int i = 0; i < p && x1 < 0; ++i)
    if (af.local.adjacent(i, p) && af.local.adjacent(i, p + 1)) x1 = af.x[i];
  int y1 = af.y[unmatched(af.local, p, p + 2, 0, p) - p];
  int u = af.nx[0];
  ColorSet rest = colors::minus(l[y1], f.colors_of(af.ny));
  if (colors::contains(l[x1], f[u]) && colors::subset(rest, colors::minus(l[x1], f[u])))
    bp = {BadKind::badf2, u, -1, f[u], kNoColor};
  return bp;
}

// Tries to color X u Y given f outside; empty optional if the lemma for the case fails.
inline std::optional<Coloring> extend_over_augment(const AugmentFrame& af, const Lists& l, const Coloring& f,
                                                   VertexSet* witness = nullptr) {
  Lists lp = reduced_lists(af, l, f);
  const int p = static_cast<int>(af.x.size()), r = static_cast<int>(af.y.size());
  VertexSet lx, ly;
  for (int i = 0; i < p; ++i) lx.push_back(i);
  for (int j = p; j < p + r; ++j) ly.push_back(j);
  CobipartitePartition part = make_partition(af.local, lx, ly);
  ListAssignment la(lp);
  std::optional<Coloring> local;
  if (af.case_id == 1) {
    local = color_xy4(af.local, part, la);
  } else {
    LemmaResult res = af.case_id == 2 ? color_x3y3(af.local, part, la) : color_x3y2(af.local, part, la);
    if (!res) {
      if (witness) *witness = res.violating_clique;
      return std::nullopt;
    }
    local = res.coloring;
  }
  Coloring out = f;
  for (int i = 0; i < p; ++i) out[af.x[i]] = (*local)[i];
  for (int j = 0; j < r; ++j) out[af.y[j]] = (*local)[p + j];
  return out;
}

inline Coloring color_frame(const ElemFrame& fr, const Lists& l, ElemRun& run, int depth);

// Case 2 reroll: X and Y become plain, joined through two new vertices u*, v*.
inline Coloring reroll_case2(const ElemFrame& base, const Augment& a, const AugmentFrame& af, const Lists& l,
                             ElemRun& run, int depth) {
  ElemFrame fr = base;
  int q = fr.common_end(a.edge_x, a.edge_y);
  // orient root edges along the frame's X / Y, which may be swapped against the augment
  bool same = af.x == a.x;
  int ex = same ? a.edge_x : a.edge_y, ey = same ? a.edge_y : a.edge_x;
  int qx = fr.other(ex, q), qy = fr.other(ey, q);
  fr.alive[a.edge_x] = fr.alive[a.edge_y] = 0;
  Side qs = fr.side[q];
  int q1 = fr.add_root_vertex(qs), q2 = fr.add_root_vertex(opposite(qs)), q3 = fr.add_root_vertex(qs);
  Lists ls = l;
  const int n = static_cast<int>(l.size());
  int ustar = n, vstar = n + 1;
  const int p = 3;
  int x1 = af.x[unmatched(af.local, 0, p, p, p + 3)];
  int y1 = af.y[unmatched(af.local, p, p + 3, 0, p) - p];
  ColorSet lx = l[x1], ly = l[y1];
  ls.push_back(lx);
  ls.push_back(lx);
  for (int v : af.x) {
    ls[v] = lx;
    fr.add_edge(qx, q1, v);
  }
  fr.add_edge(q1, q2, ustar);
  fr.add_edge(q2, q3, vstar);
  for (int v : af.y) {
    ls[v] = ly;
    fr.add_edge(q3, qy, v);
  }
  Coloring fs = color_frame(fr, ls, run, depth + 1);
  fs.color.resize(static_cast<std::size_t>(n));
  for (int v : af.x) fs[v] = kNoColor;
  for (int v : af.y) fs[v] = kNoColor;
  return fs;
}

// Case 3 reroll: drop x3 and merge the rest into parallel root edges, with L*(y2) = L(y1).
inline Coloring reroll_case3(const ElemFrame& base, const Augment& a, const AugmentFrame& af, const Lists& l,
                             ElemRun& run, int depth) {
  ElemFrame fr = base;
  int q = fr.common_end(a.edge_x, a.edge_y);
  bool same = af.x == a.x;
  int ex = same ? a.edge_x : a.edge_y, ey = same ? a.edge_y : a.edge_x;
  int qx = fr.other(ex, q), qy = fr.other(ey, q);
  fr.alive[a.edge_x] = fr.alive[a.edge_y] = 0;
  const int p = 3;
  int x3 = -1, y2 = -1, y1 = -1;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < 2; ++j)
      if (!af.local.adjacent(i, p + j)) {
        x3 = af.x[i];
        y2 = af.y[j];
        y1 = af.y[1 - j];
      }
  check_internal(x3 >= 0, "Case 3 augment without a non-edge");
  Lists ls = l;
  ls[y2] = l[y1];
  for (int v : af.x)
    if (v != x3) fr.add_edge(qx, q, v);
  for (int v : af.y) fr.add_edge(q, qy, v);
  Coloring fs = color_frame(fr, ls, run, depth + 1);
  for (int v : af.x) fs[v] = kNoColor;
  for (int v : af.y) fs[v] = kNoColor;
  return fs;
}

inline Coloring color_frame(const ElemFrame& fr, const Lists& l, ElemRun& run, int depth) {
  run.stats.max_depth = std::max(run.stats.max_depth, depth);
  check_internal(depth <= run.depth_limit, "elementary recursion deeper than h + n");
  if (fr.augments.empty()) return elem_base(fr, l, run);

  ElemFrame rest = fr;
  Augment a = rest.augments.back();
  rest.augments.pop_back();
  int q = rest.common_end(a.edge_x, a.edge_y);
  int qx = rest.other(a.edge_x, q), qy = rest.other(a.edge_y, q);

  if (a.x.size() + a.y.size() <= 4) {
    // X u Y fits in a clique of size 4: parallel edges instead of the augment
    ++run.stats.merges;
    rest.alive[a.edge_x] = rest.alive[a.edge_y] = 0;
    for (int v : a.x) rest.add_edge(qx, q, v);
    for (int v : a.y) rest.add_edge(q, qy, v);
    return color_frame(rest, l, run, depth + 1);
  }

  AugmentFrame af = make_augment_frame(fr, a);
  ElemFrame smaller = rest;
  smaller.alive[a.edge_x] = smaller.alive[a.edge_y] = 0;
  Coloring f = color_frame(smaller, l, run, depth + 1);

  if (af.case_id == 1) {
    ++run.stats.case1;
    auto out = extend_over_augment(af, l, f);
    check_internal(out.has_value(), "Case 1 extension failed");
    return *out;
  }
  if (af.case_id == 2) {
    ++run.stats.case2;
    VertexSet witness;
    if (auto out = extend_over_augment(af, l, f, &witness)) return *out;
    BadProperty bp = case2_bad(af, l, f);
    check_internal(bp.kind == BadKind::badf && witness.size() == 4,
                   "Case 2 extension failed without the bad property");
    ++run.stats.badf_rerolls;
    Coloring fs = reroll_case2(rest, a, af, l, run, depth);
    check_internal(case2_bad(af, l, fs).kind == BadKind::none, "Case 2 reroll still has the bad property");
    auto out = extend_over_augment(af, l, fs);
    check_internal(out.has_value(), "Case 2 extension failed after reroll");
    return *out;
  }
  ++run.stats.case3;
  VertexSet witness;
  if (auto out = extend_over_augment(af, l, f, &witness)) return *out;
  BadProperty bp = case3_bad(af, l, f);
  check_internal(bp.kind == BadKind::badf2 && witness.size() == 4,
                 "Case 3 extension failed without the bad property");
  ++run.stats.badf2_rerolls;
  Coloring fs = reroll_case3(rest, a, af, l, run, depth);
  check_internal(case3_bad(af, l, fs).kind == BadKind::none, "Case 3 reroll still has the bad property");
  auto out = extend_over_augment(af, l, fs);
  check_internal(out.has_value(), "Case 3 extension failed after reroll");
  return *out;
}

}  // namespace detail

// Colors an elementary graph from its structure. Lists need size >= 4 once there is an augment,
// size >= omega otherwise. Pinned vertices (at most two, plain pendant edges at one root vertex)
// receive exactly their pinned colors; their own lists are ignored.
inline Coloring color_elementary(const Graph& g, const ElementaryStructure& s, const ListAssignment& l,
                                 const Coloring& pins = {}, ElementaryStats* stats = nullptr) {
  if (auto d = structure_defect(g, s); !d.empty()) throw ContractError("structure does not match graph: " + d);
  detail::check_contract(l.size() == g.n(), "one list per vertex required");
  const int w = omega(g);
  detail::check_contract(w <= 4, "elementary coloring needs clique number <= 4");

  std::vector<int> pinned;
  if (pins.size() > 0) {
    detail::check_contract(pins.size() == g.n(), "pin map must cover every vertex");
    for (int v = 0; v < g.n(); ++v)
      if (pins.has(v)) pinned.push_back(v);
  }
  detail::check_contract(pinned.size() <= 2, "at most two pins");
  if (!pinned.empty()) {
    detail::check_contract(pinned.size() < 2 || pins[pinned[0]] != pins[pinned[1]], "pins need distinct colors");
    // root vertices at which every pin is a pendant edge
    VertexSet hubs;
    for (std::size_t i = 0; i < pinned.size(); ++i) {
      auto it = std::find(s.edge_to_vertex.begin(), s.edge_to_vertex.end(), pinned[i]);
      detail::check_contract(it != s.edge_to_vertex.end(), "pinned vertex is not a plain root edge");
      auto ends = s.root.edge(static_cast<int>(it - s.edge_to_vertex.begin()));
      VertexSet mine;
      if (s.root.degree(ends.right) == 1) mine.push_back(ends.left);
      if (s.root.degree(ends.left) == 1) mine.push_back(ends.right);
      std::sort(mine.begin(), mine.end());
      hubs = i == 0 ? mine : detail::set_intersect(hubs, mine);
    }
    detail::check_contract(!hubs.empty(), "pins are not pendant edges at one root vertex");
  }

  std::vector<ColorSet> lists = l.lists();
  for (int v = 0; v < g.n(); ++v) {
    if (pins.size() > 0 && pins.has(v)) continue;
    std::size_t need = s.h() > 0 ? 4 : static_cast<std::size_t>(w);
    detail::check_contract(lists[v].size() >= need,
                           "list of vertex " + std::to_string(v) + " has " + std::to_string(lists[v].size()) +
                               " colors, " + std::to_string(need) + " required");
    if (s.h() > 0) lists[v] = colors::truncated(lists[v], 4);
  }
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    ColorSet nested;
    for (std::size_t j = 0; j <= i; ++j) nested.push_back(pins[pinned[j]]);
    lists[pinned[i]] = colors::normalized(nested);
  }

  detail::ElemRun run;
  run.pins = pinned;
  run.depth_limit = s.h() + g.n();
  Coloring f = detail::color_frame(detail::ElemFrame::from(s), lists, run, 0);
  f.color.resize(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) {
    detail::check_internal(f.has(v), "elementary coloring left a vertex uncolored");
    if (pins.size() > 0 && pins.has(v))
      detail::check_internal(f[v] == pins[v], "pin not honored");
    else
      detail::check_internal(colors::contains(l[v], f[v]), "elementary coloring used an off-list color");
  }
  for (auto [a, b] : g.edges()) detail::check_internal(f[a] != f[b], "elementary coloring has a monochromatic edge");
  if (stats) *stats += run.stats;
  return f;
}

}  // namespace cfp
