#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cfp/cobip.hpp"
#include "cfp/decompose.hpp"
#include "cfp/elementary.hpp"
#include "cfp/graph.hpp"
#include "cfp/matching.hpp"
#include "cfp/oracle.hpp"
#include "cfp/structure.hpp"

namespace cfp {

struct PeculiarStats {
  long merge_ab = 0;
  long merge_q = 0;
  long sdr = 0;

  PeculiarStats& operator+=(const PeculiarStats& o) {
    merge_ab += o.merge_ab;
    merge_q += o.merge_q;
    sdr += o.sdr;
    return *this;
  }
};

// Colors the 9-vertex peculiar graph from lists of size >= 4.
inline Coloring color_peculiar4(const Graph& g, const PeculiarPartition& p, const ListAssignment& l,
                                PeculiarStats* stats = nullptr) {
  detail::check_contract(g.n() == 9 && is_peculiar_partition(g, p), "peculiar: not the 9-vertex peculiar graph");
  detail::check_contract(l.size() == 9 && l.min_size() >= 4, "peculiar: lists of size >= 4 required");
  using P = PeculiarPartition;
  PeculiarStats local;
  std::vector<ColorSet> lists = l.lists();
  for (auto& s : lists) s = colors::truncated(s, 4);
  auto one = [&](int role) { return p.sets[role][0]; };
  Coloring f(9);

  auto done = [&] {
    auto v = oracle::validate_coloring(g, l, f);
    detail::check_internal(v.ok(), "peculiar coloring invalid: " + v.describe());
    if (stats) *stats += local;
    return f;
  };

  // a_i and b_{i+1} share a color: the other seven vertices form an elementary graph with
  // clique number 3 and lists of size >= 3, colored by exact search
  for (int i = 0; i < 3; ++i) {
    int a = one(P::a(i)), b = one(P::b(i + 1));
    ColorSet common = colors::intersect(lists[a], lists[b]);
    if (common.empty()) continue;
    Color c = common.front();
    VertexSet rest;
    for (int v = 0; v < 9; ++v)
      if (v != a && v != b) rest.push_back(v);
    ListAssignment lr(static_cast<int>(rest.size()));
    for (std::size_t k = 0; k < rest.size(); ++k) lr.set(static_cast<int>(k), colors::minus(lists[rest[k]], c));
    auto r = oracle::brute_l_color(induced_subgraph(g, rest), lr);
    detail::check_internal(r.status == oracle::Status::yes, "peculiar: reduced 7-vertex graph not colorable");
    for (std::size_t k = 0; k < rest.size(); ++k) f[rest[k]] = (*r.coloring)[static_cast<int>(k)];
    f[a] = f[b] = c;
    ++local.merge_ab;
    return done();
  }

  // two members of Q share a color; the third keeps its full list
  for (int i = 0; i < 3; ++i) {
    int u = one(P::q(i)), v = one(P::q(i + 1)), w = one(P::q(i + 2));
    ColorSet common = colors::intersect(lists[u], lists[v]);
    if (common.empty()) continue;
    Color c = common.front();
    VertexSet rest;
    std::vector<ColorSet> fam;
    for (int x = 0; x < 9; ++x) {
      if (x == u || x == v) continue;
      rest.push_back(x);
      fam.push_back(x == w ? lists[x] : colors::minus(lists[x], c));
    }
    auto r = sdr(fam);
    detail::check_internal(r.representatives.has_value(), "peculiar: Hall's condition failed after merging on Q");
    for (std::size_t k = 0; k < rest.size(); ++k) f[rest[k]] = (*r.representatives)[k];
    f[u] = f[v] = c;
    ++local.merge_q;
    return done();
  }

  auto r = sdr(lists);
  detail::check_internal(r.representatives.has_value(), "peculiar: Hall's condition failed on disjoint lists");
  for (int v = 0; v < 9; ++v) f[v] = (*r.representatives)[static_cast<std::size_t>(v)];
  ++local.sdr;
  return done();
}

struct SolveStats {
  long components = 0;
  long simplicial = 0;
  long peculiar = 0;
  long atoms = 0;        // atoms colored directly as elementary graphs
  long cutsets = 0;      // extremal cutset extensions
  long case1 = 0;
  long case1_pins = 0;   // total pinned vertices over Case I extensions
  long case2_c4 = 0;     // incomparable neighborhoods
  long case2_w1 = 0;     // |W| = 1
  long case2_wc = 0;     // W complete to C
  long case2_c3b = 0;
  bool perfect_checked = false;
  ElementaryStats elementary;
  PeculiarStats peculiar_branches;

  SolveStats& operator+=(const SolveStats& o) {
    components += o.components;
    simplicial += o.simplicial;
    peculiar += o.peculiar;
    atoms += o.atoms;
    cutsets += o.cutsets;
    case1 += o.case1;
    case1_pins += o.case1_pins;
    case2_c4 += o.case2_c4;
    case2_w1 += o.case2_w1;
    case2_wc += o.case2_wc;
    case2_c3b += o.case2_c3b;
    perfect_checked = perfect_checked || o.perfect_checked;
    elementary += o.elementary;
    peculiar_branches += o.peculiar_branches;
    return *this;
  }
};

struct SolveOptions {
  // exhaustive perfection check on inputs with at most this many vertices
  int perfect_check_limit = 12;
};

namespace detail {

struct Solver {
  const Graph& g;
  const ListAssignment& l;
  SolveStats& st;

  // Colors G[vs]; vs connected. Returns colors for vs only (kNoColor elsewhere).
  Coloring connected(const VertexSet& vs) {
    Coloring f(g.n());
    Graph h = induced_subgraph(g, vs);

    // simplicial vertices go last, greedily
    std::vector<int> peeled;
    {
      std::vector<char> gone(vs.size(), 0);
      bool again = true;
      while (again) {
        again = false;
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (gone[i]) continue;
          VertexSet nb;
          for (int w : h.neighbors(static_cast<int>(i)))
            if (!gone[w]) nb.push_back(w);
          if (!is_clique(h, nb)) continue;
          gone[i] = 1;
          peeled.push_back(static_cast<int>(i));
          again = true;
        }
      }
      VertexSet rest;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (!gone[i]) rest.push_back(vs[i]);
      if (!rest.empty()) {
        for (const auto& comp : connected_components(induced_subgraph(g, rest))) {
          VertexSet part;
          for (int i : comp) part.push_back(rest[i]);
          Coloring fc = core(part);
          for (int v : part) f[v] = fc[v];
        }
      }
    }
    st.simplicial += static_cast<long>(peeled.size());
    for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) {
      int v = vs[*it];
      auto c = least_free_color(g, l, f, v);
      check_internal(c.has_value(), "simplicial vertex has no free color");
      f[v] = *c;
    }
    return f;
  }

  // Connected, no simplicial vertex.
  Coloring core(const VertexSet& vs) {
    Graph h = induced_subgraph(g, vs);
    // with clique number <= 4 a peculiar graph has exactly one vertex per role
    if (auto p = h.n() == 9 ? find_peculiar_partition(h) : std::nullopt) {
      ++st.peculiar;
      Coloring fl = color_peculiar4(h, *p, l.restricted(vs), &st.peculiar_branches);
      return lift(vs, fl);
    }
    if (minimal_clique_cutsets(h).empty()) {
      ++st.atoms;
      return lift(vs, color_atom(h, l.restricted(vs), Coloring{}));
    }
    ExtremalCutset ext = find_extremal_cutset(h);
    auto comps = components_without(h, ext.cutset);
    check_structure(comps.size() == 2, "graph minus the extremal cutset must have two components");
    VertexSet c = global(vs, ext.cutset), a2 = global(vs, ext.atom_side), a1 = global(vs, ext.other_side);
    check_structure(c.size() >= 2, "extremal cutset must have at least two vertices");
    ++st.cutsets;

    // color G1 = G[C ∪ A1] by induction
    Coloring f = connected(set_union(c, a1));
    extend(f, c, a1, a2);
    return f;
  }

  static VertexSet global(const VertexSet& vs, const VertexSet& local) {
    VertexSet out;
    for (int i : local) out.push_back(vs[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  Coloring lift(const VertexSet& vs, const Coloring& fl) const {
    Coloring f(g.n());
    for (std::size_t i = 0; i < vs.size(); ++i) f[vs[i]] = fl[static_cast<int>(i)];
    return f;
  }

  Coloring color_atom(const Graph& h, const ListAssignment& lh, const Coloring& pins) {
    ElementaryStructure s;
    try {
      s = recover_structure(h);
    } catch (const ContractError& e) {
      throw StructureError(std::string("atom is not elementary: ") + e.what());
    }
    return color_elementary(h, s, lh, pins, &st.elementary);
  }

  void extend(Coloring& f, const VertexSet& c, const VertexSet& a1, const VertexSet& a2) {
    VertexSet g2v = set_union(c, a2);
    Graph g2 = induced_subgraph(g, g2v);
    if (!is_cobipartite(g2))
      case1(f, c, a1, a2);
    else
      case2(f, c, a1, a2);
  }

  // ---- G2 elementary, not cobipartite

  void case1(Coloring& f, const VertexSet& c, const VertexSet& a1, const VertexSet& a2) {
    ++st.case1;
    VertexSet g2v = set_union(c, a2);
    Graph g2 = induced_subgraph(g, g2v);
    ElementaryStructure s;
    try {
      s = recover_structure(g2);
    } catch (const ContractError& e) {
      throw StructureError(std::string("Case I: atom is not elementary: ") + e.what());
    }
    auto roles = edge_roles(s);
    VertexSet centers;
    for (const auto& a : s.augments) centers.push_back(augment_center(s.root, a));

    VertexSet c_local;
    for (int v : c) c_local.push_back(static_cast<int>(std::lower_bound(g2v.begin(), g2v.end(), v) - g2v.begin()));
    std::sort(c_local.begin(), c_local.end());
    int u = -1;
    for (int r = 0; r < s.root.num_vertices() && u < 0; ++r) {
      if (set_contains(centers, r)) continue;
      VertexSet cu;
      for (int e : s.root.incident(r)) cu = set_union(cu, bag(s, roles, e));
      if (cu == c_local) u = r;
    }
    check_structure(u >= 0, "Case I: no root vertex u with C = C_u");

    VertexSet d;
    for (int v : a1)
      if (std::any_of(c.begin(), c.end(), [&](int x) { return g.adjacent(v, x); })) d.push_back(v);
    check_structure(is_clique(g, set_union(d, c)), "Case I: D ∪ C is not a clique");
    check_structure(d.size() <= 2, "Case I: more than two attachment vertices");

    // G[D ∪ C ∪ A2] from H* = H plus |D| pendant edges at u
    VertexSet star = set_union(d, g2v);
    Graph gs = induced_subgraph(g, star);
    auto local_of = [&](int v) { return static_cast<int>(std::lower_bound(star.begin(), star.end(), v) - star.begin()); };
    ElementaryStructure ss;
    ss.root = s.root;
    ss.augments = s.augments;
    ss.edge_to_vertex = s.edge_to_vertex;
    for (auto& v : ss.edge_to_vertex)
      if (v >= 0) v = local_of(g2v[v]);
    for (auto& a : ss.augments) {
      for (auto& v : a.x) v = local_of(g2v[v]);
      for (auto& v : a.y) v = local_of(g2v[v]);
      for (auto& [x, y] : a.xy_edges) {
        x = local_of(g2v[x]);
        y = local_of(g2v[y]);
      }
    }
    Coloring pins(gs.n());
    for (int dv : d) {
      int leaf = ss.root.add_vertex(opposite(ss.root.side(u)));
      ss.root.add_edge(u, leaf);
      ss.edge_to_vertex.push_back(local_of(dv));
      pins[local_of(dv)] = f[dv];
    }
    if (auto defect = structure_defect(gs, ss); !defect.empty())
      throw StructureError("Case I: D ∪ C ∪ A2 is not elementary as derived: " + defect);
    st.case1_pins += static_cast<long>(d.size());

    Coloring fs = color_elementary(gs, ss, l.restricted(star), pins, &st.elementary);
    for (int dv : d) check_internal(fs[local_of(dv)] == f[dv], "Case I: pinned color changed");
    for (int v : g2v) f[v] = fs[local_of(v)];
  }

  // ---- G2 cobipartite

  VertexSet nbrs_in(int x, const VertexSet& s) const {
    VertexSet out;
    for (int v : s)
      if (g.adjacent(x, v)) out.push_back(v);
    return out;
  }

  bool has_color_outside(const Coloring& before, const Coloring& after, const VertexSet& open) const {
    for (int v = 0; v < g.n(); ++v)
      if (!set_contains(open, v) && before[v] != after[v]) return true;
    return false;
  }

  // Runs a local lemma on G[vs] with the given lists and writes the colors into f.
  template <class F>
  void apply(Coloring& f, const VertexSet& vs, const std::vector<ColorSet>& lists, F&& lemma) {
    Graph h = induced_subgraph(g, vs);
    ListAssignment lh(lists);
    Coloring fl;
    try {
      fl = lemma(h, lh);
    } catch (const ContractError& e) {
      throw StructureError(std::string("Case II: lemma hypotheses not met: ") + e.what());
    }
    for (std::size_t i = 0; i < vs.size(); ++i) f[vs[i]] = fl[static_cast<int>(i)];
  }

  static int local(const VertexSet& vs, int v) {
    return static_cast<int>(std::find(vs.begin(), vs.end(), v) - vs.begin());
  }

  void case2(Coloring& f, const VertexSet& c, const VertexSet& a1, const VertexSet& a2) {
    const Coloring before = f;
    VertexSet w;
    for (int v : a1)
      if (std::any_of(c.begin(), c.end(), [&](int x) { return g.adjacent(v, x); })) w.push_back(v);
    auto n1 = [&](int x) { return nbrs_in(x, a1); };

    // a pair of C with incomparable neighborhoods in A1
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) {
        int x = c[i], y = c[j];
        VertexSet only_x = set_minus(n1(x), n1(y)), only_y = set_minus(n1(y), n1(x));
        if (i >= j || only_x.empty() || only_y.empty()) continue;
        ++st.case2_c4;
        check_structure(c.size() == 4 && a2.size() == 2 && w.size() == 2,
                        "Case II: incomparable pair without the 8-vertex configuration");
        int a = only_x[0], b = only_y[0];
        check_structure(set_union(VertexSet{a, b}, {}) == w, "Case II: W differs from {a, b}");
        VertexSet rest1 = set_minus(a1, w);
        VertexSet s;
        for (int v : rest1)
          if (g.adjacent(v, a) || g.adjacent(v, b)) s.push_back(v);
        check_structure(is_complete_to(g, s, {a, b}) && s.size() <= 2, "Case II: S not complete to {a, b}");
        VertexSet zt = set_minus(c, {x, y});
        VertexSet xs = set_union(w, zt), ys = set_union(VertexSet{x, y}, a2);
        VertexSet vs = set_union(xs, ys);
        std::vector<ColorSet> lists;
        for (int v : vs) lists.push_back(set_contains(w, v) ? colors::minus(l[v], f.colors_of(s)) : l[v]);
        VertexSet xl, yl;
        for (int v : xs) xl.push_back(local(vs, v));
        for (int v : ys) yl.push_back(local(vs, v));
        apply(f, vs, lists, [&](const Graph& h, const ListAssignment& lh) {
          return color_c4(h, make_partition(h, xl, yl), lh);
        });
        check_internal(!has_color_outside(before, f, set_union(set_union(c, a2), w)),
                       "Case II: recoloring touched a vertex outside C ∪ A2 ∪ W");
        return;
      }

    // comparable neighborhoods: some a1 complete to C and some x complete to W
    int x = -1, av = -1;
    for (int v : w)
      if (is_complete_to(g, {v}, c)) av = v;
    for (int v : c)
      if (is_complete_to(g, {v}, w)) x = v;
    check_structure(av >= 0 && x >= 0, "Case II: comparable neighborhoods without a1 or x");
    check_structure(c.size() <= 3 && w.size() <= 3, "Case II: |C| or |W| above 3");
    VertexSet g2v = set_union(c, a2);

    if (w.size() == 1) {
      ++st.case2_w1;
      std::vector<ColorSet> lists;
      for (int v : g2v) lists.push_back(set_contains(c, v) ? colors::minus(l[v], f[av]) : l[v]);
      if (c.size() == 3) {
        VertexSet cl;
        for (int v : c) cl.push_back(local(g2v, v));
        apply(f, g2v, lists, [&](const Graph& h, const ListAssignment& lh) { return color_c3(h, cl, lh); });
      } else {
        int xl = local(g2v, c[0]), yl = local(g2v, c[1]);
        apply(f, g2v, lists, [&](const Graph& h, const ListAssignment& lh) { return color_c2(h, xl, yl, lh); });
      }
    } else if (is_complete_to(g, w, c)) {
      ++st.case2_wc;
      check_structure(w.size() == 2 && c.size() == 2, "Case II: W complete to C but W ∪ C too large");
      std::vector<ColorSet> lists;
      for (int v : g2v) lists.push_back(set_contains(c, v) ? colors::minus(l[v], f.colors_of(w)) : l[v]);
      int xl = local(g2v, c[0]), yl = local(g2v, c[1]);
      apply(f, g2v, lists, [&](const Graph& h, const ListAssignment& lh) { return color_c2(h, xl, yl, lh); });
    } else {
      ++st.case2_c3b;
      check_structure(w.size() == 2 && c.size() == 3, "Case II: expected |W| = 2 and |C| = 3");
      int a2v = w[0] == av ? w[1] : w[0];
      VertexSet miss = set_minus(c, nbrs_in(a2v, c));
      check_structure(miss.size() == 1, "Case II: a2 must miss exactly one vertex of C");
      int y = miss[0];
      int z = set_minus(c, {x, y})[0];
      check_structure(is_complete_to(g, {y}, a2), "Case II: y not complete to A2");
      std::vector<ColorSet> lists;
      for (int v : g2v) {
        ColorSet lv = l[v];
        if (v == x || v == y || v == z) lv = colors::minus(lv, f[av]);
        if (v == x || v == z) lv = colors::minus(lv, f[a2v]);
        lists.push_back(lv);
      }
      VertexSet xl{local(g2v, y), local(g2v, x), local(g2v, z)}, yl;
      for (int v : a2) yl.push_back(local(g2v, v));
      apply(f, g2v, lists, [&](const Graph& h, const ListAssignment& lh) {
        return color_c3b(h, make_partition(h, xl, yl), lh);
      });
    }
    check_internal(!has_color_outside(before, f, g2v), "Case II: recoloring touched a vertex outside C ∪ A2");
  }
};

}  // namespace detail

// L-coloring of a claw-free perfect graph with clique number <= 4 from lists of size >= 4.
inline Coloring solve(const Graph& g, const ListAssignment& l, SolveStats* stats = nullptr, SolveOptions opt = {}) {
  if (l.size() != g.n()) throw InputError("one list per vertex required");
  for (int v = 0; v < g.n(); ++v)
    if (l[v].size() < 4)
      throw InputError("list of vertex " + std::to_string(v) + " has " + std::to_string(l[v].size()) +
                       " colors, at least 4 required");
  if (auto claw = find_claw(g))
    throw InputError("graph contains a claw: center " + std::to_string(claw->center) + ", leaves " +
                     std::to_string(claw->leaves[0]) + " " + std::to_string(claw->leaves[1]) + " " +
                     std::to_string(claw->leaves[2]));
  if (int w = omega(g); w > 4) throw InputError("clique number " + std::to_string(w) + " exceeds 4");
  SolveStats local;
  if (g.n() <= opt.perfect_check_limit) {
    auto p = oracle::is_perfect_small(g);
    if (p.status == oracle::Status::no) {
      std::string w;
      for (int v : p.imperfect_subgraph) w += " " + std::to_string(v);
      throw InputError("claw-free check passed but perfectness refuted (n <= " +
                       std::to_string(opt.perfect_check_limit) + "): chi > omega on" + w);
    }
    local.perfect_checked = true;
  }
  detail::Solver s{g, l, local};
  Coloring f(g.n());
  for (const auto& comp : connected_components(g)) {
    ++local.components;
    Coloring fc = s.connected(comp);
    for (int v : comp) f[v] = fc[v];
  }
  auto v = oracle::validate_coloring(g, l, f);
  detail::check_internal(v.ok(), "solver output invalid: " + v.describe());
  if (stats) *stats = local;
  return f;
}

}  // namespace cfp
