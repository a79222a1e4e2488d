#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cfp/decompose.hpp"
#include "cfp/graph.hpp"
#include "cfp/multigraph.hpp"

namespace cfp {

// ---------------------------------------------------------------- peculiar graphs

// Roles in the order A1, B1, A2, B2, A3, B3, Q1, Q2, Q3.
struct PeculiarPartition {
  std::array<VertexSet, 9> sets;

  static constexpr int a(int i) { return 2 * (i % 3); }
  static constexpr int b(int i) { return 2 * (i % 3) + 1; }
  static constexpr int q(int i) { return 6 + i % 3; }

  const VertexSet& A(int i) const { return sets[a(i)]; }
  const VertexSet& B(int i) const { return sets[b(i)]; }
  const VertexSet& Q(int i) const { return sets[q(i)]; }

  bool operator==(const PeculiarPartition&) const = default;
};

namespace detail {

enum class Relation : char { anti, complete, free };

// Pairwise relation between role sets; `free` pairs must have at least one non-edge.
inline const std::array<std::array<Relation, 9>, 9>& peculiar_relations() {
  static const auto table = [] {
    std::array<std::array<Relation, 9>, 9> t{};
    std::array<std::array<bool, 9>, 9> set{};
    auto put = [&](int r, int s, Relation rel) {
      if (set[r][s] && t[r][s] != rel) throw InternalError("inconsistent peculiar relation table");
      t[r][s] = t[s][r] = rel;
      set[r][s] = set[s][r] = true;
    };
    using P = PeculiarPartition;
    for (int i = 0; i < 3; ++i) {
      for (int r : {P::b(i), P::a(i + 1), P::a(i + 2), P::b(i + 2)}) put(P::a(i), r, Relation::complete);
      put(P::a(i), P::b(i + 1), Relation::free);
      for (int r : {P::a(i), P::b(i + 1), P::b(i + 2), P::a(i + 1)}) put(P::b(i), r, Relation::complete);
      put(P::b(i), P::a(i + 2), Relation::free);
      for (int r : {P::a(i + 1), P::b(i + 1), P::a(i + 2), P::b(i + 2)}) put(P::q(i), r, Relation::complete);
      for (int r : {P::a(i), P::b(i), P::q(i + 1), P::q(i + 2)}) put(P::q(i), r, Relation::anti);
    }
    for (int r = 0; r < 9; ++r) {
      t[r][r] = Relation::complete;
      for (int s = 0; s < 9; ++s)
        if (r != s && !set[r][s]) throw InternalError("incomplete peculiar relation table");
    }
    return t;
  }();
  return table;
}

}  // namespace detail

inline bool is_peculiar_partition(const Graph& g, const PeculiarPartition& p) {
  const auto& rel = detail::peculiar_relations();
  std::vector<int> role(static_cast<std::size_t>(g.n()), -1);
  for (int r = 0; r < 9; ++r) {
    if (p.sets[r].empty()) return false;
    for (int v : p.sets[r]) {
      if (v < 0 || v >= g.n() || role[v] >= 0) return false;
      role[v] = r;
    }
  }
  if (std::count(role.begin(), role.end(), -1) > 0) return false;
  for (int r = 0; r < 9; ++r) {
    if (!is_clique(g, p.sets[r])) return false;
    for (int s = r + 1; s < 9; ++s) {
      switch (rel[r][s]) {
        case detail::Relation::complete:
          if (!is_complete_to(g, p.sets[r], p.sets[s])) return false;
          break;
        case detail::Relation::anti:
          if (!is_anticomplete_to(g, p.sets[r], p.sets[s])) return false;
          break;
        case detail::Relation::free:
          if (is_complete_to(g, p.sets[r], p.sets[s])) return false;
          break;
      }
    }
  }
  return true;
}

// Backtracking assignment of vertices to the nine roles. The relation table is invariant
// under the index shift i -> i+1, so vertex 0 is restricted to A1, B1 or Q1.
inline std::optional<PeculiarPartition> find_peculiar_partition(const Graph& g) {
  const int n = g.n();
  if (n < 9 || !is_connected(g)) return std::nullopt;
  const auto& rel = detail::peculiar_relations();
  std::vector<int> role(static_cast<std::size_t>(n), -1);
  std::array<int, 9> count{};
  int empty_roles = 9;
  std::optional<PeculiarPartition> found;

  auto consistent = [&](int v, int r) {
    for (int u = 0; u < v; ++u) {
      auto rr = rel[role[u]][r];
      bool adj = g.adjacent(u, v);
      if (rr == detail::Relation::complete && !adj) return false;
      if (rr == detail::Relation::anti && adj) return false;
    }
    return true;
  };
  auto rec = [&](auto& self, int v) -> bool {
    if (v == n) {
      PeculiarPartition p;
      for (int u = 0; u < n; ++u) p.sets[role[u]].push_back(u);
      if (!is_peculiar_partition(g, p)) return false;
      found = std::move(p);
      return true;
    }
    if (n - v < empty_roles) return false;
    for (int r = 0; r < 9; ++r) {
      if (v == 0 && r != PeculiarPartition::a(0) && r != PeculiarPartition::b(0) && r != PeculiarPartition::q(0))
        continue;
      if (!consistent(v, r)) continue;
      role[v] = r;
      if (count[r]++ == 0) --empty_roles;
      if (self(self, v + 1)) return true;
      if (--count[r] == 0) ++empty_roles;
      role[v] = -1;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

// The 9-vertex peculiar graph; vertex i is the single member of role i.
inline Graph peculiar_graph() {
  const auto& rel = detail::peculiar_relations();
  Graph g(9);
  for (int r = 0; r < 9; ++r)
    for (int s = r + 1; s < 9; ++s)
      if (rel[r][s] == detail::Relation::complete) g.add_edge(r, s);
  return g;
}

// ---------------------------------------------------------------- elementary edge 2-coloring

struct EdgeTwoColoring {
  std::vector<Edge> edges;  // lexicographic, u < v
  std::vector<int> color;   // 1 or 2, parallel to edges

  int color_of(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), Edge{u, v});
    return it != edges.end() && *it == Edge{u, v} ? color[static_cast<std::size_t>(it - edges.begin())] : 0;
  }
};

namespace detail {

struct ConflictGraph {
  std::vector<Edge> edges;
  std::vector<std::vector<int>> adj;  // edge index -> conflicting edge indices

  explicit ConflictGraph(const Graph& g) : edges(g.edges()), adj(edges.size()) {
    auto id = [&](int u, int v) {
      if (u > v) std::swap(u, v);
      return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), Edge{u, v}) - edges.begin());
    };
    for (int v = 0; v < g.n(); ++v) {
      VertexSet nb = g.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!g.adjacent(nb[i], nb[j])) {
            int a = id(v, nb[i]), b = id(v, nb[j]);
            adj[a].push_back(b);
            adj[b].push_back(a);
          }
    }
  }
};

struct ConflictColoring {
  std::vector<int> color;      // 0/1 per edge
  std::vector<int> component;  // conflict component per edge
  int components = 0;
  std::vector<Edge> odd_cycle;  // non-empty iff not 2-colorable
};

inline ConflictColoring color_conflicts(const ConflictGraph& cg) {
  const int m = static_cast<int>(cg.edges.size());
  ConflictColoring out;
  out.color.assign(static_cast<std::size_t>(m), -1);
  out.component.assign(static_cast<std::size_t>(m), -1);
  std::vector<int> parent(static_cast<std::size_t>(m), -1), depth(static_cast<std::size_t>(m), 0);
  for (int s = 0; s < m; ++s) {
    if (out.color[s] >= 0) continue;
    int comp = out.components++;
    out.color[s] = 0;
    out.component[s] = comp;
    std::vector<int> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int a = queue[qi];
      for (int b : cg.adj[a]) {
        if (out.color[b] < 0) {
          out.color[b] = 1 - out.color[a];
          out.component[b] = comp;
          parent[b] = a;
          depth[b] = depth[a] + 1;
          queue.push_back(b);
        } else if (out.color[b] == out.color[a]) {
          // walk both tree paths up to their meeting point
          std::vector<int> pa{a}, pb{b};
          int x = a, y = b;
          while (depth[x] > depth[y]) pa.push_back(x = parent[x]);
          while (depth[y] > depth[x]) pb.push_back(y = parent[y]);
          while (x != y) {
            pa.push_back(x = parent[x]);
            pb.push_back(y = parent[y]);
          }
          pb.pop_back();
          std::reverse(pb.begin(), pb.end());
          for (int e : pa) out.odd_cycle.push_back(cg.edges[e]);
          for (int e : pb) out.odd_cycle.push_back(cg.edges[e]);
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// Edge 2-coloring in which the two edges of every induced P3 differ; none if impossible.
inline std::optional<EdgeTwoColoring> elementary_edge_2_coloring(const Graph& g) {
  detail::ConflictGraph cg(g);
  auto cc = detail::color_conflicts(cg);
  if (!cc.odd_cycle.empty()) return std::nullopt;
  EdgeTwoColoring out{cg.edges, {}};
  for (int c : cc.color) out.color.push_back(c + 1);
  return out;
}

// Odd cycle of the conflict graph: consecutive edges (cyclically) form induced P3s.
inline std::optional<std::vector<Edge>> odd_conflict_cycle(const Graph& g) {
  detail::ConflictGraph cg(g);
  auto cc = detail::color_conflicts(cg);
  if (cc.odd_cycle.empty()) return std::nullopt;
  return cc.odd_cycle;
}

// ---------------------------------------------------------------- elementary structure

struct Augment {
  int edge_x = -1;
  int edge_y = -1;
  VertexSet x;
  VertexSet y;
  std::vector<Edge> xy_edges;  // (x-vertex, y-vertex)

  bool operator==(const Augment&) const = default;
};

struct ElementaryStructure {
  BipartiteMultigraph root;
  std::vector<int> edge_to_vertex;  // -1 on augmented edges
  std::vector<Augment> augments;

  int h() const { return static_cast<int>(augments.size()); }

  int vertex_count() const {
    int n = 0;
    for (int v : edge_to_vertex) n += v >= 0 ? 1 : 0;
    for (const auto& a : augments) n += static_cast<int>(a.x.size() + a.y.size());
    return n;
  }

  bool operator==(const ElementaryStructure&) const = default;
};

namespace detail {

struct EdgeRole {
  int augment = -1;  // -1 for plain edges
  bool is_x = false;
};

inline std::vector<EdgeRole> edge_roles(const ElementaryStructure& s) {
  std::vector<EdgeRole> roles(static_cast<std::size_t>(s.root.num_edges()));
  for (int k = 0; k < s.h(); ++k) {
    roles[s.augments[k].edge_x] = {k, true};
    roles[s.augments[k].edge_y] = {k, false};
  }
  return roles;
}

inline VertexSet bag(const ElementaryStructure& s, const std::vector<EdgeRole>& roles, int e) {
  if (roles[e].augment < 0) return {s.edge_to_vertex[e]};
  const auto& a = s.augments[roles[e].augment];
  return roles[e].is_x ? a.x : a.y;
}

inline int augment_center(const BipartiteMultigraph& b, const Augment& a) {
  auto ex = b.edge(a.edge_x), ey = b.edge(a.edge_y);
  if (ex.left == ey.left && ex.right != ey.right) return ex.left;
  if (ex.right == ey.right && ex.left != ey.left) return ex.right;
  return -1;
}

}  // namespace detail

// Structural defects that do not need the target graph; empty string when well formed.
inline std::string structure_shape_defect(const ElementaryStructure& s) {
  const auto& b = s.root;
  if (static_cast<int>(s.edge_to_vertex.size()) != b.num_edges()) return "edge map size differs from root edge count";
  std::vector<int> used(static_cast<std::size_t>(b.num_edges()), 0);
  for (int k = 0; k < s.h(); ++k) {
    const auto& a = s.augments[k];
    std::string tag = "augment " + std::to_string(k) + ": ";
    if (a.edge_x < 0 || a.edge_x >= b.num_edges() || a.edge_y < 0 || a.edge_y >= b.num_edges() ||
        a.edge_x == a.edge_y)
      return tag + "bad edge ids";
    if (used[a.edge_x]++ || used[a.edge_y]++) return tag + "edge shared with another augment";
    if (s.edge_to_vertex[a.edge_x] >= 0 || s.edge_to_vertex[a.edge_y] >= 0) return tag + "augmented edge also mapped";
    int q = detail::augment_center(b, a);
    if (q < 0) return tag + "edges do not share exactly one endpoint";
    if (b.degree(q) != 2) return tag + "common endpoint has degree " + std::to_string(b.degree(q));
    if (a.x.size() < 2 || a.y.size() < 2) return tag + "side smaller than 2";
    if (!std::is_sorted(a.x.begin(), a.x.end()) || !std::is_sorted(a.y.begin(), a.y.end()))
      return tag + "unsorted vertex sets";
    std::vector<Edge> xy = a.xy_edges;
    std::sort(xy.begin(), xy.end());
    if (std::adjacent_find(xy.begin(), xy.end()) != xy.end()) return tag + "duplicate cross edge";
    for (auto [u, v] : xy)
      if (!detail::set_contains(a.x, u) || !detail::set_contains(a.y, v)) return tag + "cross edge outside X x Y";
    if (xy.size() == a.x.size() * a.y.size()) return tag + "X u Y is a clique";
    // connectivity of the X-Y bipartite graph
    VertexSet all = detail::set_union(a.x, a.y);
    std::vector<int> parent(all.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(all.begin(), all.end(), v) - all.begin()); };
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    int parts = static_cast<int>(all.size());
    for (auto [u, v] : xy) {
      int ru = find(idx(u)), rv = find(idx(v));
      if (ru != rv) {
        parent[ru] = rv;
        --parts;
      }
    }
    if (parts != 1) return tag + "X-Y edges disconnected";
  }
  for (int e = 0; e < b.num_edges(); ++e)
    if (!used[e] && s.edge_to_vertex[e] < 0) return "edge " + std::to_string(e) + " has no vertex";
  std::vector<int> seen(static_cast<std::size_t>(s.vertex_count()), 0);
  auto mark = [&](int v) {
    if (v < 0 || v >= static_cast<int>(seen.size()) || seen[v]) return false;
    seen[v] = 1;
    return true;
  };
  for (int v : s.edge_to_vertex)
    if (v >= 0 && !mark(v)) return "vertex " + std::to_string(v) + " repeated or out of range";
  for (const auto& a : s.augments)
    for (const auto* side : {&a.x, &a.y})
      for (int v : *side)
        if (!mark(v)) return "vertex " + std::to_string(v) + " repeated or out of range";
  return {};
}

// Line graph of the root with every augment applied. Requires a well-formed structure.
inline Graph replay(const ElementaryStructure& s) {
  const auto& b = s.root;
  Graph g(s.vertex_count());
  auto roles = detail::edge_roles(s);
  std::vector<VertexSet> bags;
  for (int e = 0; e < b.num_edges(); ++e) bags.push_back(detail::bag(s, roles, e));
  auto complete = [&](const VertexSet& p, const VertexSet& q) {
    for (int u : p)
      for (int v : q)
        if (u != v) g.add_edge(u, v);
  };
  for (const auto& bg : bags) complete(bg, bg);
  for (int p = 0; p < b.num_vertices(); ++p) {
    const auto& inc = b.incident(p);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        int e = inc[i], f = inc[j];
        int k = roles[e].augment;
        if (k >= 0 && k == roles[f].augment && detail::augment_center(b, s.augments[k]) == p) {
          for (auto [u, v] : s.augments[k].xy_edges) g.add_edge(u, v);
        } else {
          complete(bags[e], bags[f]);
        }
      }
  }
  return g;
}

inline std::string structure_defect(const Graph& g, const ElementaryStructure& s) {
  if (auto d = structure_shape_defect(s); !d.empty()) return d;
  if (s.vertex_count() != g.n()) return "structure covers " + std::to_string(s.vertex_count()) + " vertices, graph has " +
                                        std::to_string(g.n());
  if (!(replay(s) == g)) return "replayed graph differs";
  return {};
}

inline bool verify_structure(const Graph& g, const ElementaryStructure& s) { return structure_defect(g, s).empty(); }

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Builds a structure from a vertex -> (red group, blue group) labelling, where every
// vertex lies in one monochromatic component of each color.
inline std::optional<ElementaryStructure> build_from_groups(const Graph& g, const std::vector<int>& red,
                                                            const std::vector<int>& blue) {
  const int n = g.n();
  std::map<int, VertexSet> red_groups, blue_groups;
  for (int v = 0; v < n; ++v) {
    red_groups[red[v]].push_back(v);
    blue_groups[blue[v]].push_back(v);
  }
  std::map<int, bool> red_clique, blue_clique;
  for (auto& [k, vs] : red_groups) red_clique[k] = is_clique(g, vs);
  for (auto& [k, vs] : blue_groups) blue_clique[k] = is_clique(g, vs);
  for (int v = 0; v < n; ++v)
    if (!red_clique[red[v]] && !blue_clique[blue[v]]) return std::nullopt;

  ElementaryStructure s;
  std::map<int, int> red_vertex, blue_vertex;
  for (auto& [k, vs] : red_groups)
    if (red_clique[k]) red_vertex[k] = s.root.add_vertex(Side::left);
  for (auto& [k, vs] : blue_groups)
    if (blue_clique[k]) blue_vertex[k] = s.root.add_vertex(Side::right);

  struct Pending {
    int min_vertex;
    VertexSet members;
    bool red;
  };
  std::vector<Pending> augs;
  for (auto& [k, vs] : red_groups)
    if (!red_clique[k]) augs.push_back({vs.front(), vs, true});
  for (auto& [k, vs] : blue_groups)
    if (!blue_clique[k]) augs.push_back({vs.front(), vs, false});
  std::sort(augs.begin(), augs.end(), [](const Pending& a, const Pending& b) { return a.min_vertex < b.min_vertex; });

  std::vector<char> in_augment(static_cast<std::size_t>(n), 0);
  for (const auto& a : augs)
    for (int v : a.members) in_augment[v] = 1;
  for (int v = 0; v < n; ++v) {
    if (in_augment[v]) continue;
    s.edge_to_vertex.push_back(v);
    s.root.add_edge(red_vertex.at(red[v]), blue_vertex.at(blue[v]));
  }
  for (const auto& a : augs) {
    const auto& other = a.red ? blue : red;
    std::map<int, VertexSet> parts;
    for (int v : a.members) parts[other[v]].push_back(v);
    if (parts.size() != 2) return std::nullopt;
    auto it = parts.begin();
    int gx = it->first;
    VertexSet x = it->second;
    ++it;
    int gy = it->first;
    VertexSet y = it->second;
    int q = s.root.add_vertex(a.red ? Side::left : Side::right);
    auto& other_vertex = a.red ? blue_vertex : red_vertex;
    Augment aug;
    aug.edge_x = s.root.add_edge(q, other_vertex.at(gx));
    s.edge_to_vertex.push_back(-1);
    aug.edge_y = s.root.add_edge(q, other_vertex.at(gy));
    s.edge_to_vertex.push_back(-1);
    aug.x = x;
    aug.y = y;
    for (int u : x)
      for (int v : y)
        if (g.adjacent(u, v)) aug.xy_edges.emplace_back(u, v);
    s.augments.push_back(std::move(aug));
  }
  if (!verify_structure(g, s)) return std::nullopt;
  return s;
}

inline std::optional<ElementaryStructure> cobipartite_structure(const Graph& g, std::size_t flip_cap) {
  Graph co = complement(g);
  auto comps = connected_components(co);
  // 2-color each complement component
  std::vector<int> side(static_cast<std::size_t>(g.n()), -1);
  for (const auto& c : comps) {
    side[c.front()] = 0;
    VertexSet queue{c.front()};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int w : co.neighbors(queue[i])) {
        if (side[w] < 0) {
          side[w] = 1 - side[queue[i]];
          queue.push_back(w);
        } else if (side[w] == side[queue[i]]) {
          return std::nullopt;
        }
      }
  }
  if (comps.size() > 1 && comps.size() - 1 >= 8 * sizeof(std::size_t)) return std::nullopt;
  std::size_t flips = std::size_t{1} << (comps.size() - 1);
  for (std::size_t mask = 0; mask < std::min(flips, flip_cap); ++mask) {
    VertexSet x, y;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      bool flip = ci > 0 && (mask >> (ci - 1) & 1u);
      for (int v : comps[ci]) ((side[v] == 0) != flip ? x : y).push_back(v);
    }
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x.size() < 2 || y.size() < 2) continue;
    ElementaryStructure s;
    int q = s.root.add_vertex(Side::left);
    int px = s.root.add_vertex(Side::right);
    int py = s.root.add_vertex(Side::right);
    Augment aug;
    aug.edge_x = s.root.add_edge(q, px);
    aug.edge_y = s.root.add_edge(q, py);
    s.edge_to_vertex = {-1, -1};
    aug.x = x;
    aug.y = y;
    for (int u : x)
      for (int v : y)
        if (g.adjacent(u, v)) aug.xy_edges.emplace_back(u, v);
    s.augments.push_back(std::move(aug));
    if (verify_structure(g, s)) return s;
  }
  return std::nullopt;
}

}  // namespace detail

struct RecoverOptions {
  std::size_t flip_cap = std::size_t{1} << 16;
};

// Recovers a root multigraph and augments whose replay is g.
//
// True twins are collapsed first; in the twin-free quotient every edge lies in an induced
// P3, so each conflict component has exactly two colorings. For each choice of component
// orientations the monochromatic components of both colors are formed; clique components
// become root vertices and each non-clique component becomes the center of an augment
// whose sides are its intersections with the two cliques of the other color. The first
// labelling that replays to g is returned.
inline ElementaryStructure recover_structure(const Graph& g, RecoverOptions opt = {}) {
  detail::check_contract(g.n() > 0 && is_connected(g), "structure recovery needs a connected graph");
  if (auto cyc = odd_conflict_cycle(g)) {
    std::string w;
    for (auto [u, v] : *cyc) w += " " + std::to_string(u) + "-" + std::to_string(v);
    throw StructureError("not elementary: odd conflict cycle" + w);
  }
  const int n = g.n();
  std::vector<int> rep(static_cast<std::size_t>(n), -1);
  VertexSet reps;
  for (int v = 0; v < n; ++v) {
    if (rep[v] >= 0) continue;
    rep[v] = v;
    reps.push_back(v);
    Bitset closed = g.row(v);
    closed.set(v);
    for (int w = v + 1; w < n; ++w) {
      if (rep[w] >= 0 || !closed.test(w)) continue;
      Bitset cw = g.row(w);
      cw.set(w);
      if (cw == closed) rep[w] = v;
    }
  }
  std::vector<int> qidx(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) qidx[reps[i]] = static_cast<int>(i);
  Graph q = induced_subgraph(g, reps);
  detail::ConflictGraph cg(q);
  auto cc = detail::color_conflicts(cg);
  detail::check_internal(cc.odd_cycle.empty(), "twin quotient lost the edge 2-coloring");

  const int k = cc.components;
  std::size_t flips = k <= 1 ? 1 : (k - 1 < 63 ? std::size_t{1} << (k - 1) : SIZE_MAX);
  for (std::size_t mask = 0; mask < std::min(flips, opt.flip_cap); ++mask) {
    detail::UnionFind red(q.n()), blue(q.n());
    for (std::size_t e = 0; e < cg.edges.size(); ++e) {
      int comp = cc.component[e];
      int c = cc.color[e] ^ (comp > 0 ? static_cast<int>(mask >> (comp - 1) & 1u) : 0);
      (c == 0 ? red : blue).unite(cg.edges[e].first, cg.edges[e].second);
    }
    std::vector<int> rg(static_cast<std::size_t>(n)), bg(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      rg[v] = red.find(qidx[rep[v]]);
      bg[v] = blue.find(qidx[rep[v]]);
    }
    if (auto s = detail::build_from_groups(g, rg, bg)) return *s;
  }
  if (auto s = detail::cobipartite_structure(g, opt.flip_cap)) return *s;
  throw StructureError("no root multigraph with augments reproduces the graph");
}

}  // namespace cfp
