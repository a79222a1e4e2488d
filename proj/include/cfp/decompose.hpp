#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cfp/graph.hpp"

namespace cfp {

namespace detail {

// Set helpers on small vertex lists; inputs need not be sorted, outputs are sorted.
inline VertexSet sorted(VertexSet a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet x = sorted(a), y = sorted(b), out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet x = sorted(a), y = sorted(b), out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet x = sorted(a), y = sorted(b), out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline bool set_contains(const VertexSet& a, int v) { return std::find(a.begin(), a.end(), v) != a.end(); }

// Vertices outside `comp` with a neighbor in it.
inline VertexSet attachment(const Graph& g, const VertexSet& comp) {
  Bitset nb(static_cast<std::size_t>(g.n()));
  for (int v : comp) nb |= g.row(v);
  for (int v : comp) nb.reset(v);
  return to_vertex_set(nb);
}

// S separates g, and every component of g - S is full (sees all of S).
inline bool is_minimal_separator(const Graph& g, const VertexSet& s) {
  auto comps = components_without(g, s);
  if (comps.size() < 2) return false;
  for (const auto& c : comps)
    if (attachment(g, c) != s) return false;
  return true;
}

inline bool cutset_order(const VertexSet& a, const VertexSet& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

}  // namespace detail

// All minimal clique cutsets of a connected graph, smallest first, then lexicographic.
// Every minimal clique separator is N(C) for a component C of G - M where M is a maximal
// clique containing it, so enumerating those candidates is complete.
inline std::vector<VertexSet> minimal_clique_cutsets(const Graph& g) {
  detail::check_structure(is_connected(g), "clique cutset search needs a connected graph");
  std::set<VertexSet> found;
  for (const auto& m : maximal_cliques(g))
    for (const auto& comp : components_without(g, m)) {
      VertexSet s = detail::attachment(g, comp);
      if (s.empty() || found.count(s)) continue;
      if (detail::is_minimal_separator(g, s)) found.insert(s);
    }
  std::vector<VertexSet> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), detail::cutset_order);
  return out;
}

inline std::optional<VertexSet> find_clique_cutset(const Graph& g) {
  auto all = minimal_clique_cutsets(g);
  if (all.empty()) return std::nullopt;
  return all.front();
}

inline bool is_atom(const Graph& g) { return is_connected(g) && minimal_clique_cutsets(g).empty(); }

struct ExtremalCutset {
  VertexSet cutset;
  VertexSet atom_side;   // component A with G[A ∪ C] an atom
  VertexSet other_side;  // union of the remaining components
};

inline ExtremalCutset find_extremal_cutset(const Graph& g) {
  auto cuts = minimal_clique_cutsets(g);
  if (cuts.empty()) throw NotDecomposable("graph is an atom");
  const bool claw_free = !find_claw(g).has_value();
  for (const auto& s : cuts) {
    auto comps = components_without(g, s);
    detail::check_structure(!claw_free || comps.size() == 2,
                            "claw-free graph minus a minimal clique cutset has " + std::to_string(comps.size()) +
                                " components, expected 2");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (!is_atom(induced_subgraph(g, detail::set_union(comps[i], s)))) continue;
      ExtremalCutset ext{s, comps[i], {}};
      for (std::size_t j = 0; j < comps.size(); ++j)
        if (j != i) ext.other_side = detail::set_union(ext.other_side, comps[j]);
      return ext;
    }
  }
  throw InternalError("no clique cutset with an atom side");
}

struct DecompositionNode {
  VertexSet vertices;
  VertexSet cutset;  // empty for leaves and for the virtual root of a disconnected graph
  std::vector<int> children;
  bool virtual_root = false;

  bool is_leaf() const { return children.empty(); }
};

struct DecompositionTree {
  std::vector<DecompositionNode> nodes;
  int root = 0;

  std::vector<int> leaves() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (nodes[i].is_leaf()) out.push_back(i);
    return out;
  }
};

namespace detail {

inline int decompose_connected(const Graph& g, const VertexSet& vs, DecompositionTree& t) {
  int id = static_cast<int>(t.nodes.size());
  t.nodes.push_back({vs, {}, {}, false});
  Graph h = induced_subgraph(g, vs);
  auto cut = find_clique_cutset(h);
  if (!cut) return id;
  VertexSet s;
  for (int v : *cut) s.push_back(vs[v]);
  t.nodes[id].cutset = s;
  for (const auto& comp : components_without(h, *cut)) {
    VertexSet part;
    for (int v : comp) part.push_back(vs[v]);
    int child = decompose_connected(g, set_union(part, s), t);
    t.nodes[id].children.push_back(child);
  }
  return id;
}

}  // namespace detail

inline DecompositionTree decompose_full(const Graph& g) {
  DecompositionTree t;
  auto comps = connected_components(g);
  if (comps.size() <= 1) {
    VertexSet all;
    for (int v = 0; v < g.n(); ++v) all.push_back(v);
    detail::decompose_connected(g, all, t);
    return t;
  }
  t.nodes.push_back({{}, {}, {}, true});
  for (int v = 0; v < g.n(); ++v) t.nodes[0].vertices.push_back(v);
  for (const auto& c : comps) {
    int child = detail::decompose_connected(g, c, t);
    t.nodes[0].children.push_back(child);
  }
  return t;
}

inline std::string to_dot(const DecompositionTree& t) {
  auto list = [](const VertexSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
    return out;
  };
  std::ostringstream os;
  os << "digraph decomposition {\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& nd = t.nodes[i];
    os << "  n" << i << " [shape=" << (nd.is_leaf() ? "box" : "ellipse") << ", label=\"";
    if (nd.virtual_root)
      os << "components";
    else if (nd.is_leaf())
      os << "atom {" << list(nd.vertices) << "}";
    else
      os << "cut {" << list(nd.cutset) << "}";
    os << "\"];\n";
    for (int c : nd.children) os << "  n" << i << " -> n" << c << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace cfp
