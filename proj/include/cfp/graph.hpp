#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "cfp/errors.hpp"

namespace cfp {

using VertexSet = std::vector<int>;  // kept sorted ascending
using Bitset = boost::dynamic_bitset<std::uint64_t>;
using Edge = std::pair<int, int>;

inline VertexSet to_vertex_set(const Bitset& b) {
  VertexSet out;
  for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

inline Bitset to_bitset(const VertexSet& s, int n) {
  Bitset b(static_cast<std::size_t>(n));
  for (int v : s) b.set(static_cast<std::size_t>(v));
  return b;
}

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n))) {}

  int n() const { return static_cast<int>(adj_.size()); }

  void add_edge(int u, int v) {
    check(u);
    check(v);
    detail::check_contract(u != v, "self-loop on vertex " + std::to_string(u));
    adj_[u].set(v);
    adj_[v].set(u);
  }

  void remove_edge(int u, int v) {
    check(u);
    check(v);
    adj_[u].reset(v);
    adj_[v].reset(u);
  }

  bool adjacent(int u, int v) const { return adj_[u].test(v); }
  const Bitset& row(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].count()); }
  VertexSet neighbors(int v) const { return to_vertex_set(adj_[v]); }

  int num_edges() const {
    std::size_t m = 0;
    for (const auto& r : adj_) m += r.count();
    return static_cast<int>(m / 2);
  }

  // All edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int u = 0; u < n(); ++u)
      for (auto v = adj_[u].find_next(u); v != Bitset::npos; v = adj_[u].find_next(v))
        out.emplace_back(u, static_cast<int>(v));
    return out;
  }

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  void check(int v) const {
    detail::check_contract(v >= 0 && v < n(), "vertex id " + std::to_string(v) + " out of range");
  }
  std::vector<Bitset> adj_;
};

inline Graph graph_from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Subgraph induced by `vs`; local vertex i is vs[i].
inline Graph induced_subgraph(const Graph& g, const VertexSet& vs) {
  Graph h(static_cast<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

inline Graph complement(const Graph& g) {
  Graph h(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.adjacent(u, v)) h.add_edge(u, v);
  return h;
}

inline bool is_clique(const Graph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.adjacent(s[i], s[j])) return false;
  return true;
}

inline bool is_complete_to(const Graph& g, const VertexSet& a, const VertexSet& b) {
  for (int u : a)
    for (int v : b)
      if (u == v || !g.adjacent(u, v)) return false;
  return true;
}

inline bool is_anticomplete_to(const Graph& g, const VertexSet& a, const VertexSet& b) {
  for (int u : a)
    for (int v : b)
      if (u == v || g.adjacent(u, v)) return false;
  return true;
}

// Components of g minus `removed`, each sorted, ordered by least vertex.
inline std::vector<VertexSet> components_without(const Graph& g, const VertexSet& removed) {
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (int v : removed) seen[v] = 1;
  std::vector<VertexSet> comps;
  for (int s = 0; s < g.n(); ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const Bitset& r = g.row(comp[i]);
      for (auto w = r.find_first(); w != Bitset::npos; w = r.find_next(w))
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(static_cast<int>(w));
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::vector<VertexSet> connected_components(const Graph& g) { return components_without(g, {}); }

inline bool is_connected(const Graph& g) { return g.n() == 0 || connected_components(g).size() == 1; }

struct Claw {
  int center;
  std::array<int, 3> leaves;
  bool operator==(const Claw&) const = default;
};

inline std::optional<Claw> find_claw(const Graph& g) {
  for (int c = 0; c < g.n(); ++c) {
    VertexSet nb = g.neighbors(c);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (g.adjacent(nb[i], nb[j])) continue;
        for (std::size_t k = j + 1; k < nb.size(); ++k)
          if (!g.adjacent(nb[i], nb[k]) && !g.adjacent(nb[j], nb[k])) return Claw{c, {nb[i], nb[j], nb[k]}};
      }
  }
  return std::nullopt;
}

inline bool is_simplicial(const Graph& g, int v) { return is_clique(g, g.neighbors(v)); }

inline std::optional<int> find_simplicial(const Graph& g) {
  for (int v = 0; v < g.n(); ++v)
    if (is_simplicial(g, v)) return v;
  return std::nullopt;
}

namespace detail {

inline void max_clique_search(const Graph& g, VertexSet& current, Bitset cand, VertexSet& best) {
  if (cand.none()) {
    if (current.size() > best.size()) best = current;
    return;
  }
  while (cand.any()) {
    if (current.size() + cand.count() <= best.size()) return;
    auto v = cand.find_first();
    current.push_back(static_cast<int>(v));
    max_clique_search(g, current, cand & g.row(static_cast<int>(v)), best);
    current.pop_back();
    cand.reset(v);
  }
}

}  // namespace detail

inline VertexSet maximum_clique(const Graph& g) {
  VertexSet best, current;
  Bitset all(static_cast<std::size_t>(g.n()));
  all.set();
  detail::max_clique_search(g, current, all, best);
  std::sort(best.begin(), best.end());
  return best;
}

inline int omega(const Graph& g) { return static_cast<int>(maximum_clique(g).size()); }

// Bron–Kerbosch with pivoting; cliques sorted internally and listed lexicographically.
inline std::vector<VertexSet> maximal_cliques(const Graph& g) {
  std::vector<VertexSet> out;
  VertexSet r;
  std::function<void(Bitset, Bitset)> rec = [&](Bitset p, Bitset x) {
    if (p.none() && x.none()) {
      VertexSet c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    Bitset px = p | x;
    std::size_t pivot = px.find_first();
    std::size_t best = 0;
    for (auto u = px.find_first(); u != Bitset::npos; u = px.find_next(u)) {
      std::size_t c = (p & g.row(static_cast<int>(u))).count();
      if (c >= best) {
        best = c;
        pivot = u;
      }
    }
    Bitset todo = p - g.row(static_cast<int>(pivot));
    for (auto v = todo.find_first(); v != Bitset::npos; v = todo.find_next(v)) {
      const Bitset& nv = g.row(static_cast<int>(v));
      r.push_back(static_cast<int>(v));
      rec(p & nv, x & nv);
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  };
  if (g.n() == 0) return out;
  Bitset all(static_cast<std::size_t>(g.n()));
  all.set();
  rec(all, Bitset(static_cast<std::size_t>(g.n())));
  std::sort(out.begin(), out.end());
  return out;
}

// Partition into two cliques if the complement is bipartite (first found, side of vertex 0 first).
inline std::optional<std::pair<VertexSet, VertexSet>> cobipartite_split(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.n()), -1);
  for (int s = 0; s < g.n(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    VertexSet queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int v = queue[i];
      for (int w = 0; w < g.n(); ++w) {
        if (w == v || g.adjacent(v, w)) continue;
        if (side[w] < 0) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  std::pair<VertexSet, VertexSet> out;
  for (int v = 0; v < g.n(); ++v) (side[v] == 0 ? out.first : out.second).push_back(v);
  return out;
}

inline bool is_cobipartite(const Graph& g) { return cobipartite_split(g).has_value(); }

// ---------------------------------------------------------------- colors

using Color = int;
using ColorSet = std::vector<Color>;  // sorted, duplicate-free

namespace colors {

inline ColorSet normalized(ColorSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const ColorSet& s, Color c) { return std::binary_search(s.begin(), s.end(), c); }

inline ColorSet minus(const ColorSet& a, const ColorSet& b) {
  ColorSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ColorSet minus(const ColorSet& a, Color c) {
  ColorSet out;
  for (Color x : a)
    if (x != c) out.push_back(x);
  return out;
}

inline ColorSet intersect(const ColorSet& a, const ColorSet& b) {
  ColorSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ColorSet unite(const ColorSet& a, const ColorSet& b) {
  ColorSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset(const ColorSet& a, const ColorSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline bool meets(const ColorSet& a, const ColorSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

// Keep the k least colors.
inline ColorSet truncated(const ColorSet& a, std::size_t k) {
  return ColorSet(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(std::min(k, a.size())));
}

inline ColorSet range(Color lo, Color hi) {
  ColorSet out;
  for (Color c = lo; c <= hi; ++c) out.push_back(c);
  return out;
}

}  // namespace colors

class ListAssignment {
 public:
  ListAssignment() = default;
  explicit ListAssignment(int n) : lists_(static_cast<std::size_t>(n)) {}
  explicit ListAssignment(std::vector<ColorSet> lists) : lists_(std::move(lists)) {
    for (auto& l : lists_) l = colors::normalized(std::move(l));
  }

  static ListAssignment uniform(int n, const ColorSet& l) { return ListAssignment(std::vector<ColorSet>(n, l)); }

  int size() const { return static_cast<int>(lists_.size()); }
  const ColorSet& operator[](int v) const { return lists_[v]; }
  void set(int v, ColorSet l) { lists_[v] = colors::normalized(std::move(l)); }
  void push_back(ColorSet l) { lists_.push_back(colors::normalized(std::move(l))); }
  const std::vector<ColorSet>& lists() const { return lists_; }

  ColorSet union_over(const VertexSet& s) const {
    ColorSet out;
    for (int v : s) out = colors::unite(out, lists_[v]);
    return out;
  }

  std::size_t min_size() const {
    std::size_t m = lists_.empty() ? 0 : lists_[0].size();
    for (const auto& l : lists_) m = std::min(m, l.size());
    return m;
  }

  Color max_color() const {
    Color m = -1;
    for (const auto& l : lists_)
      if (!l.empty()) m = std::max(m, l.back());
    return m;
  }

  ListAssignment restricted(const VertexSet& vs) const {
    std::vector<ColorSet> out;
    out.reserve(vs.size());
    for (int v : vs) out.push_back(lists_[v]);
    return ListAssignment(std::move(out));
  }

  bool operator==(const ListAssignment&) const = default;

 private:
  std::vector<ColorSet> lists_;
};

inline constexpr Color kNoColor = -1;

struct Coloring {
  std::vector<Color> color;

  Coloring() = default;
  explicit Coloring(int n) : color(static_cast<std::size_t>(n), kNoColor) {}

  int size() const { return static_cast<int>(color.size()); }
  bool has(int v) const { return color[v] != kNoColor; }
  Color operator[](int v) const { return color[v]; }
  Color& operator[](int v) { return color[v]; }

  bool total() const {
    return std::none_of(color.begin(), color.end(), [](Color c) { return c == kNoColor; });
  }

  ColorSet colors_of(const VertexSet& s) const {
    ColorSet out;
    for (int v : s)
      if (has(v)) out.push_back(color[v]);
    return colors::normalized(std::move(out));
  }

  bool operator==(const Coloring&) const = default;
};

// Colors used by already-colored neighbors of v.
inline ColorSet neighbor_colors(const Graph& g, const Coloring& f, int v) {
  ColorSet out;
  const Bitset& r = g.row(v);
  for (auto w = r.find_first(); w != Bitset::npos; w = r.find_next(w))
    if (f.has(static_cast<int>(w))) out.push_back(f[static_cast<int>(w)]);
  return colors::normalized(std::move(out));
}

// Least color of L(v) not used on a colored neighbor, if any.
inline std::optional<Color> least_free_color(const Graph& g, const ListAssignment& l, const Coloring& f, int v) {
  ColorSet used = neighbor_colors(g, f, v);
  for (Color c : l[v])
    if (!colors::contains(used, c)) return c;
  return std::nullopt;
}

}  // namespace cfp
