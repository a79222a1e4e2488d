#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cfp/decompose.hpp"
#include "cfp/graph.hpp"
#include "cfp/matching.hpp"
#include "cfp/multigraph.hpp"
#include "cfp/structure.hpp"

namespace cfp::gen {

class Exhausted : public Error {
 public:
  using Error::Error;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), eng_);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline BipartiteMultigraph gen_bipartite_multigraph(std::uint64_t seed, int left, int right, int edges, int dmax = 4) {
  cfp::detail::check_contract(left >= 1 && right >= 1 && dmax >= 1 && edges >= 0, "bad multigraph parameters");
  cfp::detail::check_contract(edges <= dmax * std::min(left, right), "too many edges for the degree bound");
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BipartiteMultigraph b;
    for (int i = 0; i < left; ++i) b.add_vertex(Side::left);
    for (int j = 0; j < right; ++j) b.add_vertex(Side::right);
    int placed = 0;
    for (int tries = 0; placed < edges && tries < 50 * (edges + 1); ++tries) {
      int u = rng.uniform(0, left - 1), v = left + rng.uniform(0, right - 1);
      if (b.degree(u) >= dmax || b.degree(v) >= dmax) continue;
      b.add_edge(u, v);
      ++placed;
    }
    if (placed == edges) return b;
  }
  throw Exhausted("could not place all multigraph edges under the degree bound");
}

inline Graph line_graph_of(const BipartiteMultigraph& b) {
  Graph g(b.num_edges());
  for (int v = 0; v < b.num_vertices(); ++v) {
    const auto& inc = b.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        if (!g.adjacent(inc[i], inc[j])) g.add_edge(inc[i], inc[j]);
  }
  return g;
}

struct ElementaryParams {
  int augments = 1;
  int min_side = 2;
  int max_side = 4;
  int root_edges = 10;  // approximate size of the root before augmenting
  int max_vertices = 30;
  bool cobipartite = false;  // a single augment on a two-edge root
  bool require_atom = true;
  bool require_omega4 = true;
  int retries = 10000;
};

struct ElementaryInstance {
  Graph g;
  ElementaryStructure structure;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::optional<std::vector<Edge>> random_cross_edges(Rng& rng, const VertexSet& x, const VertexSet& y) {
  const int p = static_cast<int>(x.size()), r = static_cast<int>(y.size());
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<Edge> e;
    double density = 0.35 + 0.5 * rng.uniform(0, 100) / 100.0;
    for (int u : x)
      for (int v : y)
        if (rng.coin(density)) e.emplace_back(u, v);
    if (static_cast<int>(e.size()) == p * r || e.empty()) continue;
    // connected X-Y graph
    VertexSet all = cfp::detail::set_union(x, y);
    Graph h(static_cast<int>(all.size()));
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(all.begin(), all.end(), v) - all.begin()); };
    for (auto [u, v] : e) h.add_edge(idx(u), idx(v));
    if (!is_connected(h)) continue;
    // clique number of X u Y at most 4
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) h.add_edge(idx(x[i]), idx(x[j]));
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) h.add_edge(idx(y[i]), idx(y[j]));
    if (omega(h) > 4) continue;
    return e;
  }
  return std::nullopt;
}

// A 2-connected bipartite multigraph: an even cycle with random ears.
inline BipartiteMultigraph random_ear_root(Rng& rng, int target_edges) {
  BipartiteMultigraph b;
  int k = rng.uniform(2, 4);
  for (int i = 0; i < 2 * k; ++i) b.add_vertex(i % 2 ? Side::right : Side::left);
  for (int i = 0; i < 2 * k; ++i) b.add_edge(i, (i + 1) % (2 * k));
  for (int tries = 0; b.num_edges() < target_edges && tries < 200; ++tries) {
    int a = rng.uniform(0, b.num_vertices() - 1), c = rng.uniform(0, b.num_vertices() - 1);
    if (a == c || b.degree(a) >= 4 || b.degree(c) >= 4) continue;
    bool same = b.side(a) == b.side(c);
    int len = same ? 2 * rng.uniform(1, 2) : 2 * rng.uniform(0, 1) + 1;
    int prev = a;
    for (int s = 1; s < len; ++s) {
      int nv = b.add_vertex(opposite(b.side(prev)));
      b.add_edge(prev, nv);
      prev = nv;
    }
    b.add_edge(prev, c);
  }
  return b;
}

}  // namespace detail

// Random elementary graph with its structure; vertex ids are shuffled.
inline ElementaryInstance gen_elementary(std::uint64_t seed, const ElementaryParams& prm) {
  Rng rng(seed);
  for (int attempt = 0; attempt < prm.retries; ++attempt) {
    BipartiteMultigraph root;
    if (prm.cobipartite) {
      int qx = root.add_vertex(Side::left), q = root.add_vertex(Side::right), qy = root.add_vertex(Side::left);
      root.add_edge(qx, q);
      root.add_edge(q, qy);
    } else {
      root = detail::random_ear_root(rng, prm.root_edges);
    }
    const int m = root.num_edges();
    // candidate flat edges: two edges at a degree-2 vertex with distinct other ends
    std::vector<std::array<int, 3>> flats;  // center, e1, e2
    for (int v = 0; v < root.num_vertices(); ++v) {
      if (root.degree(v) != 2) continue;
      int e1 = root.incident(v)[0], e2 = root.incident(v)[1];
      if (root.other_end(e1, v) == root.other_end(e2, v)) continue;
      flats.push_back({v, e1, e2});
    }
    rng.shuffle(flats);
    std::vector<int> used(static_cast<std::size_t>(m), 0);
    std::vector<std::array<int, 3>> chosen;
    for (const auto& fl : flats) {
      if (static_cast<int>(chosen.size()) == prm.augments) break;
      if (used[fl[1]] || used[fl[2]]) continue;
      used[fl[1]] = used[fl[2]] = 1;
      chosen.push_back(fl);
    }
    if (static_cast<int>(chosen.size()) < prm.augments) continue;

    // bag sizes: 1 on plain edges, augment sides drawn under weighted degree <= 4
    std::vector<int> size(static_cast<std::size_t>(m), 1);
    auto weight = [&](int v) {
      int w = 0;
      for (int e : root.incident(v)) w += size[e];
      return w;
    };
    bool ok = true;
    for (const auto& fl : chosen) {
      for (int e : {fl[1], fl[2]}) {
        int far = root.other_end(e, fl[0]);
        int room = 4 - (weight(far) - size[e]);
        int hi = std::min(prm.max_side, room);
        if (hi < prm.min_side) {
          ok = false;
          break;
        }
        size[e] = rng.uniform(prm.min_side, hi);
      }
      if (!ok) break;
    }
    if (!ok) continue;
    for (int v = 0; v < root.num_vertices(); ++v) {
      bool center = std::any_of(chosen.begin(), chosen.end(), [&](const auto& fl) { return fl[0] == v; });
      if (!center && weight(v) > 4) ok = false;
    }
    if (!ok) continue;

    int total = 0;
    for (int e = 0; e < m; ++e) total += size[e];
    if (total > prm.max_vertices) continue;
    std::vector<int> perm(static_cast<std::size_t>(total));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    int next = 0;
    ElementaryStructure s;
    s.root = root;
    s.edge_to_vertex.assign(static_cast<std::size_t>(m), -1);
    std::vector<char> augmented(static_cast<std::size_t>(m), 0);
    for (const auto& fl : chosen) augmented[fl[1]] = augmented[fl[2]] = 1;
    for (int e = 0; e < m; ++e)
      if (!augmented[e]) s.edge_to_vertex[e] = perm[next++];
    for (const auto& fl : chosen) {
      Augment a;
      a.edge_x = fl[1];
      a.edge_y = fl[2];
      for (int i = 0; i < size[fl[1]]; ++i) a.x.push_back(perm[next++]);
      for (int i = 0; i < size[fl[2]]; ++i) a.y.push_back(perm[next++]);
      std::sort(a.x.begin(), a.x.end());
      std::sort(a.y.begin(), a.y.end());
      auto cross = detail::random_cross_edges(rng, a.x, a.y);
      if (!cross) {
        ok = false;
        break;
      }
      a.xy_edges = *cross;
      s.augments.push_back(a);
    }
    if (!ok) continue;
    Graph g = replay(s);
    if (omega(g) > 4 || (prm.require_omega4 && omega(g) != 4)) continue;
    if (prm.require_atom && !is_atom(g)) continue;
    cfp::detail::check_internal(verify_structure(g, s), "generated structure does not replay");
    return {g, s, seed};
  }
  throw Exhausted("elementary generator retry budget exhausted");
}

inline Graph gen_peculiar() { return peculiar_graph(); }

struct GlueOptions {
  int max_clique = 3;
  int retries = 10000;
};

struct GlueResult {
  Graph g;
  std::vector<VertexSet> parts;  // vertex sets of the parts in the glued graph
};

namespace detail {

inline std::vector<VertexSet> small_cliques(const Graph& g, int max_size) {
  std::vector<VertexSet> out;
  for (const auto& m : maximal_cliques(g)) {
    const int k = static_cast<int>(m.size());
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      VertexSet c;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1u) c.push_back(m[i]);
      if (static_cast<int>(c.size()) <= max_size) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Cliques K of a part that can serve as a glue: some vertex lies outside K and every member
// of K sees a clique outside K, which a claw-free gluing needs on each side.
inline std::vector<VertexSet> glue_cliques(const Graph& g, int max_size) {
  std::vector<VertexSet> out;
  for (auto& k : small_cliques(g, max_size)) {
    if (static_cast<int>(k.size()) == g.n()) continue;
    bool ok = std::all_of(k.begin(), k.end(), [&](int x) {
      VertexSet rest;
      for (int w : g.neighbors(x))
        if (!std::binary_search(k.begin(), k.end(), w)) rest.push_back(w);
      return is_clique(g, rest);
    });
    if (ok) out.push_back(std::move(k));
  }
  return out;
}

}  // namespace detail

namespace detail {

// Glues `part` onto res.g along equal-size glue cliques; false when every try made a claw or
// a clique of size 5.
inline bool glue_step(Rng& rng, GlueResult& res, const Graph& part, const GlueOptions& opt) {
  auto mine = glue_cliques(res.g, opt.max_clique);
  auto theirs = glue_cliques(part, opt.max_clique);
  if (mine.empty() || theirs.empty()) return false;
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    const VertexSet& k1 = rng.pick(mine);
    const VertexSet& k2 = rng.pick(theirs);
    if (k1.size() != k2.size()) continue;
    VertexSet k1p = k1;
    rng.shuffle(k1p);
    std::vector<int> map(static_cast<std::size_t>(part.n()), -1);
    for (std::size_t i = 0; i < k2.size(); ++i) map[k2[i]] = k1p[i];
    int n = res.g.n();
    for (int v = 0; v < part.n(); ++v)
      if (map[v] < 0) map[v] = n++;
    Graph g(n);
    for (auto [a, b] : res.g.edges()) g.add_edge(a, b);
    for (auto [a, b] : part.edges())
      if (!g.adjacent(map[a], map[b])) g.add_edge(map[a], map[b]);
    if (find_claw(g) || omega(g) > 4) continue;
    res.g = std::move(g);
    VertexSet pv(map.begin(), map.end());
    std::sort(pv.begin(), pv.end());
    res.parts.push_back(std::move(pv));
    return true;
  }
  return false;
}

}  // namespace detail

// Glues the parts one at a time along random cliques, rejecting gluings that create a claw
// or a clique of size 5.
inline GlueResult glue(std::uint64_t seed, const std::vector<Graph>& parts, GlueOptions opt = {}) {
  cfp::detail::check_contract(!parts.empty(), "nothing to glue");
  Rng rng(seed);
  GlueResult res;
  res.g = parts[0];
  VertexSet first(static_cast<std::size_t>(parts[0].n()));
  std::iota(first.begin(), first.end(), 0);
  res.parts.push_back(first);
  for (std::size_t pi = 1; pi < parts.size(); ++pi)
    if (!detail::glue_step(rng, res, parts[pi], opt)) throw Exhausted("glue retry budget exhausted");
  return res;
}

struct GluedParams {
  int max_vertices = 40;
  int max_parts = 8;
  double cobipartite_share = 0.35;
  double clique_share = 0.15;
};

// Claw-free perfect instance glued from elementary and cobipartite atoms and small cliques,
// grown part by part toward a random size in [max_vertices / 2, max_vertices].
inline GlueResult gen_glued(std::uint64_t seed, const GluedParams& prm = {}) {
  cfp::detail::check_contract(prm.max_vertices >= 4 && prm.max_parts >= 1, "bad glue parameters");
  Rng rng(seed);
  auto draw_part = [&](int room) -> std::optional<Graph> {
    double roll = rng.uniform(0, 999) / 1000.0;
    if (roll < prm.clique_share) return complete_graph(rng.uniform(2, 4));
    ElementaryParams ep;
    ep.require_omega4 = false;
    if (roll < prm.clique_share + prm.cobipartite_share) {
      ep.cobipartite = true;
    } else {
      ep.augments = rng.uniform(0, 2);
      ep.root_edges = rng.uniform(5, 10);
    }
    ep.max_vertices = std::min(room, 16);
    ep.retries = 200;
    try {
      return gen_elementary(rng.engine()(), ep).g;
    } catch (const Exhausted&) {
      return std::nullopt;
    }
  };
  const GlueOptions opt{4, 200};
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int target = rng.uniform(std::max(4, prm.max_vertices / 2), prm.max_vertices);
    auto first = draw_part(target);
    if (!first) continue;
    GlueResult res;
    res.g = *first;
    VertexSet all(static_cast<std::size_t>(first->n()));
    std::iota(all.begin(), all.end(), 0);
    res.parts.push_back(all);
    int misses = 0;
    while (static_cast<int>(res.parts.size()) < prm.max_parts && res.g.n() < target && misses < 20) {
      auto part = draw_part(target - res.g.n() + 4);
      if (!part) {
        ++misses;
        continue;
      }
      GlueResult next = res;
      if (!detail::glue_step(rng, next, *part, opt) || next.g.n() > prm.max_vertices) {
        ++misses;
        continue;
      }
      res = std::move(next);
    }
    if (res.parts.size() >= 2) return res;
  }
  throw Exhausted("glued instance retry budget exhausted");
}

// ---------------------------------------------------------------- list families

inline ListAssignment uniform_lists(Rng& rng, int n, int k, int universe) {
  cfp::detail::check_contract(k <= universe, "list size above universe");
  std::vector<ColorSet> out;
  std::vector<Color> pool(static_cast<std::size_t>(universe));
  std::iota(pool.begin(), pool.end(), 1);
  for (int v = 0; v < n; ++v) {
    rng.shuffle(pool);
    out.emplace_back(pool.begin(), pool.begin() + k);
  }
  return ListAssignment(out);
}

// Every vertex gets {1..k}; drives the equal-list failure shapes.
inline ListAssignment equal_lists(int n, int k) { return ListAssignment::uniform(n, colors::range(1, k)); }

// Lists {s, ..., s + k - 1} with shifts in [0, spread]; overlapping but unequal neighbors.
inline ListAssignment shifted_lists(Rng& rng, int n, int k, int spread) {
  std::vector<ColorSet> out;
  for (int v = 0; v < n; ++v) {
    int s = 1 + rng.uniform(0, spread);
    out.push_back(colors::range(s, s + k - 1));
  }
  return ListAssignment(out);
}

}  // namespace cfp::gen
