#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfp/graph.hpp"

namespace cfp::oracle {

struct Budget {
  std::uint64_t node_limit = 50'000'000;
  std::uint64_t assignment_limit = 50'000'000;
};

enum class Status { yes, no, exhausted };

struct ColorResult {
  Status status = Status::no;
  std::optional<Coloring> coloring;
  std::uint64_t nodes = 0;
};

namespace detail {

struct Backtracker {
  const Graph& g;
  const std::vector<ColorSet>& lists;
  std::uint64_t limit;
  std::uint64_t nodes = 0;
  Coloring f;

  Backtracker(const Graph& graph, const std::vector<ColorSet>& l, std::uint64_t lim)
      : g(graph), lists(l), limit(lim), f(graph.n()) {}

  // 1 = found, 0 = exhausted subtree, -1 = budget hit
  int run(int remaining) {
    if (remaining == 0) return 1;
    if (++nodes > limit) return -1;
    int best = -1;
    std::size_t best_count = SIZE_MAX;
    ColorSet best_avail;
    for (int v = 0; v < g.n(); ++v) {
      if (f.has(v)) continue;
      ColorSet avail = colors::minus(lists[v], neighbor_colors(g, f, v));
      if (avail.size() < best_count) {
        best_count = avail.size();
        best = v;
        best_avail = std::move(avail);
        if (best_count == 0) return 0;
      }
    }
    for (Color c : best_avail) {
      f[best] = c;
      int r = run(remaining - 1);
      if (r != 0) return r;
    }
    f[best] = kNoColor;
    return 0;
  }
};

}  // namespace detail

// Exact list-coloring search, always choosing the vertex with fewest remaining colors.
inline ColorResult brute_l_color(const Graph& g, const ListAssignment& l, Budget budget = {}) {
  detail::Backtracker bt(g, l.lists(), budget.node_limit);
  int r = bt.run(g.n());
  ColorResult res;
  res.nodes = bt.nodes;
  if (r == 1) {
    res.status = Status::yes;
    res.coloring = bt.f;
  } else {
    res.status = r == 0 ? Status::no : Status::exhausted;
  }
  return res;
}

struct ChromaticResult {
  Status status = Status::yes;
  int chi = 0;
};

inline ChromaticResult chromatic_number(const Graph& g, Budget budget = {}) {
  if (g.n() == 0) return {Status::yes, 0};
  for (int k = std::max(1, omega(g)); k <= g.n(); ++k) {
    auto r = brute_l_color(g, ListAssignment::uniform(g.n(), colors::range(1, k)), budget);
    if (r.status == Status::exhausted) return {Status::exhausted, 0};
    if (r.status == Status::yes) return {Status::yes, k};
  }
  return {Status::yes, g.n()};
}

struct PerfectResult {
  Status status = Status::yes;
  VertexSet imperfect_subgraph;  // an induced subgraph with chi > omega when status == no
};

// Checks chi = omega on every connected induced subgraph; n <= 12.
inline PerfectResult is_perfect_small(const Graph& g, Budget budget = {}) {
  const int n = g.n();
  if (n > 12) return {Status::exhausted, {}};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    VertexSet vs;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) vs.push_back(v);
    Graph h = induced_subgraph(g, vs);
    if (!is_connected(h)) continue;
    auto chi = chromatic_number(h, budget);
    if (chi.status == Status::exhausted) return {Status::exhausted, {}};
    if (chi.chi != omega(h)) return {Status::no, vs};
  }
  return {Status::yes, {}};
}

struct ChoosableResult {
  Status status = Status::yes;
  std::optional<ListAssignment> counterexample;
  std::uint64_t assignments = 0;
};

// Every assignment of k-subsets of {1..U}, up to renaming colors: a new color may only be
// introduced as the least color not seen on earlier vertices.
inline ChoosableResult check_choosable(const Graph& g, int k, int universe, Budget budget = {}) {
  cfp::detail::check_contract(g.n() <= 9 && universe <= 6 && k >= 1 && k <= universe,
                         "choosability enumeration guard: n <= 9, U <= 6, 1 <= k <= U");
  std::vector<ColorSet> subsets;
  for (std::uint32_t m = 0; m < (1u << universe); ++m)
    if (__builtin_popcount(m) == k) {
      ColorSet s;
      for (int c = 0; c < universe; ++c)
        if (m >> c & 1u) s.push_back(c + 1);
      subsets.push_back(s);
    }
  ChoosableResult res;
  std::vector<ColorSet> current(static_cast<std::size_t>(g.n()));
  bool stop = false;
  auto rec = [&](auto& self, int v, int seen) -> void {
    if (stop) return;
    if (v == g.n()) {
      if (++res.assignments > budget.assignment_limit) {
        res.status = Status::exhausted;
        stop = true;
        return;
      }
      auto r = brute_l_color(g, ListAssignment(current), budget);
      if (r.status == Status::exhausted) {
        res.status = Status::exhausted;
        stop = true;
      } else if (r.status == Status::no) {
        res.status = Status::no;
        res.counterexample = ListAssignment(current);
        stop = true;
      }
      return;
    }
    for (const auto& s : subsets) {
      // canonical: colors above `seen` must be exactly seen+1, seen+2, ...
      int expect = seen + 1;
      bool ok = true;
      for (Color c : s)
        if (c > seen) {
          if (c != expect) {
            ok = false;
            break;
          }
          ++expect;
        }
      if (!ok) continue;
      current[v] = s;
      self(self, v + 1, std::max(seen, s.back()));
      if (stop) return;
    }
  };
  rec(rec, 0, 0);
  return res;
}

struct Validation {
  enum class Kind { ok, size_mismatch, uncolored, off_list, monochromatic_edge };
  Kind kind = Kind::ok;
  int vertex = -1;
  Edge edge{-1, -1};

  bool ok() const { return kind == Kind::ok; }
  explicit operator bool() const { return ok(); }

  std::string describe() const {
    switch (kind) {
      case Kind::ok: return "ok";
      case Kind::size_mismatch: return "coloring size does not match graph";
      case Kind::uncolored: return "vertex " + std::to_string(vertex) + " uncolored";
      case Kind::off_list: return "vertex " + std::to_string(vertex) + " colored off its list";
      case Kind::monochromatic_edge:
        return "edge " + std::to_string(edge.first) + "-" + std::to_string(edge.second) + " monochromatic";
    }
    return "?";
  }
};

inline Validation validate_coloring(const Graph& g, const ListAssignment& l, const Coloring& f) {
  Validation v;
  if (f.size() != g.n() || l.size() != g.n()) {
    v.kind = Validation::Kind::size_mismatch;
    return v;
  }
  for (int x = 0; x < g.n(); ++x) {
    if (!f.has(x)) return {Validation::Kind::uncolored, x, {}};
    if (!colors::contains(l[x], f[x])) return {Validation::Kind::off_list, x, {}};
  }
  for (auto [a, b] : g.edges())
    if (f[a] == f[b]) return {Validation::Kind::monochromatic_edge, -1, {a, b}};
  return v;
}

}  // namespace cfp::oracle
