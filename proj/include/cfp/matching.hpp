#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cfp/errors.hpp"
#include "cfp/graph.hpp"

namespace cfp {

namespace detail {

// Kuhn's augmenting-path matching. adj[i] lists right vertices of left vertex i.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int left, int right, std::vector<std::vector<int>> adj)
      : adj_(std::move(adj)), match_left_(left, -1), match_right_(right, -1) {}

  int run() {
    int size = 0;
    for (int u = 0; u < static_cast<int>(adj_.size()); ++u) {
      visited_.assign(match_right_.size(), 0);
      if (augment(u)) ++size;
    }
    return size;
  }

  const std::vector<int>& match_left() const { return match_left_; }
  const std::vector<int>& match_right() const { return match_right_; }

  // Left and right vertices reachable from unmatched left vertices by alternating paths.
  std::pair<std::vector<char>, std::vector<char>> alternating_reach() const {
    std::vector<char> zl(match_left_.size(), 0), zr(match_right_.size(), 0);
    std::vector<int> queue;
    for (int u = 0; u < static_cast<int>(match_left_.size()); ++u)
      if (match_left_[u] < 0) {
        zl[u] = 1;
        queue.push_back(u);
      }
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int r : adj_[queue[i]]) {
        if (zr[r]) continue;
        zr[r] = 1;
        int m = match_right_[r];
        if (m >= 0 && !zl[m]) {
          zl[m] = 1;
          queue.push_back(m);
        }
      }
    return {zl, zr};
  }

 private:
  bool augment(int u) {
    for (int r : adj_[u]) {
      if (visited_[r]) continue;
      visited_[r] = 1;
      if (match_right_[r] < 0 || augment(match_right_[r])) {
        match_left_[u] = r;
        match_right_[r] = u;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<int> match_left_, match_right_;
  std::vector<char> visited_;
};

}  // namespace detail

struct MatchingResult {
  std::vector<Edge> matching;  // (left vertex, right vertex)
  int mu = 0;
  int alpha = 0;
};

// Maximum matching between `left` and `right`; alpha is the size of a maximum stable set,
// obtained from a minimum vertex cover.
inline MatchingResult max_matching_bipartite(const Graph& g, const VertexSet& left, const VertexSet& right) {
  std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < left.size(); ++i) pos[left[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < right.size(); ++i) {
    detail::check_structure(pos[right[i]] < 0, "vertex " + std::to_string(right[i]) + " on both sides");
    pos[right[i]] = static_cast<int>(i);
  }
  Bitset on_left = to_bitset(left, g.n()), on_right = to_bitset(right, g.n());
  std::vector<std::vector<int>> adj(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    const Bitset& r = g.row(left[i]);
    detail::check_structure(!r.intersects(on_left), "edge inside the left side");
    for (auto w = r.find_first(); w != Bitset::npos; w = r.find_next(w)) {
      detail::check_structure(on_right.test(w), "edge leaves the bipartite host");
      adj[i].push_back(pos[w]);
    }
  }
  for (int v : right) detail::check_structure(!g.row(v).intersects(on_right), "edge inside the right side");

  detail::BipartiteMatcher m(static_cast<int>(left.size()), static_cast<int>(right.size()), std::move(adj));
  MatchingResult res;
  res.mu = m.run();
  for (std::size_t i = 0; i < left.size(); ++i)
    if (m.match_left()[i] >= 0) res.matching.emplace_back(left[i], right[m.match_left()[i]]);

  auto [zl, zr] = m.alternating_reach();
  int cover = 0;
  for (char z : zl) cover += z ? 0 : 1;
  for (char z : zr) cover += z ? 1 : 0;
  int n = static_cast<int>(left.size() + right.size());
  res.alpha = n - cover;
  detail::check_internal(res.mu == cover && res.mu + res.alpha == n, "matching/cover duality");
  return res;
}

struct SdrResult {
  std::optional<std::vector<Color>> representatives;
  VertexSet deficient;  // indices of sets whose union is smaller than their count

  explicit operator bool() const { return representatives.has_value(); }
};

namespace detail {

inline detail::BipartiteMatcher family_matcher(std::span<const ColorSet> families, std::vector<Color>& palette) {
  palette.clear();
  for (const auto& f : families) palette = colors::unite(palette, f);
  std::vector<std::vector<int>> adj(families.size());
  for (std::size_t i = 0; i < families.size(); ++i)
    for (Color c : families[i])
      adj[i].push_back(static_cast<int>(std::lower_bound(palette.begin(), palette.end(), c) - palette.begin()));
  return detail::BipartiteMatcher(static_cast<int>(families.size()), static_cast<int>(palette.size()), std::move(adj));
}

inline bool has_sdr(std::span<const ColorSet> families) {
  std::vector<Color> palette;
  auto m = family_matcher(families, palette);
  return m.run() == static_cast<int>(families.size());
}

}  // namespace detail

// Lexicographically least system of distinct representatives, or a Hall-deficient family.
inline SdrResult sdr(std::span<const ColorSet> families) {
  SdrResult res;
  std::vector<Color> palette;
  auto m = detail::family_matcher(families, palette);
  if (m.run() < static_cast<int>(families.size())) {
    auto [zl, zr] = m.alternating_reach();
    for (std::size_t i = 0; i < families.size(); ++i)
      if (zl[i]) res.deficient.push_back(static_cast<int>(i));
    return res;
  }
  std::vector<ColorSet> rest(families.begin(), families.end());
  std::vector<Color> reps;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    bool placed = false;
    for (Color c : rest[i]) {
      std::vector<ColorSet> tail;
      for (std::size_t j = i + 1; j < rest.size(); ++j) tail.push_back(colors::minus(rest[j], c));
      if (detail::has_sdr(tail)) {
        reps.push_back(c);
        for (std::size_t j = i + 1; j < rest.size(); ++j) rest[j] = std::move(tail[j - i - 1]);
        placed = true;
        break;
      }
    }
    detail::check_internal(placed, "SDR refinement lost the matching");
  }
  res.representatives = std::move(reps);
  return res;
}

inline SdrResult sdr(const std::vector<ColorSet>& families) { return sdr(std::span<const ColorSet>(families)); }

}  // namespace cfp
