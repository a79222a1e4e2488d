#pragma once

#include <algorithm>
#include <vector>

#include "cfp/errors.hpp"

namespace cfp {

enum class Side { left = 0, right = 1 };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

// Bipartite multigraph with stable vertex and edge ids; parallel edges have distinct ids.
class BipartiteMultigraph {
 public:
  struct EdgeEnds {
    int left;
    int right;
    bool operator==(const EdgeEnds&) const = default;
  };

  int add_vertex(Side s) {
    side_.push_back(s);
    incident_.emplace_back();
    return static_cast<int>(side_.size()) - 1;
  }

  int add_edge(int a, int b) {
    detail::check_contract(valid(a) && valid(b), "multigraph edge endpoint out of range");
    detail::check_contract(side_[a] != side_[b], "multigraph edge inside one side");
    if (side_[a] == Side::right) std::swap(a, b);
    edges_.push_back({a, b});
    int id = static_cast<int>(edges_.size()) - 1;
    incident_[a].push_back(id);
    incident_[b].push_back(id);
    return id;
  }

  int num_vertices() const { return static_cast<int>(side_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  Side side(int v) const { return side_[v]; }
  const EdgeEnds& edge(int e) const { return edges_[e]; }
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  int max_degree() const {
    int d = 0;
    for (const auto& inc : incident_) d = std::max(d, static_cast<int>(inc.size()));
    return d;
  }

  int end_on(int e, Side s) const { return s == Side::left ? edges_[e].left : edges_[e].right; }

  int other_end(int e, int v) const { return edges_[e].left == v ? edges_[e].right : edges_[e].left; }

  bool shares_endpoint(int e, int f) const {
    return edges_[e].left == edges_[f].left || edges_[e].right == edges_[f].right;
  }

  int count_side(Side s) const { return static_cast<int>(std::count(side_.begin(), side_.end(), s)); }

  bool operator==(const BipartiteMultigraph&) const = default;

 private:
  bool valid(int v) const { return v >= 0 && v < num_vertices(); }

  std::vector<Side> side_;
  std::vector<EdgeEnds> edges_;
  std::vector<std::vector<int>> incident_;
};

}  // namespace cfp
