#pragma once

// Visibility graph over convex obstacle vertices; globally shortest paths and
// shortest paths inside a prescribed homotopy class.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/geometry.hpp"
#include "entk/homotopy.hpp"
#include "entk/word.hpp"

namespace entk {

class VisibilityGraph {
 public:
  VisibilityGraph(const EffectiveEnvironment& env, const RepresentativeCurves& curves)
      : obstacles_(env.obstacles), curves_(&curves) {
    for (const auto& o : obstacles_) {
      const std::size_t n = o.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = o.vertices[(i + n - 1) % n];
        const Point2 cur = o.vertices[i];
        const Point2 next = o.vertices[(i + 1) % n];
        if (orient(prev, cur, next) > 0 && !strictly_inside_any(cur, obstacles_) && env.bounds.contains(cur))
          nodes_.push_back(cur);
      }
    }
    adj_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
        if (!segment_clear({nodes_[i], nodes_[j]}, obstacles_)) continue;
        const double w = distance(nodes_[i], nodes_[j]);
        Word fw = segment_word(nodes_[i], nodes_[j], curves);
        Word bw = inverse(fw);
        adj_[i].push_back({static_cast<int>(j), w, std::move(fw)});
        adj_[j].push_back({static_cast<int>(i), w, std::move(bw)});
      }
    }
  }

  const std::vector<Point2>& nodes() const { return nodes_; }
  const std::vector<Polygon>& obstacles() const { return obstacles_; }
  const RepresentativeCurves& curves() const { return *curves_; }

  /// Globally shortest obstacle-avoiding path; x1 = x2 gives the constant path.
  Polyline shortest_path(Point2 x1, Point2 x2) const { return search(x1, x2, nullptr); }

  /// Shortest path from x1 to x2 whose homotopy word equals `target`.
  Polyline taut(Point2 x1, Point2 x2, const Word& target) const { return search(x1, x2, &target); }

 private:
  struct Edge {
    int to = 0;
    double w = 0.0;
    Word letters;
  };

  static bool matches(const Word& target, std::size_t k, const Word& letters) {
    if (k + letters.size() > target.size()) return false;
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (!(target[k + i] == letters[i])) return false;
    return true;
  }

  Polyline search(Point2 x1, Point2 x2, const Word* target) const {
    if (strictly_inside_any(x1, obstacles_) || strictly_inside_any(x2, obstacles_))
      throw Error("point-in-obstacle", "path endpoint lies inside an obstacle");
    const std::size_t L = target ? target->size() : 0;
    if (x1 == x2 && L == 0) return Polyline::constant(x1);

    const std::size_t n = nodes_.size();
    const std::size_t src = n;
    const std::size_t dst = n + 1;
    auto pos = [&](std::size_t v) { return v == src ? x1 : v == dst ? x2 : nodes_[v]; };

    // Edges touching the query points.
    std::vector<std::vector<Edge>> extra(n + 2);
    auto link = [&](std::size_t a, std::size_t b) {
      if (!segment_clear({pos(a), pos(b)}, obstacles_)) return;
      Word fw = target ? segment_word(pos(a), pos(b), *curves_) : Word{};
      extra[a].push_back({static_cast<int>(b), distance(pos(a), pos(b)), fw});
      if (b != dst) extra[b].push_back({static_cast<int>(a), distance(pos(a), pos(b)), inverse(fw)});
    };
    for (std::size_t v = 0; v < n; ++v) {
      link(src, v);
      link(v, dst);
    }
    link(src, dst);

    const std::size_t layers = L + 1;
    const std::size_t states = (n + 2) * layers;
    std::vector<double> dist(states, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(states, states);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    const std::size_t start = src * layers;
    const std::size_t goal = dst * layers + L;
    dist[start] = 0.0;
    pq.push({0.0, start});
    while (!pq.empty()) {
      const auto [d, s] = pq.top();
      pq.pop();
      if (d > dist[s]) continue;
      if (s == goal) break;
      const std::size_t v = s / layers;
      const std::size_t k = s % layers;
      if (v == dst) continue;
      auto relax = [&](const Edge& e) {
        std::size_t nk = k;
        if (target) {
          if (!matches(*target, k, e.letters)) return;
          nk = k + e.letters.size();
        }
        const std::size_t t = static_cast<std::size_t>(e.to) * layers + nk;
        const double nd = d + e.w;
        if (nd < dist[t]) {
          dist[t] = nd;
          parent[t] = s;
          pq.push({nd, t});
        }
      };
      if (v < n)
        for (const auto& e : adj_[v]) relax(e);
      for (const auto& e : extra[v]) relax(e);
    }
    if (!(dist[goal] < std::numeric_limits<double>::infinity()))
      throw Error("class-search-overflow", "no visibility path realises the requested homotopy class");
    std::vector<Point2> pts;
    for (std::size_t s = goal; s != states; s = parent[s]) pts.push_back(pos(s / layers));
    std::reverse(pts.begin(), pts.end());
    return Polyline::from_points(std::move(pts));
  }

  std::vector<Polygon> obstacles_;
  const RepresentativeCurves* curves_;
  std::vector<Point2> nodes_;
  std::vector<std::vector<Edge>> adj_;
};

inline Polyline shortest_path(Point2 x1, Point2 x2, const VisibilityGraph& g) { return g.shortest_path(x1, x2); }

/// Shortest path in the path-homotopy class of γ.
inline Polyline taut_representative(const Polyline& path, const VisibilityGraph& g) {
  return g.taut(path.front(), path.back(), homotopy_word(path, g.curves()));
}

}  // namespace entk
