#pragma once

// Upper bound on the homotopic Fréchet distance between two paths.
//
// Both paths are sampled at n uniform arc-length steps plus their own
// vertices, so every grid step moves each leash end along a straight piece.
// The leash at grid state (i, j) runs back along γ1 to its start, across the
// initial leash, and forward along γ2; its length is the taut length in that
// class. In the universal cover of the free space (a CAT(0) space) the
// distance between two points moving along geodesics is convex, so one grid
// step never needs a leash longer than the longer of its two end leashes. The
// bound is then the bottleneck value of the best monotone grid path.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "entk/error.hpp"
#include "entk/geometry.hpp"
#include "entk/homotopy.hpp"
#include "entk/visibility.hpp"
#include "entk/word.hpp"

namespace entk {

inline constexpr int kFrechetGrid = 64;

namespace detail {

inline std::vector<double> frechet_params(const Polyline& p, int n) {
  std::vector<double> us;
  for (int i = 0; i <= n; ++i) us.push_back(static_cast<double>(i) / n);
  if (p.length() > 0.0)
    for (double c : p.cumulative()) us.push_back(c / p.length());
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

}  // namespace detail

/// Length of the shortest path from a to b in the class with homotopy word w.
inline double taut_length(Point2 a, Point2 b, const Word& w, const VisibilityGraph& g) {
  if (segment_clear({a, b}, g.obstacles()) && segment_word(a, b, g.curves()) == w) return distance(a, b);
  return g.taut(a, b, w).length();
}

inline double homotopic_frechet_upper(const Polyline& g1, const Polyline& g2, const VisibilityGraph& g,
                                      int n = kFrechetGrid) {
  if (n < 1) throw Error("bad-grid", "Fréchet grid needs n >= 1");
  const auto& curves = g.curves();
  const auto u1 = detail::frechet_params(g1, n);
  const auto u2 = detail::frechet_params(g2, n);
  const auto p1 = prefix_words(g1, u1, curves, false);
  const auto p2 = prefix_words(g2, u2, curves, false);
  const Word w0 = near(g1.front(), g2.front()) ? Word{}
                                                : homotopy_word(g.shortest_path(g1.front(), g2.front()), curves);
  std::vector<Point2> a(u1.size());
  std::vector<Point2> b(u2.size());
  for (std::size_t i = 0; i < u1.size(); ++i) a[i] = g1.at(u1[i]);
  for (std::size_t j = 0; j < u2.size(); ++j) b[j] = g2.at(u2[j]);

  const std::size_t m = u2.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m, inf);
  std::vector<double> cur(m, inf);
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const Word back = reduced_concat(inverse(p1[i]), w0);
    for (std::size_t j = 0; j < m; ++j) {
      const double cost = taut_length(a[i], b[j], reduced_concat(back, p2[j]), g);
      double best = inf;
      if (i == 0 && j == 0) best = 0.0;
      if (i > 0) best = std::min(best, prev[j]);
      if (j > 0) best = std::min(best, cur[j - 1]);
      if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      cur[j] = std::max(best, cost);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

}  // namespace entk
