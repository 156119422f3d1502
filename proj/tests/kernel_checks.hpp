#pragma once

// Randomized agreement checks between the geometric kernel and the oracles.
// Each returns the number of mismatching cases.

#include <cmath>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "entk/geometry.hpp"
#include "oracles.hpp"

namespace checks {

using entk::Point2;
using oracle::IPoint;

inline int orient_mismatches(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> grid(-5, 5);
  std::uniform_real_distribution<double> real(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> expo(-14, -4);
  int bad = 0;
  for (int k = 0; k < cases; ++k) {
    Point2 p, q, r;
    switch (k % 3) {
      case 0:  // small integer grid: many exact zeros
        p = {double(grid(rng)), double(grid(rng))};
        q = {double(grid(rng)), double(grid(rng))};
        r = {double(grid(rng)), double(grid(rng))};
        break;
      case 1:
        p = {real(rng), real(rng)};
        q = {real(rng), real(rng)};
        r = {real(rng), real(rng)};
        break;
      default: {  // nearly collinear
        p = {real(rng), real(rng)};
        q = {real(rng), real(rng)};
        const Point2 d = q - p;
        const Point2 nrm{-d.y, d.x};
        const double off = std::pow(10.0, expo(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
        r = entk::lerp(p, q, 3.0 * unit(rng) - 1.0) + (off / entk::norm(nrm)) * nrm;
      }
    }
    // Skip cases whose exact value sits on the tolerance threshold itself.
    const double ex = static_cast<double>(abs(oracle::exact_cross(p, q, r)));
    if (std::abs(ex - entk::kGeomTol) < 1e-12) continue;
    if (entk::orient(p, q, r) != oracle::orient(p, q, r)) ++bad;
  }
  return bad;
}

inline int intersection_mismatches(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> c(0, 6);
  int bad = 0;
  for (int k = 0; k < cases; ++k) {
    IPoint a{c(rng), c(rng)}, b{c(rng), c(rng)}, p{c(rng), c(rng)}, q{c(rng), c(rng)};
    if ((a.x == b.x && a.y == b.y) || (p.x == q.x && p.y == q.y)) {
      --k;
      continue;
    }
    const auto want = oracle::intersect(a, b, p, q);
    const auto got = entk::segment_intersection({a.d(), b.d()}, {p.d(), q.d()});
    switch (want.kind) {
      case oracle::Kind::None:
        if (!std::holds_alternative<entk::NoIntersection>(got)) ++bad;
        break;
      case oracle::Kind::Point: {
        const auto* h = std::get_if<entk::PointIntersection>(&got);
        if (!h || !entk::near(h->point, want.point)) ++bad;
        break;
      }
      case oracle::Kind::Overlap: {
        const auto* o = std::get_if<entk::OverlapIntersection>(&got);
        const bool same = o && ((entk::near(o->first, want.first) && entk::near(o->last, want.last)) ||
                                (entk::near(o->first, want.last) && entk::near(o->last, want.first)));
        if (!same) ++bad;
        break;
      }
    }
  }
  return bad;
}

inline int point_in_polygon_mismatches(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nv(3, 10);
  std::uniform_int_distribution<int> c(-9, 9);
  int bad = 0;
  std::vector<IPoint> poly;
  entk::Polygon P;
  for (int k = 0; k < cases; ++k) {
    if (k % 20 == 0) {
      poly = oracle::random_star(rng, 0, 0, 8, nv(rng));
      std::vector<Point2> v;
      for (const auto& p : poly) v.push_back(p.d());
      P = entk::Polygon{v};
    }
    const IPoint x{c(rng), c(rng)};
    const auto want = oracle::winding_locate(x, poly);
    const auto got = entk::point_in_polygon(x.d(), P);
    const bool ok = (want == oracle::Loc::Inside && got == entk::Location::Inside) ||
                    (want == oracle::Loc::Boundary && got == entk::Location::Boundary) ||
                    (want == oracle::Loc::Outside && got == entk::Location::Outside);
    if (!ok) ++bad;
  }
  return bad;
}

inline int convex_hull_mismatches(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_int_distribution<int> c(0, 5);
  int bad = 0;
  for (int k = 0; k < cases; ++k) {
    std::vector<IPoint> pts(static_cast<std::size_t>(count(rng)));
    for (auto& p : pts) p = {c(rng), c(rng)};
    std::vector<Point2> dp;
    for (const auto& p : pts) dp.push_back(p.d());
    const entk::Polygon h = entk::convex_hull(dp);
    const auto want = oracle::extreme_points(pts);
    bool ok = h.size() == want.size();
    for (const auto& w : want) {
      bool found = false;
      for (const auto& v : h.vertices) found = found || v == w.d();
      ok = ok && found;
    }
    if (ok && h.size() >= 3) ok = entk::signed_area(h) > 0.0;
    if (!ok) ++bad;
  }
  return bad;
}

}  // namespace checks
