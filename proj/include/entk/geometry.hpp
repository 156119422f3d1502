#pragma once

// 2D primitives and predicates shared by every other module.
//
// All degeneracy decisions use the absolute tolerance kGeomTol. Obstacles are
// treated with interior-only semantics: touching a boundary is never a collision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <variant>
#include <vector>

#include "entk/error.hpp"

namespace entk {

inline constexpr double kGeomTol = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline Point2 lerp(Point2 a, Point2 b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline bool near(Point2 a, Point2 b, double tol = kGeomTol) { return distance(a, b) <= tol; }

struct Box {
  Point2 min;
  Point2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double diagonal() const { return std::hypot(width(), height()); }
  bool contains(Point2 p, double margin = 0.0) const {
    return p.x >= min.x - margin && p.x <= max.x + margin && p.y >= min.y - margin && p.y <= max.y + margin;
  }
  bool overlaps(const Box& o, double margin = 0.0) const {
    return min.x <= o.max.x + margin && o.min.x <= max.x + margin && min.y <= o.max.y + margin &&
           o.min.y <= max.y + margin;
  }

  friend bool operator==(const Box&, const Box&) = default;
};

inline Box bounding_box(std::span<const Point2> pts) {
  Box b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
        {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
  for (const auto& p : pts) {
    b.min.x = std::min(b.min.x, p.x);
    b.min.y = std::min(b.min.y, p.y);
    b.max.x = std::max(b.max.x, p.x);
    b.max.y = std::max(b.max.y, p.y);
  }
  return b;
}

struct Segment {
  Point2 a;
  Point2 b;

  bool degenerate() const { return near(a, b); }
  double length() const { return distance(a, b); }
  Point2 at(double t) const { return lerp(a, b, t); }
};

inline double distance_to_segment(Point2 p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
  return distance(p, s.at(t));
}

/// Sign of (q - p) x (r - p); 0 when the magnitude is below kGeomTol.
inline int orient(Point2 p, Point2 q, Point2 r) {
  const double c = cross(q - p, r - p);
  if (std::abs(c) < kGeomTol) return 0;
  return c > 0.0 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Polygon

/// Simple polygon, counter-clockwise, no repeated closing vertex. Hulls may be
/// degenerate (fewer than three vertices); everything else goes through
/// make_polygon which enforces the invariants.
struct Polygon {
  std::vector<Point2> vertices;

  std::size_t size() const { return vertices.size(); }
  bool degenerate() const { return vertices.size() < 3; }
  Segment edge(std::size_t i) const { return {vertices[i], vertices[(i + 1) % vertices.size()]}; }
  Box bounds() const { return bounding_box(vertices); }

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

inline double signed_area(std::span<const Point2> pts) {
  double a = 0.0;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i) a += cross(pts[i], pts[(i + 1) % n]);
  return 0.5 * a;
}

inline double signed_area(const Polygon& p) { return signed_area(p.vertices); }

// ---------------------------------------------------------------------------
// Segment intersection

struct NoIntersection {};

struct PointIntersection {
  Point2 point;
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Collinear overlap; t1_* and t2_* are the interval ends on each segment.
struct OverlapIntersection {
  Point2 first;
  Point2 last;
  double t1_first = 0.0;
  double t1_last = 0.0;
  double t2_first = 0.0;
  double t2_last = 0.0;
};

using Intersection = std::variant<NoIntersection, PointIntersection, OverlapIntersection>;

namespace detail {

inline double project_param(Point2 p, const Segment& s) {
  const Point2 d = s.b - s.a;
  const double len2 = dot(d, d);
  return len2 == 0.0 ? 0.0 : dot(p - s.a, d) / len2;
}

inline std::variant<NoIntersection, PointIntersection> point_on_segment(Point2 p, const Segment& s, bool p_first) {
  if (distance_to_segment(p, s) > kGeomTol) return NoIntersection{};
  const double t = std::clamp(project_param(p, s), 0.0, 1.0);
  return p_first ? PointIntersection{p, 0.0, t} : PointIntersection{p, t, 0.0};
}

}  // namespace detail

inline Intersection segment_intersection(const Segment& s1, const Segment& s2) {
  const bool deg1 = s1.degenerate();
  const bool deg2 = s2.degenerate();
  if (deg1 && deg2) {
    if (near(s1.a, s2.a)) return PointIntersection{s1.a, 0.0, 0.0};
    return NoIntersection{};
  }
  if (deg1) {
    auto r = detail::point_on_segment(s1.a, s2, true);
    if (auto* p = std::get_if<PointIntersection>(&r)) return *p;
    return NoIntersection{};
  }
  if (deg2) {
    auto r = detail::point_on_segment(s2.a, s1, false);
    if (auto* p = std::get_if<PointIntersection>(&r)) return *p;
    return NoIntersection{};
  }

  const int o1 = orient(s1.a, s1.b, s2.a);
  const int o2 = orient(s1.a, s1.b, s2.b);
  const int o3 = orient(s2.a, s2.b, s1.a);
  const int o4 = orient(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0) {
    // Collinear: intersect parameter intervals along s1.
    double u0 = detail::project_param(s2.a, s1);
    double u1 = detail::project_param(s2.b, s1);
    const bool flipped = u0 > u1;
    if (flipped) std::swap(u0, u1);
    const double lo = std::max(0.0, u0);
    const double hi = std::min(1.0, u1);
    const double len1 = s1.length();
    if ((lo - hi) * len1 > kGeomTol) return NoIntersection{};
    if ((hi - lo) * len1 <= kGeomTol) {
      const double t = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
      const Point2 p = s1.at(t);
      return PointIntersection{p, t, std::clamp(detail::project_param(p, s2), 0.0, 1.0)};
    }
    const Point2 pa = s1.at(lo);
    const Point2 pb = s1.at(hi);
    return OverlapIntersection{pa,
                               pb,
                               lo,
                               hi,
                               std::clamp(detail::project_param(pa, s2), 0.0, 1.0),
                               std::clamp(detail::project_param(pb, s2), 0.0, 1.0)};
  }

  if (o1 * o2 > 0 || o3 * o4 > 0) return NoIntersection{};

  // Touching cases: report the touching endpoint exactly.
  if (o1 == 0 && distance_to_segment(s2.a, s1) <= kGeomTol)
    return PointIntersection{s2.a, std::clamp(detail::project_param(s2.a, s1), 0.0, 1.0), 0.0};
  if (o2 == 0 && distance_to_segment(s2.b, s1) <= kGeomTol)
    return PointIntersection{s2.b, std::clamp(detail::project_param(s2.b, s1), 0.0, 1.0), 1.0};
  if (o3 == 0 && distance_to_segment(s1.a, s2) <= kGeomTol)
    return PointIntersection{s1.a, 0.0, std::clamp(detail::project_param(s1.a, s2), 0.0, 1.0)};
  if (o4 == 0 && distance_to_segment(s1.b, s2) <= kGeomTol)
    return PointIntersection{s1.b, 1.0, std::clamp(detail::project_param(s1.b, s2), 0.0, 1.0)};
  if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) return NoIntersection{};

  const Point2 d1 = s1.b - s1.a;
  const Point2 d2 = s2.b - s2.a;
  const double denom = cross(d1, d2);
  const double t1 = std::clamp(cross(s2.a - s1.a, d2) / denom, 0.0, 1.0);
  const double t2 = std::clamp(cross(s2.a - s1.a, d1) / denom, 0.0, 1.0);
  return PointIntersection{s1.at(t1), t1, t2};
}

// ---------------------------------------------------------------------------
// Convex hull (Andrew's monotone chain)

/// Counter-clockwise hull without collinear vertices. Collinear input gives a
/// 2-vertex (degenerate) hull, a single distinct point a 1-vertex hull.
inline Polygon convex_hull(std::span<const Point2> points) {
  if (points.empty()) throw Error("empty-input", "convex hull of an empty point set");
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    if (pts.size() == 2 && near(pts[0], pts[1])) pts.pop_back();
    return Polygon{pts};
  }
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 2) hull = {pts.front(), pts.back()};
  return Polygon{std::move(hull)};
}

// ---------------------------------------------------------------------------
// Point location

enum class Location { Inside, Boundary, Outside };

inline Location point_in_polygon(Point2 p, const Polygon& poly) {
  const auto n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    if (distance_to_segment(p, poly.edge(i)) <= kGeomTol) return Location::Boundary;
  if (n < 3) return Location::Outside;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = poly.vertices[i];
    const Point2 b = poly.vertices[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

inline bool strictly_inside(Point2 p, const Polygon& poly) { return point_in_polygon(p, poly) == Location::Inside; }

inline bool strictly_inside_any(Point2 p, std::span<const Polygon> obstacles) {
  return std::any_of(obstacles.begin(), obstacles.end(), [&](const Polygon& o) { return strictly_inside(p, o); });
}

// ---------------------------------------------------------------------------
// Clearance

namespace detail {

// Parameters along `s` where it meets the boundary of `poly`, plus 0 and 1.
inline std::vector<double> boundary_params(const Segment& s, const Polygon& poly) {
  std::vector<double> ts{0.0, 1.0};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto hit = segment_intersection(s, poly.edge(i));
    if (const auto* p = std::get_if<PointIntersection>(&hit)) {
      ts.push_back(p->t1);
    } else if (const auto* o = std::get_if<OverlapIntersection>(&hit)) {
      ts.push_back(o->t1_first);
      ts.push_back(o->t1_last);
    }
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

}  // namespace detail

/// True iff the segment does not meet the interior of `poly`.
inline bool segment_clear(const Segment& s, const Polygon& poly) {
  if (poly.degenerate()) return true;
  Box sb = bounding_box(std::span<const Point2>(&s.a, 2));
  if (!sb.overlaps(poly.bounds(), kGeomTol)) return true;
  if (s.degenerate()) return !strictly_inside(s.a, poly);
  const auto ts = detail::boundary_params(s, poly);
  const double len = s.length();
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if ((ts[i + 1] - ts[i]) * len <= kGeomTol) continue;
    if (strictly_inside(s.at(0.5 * (ts[i] + ts[i + 1])), poly)) return false;
  }
  return true;
}

inline bool segment_clear(const Segment& s, std::span<const Polygon> obstacles) {
  return std::all_of(obstacles.begin(), obstacles.end(), [&](const Polygon& o) { return segment_clear(s, o); });
}

/// A point strictly inside `poly`, as far from its boundary as a refining grid
/// search finds (pole of inaccessibility). Deterministic.
inline Point2 interior_pole(const Polygon& poly) {
  const Box b = poly.bounds();
  auto clearance = [&](Point2 p) {
    if (!strictly_inside(p, poly)) return -1.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) d = std::min(d, distance_to_segment(p, poly.edge(i)));
    return d;
  };
  constexpr int kGrid = 24;
  Point2 best = 0.5 * (b.min + b.max);
  double best_d = clearance(best);
  double hx = b.width() / kGrid;
  double hy = b.height() / kGrid;
  Point2 lo = b.min;
  for (int round = 0; round < 6; ++round) {
    for (int i = 0; i <= kGrid; ++i) {
      for (int j = 0; j <= kGrid; ++j) {
        const Point2 p{lo.x + i * hx, lo.y + j * hy};
        const double d = clearance(p);
        if (d > best_d) {
          best_d = d;
          best = p;
        }
      }
    }
    lo = {best.x - 2.0 * hx, best.y - 2.0 * hy};
    hx *= 4.0 / kGrid;
    hy *= 4.0 / kGrid;
  }
  if (best_d <= 0.0) throw Error("no-interior", "polygon has no interior point");
  return best;
}

/// True iff int(a) and int(b) share a point. Edge contact does not count.
inline bool polygon_interiors_intersect(const Polygon& a, const Polygon& b) {
  if (a.degenerate() || b.degenerate()) return false;
  if (!a.bounds().overlaps(b.bounds(), kGeomTol)) return false;
  // Some piece of one boundary strictly inside the other polygon.
  auto boundary_enters = [](const Polygon& p, const Polygon& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Segment e = p.edge(i);
      if (!segment_clear(e, q)) return true;
    }
    return false;
  };
  if (boundary_enters(a, b) || boundary_enters(b, a)) return true;
  // Remaining case: coincident boundaries (e.g. identical polygons).
  return strictly_inside(interior_pole(a), b) || strictly_inside(interior_pole(b), a);
}

/// Simple = no two non-adjacent edges meet and adjacent edges meet only at
/// their shared vertex.
inline bool is_simple(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei{pts[i], pts[(i + 1) % n]};
    if (ei.degenerate()) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment ej{pts[j], pts[(j + 1) % n]};
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const auto hit = segment_intersection(ei, ej);
      if (std::holds_alternative<NoIntersection>(hit)) continue;
      if (!adjacent) return false;
      if (std::holds_alternative<OverlapIntersection>(hit)) return false;
    }
  }
  return true;
}

/// Validated polygon: >= 3 vertices, simple, non-zero area; re-oriented CCW.
inline Polygon make_polygon(std::vector<Point2> vertices) {
  if (vertices.size() >= 2 && vertices.front() == vertices.back()) vertices.pop_back();
  if (vertices.size() < 3) throw Error("bad-polygon", "polygon needs at least 3 vertices");
  for (const auto& v : vertices)
    if (!is_finite(v)) throw Error("non-finite", "polygon vertex is not finite");
  if (!is_simple(vertices)) throw Error("bad-polygon", "polygon is not simple");
  const double area = signed_area(vertices);
  if (std::abs(area) <= kGeomTol) throw Error("bad-polygon", "polygon has zero area");
  if (area < 0.0) std::reverse(vertices.begin(), vertices.end());
  return Polygon{std::move(vertices)};
}

// ---------------------------------------------------------------------------
// Polyline

/// Path with constant-speed arc-length parametrisation over [0, 1].
/// A single vertex is the constant path.
class Polyline {
 public:
  explicit Polyline(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw Error("empty-polyline", "polyline needs at least one vertex");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!is_finite(vertices_[i])) throw Error("non-finite", "polyline vertex is not finite");
      if (i > 0 && vertices_[i] == vertices_[i - 1])
        throw Error("duplicate-vertex", "polyline has consecutive duplicate vertices");
    }
    cumulative_.reserve(vertices_.size());
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < vertices_.size(); ++i)
      cumulative_.push_back(cumulative_.back() + distance(vertices_[i - 1], vertices_[i]));
  }

  /// Drops consecutive duplicates instead of rejecting them.
  static Polyline from_points(std::vector<Point2> pts) {
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return Polyline(std::move(pts));
  }

  static Polyline constant(Point2 p) { return Polyline(std::vector<Point2>{p}); }

  std::span<const Point2> vertices() const { return vertices_; }
  const std::vector<Point2>& points() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  Segment segment(std::size_t i) const { return {vertices_[i], vertices_[i + 1]}; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  double length() const { return cumulative_.back(); }
  Point2 front() const { return vertices_.front(); }
  Point2 back() const { return vertices_.back(); }
  bool closed() const { return vertices_.size() >= 2 && near(front(), back()); }

  /// Normalised arc parameter of the point at fraction t along segment i.
  double param(std::size_t seg, double t) const {
    if (length() == 0.0) return 0.0;
    return (cumulative_[seg] + t * (cumulative_[seg + 1] - cumulative_[seg])) / length();
  }

  Point2 at_length(double s) const {
    if (vertices_.size() == 1 || s <= 0.0) return vertices_.front();
    if (s >= length()) return vertices_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const double seg = cumulative_[i + 1] - cumulative_[i];
    return lerp(vertices_[i], vertices_[i + 1], (s - cumulative_[i]) / seg);
  }

  Point2 at(double u) const { return at_length(u * length()); }

  /// Restriction to [u1, u2] (normalised), keeping interior vertices exactly.
  Polyline sub(double u1, double u2) const {
    const double s1 = std::clamp(u1, 0.0, 1.0) * length();
    const double s2 = std::clamp(u2, 0.0, 1.0) * length();
    std::vector<Point2> pts{at_length(s1)};
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (cumulative_[i] > s1 && cumulative_[i] < s2) pts.push_back(vertices_[i]);
    pts.push_back(at_length(s2));
    return from_points(std::move(pts));
  }

  Polyline reversed() const { return Polyline(std::vector<Point2>(vertices_.rbegin(), vertices_.rend())); }

  /// Concatenation; `next` must start where this path ends.
  Polyline then(const Polyline& next) const {
    if (!near(back(), next.front())) throw Error("endpoint-mismatch", "concatenated paths do not meet");
    std::vector<Point2> pts = vertices_;
    pts.insert(pts.end(), next.vertices_.begin() + 1, next.vertices_.end());
    return from_points(std::move(pts));
  }

  friend bool operator==(const Polyline& a, const Polyline& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point2> vertices_;
  std::vector<double> cumulative_;
};

inline Polyline straight(Point2 a, Point2 b) { return Polyline::from_points({a, b}); }

/// True iff every segment of the path avoids all obstacle interiors.
inline bool path_clear(const Polyline& p, std::span<const Polygon> obstacles) {
  if (p.size() == 1) return !strictly_inside_any(p.front(), obstacles);
  for (std::size_t i = 0; i < p.segment_count(); ++i)
    if (!segment_clear(p.segment(i), obstacles)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Self intersections

struct SelfIntersection {
  double s1 = 0.0;
  double s2 = 0.0;
  Point2 point;
};

/// Crossings and touchings between non-adjacent segments, s1 < s2 in
/// normalised arc length. The start/end identity of a closed path is not a
/// crossing.
inline std::vector<SelfIntersection> self_intersections(const Polyline& p) {
  std::vector<SelfIntersection> out;
  const std::size_t n = p.size() < 2 ? 0 : p.segment_count();
  const bool closed = p.closed();
  auto add = [&](double s1, double s2, Point2 pt) {
    if (s1 > s2) std::swap(s1, s2);
    if (closed && s1 <= 1e-12 && s2 >= 1.0 - 1e-12) return;
    if (s2 - s1 <= 1e-12) return;
    for (const auto& e : out)
      if (std::abs(e.s1 - s1) <= 1e-12 && std::abs(e.s2 - s2) <= 1e-12) return;
    out.push_back({s1, s2, pt});
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Segment si = p.segment(i);
    for (std::size_t j = i + 2; j < n; ++j) {
      const Segment sj = p.segment(j);
      const auto hit = segment_intersection(si, sj);
      if (const auto* h = std::get_if<PointIntersection>(&hit)) {
        add(p.param(i, h->t1), p.param(j, h->t2), h->point);
      } else if (const auto* o = std::get_if<OverlapIntersection>(&hit)) {
        add(p.param(i, o->t1_first), p.param(j, o->t2_first), o->first);
        add(p.param(i, o->t1_last), p.param(j, o->t2_last), o->last);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.s1 < b.s1 || (a.s1 == b.s1 && a.s2 < b.s2); });
  return out;
}

}  // namespace entk
