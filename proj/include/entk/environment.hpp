#pragma once

// Workspace, tether and scenario model; multi-robot reduction by inflating the
// other tethers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/linestring.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "entk/error.hpp"
#include "entk/geometry.hpp"

namespace entk {

inline constexpr double kTautTol = 1e-6;
inline constexpr int kArcPointsPerQuarter = 8;

struct Environment {
  Box bounds;
  std::vector<Polygon> obstacles;
};

enum class Dimension { Planar, Projected3D };

enum class BetaMode { Off, LenSubpath };

struct DefinitionParams {
  double d_max = 1.0;
  double delta = std::numeric_limits<double>::infinity();
  BetaMode beta_mode = BetaMode::Off;
  int safe_base = 7;
  int samples_per_unit = 20;
  int relax_base = 9;

  void validate() const {
    if (!(d_max >= 0.0) || !std::isfinite(d_max)) throw Error("bad-params", "d_max must be finite and >= 0");
    if (!(delta >= 0.0)) throw Error("bad-params", "delta must be >= 0");
    if (safe_base != 6 && safe_base != 7) throw Error("bad-params", "safe_base must be 6 or 7");
    if (samples_per_unit < 2) throw Error("bad-params", "samples_per_unit must be >= 2");
    if (relax_base < 1 || relax_base > 9 || relax_base == 8)
      throw Error("bad-params", "relax_base must be one of 1-7 or 9");
  }
};

struct TetherConfig {
  std::string robot_id;
  Polyline path;
  bool taut = false;

  Point2 anchor() const { return path.front(); }
  Point2 robot() const { return path.back(); }
  bool closed() const { return path.closed(); }
};

struct Scenario {
  std::string id;
  Dimension dimension = Dimension::Planar;
  Environment env;
  std::vector<TetherConfig> robots;
  std::string focus;
  std::optional<double> epsilon;  // first entry of the inflation ladder; default ladder if empty
  DefinitionParams params;

  std::size_t focus_index() const {
    for (std::size_t i = 0; i < robots.size(); ++i)
      if (robots[i].robot_id == focus) return i;
    throw Error("focus-missing", "focus robot '" + focus + "' not among robots");
  }
  const TetherConfig& focus_tether() const { return robots[focus_index()]; }
};

/// A segment of another robot's projected tether, used as a signature curve.
struct TetherSegment {
  int robot = 0;  // index into Scenario::robots
  int index = 0;  // segment index along that tether
  Segment seg;
};

/// Static obstacles followed by inflated other tethers; owner[i] is -1 for a
/// static obstacle and the robot index otherwise.
struct EffectiveEnvironment {
  Box bounds;
  std::vector<Polygon> obstacles;
  std::vector<int> owner;
  std::vector<TetherSegment> segment_curves;
  double epsilon = 0.0;

  static EffectiveEnvironment from(const Environment& env) {
    EffectiveEnvironment e;
    e.bounds = env.bounds;
    e.obstacles = env.obstacles;
    e.owner.assign(env.obstacles.size(), -1);
    return e;
  }
  std::size_t static_count() const {
    return static_cast<std::size_t>(std::count(owner.begin(), owner.end(), -1));
  }
};

// ---------------------------------------------------------------------------
// Inflation

// Boolean operations can emit vertices a few ulps apart.
template <class Ring>
std::vector<Point2> ring_points(const Ring& r) {
  std::vector<Point2> out;
  for (const auto& q : r) {
    const Point2 v{q.x(), q.y()};
    if (out.empty() || !near(out.back(), v)) out.push_back(v);
  }
  while (out.size() > 1 && near(out.front(), out.back())) out.pop_back();
  return out;
}

/// Polygon approximating {x : dist(x, p) <= eps} with round joins and caps.
inline Polygon inflate_polyline(const Polyline& p, double eps) {
  namespace bg = boost::geometry;
  using BPoint = bg::model::d2::point_xy<double>;
  using BPoly = bg::model::polygon<BPoint>;
  using BMulti = bg::model::multi_polygon<BPoly>;
  if (!(eps > 0.0)) throw Error("bad-epsilon", "inflation radius must be > 0");

  const int per_circle = 4 * kArcPointsPerQuarter;
  bg::strategy::buffer::distance_symmetric<double> distance(eps);
  bg::strategy::buffer::join_round join(per_circle);
  bg::strategy::buffer::end_round end(per_circle);
  bg::strategy::buffer::point_circle circle(per_circle);
  bg::strategy::buffer::side_straight side;
  BMulti out;
  if (p.size() == 1) {
    bg::buffer(BPoint(p.front().x, p.front().y), out, distance, side, join, end, circle);
  } else {
    bg::model::linestring<BPoint> line;
    for (const auto& v : p.vertices()) line.emplace_back(v.x, v.y);
    bg::buffer(line, out, distance, side, join, end, circle);
  }
  if (out.size() != 1) throw Error("inflation-not-simple", "inflated tether is not a single polygon");
  if (!out.front().inners().empty()) throw Error("inflation-not-simple", "inflated tether encloses a hole");
  return make_polygon(ring_points(out.front().outer()));
}

/// Union of overlapping polygons, or nullopt if it is not one polygon without
/// holes.
inline std::optional<Polygon> polygon_union(const std::vector<Polygon>& parts) {
  namespace bg = boost::geometry;
  using BPoint = bg::model::d2::point_xy<double>;
  using BPoly = bg::model::polygon<BPoint>;
  using BMulti = bg::model::multi_polygon<BPoly>;
  if (parts.empty()) return std::nullopt;
  BMulti acc;
  for (const auto& p : parts) {
    BPoly bp;
    for (const auto& v : p.vertices) bg::append(bp.outer(), BPoint(v.x, v.y));
    bg::append(bp.outer(), BPoint(p.vertices.front().x, p.vertices.front().y));
    bg::correct(bp);
    BMulti next;
    bg::union_(acc, bp, next);
    acc = std::move(next);
  }
  if (acc.size() != 1 || !acc.front().inners().empty()) return std::nullopt;
  try {
    return make_polygon(ring_points(acc.front().outer()));
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Free space

/// Flood fill over cell centres (4-connected) of the free cells.
inline bool free_space_connected(const Environment& env, double resolution) {
  if (!(resolution > 0.0)) throw Error("bad-resolution", "resolution must be > 0");
  const auto nx = static_cast<std::size_t>(std::max(1.0, std::ceil(env.bounds.width() / resolution)));
  const auto ny = static_cast<std::size_t>(std::max(1.0, std::ceil(env.bounds.height() / resolution)));
  const double hx = env.bounds.width() / static_cast<double>(nx);
  const double hy = env.bounds.height() / static_cast<double>(ny);
  std::vector<char> free(nx * ny, 0);
  std::size_t free_count = 0;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const Point2 c{env.bounds.min.x + (static_cast<double>(i) + 0.5) * hx,
                     env.bounds.min.y + (static_cast<double>(j) + 0.5) * hy};
      if (!strictly_inside_any(c, env.obstacles)) {
        free[j * nx + i] = 1;
        ++free_count;
      }
    }
  }
  if (free_count == 0) return false;
  const auto start = static_cast<std::size_t>(std::find(free.begin(), free.end(), 1) - free.begin());
  std::vector<char> seen(nx * ny, 0);
  std::deque<std::size_t> queue{start};
  seen[start] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    ++reached;
    const std::size_t i = k % nx;
    const std::size_t j = k / nx;
    auto visit = [&](std::size_t n) {
      if (free[n] && !seen[n]) {
        seen[n] = 1;
        queue.push_back(n);
      }
    };
    if (i > 0) visit(k - 1);
    if (i + 1 < nx) visit(k + 1);
    if (j > 0) visit(k - nx);
    if (j + 1 < ny) visit(k + nx);
  }
  return reached == free_count;
}

inline double default_flood_resolution(const Box& b) { return std::max(b.width(), b.height()) / 200.0; }

// ---------------------------------------------------------------------------
// Validation

inline bool path_inside(const Polyline& p, const Box& b) {
  return std::all_of(p.vertices().begin(), p.vertices().end(), [&](Point2 v) { return b.contains(v, kGeomTol); });
}

inline bool polylines_touch(const Polyline& a, const Polyline& b) {
  const Box ba = bounding_box(a.vertices());
  const Box bb = bounding_box(b.vertices());
  if (!ba.overlaps(bb, kGeomTol)) return false;
  for (std::size_t i = 0; i < std::max<std::size_t>(1, a.segment_count()); ++i) {
    const Segment sa = a.size() == 1 ? Segment{a.front(), a.front()} : a.segment(i);
    for (std::size_t j = 0; j < std::max<std::size_t>(1, b.segment_count()); ++j) {
      const Segment sb = b.size() == 1 ? Segment{b.front(), b.front()} : b.segment(j);
      if (!std::holds_alternative<NoIntersection>(segment_intersection(sa, sb))) return true;
    }
  }
  return false;
}

/// Structural checks on a parsed scenario; tautness is verified separately
/// since it needs the homotopy machinery.
inline void validate_structure(const Scenario& s) {
  const Box& b = s.env.bounds;
  if (!is_finite(b.min) || !is_finite(b.max) || !(b.min.x < b.max.x) || !(b.min.y < b.max.y))
    throw Error("bad-bounds", "bounds must be finite with min < max");
  s.params.validate();
  if (s.epsilon && !(*s.epsilon > 0.0)) throw Error("bad-epsilon", "epsilon must be > 0");
  for (std::size_t i = 0; i < s.env.obstacles.size(); ++i) {
    for (const auto& v : s.env.obstacles[i].vertices) {
      const bool strictly = v.x > b.min.x + kGeomTol && v.x < b.max.x - kGeomTol && v.y > b.min.y + kGeomTol &&
                            v.y < b.max.y - kGeomTol;
      if (!strictly)
        throw Error("obstacle-outside-bounds", "obstacle " + std::to_string(i + 1) + " is not strictly inside bounds");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (polygon_interiors_intersect(s.env.obstacles[i], s.env.obstacles[j]))
        throw Error("obstacles-overlap",
                    "obstacles " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " overlap");
  }
  if (!free_space_connected(s.env, default_flood_resolution(b)))
    throw Error("free-space-disconnected", "free space is not path-connected");
  if (s.robots.empty()) throw Error("no-robots", "scenario has no robots");
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    const auto& r = s.robots[i];
    for (std::size_t j = 0; j < i; ++j)
      if (s.robots[j].robot_id == r.robot_id) throw Error("duplicate-robot", "robot id '" + r.robot_id + "' repeated");
    if (r.path.size() < 2) throw Error("tether-too-short", "tether of '" + r.robot_id + "' needs >= 2 vertices");
    if (!path_inside(r.path, b)) throw Error("path-outside-bounds", "tether of '" + r.robot_id + "' leaves bounds");
    if (!path_clear(r.path, s.env.obstacles))
      throw Error("path-enters-obstacle", "tether of '" + r.robot_id + "' enters an obstacle");
  }
  s.focus_index();
  if (s.dimension == Dimension::Planar) {
    for (std::size_t i = 0; i < s.robots.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (polylines_touch(s.robots[i].path, s.robots[j].path))
          throw Error("tethers-intersect",
                      "tethers of '" + s.robots[j].robot_id + "' and '" + s.robots[i].robot_id + "' intersect");
  }
}

// ---------------------------------------------------------------------------
// Effective environment

inline std::vector<double> epsilon_ladder(const Scenario& s) {
  if (s.epsilon) {
    const double e = *s.epsilon;
    return {e, e / 2.0, e / 4.0, e / 8.0};
  }
  const double d = s.env.bounds.diagonal();
  return {0.05 * d, 0.02 * d, 0.01 * d, 0.005 * d};
}

/// Inflations of every tether except `focus` at radius eps, or nullopt if one
/// of them touches the focus tether, another inflation or the workspace
/// boundary. Overlaps with static obstacles are allowed; they are merged later.
inline std::optional<std::vector<Polygon>> try_inflate(const Scenario& s, std::size_t focus, double eps) {
  std::vector<Polygon> out;
  const Polyline& fp = s.robots[focus].path;
  const Box& b = s.env.bounds;
  for (std::size_t j = 0; j < s.robots.size(); ++j) {
    if (j == focus) continue;
    Polygon infl;
    try {
      infl = inflate_polyline(s.robots[j].path, eps);
    } catch (const Error&) {
      return std::nullopt;
    }
    const Box ib = infl.bounds();
    if (!(ib.min.x > b.min.x + kGeomTol && ib.min.y > b.min.y + kGeomTol && ib.max.x < b.max.x - kGeomTol &&
          ib.max.y < b.max.y - kGeomTol))
      return std::nullopt;
    if (!path_clear(fp, std::span<const Polygon>(&infl, 1))) return std::nullopt;
    for (const auto& o : out)
      if (polygon_interiors_intersect(infl, o)) return std::nullopt;
    out.push_back(std::move(infl));
  }
  return out;
}

/// Static obstacles plus inflations, where an inflation absorbs every static
/// obstacle it overlaps (the merged obstacle is owned by that robot). Fails if
/// a union encloses a hole or a static obstacle touches two inflations.
inline std::optional<EffectiveEnvironment> merge_inflations(const Scenario& s, std::size_t focus,
                                                            std::vector<Polygon> infl) {
  const auto& statics = s.env.obstacles;
  std::vector<int> taken(statics.size(), -1);
  EffectiveEnvironment e;
  e.bounds = s.env.bounds;
  std::vector<Polygon> merged;
  std::vector<int> owners;
  std::size_t k = 0;
  for (std::size_t j = 0; j < s.robots.size(); ++j) {
    if (j == focus) continue;
    std::vector<Polygon> parts{infl[k++]};
    for (std::size_t i = 0; i < statics.size(); ++i) {
      if (!polygon_interiors_intersect(parts.front(), statics[i])) continue;
      if (taken[i] >= 0) return std::nullopt;
      taken[i] = static_cast<int>(j);
      parts.push_back(statics[i]);
    }
    if (parts.size() == 1) {
      merged.push_back(std::move(parts.front()));
    } else {
      auto u = polygon_union(parts);
      if (!u) return std::nullopt;
      merged.push_back(std::move(*u));
    }
    owners.push_back(static_cast<int>(j));
  }
  for (std::size_t i = 0; i < statics.size(); ++i)
    if (taken[i] < 0) {
      e.obstacles.push_back(statics[i]);
      e.owner.push_back(-1);
    }
  for (std::size_t m = 0; m < merged.size(); ++m) {
    e.obstacles.push_back(std::move(merged[m]));
    e.owner.push_back(owners[m]);
  }
  return e;
}

/// Environment seen by robot `focus`. Planar scenarios inflate the other
/// tethers at the first ladder radius that fits; projected 3D scenarios keep
/// the other tethers as signature curves only.
inline EffectiveEnvironment effective_environment(const Scenario& s, std::size_t focus) {
  EffectiveEnvironment e = EffectiveEnvironment::from(s.env);
  if (s.robots.size() == 1) return e;
  if (s.dimension == Dimension::Projected3D) {
    for (std::size_t j = 0; j < s.robots.size(); ++j) {
      if (j == focus) continue;
      const auto& p = s.robots[j].path;
      for (std::size_t k = 0; k < p.segment_count(); ++k)
        e.segment_curves.push_back({static_cast<int>(j), static_cast<int>(k), p.segment(k)});
    }
    return e;
  }
  for (double eps : epsilon_ladder(s)) {
    auto infl = try_inflate(s, focus, eps);
    if (!infl) continue;
    if (auto merged = merge_inflations(s, focus, std::move(*infl))) {
      merged->epsilon = eps;
      return *merged;
    }
  }
  throw Error("epsilon-exhausted", "no inflation radius on the ladder keeps the tethers apart");
}

inline EffectiveEnvironment effective_environment(const Scenario& s) {
  return effective_environment(s, s.focus_index());
}

// ---------------------------------------------------------------------------
// 3D projection

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Tether3 {
  std::string robot_id;
  std::vector<Point3> vertices;
  bool taut = false;
};

/// Orthonormal in-plane basis (e1, e2) for the plane with the given normal.
/// For normal (0,0,1) this is the identity on (x, y).
inline std::pair<Point3, Point3> projection_basis(Point3 n) {
  const double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
  if (!(len > 0.0) || !std::isfinite(len)) throw Error("bad-normal", "projection normal must be non-zero");
  n = {n.x / len, n.y / len, n.z / len};
  Point3 a = std::abs(n.x) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  const double an = a.x * n.x + a.y * n.y + a.z * n.z;
  Point3 e1{a.x - an * n.x, a.y - an * n.y, a.z - an * n.z};
  const double l1 = std::sqrt(e1.x * e1.x + e1.y * e1.y + e1.z * e1.z);
  e1 = {e1.x / l1, e1.y / l1, e1.z / l1};
  const Point3 e2{n.y * e1.z - n.z * e1.y, n.z * e1.x - n.x * e1.z, n.x * e1.y - n.y * e1.x};
  return {e1, e2};
}

/// Projects 3D tethers along `normal` into a 2D scenario whose obstacles are
/// given in plane coordinates. Other tethers become signature curves.
inline Scenario project_scenario_3d(std::string id, const Environment& plane_env, const std::vector<Tether3>& tethers,
                                    std::string focus, Point3 normal, DefinitionParams params = {}) {
  const auto [e1, e2] = projection_basis(normal);
  Scenario s;
  s.id = std::move(id);
  s.dimension = Dimension::Projected3D;
  s.env = plane_env;
  s.focus = std::move(focus);
  s.params = params;
  for (const auto& t : tethers) {
    std::vector<Point2> pts;
    for (const auto& p : t.vertices)
      pts.push_back({p.x * e1.x + p.y * e1.y + p.z * e1.z, p.x * e2.x + p.y * e2.y + p.z * e2.z});
    pts.erase(std::unique(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return near(a, b); }), pts.end());
    if (pts.size() < 2) throw Error("projection-degenerate", "tether of '" + t.robot_id + "' projects to a point");
    s.robots.push_back({t.robot_id, Polyline(std::move(pts)), t.taut});
  }
  validate_structure(s);
  return s;
}

}  // namespace entk
