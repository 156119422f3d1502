#pragma once

// Representative curves and homotopy signatures.
//
// Each obstacle gets an anchor point in its interior and the two opposite rays
// anchor ± s·v, both labelled with the obstacle's letter. All obstacles start
// from the same v; an obstacle whose rays are blocked rotates its own v by
// golden-angle steps. A path segment crosses the line of a ray pair when the
// sign of cross(v, p - anchor) changes,
// with points on the line counted on the non-negative side. The letter is
// positive when the crossing goes from the left to the right of the ray's
// outward direction. Other robots' projected tether segments (3D scenarios)
// are extra curves with their own letters.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/geometry.hpp"
#include "entk/word.hpp"

namespace entk {

inline constexpr int kCurveAttempts = 64;

struct RayPair {
  Point2 anchor;
  Point2 v;         // unit direction of the up ray
  Point2 up_end;    // anchor + s·v clipped at bounds
  Point2 down_end;  // anchor - s·v clipped at bounds
};

struct LetterInfo {
  std::string name;
  int owner = -1;  // robot index, or -1 for a static obstacle
  bool segment = false;
};

struct RepresentativeCurves {
  int attempt = 0;  // largest rotation step used by any obstacle
  std::vector<RayPair> rays;            // letter i is obstacle i
  std::vector<TetherSegment> segments;  // letter rays.size() + k
  std::vector<LetterInfo> letters;

  std::size_t obstacle_letters() const { return rays.size(); }
  bool is_segment_letter(int curve) const { return static_cast<std::size_t>(curve) >= rays.size(); }

  std::string to_string(const Letter& l) const {
    return letters.at(static_cast<std::size_t>(l.curve)).name + (l.sign > 0 ? "+" : "-");
  }
  std::string to_string(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += to_string(w[i]);
    }
    return out;
  }
};

namespace detail {

inline Point2 rotate(Point2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Largest s with p + s·d inside the box.
inline double exit_distance(Point2 p, Point2 d, const Box& b) {
  double s = std::numeric_limits<double>::infinity();
  if (d.x > 0) s = std::min(s, (b.max.x - p.x) / d.x);
  if (d.x < 0) s = std::min(s, (b.min.x - p.x) / d.x);
  if (d.y > 0) s = std::min(s, (b.max.y - p.y) / d.y);
  if (d.y < 0) s = std::min(s, (b.min.y - p.y) / d.y);
  return s;
}

inline double segment_distance(const Segment& a, const Segment& b) {
  if (!std::holds_alternative<NoIntersection>(segment_intersection(a, b))) return 0.0;
  return std::min({distance_to_segment(a.a, b), distance_to_segment(a.b, b), distance_to_segment(b.a, a),
                   distance_to_segment(b.b, a)});
}

// The ray leaves its own obstacle through exactly one boundary point, away
// from every vertex.
inline bool exits_once(const Segment& ray, const Polygon& own, double clearance) {
  std::vector<Point2> hits;
  for (std::size_t i = 0; i < own.size(); ++i) {
    const auto h = segment_intersection(ray, own.edge(i));
    if (std::holds_alternative<OverlapIntersection>(h)) return false;
    if (const auto* p = std::get_if<PointIntersection>(&h)) hits.push_back(p->point);
  }
  if (hits.empty()) return false;
  for (const auto& h : hits)
    if (!near(h, hits.front(), clearance)) return false;
  for (const auto& v : own.vertices)
    if (near(v, hits.front(), clearance)) return false;
  return true;
}

inline bool ray_clear_of_others(const Segment& ray, std::size_t own, const std::vector<Polygon>& obstacles,
                                const std::vector<TetherSegment>& segments, double clearance) {
  const Box rb = bounding_box(std::span<const Point2>(&ray.a, 2));
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    if (k == own) continue;
    if (!rb.overlaps(obstacles[k].bounds(), clearance)) continue;
    for (std::size_t e = 0; e < obstacles[k].size(); ++e)
      if (segment_distance(ray, obstacles[k].edge(e)) <= clearance) return false;
  }
  for (const auto& s : segments)
    if (segment_distance(ray, s.seg) <= clearance) return false;
  return true;
}

}  // namespace detail

/// Builds the curves for `env`. Each obstacle gets a rotation of v0 whose rays
/// exit it once and stay clear of the other obstacles and the segment curves;
/// a depth-first search, most constrained obstacle first, then picks one
/// rotation per obstacle so that all rays are pairwise disjoint.
inline RepresentativeCurves build_representative_curves(const EffectiveEnvironment& env, Point2 v0 = {0.0, 1.0}) {
  const double clearance = std::max(10.0 * kGeomTol, 1e-7 * env.bounds.diagonal());
  const std::size_t n = env.obstacles.size();
  std::vector<Point2> anchors;
  anchors.reserve(n);
  for (const auto& o : env.obstacles) anchors.push_back(interior_pole(o));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double n0 = norm(v0);
  if (!(n0 > 0.0)) throw Error("bad-direction", "curve direction must be non-zero");
  v0 = (1.0 / n0) * v0;

  auto make_pair = [&](std::size_t i, int step) {
    const Point2 v = detail::rotate(v0, golden * step);
    const Point2 a = anchors[i];
    return RayPair{a, v, a + detail::exit_distance(a, v, env.bounds) * v,
                   a + detail::exit_distance(a, -1.0 * v, env.bounds) * (-1.0 * v)};
  };
  auto own_ok = [&](std::size_t i, const RayPair& r) {
    const Segment up{r.anchor, r.up_end};
    const Segment down{r.anchor, r.down_end};
    return detail::exits_once(up, env.obstacles[i], clearance) && detail::exits_once(down, env.obstacles[i], clearance) &&
           detail::ray_clear_of_others(up, i, env.obstacles, env.segment_curves, clearance) &&
           detail::ray_clear_of_others(down, i, env.obstacles, env.segment_curves, clearance);
  };
  auto disjoint = [&](const RayPair& a, const RayPair& b) {
    for (const Segment& s : {Segment{a.anchor, a.up_end}, Segment{a.anchor, a.down_end}})
      for (const Segment& t : {Segment{b.anchor, b.up_end}, Segment{b.anchor, b.down_end}})
        if (detail::segment_distance(s, t) <= clearance) return false;
    return true;
  };
  const Error exhausted("curves-exhausted", "no curve directions keep the representative curves disjoint");

  std::vector<std::vector<std::pair<int, RayPair>>> cands(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int step = 0; step < kCurveAttempts; ++step) {
      const RayPair r = make_pair(i, step);
      if (own_ok(i, r)) cands[i].push_back({step, r});
    }
    if (cands[i].empty()) throw exhausted;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cands[a].size() < cands[b].size(); });

  std::vector<std::size_t> choice(n, 0);
  long budget = 2'000'000;
  std::size_t k = 0;
  while (k < n) {
    const auto& mine = cands[order[k]];
    bool fits = false;
    for (; choice[k] < mine.size(); ++choice[k]) {
      fits = true;
      for (std::size_t j = 0; j < k && fits; ++j) {
        if (--budget < 0) throw exhausted;
        fits = disjoint(mine[choice[k]].second, cands[order[j]][choice[j]].second);
      }
      if (fits) break;
    }
    if (fits) {
      if (++k < n) choice[k] = 0;
      continue;
    }
    if (k == 0) throw exhausted;
    ++choice[--k];
  }

  std::vector<RayPair> rays(n);
  int max_step = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& [step, r] = cands[order[j]][choice[j]];
    rays[order[j]] = r;
    max_step = std::max(max_step, step);
  }
  RepresentativeCurves c;
  c.attempt = max_step;
  c.rays = std::move(rays);
  for (std::size_t i = 0; i < n; ++i)
    c.letters.push_back({"z" + std::to_string(i + 1), env.owner.empty() ? -1 : env.owner[i], false});
  c.segments = env.segment_curves;
  for (const auto& s : c.segments)
    c.letters.push_back({"r" + std::to_string(s.robot + 1) + ".s" + std::to_string(s.index + 1), s.robot, true});
  return c;
}

// ---------------------------------------------------------------------------
// Crossings

struct Crossing {
  double t = 0.0;  // parameter along the crossing segment
  Letter letter;
};

/// Crossings of the segment a→b with the curves, in order along the segment.
/// Segment curves are included only when `with_segments` is set.
inline void segment_crossings(Point2 a, Point2 b, const RepresentativeCurves& c, bool with_segments,
                              std::vector<Crossing>& out) {
  const std::size_t first = out.size();
  for (std::size_t i = 0; i < c.rays.size(); ++i) {
    const Point2 x = c.rays[i].anchor;
    const Point2 v = c.rays[i].v;
    const double ca = cross(v, a - x);
    const double cb = cross(v, b - x);
    const bool sa = ca >= 0.0;
    const bool sb = cb >= 0.0;
    if (sa == sb) continue;
    const double t = ca / (ca - cb);
    const Point2 q = lerp(a, b, t);
    const bool up = dot(q - x, v) > 0.0;
    const int sign = up == sa ? 1 : -1;
    out.push_back({t, {static_cast<int>(i), sign}});
  }
  if (with_segments) {
    for (std::size_t k = 0; k < c.segments.size(); ++k) {
      const Segment& s = c.segments[k].seg;
      const Point2 d = s.b - s.a;
      const double ca = cross(d, a - s.a);
      const double cb = cross(d, b - s.a);
      const bool sa = ca >= 0.0;
      const bool sb = cb >= 0.0;
      if (sa == sb) continue;
      const double t = ca / (ca - cb);
      const double u = dot(lerp(a, b, t) - s.a, d) / dot(d, d);
      if (u < 0.0 || u >= 1.0) continue;
      out.push_back({t, {static_cast<int>(c.rays.size() + k), sa ? 1 : -1}});
    }
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(), [](const Crossing& p, const Crossing& q) {
    return p.t < q.t || (p.t == q.t && p.letter < q.letter);
  });
}

inline Word segment_word(Point2 a, Point2 b, const RepresentativeCurves& c, bool with_segments = false) {
  std::vector<Crossing> xs;
  segment_crossings(a, b, c, with_segments, xs);
  Word w;
  w.reserve(xs.size());
  for (const auto& x : xs) w.push_back(x.letter);
  return w;
}

/// Unreduced crossing sequence of a path.
inline Word raw_word(std::span<const Point2> pts, const RepresentativeCurves& c, bool with_segments) {
  Word w;
  std::vector<Crossing> xs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    xs.clear();
    segment_crossings(pts[i], pts[i + 1], c, with_segments, xs);
    for (const auto& x : xs) w.push_back(x.letter);
  }
  return w;
}

/// Reduced signature including other-tether segment letters.
inline Word signature(const Polyline& path, const RepresentativeCurves& c) {
  return reduce(raw_word(path.vertices(), c, true));
}

/// Reduced signature over obstacle letters only; this is the complete
/// path-homotopy invariant of the free space.
inline Word homotopy_word(const Polyline& path, const RepresentativeCurves& c) {
  return reduce(raw_word(path.vertices(), c, false));
}

inline Word homotopy_word(std::span<const Point2> pts, const RepresentativeCurves& c) {
  return reduce(raw_word(pts, c, false));
}

/// Reduced words of the prefixes γ[0, u] at each normalised parameter in `us`
/// (ascending). The prefix is cut exactly at γ(u).
inline std::vector<Word> prefix_words(const Polyline& path, const std::vector<double>& us,
                                      const RepresentativeCurves& c, bool with_segments) {
  std::vector<Word> out;
  out.reserve(us.size());
  const auto& cum = path.cumulative();
  const double L = path.length();
  Word acc;           // reduced word up to vertex `next - 1`
  std::size_t next = 1;
  std::vector<Crossing> xs;
  for (double u : us) {
    const double s = std::clamp(u, 0.0, 1.0) * L;
    while (next < path.size() && cum[next] <= s) {
      xs.clear();
      segment_crossings(path.vertices()[next - 1], path.vertices()[next], c, with_segments, xs);
      for (const auto& x : xs) acc = reduced_concat(acc, Word{x.letter});
      ++next;
    }
    Word w = acc;
    if (next < path.size()) {
      const Point2 q = path.at_length(s);
      if (!(q == path.vertices()[next - 1])) {
        xs.clear();
        segment_crossings(path.vertices()[next - 1], q, c, with_segments, xs);
        for (const auto& x : xs) w = reduced_concat(w, Word{x.letter});
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homotopy tests

inline bool path_homotopic(const Polyline& a, const Polyline& b, const RepresentativeCurves& c) {
  if (!near(a.front(), b.front()) || !near(a.back(), b.back()))
    throw Error("endpoint-mismatch", "paths do not share both endpoints");
  return homotopy_word(a, c) == homotopy_word(b, c);
}

inline bool loop_null_homotopic(const Polyline& loop, const RepresentativeCurves& c) {
  if (!loop.closed() && loop.size() > 1) throw Error("not-closed", "loop must start and end at the same point");
  return homotopy_word(loop, c).empty();
}

/// Whether reverse(λ_start) ⋄ γ1 ⋄ λ_end is path-homotopic to γ2.
inline bool relatively_homotopic(const Polyline& g1, const Polyline& g2, const Polyline& lambda_start,
                                 const Polyline& lambda_end, const RepresentativeCurves& c) {
  if (!near(lambda_start.front(), g1.front()) || !near(lambda_start.back(), g2.front()) ||
      !near(lambda_end.front(), g1.back()) || !near(lambda_end.back(), g2.back()))
    throw Error("endpoint-mismatch", "connecting paths do not chain the endpoints");
  Word w = inverse(homotopy_word(lambda_start, c));
  w = reduced_concat(w, homotopy_word(g1, c));
  w = reduced_concat(w, homotopy_word(lambda_end, c));
  return w == homotopy_word(g2, c);
}

}  // namespace entk
