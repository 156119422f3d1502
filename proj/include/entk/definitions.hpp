#pragma once

// Evaluators for the eleven non-entanglement definitions.
//
// Applicability conditions:
//   C1 tether declared (and verified) taut
//   C2 at least two robots
//   C3 no static obstacles
//   C4 planar scenario
//   C5 closed tether (anchor = robot)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entk/analysis.hpp"
#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/frechet.hpp"
#include "entk/geometry.hpp"
#include "entk/homotopy.hpp"
#include "entk/visibility.hpp"
#include "entk/word.hpp"

namespace entk {

inline constexpr int kDefinitionCount = 11;
inline constexpr int kTargetDirections = 64;
inline constexpr int kTargetLengths = 16;

enum class State { NotEntangled, Entangled, NotApplicable };

struct Witness {
  std::string kind;
  std::vector<Point2> points;
  std::vector<double> params;
  std::string detail;
  bool sampling_limit = false;  // verdict may flip with finer sampling
};

struct Verdict {
  State state = State::NotApplicable;
  std::string reason;  // failed condition for NotApplicable
  std::optional<Witness> witness;

  static Verdict not_entangled() { return {State::NotEntangled, {}, std::nullopt}; }
  static Verdict entangled(Witness w) { return {State::Entangled, {}, std::move(w)}; }
  static Verdict not_applicable(std::string why) { return {State::NotApplicable, std::move(why), std::nullopt}; }

  bool is_n() const { return state == State::NotEntangled; }
  bool is_e() const { return state == State::Entangled; }
  bool applicable() const { return state != State::NotApplicable; }
  std::string code() const { return is_n() ? "N" : is_e() ? "E" : "--"; }
};

/// A tether shape under evaluation; candidates built by Defs 10 and 11 reuse
/// the scenario's environment with a different path.
struct Candidate {
  const Polyline* path = nullptr;
  bool taut = false;
};

namespace detail {

inline Candidate focus_candidate(const Context& ctx) { return {&ctx.tether().path, ctx.tether().taut}; }

inline Verdict straightness(const Polyline& p) {
  const Segment l{p.front(), p.back()};
  double worst = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = distance_to_segment(p.vertices()[i], l);
    if (d > worst) {
      worst = d;
      at = i;
    }
  }
  if (worst <= kGeomTol) return Verdict::not_entangled();
  return Verdict::entangled({"bend-vertex", {p.vertices()[at]}, {}, "distance " + std::to_string(worst), false});
}

inline bool triangle_blocked(Point2 a, Point2 b, Point2 c, const std::vector<Polygon>& obstacles) {
  const std::vector<Point2> tri{a, b, c};
  if (std::abs(signed_area(tri)) <= kGeomTol) {
    const std::vector<Polygon>& obs = obstacles;
    return !(segment_clear({a, b}, obs) && segment_clear({b, c}, obs) && segment_clear({a, c}, obs));
  }
  Polygon t{tri};
  if (signed_area(t) < 0) std::reverse(t.vertices.begin(), t.vertices.end());
  for (const auto& o : obstacles)
    if (polygon_interiors_intersect(t, o)) return true;
  return false;
}

// Word of γ[u1, u2] from reduced prefix words at u1 and u2.
inline Word sub_word(const Word& pi, const Word& pj) {
  std::size_t c = 0;
  while (c < pi.size() && c < pj.size() && pi[c] == pj[c]) ++c;
  Word w;
  w.reserve(pi.size() - c + pj.size() - c);
  for (std::size_t k = pi.size(); k-- > c;) w.push_back(pi[k].inverse());
  w.insert(w.end(), pj.begin() + static_cast<std::ptrdiff_t>(c), pj.end());
  return w;
}

inline std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::size_t index_of(const std::vector<double>& sorted, double u) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), u) - sorted.begin());
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Definitions 1 and 2: taut tethers

inline Verdict def1_taut_obstacle(const Context&, Candidate c) {
  if (!c.taut) return Verdict::not_applicable("C1");
  return detail::straightness(*c.path);
}

inline Verdict def2_taut_multi(const Context& ctx, Candidate c) {
  if (ctx.scenario().robots.size() < 2) return Verdict::not_applicable("C2");
  if (!ctx.scenario().env.obstacles.empty()) return Verdict::not_applicable("C3");
  if (!c.taut) return Verdict::not_applicable("C1");
  return detail::straightness(*c.path);
}

// ---------------------------------------------------------------------------
// Definition 3: other robots' letters in the projected signature

inline Verdict def3_slack_multi(const Context& ctx, Candidate c) {
  const auto& s = ctx.scenario();
  if (s.robots.size() < 2) return Verdict::not_applicable("C2");
  const auto& curves = ctx.curves();
  const Word w = signature(*c.path, curves);
  for (std::size_t j = 0; j < s.robots.size(); ++j) {
    if (j == ctx.focus()) continue;
    int count = 0;
    for (const auto& l : w)
      if (curves.letters[static_cast<std::size_t>(l.curve)].owner == static_cast<int>(j)) ++count;
    if (count >= 2)
      return Verdict::entangled(
          {"repeated-letter", {}, {}, "robot " + s.robots[j].robot_id + " in " + curves.to_string(w), false});
  }
  return Verdict::not_entangled();
}

// ---------------------------------------------------------------------------
// Definitions 4 and 5: loops

inline Verdict def4_no_obstacle_loops(const Context& ctx, Candidate c) {
  if (ctx.projected()) return Verdict::not_applicable("C4");
  const Polyline& p = *c.path;
  std::vector<std::pair<double, double>> pairs;
  for (const auto& x : self_intersections(p)) pairs.push_back({x.s1, x.s2});
  if (p.closed()) pairs.push_back({0.0, 1.0});
  if (pairs.empty()) return Verdict::not_entangled();
  std::vector<double> us;
  for (const auto& [a, b] : pairs) {
    us.push_back(a);
    us.push_back(b);
  }
  us = detail::sorted_unique(std::move(us));
  const auto words = prefix_words(p, us, ctx.curves(), false);
  for (const auto& [a, b] : pairs) {
    const Word loop = detail::sub_word(words[detail::index_of(us, a)], words[detail::index_of(us, b)]);
    if (!loop.empty())
      return Verdict::entangled({"non-null-loop", {p.at(a), p.at(b)}, {a, b}, ctx.curves().to_string(loop), false});
  }
  return Verdict::not_entangled();
}

inline Verdict def5_closed_null(const Context& ctx, Candidate c) {
  if (!c.path->closed()) return Verdict::not_applicable("C5");
  const Word w = homotopy_word(*c.path, ctx.curves());
  if (w.empty()) return Verdict::not_entangled();
  return Verdict::entangled({"non-null-loop", {c.path->front()}, {0.0, 1.0}, ctx.curves().to_string(w), false});
}

// ---------------------------------------------------------------------------
// Definitions 6 and 7: obstacle-free hull and linear retraction

inline Verdict def6_convex_hull(const Context& ctx, Candidate c) {
  if (ctx.projected()) return Verdict::not_applicable("3d-projection");
  const Polygon hull = convex_hull(c.path->vertices());
  const auto& obs = ctx.env().obstacles;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    bool hit = false;
    if (hull.size() >= 3)
      hit = polygon_interiors_intersect(hull, obs[i]);
    else if (hull.size() == 2)
      hit = !segment_clear({hull.vertices[0], hull.vertices[1]}, obs[i]);
    else
      hit = strictly_inside(hull.vertices[0], obs[i]);
    if (hit) return Verdict::entangled({"hull-overlap", hull.vertices, {}, "obstacle z" + std::to_string(i + 1), false});
  }
  return Verdict::not_entangled();
}

inline Verdict def7_linear_homotopy(const Context& ctx, Candidate c) {
  if (ctx.projected()) return Verdict::not_applicable("3d-projection");
  const Polyline& p = *c.path;
  const Point2 xa = p.front();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Point2 a = p.vertices()[i];
    const Point2 b = p.vertices()[i + 1];
    if (detail::triangle_blocked(a, b, xa, ctx.env().obstacles))
      return Verdict::entangled({"blocked-triangle", {a, b, xa}, {static_cast<double>(i)}, {}, false});
  }
  return Verdict::not_entangled();
}

// ---------------------------------------------------------------------------
// Definition 8: safe set reachable by a short straight move

/// Targets x = x_r + r·(cos θ, sin θ) on a polar grid, plus x_r itself.
inline std::vector<Point2> def8_targets(Point2 xr, double d_max) {
  std::vector<Point2> out{xr};
  if (d_max <= 0.0) return out;
  for (int k = 0; k < kTargetDirections; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kTargetDirections;
    const Point2 dir{std::cos(th), std::sin(th)};
    for (int m = 1; m <= kTargetLengths; ++m) out.push_back(xr + (d_max * m / kTargetLengths) * dir);
  }
  return out;
}

inline Verdict def8_safe_set(const Context& ctx, Candidate c) {
  if (ctx.projected()) return Verdict::not_applicable("3d-projection");
  const Polyline& p = *c.path;
  const auto& obs = ctx.env().obstacles;
  const auto& curves = ctx.curves();
  const Point2 xa = p.front();
  const Point2 xr = p.back();
  const Word w = homotopy_word(p, curves);
  for (const Point2 x : def8_targets(xr, ctx.params().d_max)) {
    if (!ctx.env().bounds.contains(x) || strictly_inside_any(x, obs)) continue;
    if (!segment_clear({xr, x}, obs) || !segment_clear({xa, x}, obs)) continue;
    const Word moved = reduced_concat(w, segment_word(xr, x, curves));
    if (moved == segment_word(xa, x, curves)) return Verdict::not_entangled();
  }
  return Verdict::entangled({"no-safe-target", {xr}, {ctx.params().d_max}, curves.to_string(w), true});
}

// ---------------------------------------------------------------------------
// Definition 9: local visibility

namespace detail {

inline std::vector<double> def9_samples(const Polyline& p, int per_unit) {
  std::vector<double> us;
  if (p.length() == 0.0) return {0.0};
  for (double c : p.cumulative()) us.push_back(c / p.length());
  const int n = std::max(2, static_cast<int>(std::ceil(per_unit * p.length())));
  for (int i = 0; i <= n; ++i) us.push_back(static_cast<double>(i) / n);
  for (const auto& x : self_intersections(p)) {
    us.push_back(x.s1);
    us.push_back(x.s2);
  }
  return sorted_unique(std::move(us));
}

}  // namespace detail

inline Verdict def9_local_visibility(const Context& ctx, Candidate c) {
  const bool beta = ctx.projected();
  if (beta && ctx.params().beta_mode == BetaMode::Off) return Verdict::not_applicable("3d-projection");
  const Polyline& p = *c.path;
  const auto& obs = ctx.env().obstacles;
  const auto& curves = ctx.curves();
  const auto us = detail::def9_samples(p, ctx.params().samples_per_unit);
  std::vector<Point2> q(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) q[i] = p.at(us[i]);
  const auto pw = prefix_words(p, us, curves, false);
  std::vector<Word> fw;
  if (beta) fw = prefix_words(p, us, curves, true);

  for (std::size_t i = 0; i < us.size(); ++i) {
    for (std::size_t j = i + 1; j < us.size(); ++j) {
      if (!segment_clear({q[i], q[j]}, obs)) continue;
      const Word sub = detail::sub_word(pw[i], pw[j]);
      const Word chord = segment_word(q[i], q[j], curves);
      if (sub != chord)
        return Verdict::entangled(
            {"non-homotopic-chord", {q[i], q[j]}, {us[i], us[j]}, curves.to_string(sub), false});
      if (beta && detail::sub_word(fw[i], fw[j]) != segment_word(q[i], q[j], curves, true)) {
        const Polyline piece = p.sub(us[i], us[j]);
        const double f = homotopic_frechet_upper(piece, straight(q[i], q[j]), ctx.graph());
        if (f > piece.length() + kGeomTol)
          return Verdict::entangled({"beta-bound", {q[i], q[j]}, {us[i], us[j]}, std::to_string(f), true});
      }
    }
  }
  return Verdict::not_entangled();
}

// ---------------------------------------------------------------------------
// Definitions 10 and 11: relaxation over the homotopy class

inline Verdict evaluate_definition(int def, const Context& ctx, Candidate c);

/// Candidate shapes in the homotopy class of γ: γ itself, its taut
/// representative, and blends keeping k evenly spaced original vertices with
/// taut pieces in between.
inline std::vector<Polyline> relaxation_candidates(const Context& ctx, const Polyline& p) {
  std::vector<Polyline> out{p};
  const auto& g = ctx.graph();
  out.push_back(taut_representative(p, g));
  const std::size_t inner = p.size() > 2 ? p.size() - 2 : 0;
  for (std::size_t k : {1u, 2u, 4u, 8u}) {
    if (k > inner) break;
    std::vector<std::size_t> keep{0};
    for (std::size_t m = 1; m <= k; ++m) keep.push_back((m * (p.size() - 1)) / (k + 1));
    keep.push_back(p.size() - 1);
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<Point2> pts{p.front()};
    for (std::size_t a = 0; a + 1 < keep.size(); ++a) {
      const std::span<const Point2> piece(p.vertices().begin() + static_cast<std::ptrdiff_t>(keep[a]),
                                          keep[a + 1] - keep[a] + 1);
      const Polyline t = g.taut(piece.front(), piece.back(), homotopy_word(piece, ctx.curves()));
      pts.insert(pts.end(), t.vertices().begin() + 1, t.vertices().end());
    }
    out.push_back(Polyline::from_points(std::move(pts)));
  }
  return out;
}

inline Verdict relaxed(const Context& ctx, Candidate c, int base, double delta) {
  const Polyline& p = *c.path;
  const auto cands = relaxation_candidates(ctx, p);
  const double taut_len = cands[1].length();
  std::optional<Verdict> first_na;
  bool any_applicable = false;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const bool taut = i == 0 ? c.taut : cands[i].length() <= (1.0 + kTautTol) * taut_len + kGeomTol;
    const Verdict v = evaluate_definition(base, ctx, {&cands[i], taut});
    if (!v.applicable()) {
      if (!first_na) first_na = v;
      continue;
    }
    any_applicable = true;
    if (!v.is_n()) continue;
    if (i == 0 || std::isinf(delta)) return Verdict::not_entangled();
    if (homotopic_frechet_upper(p, cands[i], ctx.graph()) <= delta) return Verdict::not_entangled();
  }
  if (!any_applicable) return *first_na;
  return Verdict::entangled({"no-relaxed-candidate", {}, {delta}, "base " + std::to_string(base), true});
}

inline Verdict def10_delta_relaxed(const Context& ctx, Candidate c) {
  return relaxed(ctx, c, ctx.params().relax_base, ctx.params().delta);
}

inline Verdict def11_path_class_relaxed(const Context& ctx, Candidate c) {
  return relaxed(ctx, c, 9, std::numeric_limits<double>::infinity());
}

inline Verdict evaluate_definition(int def, const Context& ctx, Candidate c) {
  switch (def) {
    case 1: return def1_taut_obstacle(ctx, c);
    case 2: return def2_taut_multi(ctx, c);
    case 3: return def3_slack_multi(ctx, c);
    case 4: return def4_no_obstacle_loops(ctx, c);
    case 5: return def5_closed_null(ctx, c);
    case 6: return def6_convex_hull(ctx, c);
    case 7: return def7_linear_homotopy(ctx, c);
    case 8: return def8_safe_set(ctx, c);
    case 9: return def9_local_visibility(ctx, c);
    case 10: return def10_delta_relaxed(ctx, c);
    case 11: return def11_path_class_relaxed(ctx, c);
    default: throw Error("bad-definition", "definition id must be in 1..11");
  }
}

inline Verdict evaluate_definition(int def, const Context& ctx) {
  return evaluate_definition(def, ctx, detail::focus_candidate(ctx));
}

using VerdictRow = std::vector<std::pair<int, Verdict>>;

/// Verdicts for definitions 1..11. Failures become NotApplicable("error:<code>").
inline VerdictRow evaluate_all(const Scenario& s) {
  VerdictRow row;
  std::optional<Context> ctx;
  std::string setup_error;
  try {
    ctx.emplace(s);
  } catch (const Error& e) {
    setup_error = e.code();
  }
  for (int d = 1; d <= kDefinitionCount; ++d) {
    if (!ctx) {
      row.push_back({d, Verdict::not_applicable("error:" + setup_error)});
      continue;
    }
    try {
      row.push_back({d, evaluate_definition(d, *ctx)});
    } catch (const Error& e) {
      row.push_back({d, Verdict::not_applicable("error:" + e.code())});
    }
  }
  return row;
}

inline bool has_errors(const VerdictRow& row) {
  return std::any_of(row.begin(), row.end(), [](const auto& dv) { return dv.second.reason.rfind("error:", 0) == 0; });
}

}  // namespace entk
