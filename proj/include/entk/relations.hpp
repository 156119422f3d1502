#pragma once

// Random scenario generation and the empirical implication matrix between the
// definitions.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "entk/analysis.hpp"
#include "entk/definitions.hpp"
#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/geometry.hpp"
#include "entk/homotopy.hpp"
#include "entk/scenario_io.hpp"
#include "entk/visibility.hpp"

namespace entk {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct GenParams {
  std::uint64_t seed = kDefaultSeed;
  int obstacles_min = 0;
  int obstacles_max = 4;
  int vertices_min = 3;
  int vertices_max = 7;
  int waypoints_min = 1;
  int waypoints_max = 5;
  double p_taut = 0.3;
  double p_closed = 0.2;
  double p_multi = 0.3;
  Box bounds{{0.0, 0.0}, {6.0, 6.0}};
  double epsilon = 0.15;
  DefinitionParams params{};

  void validate() const {
    if (obstacles_min < 0 || obstacles_max < obstacles_min) throw Error("bad-params", "obstacle count range");
    if (vertices_min < 3 || vertices_max < vertices_min) throw Error("bad-params", "obstacle vertex range");
    if (waypoints_min < 1 || waypoints_max < waypoints_min) throw Error("bad-params", "waypoint count range");
    for (double p : {p_taut, p_closed, p_multi})
      if (!(p >= 0.0 && p <= 1.0)) throw Error("bad-params", "probabilities must be in [0, 1]");
    if (!(bounds.min.x < bounds.max.x && bounds.min.y < bounds.max.y)) throw Error("bad-params", "bounds");
  }
};

/// Platform-independent stream: mt19937_64 with explicit bit-to-number maps.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index) : engine_(mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL))) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(double p) { return uniform() < p; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::mt19937_64 engine_;
};

namespace detail {

inline std::vector<Polygon> random_obstacles(Rng& rng, const GenParams& gp) {
  const int count = rng.integer(gp.obstacles_min, gp.obstacles_max);
  const Box& b = gp.bounds;
  const double scale = std::min(b.width(), b.height());
  std::vector<Polygon> out;
  std::vector<std::pair<Point2, double>> discs;
  for (int k = 0; k < count; ++k) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      const double r = rng.uniform(0.05, 0.15) * scale;
      const Point2 c{rng.uniform(b.min.x + r + 0.05 * scale, b.max.x - r - 0.05 * scale),
                     rng.uniform(b.min.y + r + 0.05 * scale, b.max.y - r - 0.05 * scale)};
      const bool clash = std::any_of(discs.begin(), discs.end(), [&](const auto& d) {
        return distance(c, d.first) < r + d.second + 0.04 * scale;
      });
      if (clash) continue;
      const int n = rng.integer(gp.vertices_min, gp.vertices_max);
      std::vector<double> angles;
      for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
      std::sort(angles.begin(), angles.end());
      std::vector<Point2> pts;
      for (double a : angles) {
        const double rr = r * rng.uniform(0.5, 1.0);
        pts.push_back({c.x + rr * std::cos(a), c.y + rr * std::sin(a)});
      }
      try {
        Polygon p = make_polygon(pts);
        if (!strictly_inside(c, p) || std::abs(signed_area(p)) < 0.02 * r * r) continue;
        out.push_back(std::move(p));
        discs.push_back({c, r});
        break;
      } catch (const Error&) {
        continue;
      }
    }
  }
  return out;
}

inline Point2 random_free_point(Rng& rng, const Box& b, const std::vector<Polygon>& obstacles) {
  const double m = 0.02 * std::min(b.width(), b.height());
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Point2 p{rng.uniform(b.min.x + m, b.max.x - m), rng.uniform(b.min.y + m, b.max.y - m)};
    if (!strictly_inside_any(p, obstacles)) return p;
  }
  throw Error("generation-budget", "no free point found");
}

// Random walk through free waypoints; blocked legs are replaced by shortest paths.
inline Polyline random_tether(Rng& rng, const GenParams& gp, const std::vector<Polygon>& obstacles, bool closed) {
  EffectiveEnvironment env;
  env.bounds = gp.bounds;
  env.obstacles = obstacles;
  env.owner.assign(obstacles.size(), -1);
  const RepresentativeCurves none;
  const VisibilityGraph g(env, none);
  const Point2 anchor = random_free_point(rng, gp.bounds, obstacles);
  std::vector<Point2> stops{anchor};
  const int w = rng.integer(gp.waypoints_min, gp.waypoints_max);
  for (int i = 0; i < w; ++i) stops.push_back(random_free_point(rng, gp.bounds, obstacles));
  if (closed) stops.push_back(anchor);
  std::vector<Point2> pts{anchor};
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    if (segment_clear({stops[i], stops[i + 1]}, obstacles)) {
      pts.push_back(stops[i + 1]);
    } else {
      const Polyline leg = g.shortest_path(stops[i], stops[i + 1]);
      pts.insert(pts.end(), leg.vertices().begin() + 1, leg.vertices().end());
    }
  }
  return Polyline::from_points(std::move(pts));
}

}  // namespace detail

/// Deterministic function of (gp.seed, index). The result passes full
/// validation (it is rendered and re-loaded before being returned).
inline Scenario random_scenario(const GenParams& gp, std::uint64_t index) {
  gp.validate();
  Rng rng(gp.seed, index);
  const bool closed = rng.chance(gp.p_closed);
  const bool multi = rng.chance(gp.p_multi);
  const bool taut = rng.chance(gp.p_taut);
  for (int attempt = 0; attempt < 32; ++attempt) {
    try {
      Scenario s;
      s.id = "gen-" + std::to_string(index);
      s.env.bounds = gp.bounds;
      s.env.obstacles = detail::random_obstacles(rng, gp);
      s.epsilon = gp.epsilon;
      s.params = gp.params;
      if (multi) {
        // r1 keeps clear of r2 inflated a little beyond the first ladder radius.
        Scenario probe = s;
        probe.robots.push_back({"r0", Polyline::constant(gp.bounds.min), false});
        probe.robots.push_back({"r2", detail::random_tether(rng, gp, s.env.obstacles, false), false});
        auto infl = try_inflate(probe, 0, 1.25 * gp.epsilon);
        if (!infl) continue;
        auto merged = merge_inflations(probe, 0, std::move(*infl));
        if (!merged) continue;
        s.robots.push_back({"r1", detail::random_tether(rng, gp, merged->obstacles, closed), false});
        s.robots.push_back(std::move(probe.robots[1]));
      } else {
        s.robots.push_back({"r1", detail::random_tether(rng, gp, s.env.obstacles, closed), false});
      }
      s.focus = "r1";
      if (s.robots[0].path.size() < 2) continue;
      validate_structure(s);
      if (taut) {
        const Context ctx(s);
        const Polyline t = ctx.taut();
        if (t.size() >= 2) {
          s.robots[0].path = t;
          s.robots[0].taut = true;
        }
      }
      { const Context ctx(s); }
      return load_scenario(render_scenario(s));
    } catch (const Error&) {
      continue;
    }
  }
  throw Error("generation-budget", "scenario " + std::to_string(index) + " could not be generated");
}

// ---------------------------------------------------------------------------
// Implication matrix

struct Mark {
  int row;
  int col;
  bool closed_only;  // tested only on closed tethers
};

/// The marked implications NotEntangled(row) ⇒ NotEntangled(col).
inline const std::vector<Mark>& implication_marks() {
  static const std::vector<Mark> marks = [] {
    std::vector<Mark> m;
    auto add = [&](int r, std::initializer_list<int> cols) {
      for (int c : cols) m.push_back({r, c, false});
    };
    add(1, {4, 6, 7, 9, 11});
    add(2, {1, 3, 4, 5, 6, 7, 9, 11});
    add(4, {5});
    m.push_back({4, 11, true});
    add(5, {4, 11});
    add(6, {1, 4, 5, 7, 9, 11});
    add(7, {4, 5, 11});
    add(9, {4, 5, 11});
    return m;
  }();
  return marks;
}

inline const Mark* find_mark(int row, int col) {
  for (const auto& m : implication_marks())
    if (m.row == row && m.col == col) return &m;
  return nullptr;
}

struct TrialRecord {
  std::string id;
  bool generated = false;
  std::string error;
  bool closed = false;
  std::array<char, kDefinitionCount + 1> state{};  // 'N', 'E', '-' per definition (index 1..11)
  std::array<bool, kDefinitionCount + 1> conservative{};
};

struct PairStats {
  int row = 0;
  int col = 0;
  bool marked = false;
  int applicable = 0;
  int both_n = 0;
  std::vector<std::string> violations;    // row N, col E
  std::vector<std::string> conservative;  // row N, col E only by a sampling limit
};

struct ImplicationReport {
  std::uint64_t seed = 0;
  int trials = 0;
  int generated = 0;
  std::vector<std::string> generation_failures;
  std::vector<PairStats> pairs;  // every ordered pair row != col, row-major

  const PairStats& pair(int row, int col) const {
    for (const auto& p : pairs)
      if (p.row == row && p.col == col) return p;
    throw Error("bad-definition", "no such pair");
  }
  int marked_violations() const {
    int n = 0;
    for (const auto& p : pairs)
      if (p.marked) n += static_cast<int>(p.violations.size());
    return n;
  }
  int witnessed_unmarked_pairs() const {
    int n = 0;
    for (const auto& p : pairs)
      if (!p.marked && !p.violations.empty()) ++n;
    return n;
  }
  bool low_power() const { return generated < 100; }
};

inline TrialRecord run_trial(const GenParams& gp, std::uint64_t index) {
  TrialRecord t;
  t.id = "gen-" + std::to_string(index);
  t.state.fill('-');
  Scenario s;
  try {
    s = random_scenario(gp, index);
  } catch (const Error& e) {
    t.error = e.code();
    return t;
  }
  t.generated = true;
  t.closed = s.focus_tether().closed();
  const auto row = evaluate_all(s);
  for (const auto& [d, v] : row) {
    t.state[static_cast<std::size_t>(d)] = v.is_n() ? 'N' : v.is_e() ? 'E' : '-';
    t.conservative[static_cast<std::size_t>(d)] = v.witness && v.witness->sampling_limit;
  }
  return t;
}

/// Runs trials [first, first + count) on `threads` workers; results in index order.
inline std::vector<TrialRecord> run_trials(const GenParams& gp, std::uint64_t first, int count, int threads) {
  std::vector<TrialRecord> out(static_cast<std::size_t>(std::max(count, 0)));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int k = next++; k < count; k = next++) out[static_cast<std::size_t>(k)] = run_trial(gp, first + k);
  };
  const int n = std::max(1, std::min(threads, count));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

inline ImplicationReport tabulate(const GenParams& gp, const std::vector<TrialRecord>& trials) {
  ImplicationReport r;
  r.seed = gp.seed;
  r.trials = static_cast<int>(trials.size());
  for (int a = 1; a <= kDefinitionCount; ++a)
    for (int b = 1; b <= kDefinitionCount; ++b)
      if (a != b) r.pairs.push_back({a, b, find_mark(a, b) != nullptr, 0, 0, {}, {}});
  for (const auto& t : trials) {
    if (!t.generated) {
      r.generation_failures.push_back(t.id + ": " + t.error);
      continue;
    }
    ++r.generated;
    for (auto& p : r.pairs) {
      const Mark* m = find_mark(p.row, p.col);
      if (m && m->closed_only && !t.closed) continue;
      const char a = t.state[static_cast<std::size_t>(p.row)];
      const char b = t.state[static_cast<std::size_t>(p.col)];
      if (a == '-' || b == '-') continue;
      ++p.applicable;
      if (a == 'N' && b == 'N') ++p.both_n;
      if (a == 'N' && b == 'E') {
        if (t.conservative[static_cast<std::size_t>(p.col)])
          p.conservative.push_back(t.id);
        else
          p.violations.push_back(t.id);
      }
    }
  }
  return r;
}

/// Implication matrix over `trials` generated scenarios.
inline ImplicationReport run_matrix(const GenParams& gp, int trials, int threads = 1) {
  if (trials < 1) throw Error("bad-params", "trials must be >= 1");
  return tabulate(gp, run_trials(gp, 0, trials, threads));
}

/// Runs batches of trials until `want` unmarked pairs have a separating
/// scenario or `max_trials` is reached. Batch boundaries are fixed, so the
/// outcome does not depend on the thread count.
inline ImplicationReport search_witnesses(const GenParams& gp, int max_trials, int want, int threads = 1,
                                          int batch = 250) {
  std::vector<TrialRecord> all;
  ImplicationReport r;
  while (static_cast<int>(all.size()) < max_trials) {
    const int n = std::min(batch, max_trials - static_cast<int>(all.size()));
    auto part = run_trials(gp, all.size(), n, threads);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    r = tabulate(gp, all);
    if (r.witnessed_unmarked_pairs() >= want) break;
  }
  return r;
}

inline std::string matrix_markdown(const ImplicationReport& r) {
  std::string out = "Implication matrix (row NotEntangled => column NotEntangled)\n\n";
  out += "seed " + std::to_string(r.seed) + ", trials " + std::to_string(r.trials) + ", generated " +
         std::to_string(r.generated) + (r.low_power() ? " (low power)" : "") + "\n\n";
  out += "X = marked, verified; ! = marked, violated; - = unmarked; w = unmarked with a separating scenario\n\n|   |";
  for (int c = 1; c <= kDefinitionCount; ++c) out += " " + std::to_string(c) + " |";
  out += "\n|---|";
  for (int c = 1; c <= kDefinitionCount; ++c) out += ":-:|";
  out += "\n";
  for (int a = 1; a <= kDefinitionCount; ++a) {
    out += "| " + std::to_string(a) + " |";
    for (int b = 1; b <= kDefinitionCount; ++b) {
      if (a == b) {
        out += "   |";
        continue;
      }
      const auto& p = r.pair(a, b);
      const char* cell = p.marked ? (p.violations.empty() ? "X" : "!") : (p.violations.empty() ? "-" : "w");
      out += std::string(" ") + cell + " |";
    }
    out += "\n";
  }
  out += "\n| pair | marked | applicable | both N | violations | sampling-limited |\n|---|:-:|--:|--:|--:|--:|\n";
  for (const auto& p : r.pairs) {
    if (!p.marked && p.violations.empty()) continue;
    out += "| " + std::to_string(p.row) + " => " + std::to_string(p.col) + " | " + (p.marked ? "yes" : "no") + " | " +
           std::to_string(p.applicable) + " | " + std::to_string(p.both_n) + " | " +
           std::to_string(p.violations.size()) + " | " + std::to_string(p.conservative.size()) + " |\n";
  }
  return out;
}

inline std::string matrix_json(const ImplicationReport& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["generated"] = r.generated;
  j["low_power"] = r.low_power();
  j["generation_failures"] = r.generation_failures;
  j["marked_violations"] = r.marked_violations();
  j["witnessed_unmarked_pairs"] = r.witnessed_unmarked_pairs();
  auto& pairs = j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"row", p.row},
                     {"col", p.col},
                     {"marked", p.marked},
                     {"applicable", p.applicable},
                     {"both_n", p.both_n},
                     {"violations", p.violations},
                     {"sampling_limited", p.conservative}});
  }
  return j.dump(2) + "\n";
}

}  // namespace entk
