#pragma once

// Raster maps of the non-entangled free workspace per definition, and the
// check of the inclusion chain N1 = N2 = N6 = N7 ⊆ N8 ⊆ N4 = N9.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/geometry.hpp"

namespace entk {

inline constexpr int kDefaultResolution = 200;

struct NEMap {
  Point2 origin;  // lower-left corner of cell (0, 0)
  double cell_w = 0.0;
  double cell_h = 0.0;
  int width = 0;
  int height = 0;
  int definition = 0;
  Point2 anchor;
  std::vector<std::uint8_t> cells;  // row-major, row 0 at min y

  bool at(int i, int j) const { return cells[static_cast<std::size_t>(j) * width + i] != 0; }
  void set(int i, int j, bool v) { cells[static_cast<std::size_t>(j) * width + i] = v ? 1 : 0; }
  Point2 center(int i, int j) const { return {origin.x + (i + 0.5) * cell_w, origin.y + (j + 0.5) * cell_h}; }
  std::size_t count() const { return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), 1)); }
  bool same_grid(const NEMap& o) const {
    return origin == o.origin && cell_w == o.cell_w && cell_h == o.cell_h && width == o.width && height == o.height;
  }
};

namespace detail {

inline NEMap blank_map(const Box& b, int resolution, int def, Point2 anchor) {
  if (resolution < 1) throw Error("bad-resolution", "resolution must be >= 1");
  NEMap m;
  m.origin = b.min;
  m.width = resolution;
  m.height = resolution;
  m.cell_w = b.width() / resolution;
  m.cell_h = b.height() / resolution;
  m.definition = def;
  m.anchor = anchor;
  m.cells.assign(static_cast<std::size_t>(resolution) * resolution, 0);
  return m;
}

inline void check_anchor(const Environment& env, Point2 xa) {
  if (strictly_inside_any(xa, env.obstacles) || !env.bounds.contains(xa))
    throw Error("anchor-in-obstacle", "anchor is not in free space");
}

}  // namespace detail

/// Cells whose centre is free and in straight line of sight of x_a (Defs 1, 2, 6, 7).
inline NEMap map_visibility(const Environment& env, Point2 xa, int resolution = kDefaultResolution, int def = 7) {
  detail::check_anchor(env, xa);
  NEMap m = detail::blank_map(env.bounds, resolution, def, xa);
  for (int j = 0; j < m.height; ++j)
    for (int i = 0; i < m.width; ++i) {
      const Point2 c = m.center(i, j);
      m.set(i, j, !strictly_inside_any(c, env.obstacles) && segment_clear({xa, c}, env.obstacles));
    }
  return m;
}

/// Cells whose centre is in free space (Defs 4, 9).
inline NEMap map_full_free(const Environment& env, Point2 xa, int resolution = kDefaultResolution, int def = 9) {
  NEMap m = detail::blank_map(env.bounds, resolution, def, xa);
  for (int j = 0; j < m.height; ++j)
    for (int i = 0; i < m.width; ++i) m.set(i, j, !strictly_inside_any(m.center(i, j), env.obstacles));
  return m;
}

/// Def. 8 with straight moves of length <= d_max into the line-of-sight set:
/// a cell is true when some visible cell centre is reachable from it by a
/// clear segment no longer than d_max.
inline NEMap map_def8(const Environment& env, Point2 xa, double d_max, int resolution = kDefaultResolution) {
  const NEMap vis = map_visibility(env, xa, resolution, 8);
  NEMap m = vis;
  const int ri = static_cast<int>(std::floor(d_max / vis.cell_w));
  const int rj = static_cast<int>(std::floor(d_max / vis.cell_h));
  std::vector<std::pair<int, int>> offsets;
  for (int dj = -rj; dj <= rj; ++dj)
    for (int di = -ri; di <= ri; ++di) {
      if (di == 0 && dj == 0) continue;
      if (std::hypot(di * vis.cell_w, dj * vis.cell_h) <= d_max) offsets.push_back({di, dj});
    }
  std::stable_sort(offsets.begin(), offsets.end(), [&](auto a, auto b) {
    return std::hypot(a.first * vis.cell_w, a.second * vis.cell_h) < std::hypot(b.first * vis.cell_w, b.second * vis.cell_h);
  });
  for (int j = 0; j < m.height; ++j) {
    for (int i = 0; i < m.width; ++i) {
      if (vis.at(i, j)) continue;
      const Point2 c = m.center(i, j);
      if (strictly_inside_any(c, env.obstacles)) continue;
      for (const auto& [di, dj] : offsets) {
        const int a = i + di;
        const int b = j + dj;
        if (a < 0 || b < 0 || a >= m.width || b >= m.height || !vis.at(a, b)) continue;
        if (segment_clear({c, m.center(a, b)}, env.obstacles)) {
          m.set(i, j, true);
          break;
        }
      }
    }
  }
  return m;
}

/// Def. 5: only the anchor itself (the cell containing it).
inline NEMap map_anchor_only(const Environment& env, Point2 xa, int resolution = kDefaultResolution) {
  detail::check_anchor(env, xa);
  NEMap m = detail::blank_map(env.bounds, resolution, 5, xa);
  const int i = std::clamp(static_cast<int>(std::floor((xa.x - m.origin.x) / m.cell_w)), 0, m.width - 1);
  const int j = std::clamp(static_cast<int>(std::floor((xa.y - m.origin.y) / m.cell_h)), 0, m.height - 1);
  m.set(i, j, true);
  return m;
}

inline bool map_supported(int def) { return def == 1 || def == 2 || def == 4 || def == 6 || def == 7 || def == 8 || def == 9; }

inline NEMap map_for_definition(int def, const Environment& env, Point2 xa, double d_max,
                                int resolution = kDefaultResolution) {
  switch (def) {
    case 1:
    case 2:
    case 6:
    case 7: return map_visibility(env, xa, resolution, def);
    case 4:
    case 9: detail::check_anchor(env, xa); return map_full_free(env, xa, resolution, def);
    case 8: return map_def8(env, xa, d_max, resolution);
    case 3:
      throw Error("unsupported-definition",
                  "no workspace map for definition 3: it depends on the other robots' tether configurations");
    case 5:
      throw Error("unsupported-definition", "no raster map for definition 5: its workspace is the anchor point alone");
    default:
      throw Error("unsupported-definition",
                  "no workspace map for definition " + std::to_string(def) + ": its free workspace is not characterised");
  }
}

// ---------------------------------------------------------------------------
// Inclusion chain

struct ChainViolation {
  std::string relation;  // e.g. "N7 <= N8"
  int i = 0;
  int j = 0;
};

struct ChainReport {
  std::vector<ChainViolation> violations;  // outside the 1-cell boundary band
  std::size_t band_cells = 0;              // disagreements tolerated inside the band
  bool ok() const { return violations.empty(); }
};

namespace detail {

// A cell is in the band when any 8-neighbour of it differs from it in `m`.
inline bool on_boundary(const NEMap& m, int i, int j) {
  const bool v = m.at(i, j);
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di) {
      const int a = i + di;
      const int b = j + dj;
      if (a < 0 || b < 0 || a >= m.width || b >= m.height) continue;
      if (m.at(a, b) != v) return true;
    }
  return false;
}

inline void check_subset(const NEMap& a, const NEMap& b, const std::string& rel, ChainReport& r) {
  for (int j = 0; j < a.height; ++j)
    for (int i = 0; i < a.width; ++i) {
      if (!a.at(i, j) || b.at(i, j)) continue;
      if (on_boundary(a, i, j) || on_boundary(b, i, j))
        ++r.band_cells;
      else
        r.violations.push_back({rel, i, j});
    }
}

}  // namespace detail

/// Checks N1 = N2 = N6 = N7 ⊆ N8 ⊆ N4 = N9 over whichever of these maps are
/// present (keyed by definition id).
inline ChainReport check_inclusion_chain(const std::map<int, NEMap>& maps) {
  ChainReport r;
  if (maps.empty()) return r;
  const NEMap& first = maps.begin()->second;
  for (const auto& [d, m] : maps)
    if (!m.same_grid(first)) throw Error("grid-mismatch", "maps are not on the same grid");
  auto name = [](int d) { return "N" + std::to_string(d); };
  auto equal = [&](int a, int b) {
    if (!maps.count(a) || !maps.count(b)) return;
    detail::check_subset(maps.at(a), maps.at(b), name(a) + " = " + name(b), r);
    detail::check_subset(maps.at(b), maps.at(a), name(a) + " = " + name(b), r);
  };
  auto subset = [&](int a, int b) {
    if (!maps.count(a) || !maps.count(b)) return;
    detail::check_subset(maps.at(a), maps.at(b), name(a) + " <= " + name(b), r);
  };
  equal(1, 2);
  equal(1, 6);
  equal(1, 7);
  subset(7, 8);
  subset(8, 4);
  equal(4, 9);
  subset(7, 4);
  return r;
}

// ---------------------------------------------------------------------------
// Export

/// Binary PGM, 255 = true, top row = max y.
inline std::string map_to_pgm(const NEMap& m) {
  std::string out = "P5\n" + std::to_string(m.width) + " " + std::to_string(m.height) + "\n255\n";
  for (int j = m.height - 1; j >= 0; --j)
    for (int i = 0; i < m.width; ++i) out.push_back(static_cast<char>(m.at(i, j) ? 255 : 0));
  return out;
}

/// Run-length encoding of the row-major cells, as [value, count] pairs.
inline std::string map_to_json(const NEMap& m) {
  nlohmann::ordered_json j;
  j["definition"] = m.definition;
  j["width"] = m.width;
  j["height"] = m.height;
  j["origin"] = {m.origin.x, m.origin.y};
  j["cell"] = {m.cell_w, m.cell_h};
  j["anchor"] = {m.anchor.x, m.anchor.y};
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  std::size_t k = 0;
  while (k < m.cells.size()) {
    std::size_t e = k;
    while (e < m.cells.size() && m.cells[e] == m.cells[k]) ++e;
    runs.push_back({m.cells[k], e - k});
    k = e;
  }
  j["rle"] = runs;
  return j.dump() + "\n";
}

inline NEMap map_from_json(const std::string& bytes) {
  const auto j = nlohmann::json::parse(bytes);
  NEMap m;
  m.definition = j.at("definition");
  m.width = j.at("width");
  m.height = j.at("height");
  m.origin = {j.at("origin")[0], j.at("origin")[1]};
  m.cell_w = j.at("cell")[0];
  m.cell_h = j.at("cell")[1];
  m.anchor = {j.at("anchor")[0], j.at("anchor")[1]};
  for (const auto& run : j.at("rle"))
    m.cells.insert(m.cells.end(), run[1].get<std::size_t>(), run[0].get<std::uint8_t>());
  if (m.cells.size() != static_cast<std::size_t>(m.width) * m.height)
    throw Error("schema", "run lengths do not cover the grid");
  return m;
}

}  // namespace entk
