#pragma once

// Scenario builders shared by the unit tests.

#include <filesystem>
#include <string>
#include <vector>

#include "entk/definitions.hpp"
#include "entk/scenario_io.hpp"

namespace support {

inline std::filesystem::path source_dir() { return ENTK_SOURCE_DIR; }

inline std::filesystem::path figure_path(const std::string& id) {
  return source_dir() / "corpus" / "figures" / "scenarios" / (id + ".json");
}

inline entk::Scenario figure(const std::string& id) { return entk::load_scenario_file(figure_path(id)); }

struct RobotSpec {
  std::string id;
  std::vector<entk::Point2> tether;
  bool taut = false;
};

/// Unvalidated scenario; the first robot is the focus.
inline entk::Scenario make_scenario(entk::Box bounds, std::vector<std::vector<entk::Point2>> obstacles,
                                    std::vector<RobotSpec> robots,
                                    entk::Dimension dim = entk::Dimension::Planar) {
  entk::Scenario s;
  s.id = "test";
  s.dimension = dim;
  s.env.bounds = bounds;
  for (auto& o : obstacles) s.env.obstacles.push_back(entk::make_polygon(std::move(o)));
  for (auto& r : robots) s.robots.push_back({r.id, entk::Polyline(std::move(r.tether)), r.taut});
  s.focus = s.robots.front().robot_id;
  return s;
}

/// "N E -- ..." codes of definitions 1..11.
inline std::string codes(const entk::VerdictRow& row) {
  std::string out;
  for (const auto& [d, v] : row) out += (out.empty() ? "" : " ") + v.code();
  return out;
}

inline entk::Verdict verdict(const entk::VerdictRow& row, int def) { return row.at(static_cast<std::size_t>(def - 1)).second; }

}  // namespace support
