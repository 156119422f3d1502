#pragma once

// Scenario JSON (schema 1) reading and writing.
//
// {
//   "schema": 1, "id": "...", "dimension": "2D" | "3D-projected",
//   "bounds": {"min": [x, y], "max": [x, y]},
//   "obstacles": [[[x, y], ...], ...],
//   "robots": [{"id": "...", "anchor": [x, y], "tether": [[x, y], ...], "taut": false}],
//   "focus": "...", "epsilon": number | null,
//   "params": {"d_max": 1, "delta": number | "inf", "beta_mode": "off" | "len-subpath",
//              "safe_base": 7, "samples_per_unit": 20, "relax_base": 9}
// }
//
// Every field of "params" is optional. Doubles are written in shortest
// round-trip form, so load(render(s)) reproduces s exactly.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entk/analysis.hpp"
#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/geometry.hpp"

namespace entk {

namespace detail {

using ojson = nlohmann::ordered_json;

inline Point2 read_point(const ojson& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("schema", std::string(what) + " must be [x, y]");
  const Point2 p{j[0].get<double>(), j[1].get<double>()};
  if (!is_finite(p)) throw Error("non-finite", std::string(what) + " is not finite");
  return p;
}

inline std::vector<Point2> read_points(const ojson& j, const char* what) {
  if (!j.is_array()) throw Error("schema", std::string(what) + " must be a list of points");
  std::vector<Point2> out;
  for (const auto& e : j) out.push_back(read_point(e, what));
  return out;
}

inline const ojson& field(const ojson& j, const char* key) {
  if (!j.contains(key)) throw Error("schema", std::string("missing field '") + key + "'");
  return j.at(key);
}

inline ojson write_point(Point2 p) { return ojson::array({p.x, p.y}); }

}  // namespace detail

/// Parses and validates a scenario, including the tautness of declared-taut
/// tethers.
inline Scenario load_scenario(const std::string& bytes) {
  using detail::ojson;
  ojson j;
  try {
    j = ojson::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("parse-error", e.what());
  }
  if (!j.is_object()) throw Error("schema", "scenario must be a JSON object");
  try {
    if (detail::field(j, "schema").get<int>() != 1) throw Error("schema", "unsupported schema version");
    Scenario s;
    s.id = detail::field(j, "id").get<std::string>();
    const std::string dim = j.value("dimension", std::string("2D"));
    if (dim == "2D")
      s.dimension = Dimension::Planar;
    else if (dim == "3D-projected")
      s.dimension = Dimension::Projected3D;
    else
      throw Error("schema", "dimension must be \"2D\" or \"3D-projected\"");
    const auto& b = detail::field(j, "bounds");
    s.env.bounds = {detail::read_point(detail::field(b, "min"), "bounds.min"),
                    detail::read_point(detail::field(b, "max"), "bounds.max")};
    if (j.contains("obstacles")) {
      if (!j["obstacles"].is_array()) throw Error("schema", "obstacles must be a list");
      for (const auto& o : j["obstacles"]) s.env.obstacles.push_back(make_polygon(detail::read_points(o, "obstacle")));
    }
    const auto& robots = detail::field(j, "robots");
    if (!robots.is_array()) throw Error("schema", "robots must be a list");
    for (const auto& r : robots) {
      TetherConfig t{detail::field(r, "id").get<std::string>(),
                     Polyline(detail::read_points(detail::field(r, "tether"), "tether")), r.value("taut", false)};
      if (r.contains("anchor") && !near(detail::read_point(r["anchor"], "anchor"), t.anchor()))
        throw Error("endpoints-mismatch", "anchor of '" + t.robot_id + "' is not the tether start");
      s.robots.push_back(std::move(t));
    }
    s.focus = j.contains("focus") ? j["focus"].get<std::string>() : (s.robots.empty() ? "" : s.robots[0].robot_id);
    if (j.contains("epsilon") && !j["epsilon"].is_null()) s.epsilon = j["epsilon"].get<double>();
    if (j.contains("params")) {
      const auto& p = j["params"];
      if (p.contains("d_max")) s.params.d_max = p["d_max"].get<double>();
      if (p.contains("delta")) {
        const auto& d = p["delta"];
        if (d.is_string()) {
          if (d.get<std::string>() != "inf") throw Error("schema", "delta must be a number or \"inf\"");
          s.params.delta = std::numeric_limits<double>::infinity();
        } else {
          s.params.delta = d.get<double>();
        }
      }
      if (p.contains("beta_mode")) {
        const auto& bm = p["beta_mode"];
        if (bm.is_boolean())
          s.params.beta_mode = bm.get<bool>() ? BetaMode::LenSubpath : BetaMode::Off;
        else if (bm.get<std::string>() == "len-subpath")
          s.params.beta_mode = BetaMode::LenSubpath;
        else if (bm.get<std::string>() == "off")
          s.params.beta_mode = BetaMode::Off;
        else
          throw Error("schema", "beta_mode must be \"off\" or \"len-subpath\"");
      }
      if (p.contains("safe_base")) s.params.safe_base = p["safe_base"].get<int>();
      if (p.contains("samples_per_unit")) s.params.samples_per_unit = p["samples_per_unit"].get<int>();
      if (p.contains("relax_base")) s.params.relax_base = p["relax_base"].get<int>();
    }
    validate_structure(s);
    verify_tautness(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error("schema", e.what());
  }
}

inline std::string render_scenario(const Scenario& s) {
  using detail::ojson;
  ojson j;
  j["schema"] = 1;
  j["id"] = s.id;
  j["dimension"] = s.dimension == Dimension::Planar ? "2D" : "3D-projected";
  j["bounds"] = {{"min", detail::write_point(s.env.bounds.min)}, {"max", detail::write_point(s.env.bounds.max)}};
  j["obstacles"] = ojson::array();
  for (const auto& o : s.env.obstacles) {
    ojson pts = ojson::array();
    for (const auto& v : o.vertices) pts.push_back(detail::write_point(v));
    j["obstacles"].push_back(pts);
  }
  j["robots"] = ojson::array();
  for (const auto& r : s.robots) {
    ojson pts = ojson::array();
    for (const auto& v : r.path.vertices()) pts.push_back(detail::write_point(v));
    j["robots"].push_back({{"id", r.robot_id}, {"anchor", detail::write_point(r.anchor())}, {"tether", pts},
                           {"taut", r.taut}});
  }
  j["focus"] = s.focus;
  j["epsilon"] = s.epsilon ? ojson(*s.epsilon) : ojson(nullptr);
  ojson p;
  p["d_max"] = s.params.d_max;
  p["delta"] = std::isinf(s.params.delta) ? ojson("inf") : ojson(s.params.delta);
  p["beta_mode"] = s.params.beta_mode == BetaMode::Off ? "off" : "len-subpath";
  p["safe_base"] = s.params.safe_base;
  p["samples_per_unit"] = s.params.samples_per_unit;
  p["relax_base"] = s.params.relax_base;
  j["params"] = p;
  return j.dump(2) + "\n";
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("unreadable", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("unwritable", "cannot write " + path.string());
  out << bytes;
}

inline Scenario load_scenario_file(const std::filesystem::path& path) { return load_scenario(read_file(path)); }

/// Scenario files of a corpus: <dir>/scenarios/*.json if present, else
/// <dir>/*.json, sorted by name.
inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("unreadable", "corpus directory " + dir.string() + " not found");
  const fs::path root = fs::is_directory(dir / "scenarios") ? dir / "scenarios" : dir;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace entk
