#pragma once

// Text artifacts: verdict tables (CSV, Markdown) and SVG drawings.

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entk/definitions.hpp"
#include "entk/environment.hpp"
#include "entk/geometry.hpp"
#include "entk/workspace_map.hpp"

namespace entk {

inline std::string fmt_num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct ClassifiedRow {
  std::string id;
  VerdictRow verdicts;
  std::string error;  // load failure, if any
};

inline std::string verdicts_csv(const std::vector<ClassifiedRow>& rows) {
  std::string out = "scenario";
  for (int d = 1; d <= kDefinitionCount; ++d) out += ",def" + std::to_string(d);
  out += "\n";
  for (const auto& r : rows) {
    out += csv_field(r.id);
    if (!r.error.empty()) {
      for (int d = 1; d <= kDefinitionCount; ++d) out += ",--";
    } else {
      for (const auto& [d, v] : r.verdicts) out += "," + v.code();
    }
    out += "\n";
  }
  return out;
}

inline std::string verdicts_markdown(const std::vector<ClassifiedRow>& rows) {
  std::string out = "| scenario |";
  for (int d = 1; d <= kDefinitionCount; ++d) out += " " + std::to_string(d) + " |";
  out += "\n|---|";
  for (int d = 1; d <= kDefinitionCount; ++d) out += ":-:|";
  out += "\n";
  std::vector<std::string> notes;
  for (const auto& r : rows) {
    out += "| " + r.id + " |";
    if (!r.error.empty()) {
      for (int d = 1; d <= kDefinitionCount; ++d) out += " -- |";
      notes.push_back(r.id + ": " + r.error);
    } else {
      for (const auto& [d, v] : r.verdicts) {
        out += " " + v.code() + " |";
        if (v.reason.rfind("error:", 0) == 0) notes.push_back(r.id + " def" + std::to_string(d) + ": " + v.reason);
      }
    }
    out += "\n";
  }
  if (!notes.empty()) {
    out += "\nErrors:\n\n";
    for (const auto& n : notes) out += "- " + n + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

class SvgCanvas {
 public:
  SvgCanvas(const Box& b, double size = 800.0) : box_(b) {
    scale_ = size / std::max(b.width(), b.height());
    w_ = b.width() * scale_;
    h_ = b.height() * scale_;
  }

  std::string x(double v) const { return fmt_num((v - box_.min.x) * scale_, 3); }
  std::string y(double v) const { return fmt_num((box_.max.y - v) * scale_, 3); }
  std::string len(double v) const { return fmt_num(v * scale_, 3); }

  std::string points(std::span<const Point2> pts) const {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) s += ' ';
      s += x(pts[i].x) + "," + y(pts[i].y);
    }
    return s;
  }

  std::string open() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_num(w_, 3) + "\" height=\"" + fmt_num(h_, 3) +
           "\" viewBox=\"0 0 " + fmt_num(w_, 3) + " " + fmt_num(h_, 3) + "\">\n" +
           "<rect id=\"bounds\" x=\"0\" y=\"0\" width=\"" + fmt_num(w_, 3) + "\" height=\"" + fmt_num(h_, 3) +
           "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

 private:
  Box box_;
  double scale_ = 1.0;
  double w_ = 0.0;
  double h_ = 0.0;
};

inline std::string svg_map_layer(const SvgCanvas& c, const NEMap& m) {
  std::string out = "<g id=\"map-def" + std::to_string(m.definition) + "\" fill=\"#7fb3ff\" fill-opacity=\"0.5\">\n";
  for (int j = 0; j < m.height; ++j) {
    int i = 0;
    while (i < m.width) {
      if (!m.at(i, j)) {
        ++i;
        continue;
      }
      int e = i;
      while (e < m.width && m.at(e, j)) ++e;
      const double x0 = m.origin.x + i * m.cell_w;
      const double y1 = m.origin.y + (j + 1) * m.cell_h;
      out += "<rect x=\"" + c.x(x0) + "\" y=\"" + c.y(y1) + "\" width=\"" + c.len((e - i) * m.cell_w) +
             "\" height=\"" + c.len(m.cell_h) + "\"/>\n";
      i = e;
    }
  }
  return out + "</g>\n";
}

/// Obstacles gray, anchor blue, robot red, focus tether black, other tethers
/// dark gray. Optional map drawn beneath.
inline std::string render_svg(const Scenario& s, const NEMap* map = nullptr) {
  const SvgCanvas c(s.env.bounds);
  std::string out = c.open();
  if (map) out += svg_map_layer(c, *map);
  for (std::size_t i = 0; i < s.env.obstacles.size(); ++i)
    out += "<polygon id=\"obstacle-" + std::to_string(i + 1) + "\" points=\"" +
           c.points(s.env.obstacles[i].vertices) + "\" fill=\"#a0a0a0\" stroke=\"#606060\" stroke-width=\"1\"/>\n";
  const std::size_t focus = s.focus_index();
  for (std::size_t r = 0; r < s.robots.size(); ++r) {
    const auto& t = s.robots[r];
    const bool f = r == focus;
    out += "<polyline id=\"tether-" + t.robot_id + "\" points=\"" + c.points(t.path.vertices()) +
           "\" fill=\"none\" stroke=\"" + (f ? "black" : "#505050") + "\" stroke-width=\"" + (f ? "2" : "1.5") +
           "\"/>\n";
    out += "<circle id=\"anchor-" + t.robot_id + "\" cx=\"" + c.x(t.anchor().x) + "\" cy=\"" + c.y(t.anchor().y) +
           "\" r=\"5\" fill=\"blue\"/>\n";
    out += "<circle id=\"robot-" + t.robot_id + "\" cx=\"" + c.x(t.robot().x) + "\" cy=\"" + c.y(t.robot().y) +
           "\" r=\"5\" fill=\"red\"/>\n";
  }
  return out + "</svg>\n";
}

}  // namespace entk
