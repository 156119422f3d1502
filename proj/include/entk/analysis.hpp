#pragma once

// Per-scenario precomputation shared by the evaluators: the focus robot's
// effective environment, its representative curves and visibility graph.

#include <cstddef>
#include <memory>
#include <optional>

#include "entk/environment.hpp"
#include "entk/error.hpp"
#include "entk/homotopy.hpp"
#include "entk/visibility.hpp"

namespace entk {

class Context {
 public:
  Context(const Scenario& s, std::size_t focus)
      : scenario_(&s),
        focus_(focus),
        env_(effective_environment(s, focus)),
        curves_(std::make_unique<RepresentativeCurves>(build_representative_curves(env_))),
        graph_(std::make_unique<VisibilityGraph>(env_, *curves_)) {}

  explicit Context(const Scenario& s) : Context(s, s.focus_index()) {}

  const Scenario& scenario() const { return *scenario_; }
  const TetherConfig& tether() const { return scenario_->robots[focus_]; }
  std::size_t focus() const { return focus_; }
  const EffectiveEnvironment& env() const { return env_; }
  const RepresentativeCurves& curves() const { return *curves_; }
  const VisibilityGraph& graph() const { return *graph_; }
  const DefinitionParams& params() const { return scenario_->params; }
  bool projected() const { return scenario_->dimension == Dimension::Projected3D; }

  const Polyline& taut() const {
    if (!taut_) taut_ = taut_representative(tether().path, *graph_);
    return *taut_;
  }

 private:
  const Scenario* scenario_;
  std::size_t focus_;
  EffectiveEnvironment env_;
  std::unique_ptr<RepresentativeCurves> curves_;
  std::unique_ptr<VisibilityGraph> graph_;
  mutable std::optional<Polyline> taut_;
};

/// Every tether declared taut must be no longer than the shortest path in its
/// own homotopy class (relative tolerance kTautTol). Projected 3D scenarios
/// keep the declared flag.
inline void verify_tautness(const Scenario& s) {
  if (s.dimension == Dimension::Projected3D) return;
  for (std::size_t i = 0; i < s.robots.size(); ++i) {
    const auto& r = s.robots[i];
    if (!r.taut) continue;
    const Context ctx(s, i);
    const double shortest = ctx.taut().length();
    if (r.path.length() > (1.0 + kTautTol) * shortest + kGeomTol)
      throw Error("taut-violated", "tether of '" + r.robot_id + "' is declared taut but is not locally shortest");
  }
}

}  // namespace entk
