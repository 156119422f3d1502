#include <gtest/gtest.h>

#include <map>

#include "entk/workspace_map.hpp"
#include "map_checks.hpp"
#include "support.hpp"

using namespace entk;

namespace {

Environment figure_env(const std::string& id) {
  const Scenario s = support::figure(id);
  return s.env;
}

std::map<int, NEMap> all_maps(const Environment& env, Point2 xa, double d_max, int res) {
  std::map<int, NEMap> maps;
  for (int d : {1, 2, 4, 6, 7, 8, 9}) maps.emplace(d, map_for_definition(d, env, xa, d_max, res));
  return maps;
}

}  // namespace

TEST(WorkspaceMap, ObstacleFreeMapsAreTheWholeWorkspace) {
  const Environment env{{{0, 0}, {4, 4}}, {}};
  const auto maps = all_maps(env, {1, 1}, 1.0, 40);
  for (const auto& [d, m] : maps) EXPECT_EQ(m.count(), 40u * 40u) << "definition " << d;
  EXPECT_TRUE(check_inclusion_chain(maps).ok());
}

TEST(WorkspaceMap, InclusionChainOnFigureEnvironments) {
  for (const char* id : {"fig3_hull_vs_linear", "fig4_gamma1", "fig5_gamma1", "fig6_gamma", "taut_over_apex"}) {
    const Scenario s = support::figure(id);
    const auto maps = all_maps(s.env, s.focus_tether().anchor(), s.params.d_max, 60);
    const auto r = check_inclusion_chain(maps);
    EXPECT_TRUE(r.ok()) << id << ": " << (r.ok() ? "" : r.violations.front().relation);
    EXPECT_LE(maps.at(7).count(), maps.at(8).count()) << id;
    EXPECT_LE(maps.at(8).count(), maps.at(9).count()) << id;
  }
}

TEST(WorkspaceMap, CellsAgreeWithDefinitionEvaluators) {
  for (const char* id : {"fig4_gamma1", "taut_over_apex"}) {
    const Scenario s = support::figure(id);
    const auto maps = all_maps(s.env, s.focus_tether().anchor(), s.params.d_max, 40);
    const auto r = checks::map_witness_failures(s, maps, 4);
    EXPECT_GT(r.cells, 50);
    EXPECT_EQ(r.failures, 0) << id << ": " << r.first;
  }
}

TEST(WorkspaceMap, VisibilityMapExcludesShadow) {
  const Environment env{{{0, 0}, {10, 10}}, {make_polygon({{4, 4}, {6, 4}, {6, 6}, {4, 6}})}};
  const NEMap m = map_visibility(env, {1, 5}, 50);
  EXPECT_TRUE(m.at(5, 25));    // x = 1.1, next to the anchor
  EXPECT_FALSE(m.at(45, 25));  // x = 9.1, behind the square
  EXPECT_FALSE(m.at(25, 25));  // inside the square
  const NEMap full = map_full_free(env, {1, 5}, 50);
  EXPECT_TRUE(full.at(45, 25));
  EXPECT_FALSE(full.at(25, 25));
}

TEST(WorkspaceMap, SafeSetMapGrowsWithReach) {
  const Environment env = figure_env("fig4_gamma1");
  const Point2 xa = support::figure("fig4_gamma1").focus_tether().anchor();
  const NEMap a = map_def8(env, xa, 0.0, 40);
  const NEMap b = map_def8(env, xa, 1.5, 40);
  const NEMap vis = map_visibility(env, xa, 40);
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    EXPECT_LE(a.cells[k], b.cells[k]);
    EXPECT_EQ(a.cells[k], vis.cells[k]);
  }
}

TEST(WorkspaceMap, UnsupportedDefinitionsThrow) {
  const Environment env{{{0, 0}, {4, 4}}, {}};
  for (int d : {3, 5, 10, 11}) {
    try {
      map_for_definition(d, env, {1, 1}, 1.0, 10);
      ADD_FAILURE() << "definition " << d << " produced a map";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "unsupported-definition");
    }
  }
}

TEST(WorkspaceMap, AnchorInsideObstacleRejected) {
  const Environment env{{{0, 0}, {10, 10}}, {make_polygon({{4, 4}, {6, 4}, {6, 6}, {4, 6}})}};
  EXPECT_THROW(map_for_definition(9, env, {5, 5}, 1.0, 10), Error);
  EXPECT_THROW(map_for_definition(9, env, {1, 1}, 1.0, 0), Error);
}

TEST(WorkspaceMap, ChainDetectsViolationAndGridMismatch) {
  const Environment env{{{0, 0}, {4, 4}}, {}};
  auto maps = all_maps(env, {1, 1}, 1.0, 20);
  maps.at(8).cells.assign(maps.at(8).cells.size(), 0);
  EXPECT_FALSE(check_inclusion_chain(maps).ok());
  std::map<int, NEMap> mixed{{7, map_visibility(env, {1, 1}, 20)}, {9, map_full_free(env, {1, 1}, 21)}};
  EXPECT_THROW(check_inclusion_chain(mixed), Error);
}

TEST(WorkspaceMap, JsonRoundTripAndPgmLayout) {
  const Environment env = figure_env("fig5_gamma1");
  const NEMap m = map_visibility(env, support::figure("fig5_gamma1").focus_tether().anchor(), 30);
  const NEMap back = map_from_json(map_to_json(m));
  EXPECT_TRUE(back.same_grid(m));
  EXPECT_EQ(back.cells, m.cells);
  EXPECT_EQ(back.definition, m.definition);

  const std::string pgm = map_to_pgm(m);
  const std::string header = "P5\n30 30\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  ASSERT_EQ(pgm.size(), header.size() + 900);
  // First stored row is the top of the workspace.
  EXPECT_EQ(pgm[header.size()] != 0, m.at(0, 29));
  EXPECT_EQ(pgm.back() != 0, m.at(29, 0));
}
