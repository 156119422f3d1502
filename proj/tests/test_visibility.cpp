#include <gtest/gtest.h>

#include "algebra_checks.hpp"
#include "entk/visibility.hpp"
#include "oracles.hpp"

using namespace entk;

namespace {

Polygon square(double x0, double y0, double x1, double y1) { return make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}); }

}  // namespace

TEST(ShortestPath, EmptyEnvironmentIsStraight) {
  const auto env = EffectiveEnvironment::from({{{0, 0}, {5, 5}}, {}});
  const RepresentativeCurves c = build_representative_curves(env);
  const VisibilityGraph g(env, c);
  const Polyline p = shortest_path({1, 1}, {4, 3}, g);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p.length(), std::hypot(3, 2));
  EXPECT_EQ(shortest_path({1, 1}, {1, 1}, g).size(), 1u);
}

TEST(ShortestPath, AroundSquareMatchesHandComputation) {
  const auto env = EffectiveEnvironment::from({{{0, 0}, {6, 6}}, {square(2, 2, 4, 4)}});
  const auto c = build_representative_curves(env);
  const VisibilityGraph g(env, c);
  const Polyline p = g.shortest_path({1, 3}, {5, 3});
  // Over two corners: (1,3) -> (2,2) -> (4,2) -> (5,3), or the mirror image.
  EXPECT_NEAR(p.length(), 2.0 * std::sqrt(2.0) + 2.0, 1e-9);
  EXPECT_TRUE(path_clear(p, env.obstacles));
  EXPECT_THROW(g.shortest_path({3, 3}, {5, 5}), Error);
}

TEST(ShortestPath, NeverLongerThanLatticePathAndAlwaysClear) {
  for (std::uint64_t k = 0; k < 15; ++k) {
    auto w = checks::random_world(21, k);
    Rng rng(22, k);
    const Point2 a = detail::random_free_point(rng, w.gp.bounds, w.env.obstacles);
    const Point2 b = detail::random_free_point(rng, w.gp.bounds, w.env.obstacles);
    const Polyline p = w.plain->shortest_path(a, b);
    EXPECT_TRUE(path_clear(p, w.env.obstacles));
    EXPECT_TRUE(near(p.front(), a) && near(p.back(), b));
    EXPECT_GE(p.length(), distance(a, b) - 1e-9);
    const auto lattice = oracle::lattice_shortest(w.gp.bounds, w.env.obstacles, a, b, 60);
    ASSERT_TRUE(lattice.has_value());
    EXPECT_LE(p.length(), *lattice + 1e-9);
  }
}

TEST(Taut, ShortestInClassAndSameWord) {
  const auto env = EffectiveEnvironment::from({{{0, 0}, {6, 6}}, {square(2, 2, 4, 4)}});
  const auto c = build_representative_curves(env);
  const VisibilityGraph g(env, c);
  // Wraps once fully around before heading to the goal.
  const Polyline wrap({{1, 3}, {1, 1}, {5, 1}, {5, 5}, {1, 5}, {1, 1.5}, {5, 1.5}, {5, 3}});
  const Polyline t = taut_representative(wrap, g);
  EXPECT_EQ(homotopy_word(t, c), homotopy_word(wrap, c));
  EXPECT_LE(t.length(), wrap.length());
  EXPECT_GT(t.length(), g.shortest_path({1, 3}, {5, 3}).length() + 1.0);
  // A path already taut is its own representative (up to length).
  const Polyline direct = g.shortest_path({1, 3}, {5, 3});
  EXPECT_NEAR(taut_representative(direct, g).length(), direct.length(), 1e-9);
}

TEST(Taut, RandomPathsShortenWithinTheirClass) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    auto w = checks::random_world(31, k / 5);
    const VisibilityGraph g(w.env, w.curves);
    Rng rng(32, k);
    const Polyline p = checks::random_path(w, rng);
    const Polyline t = taut_representative(p, g);
    EXPECT_EQ(homotopy_word(t, w.curves), homotopy_word(p, w.curves));
    EXPECT_LE(t.length(), p.length() + 1e-9);
    EXPECT_TRUE(path_clear(t, w.env.obstacles));
  }
}
