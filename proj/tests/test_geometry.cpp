#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "entk/geometry.hpp"
#include "kernel_checks.hpp"

using namespace entk;

namespace {

Polygon square(double x0, double y0, double x1, double y1) { return make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}); }

}  // namespace

TEST(Orient, AgreesWithHighPrecisionOracle) { EXPECT_EQ(checks::orient_mismatches(3000, 1), 0); }

TEST(Orient, BasicSigns) {
  EXPECT_EQ(orient({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orient({0, 0}, {1, 0}, {0, -1}), -1);
  EXPECT_EQ(orient({0, 0}, {1, 1}, {2, 2}), 0);
  EXPECT_EQ(orient({0, 0}, {1, 0}, {0.5, 1e-12}), 0);
}

TEST(SegmentIntersection, AgreesWithExactOracle) { EXPECT_EQ(checks::intersection_mismatches(3000, 2), 0); }

TEST(SegmentIntersection, ProperCrossingReportsParameters) {
  const auto h = segment_intersection({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}});
  const auto* p = std::get_if<PointIntersection>(&h);
  ASSERT_NE(p, nullptr);
  EXPECT_NEAR(p->point.x, 1.0, 1e-12);
  EXPECT_NEAR(p->point.y, 1.0, 1e-12);
  EXPECT_NEAR(p->t1, 0.5, 1e-12);
  EXPECT_NEAR(p->t2, 0.5, 1e-12);
}

TEST(SegmentIntersection, CollinearOverlapAndTouch) {
  const auto o = segment_intersection({{0, 0}, {3, 0}}, {{2, 0}, {5, 0}});
  const auto* ov = std::get_if<OverlapIntersection>(&o);
  ASSERT_NE(ov, nullptr);
  EXPECT_TRUE(near(ov->first, {2, 0}));
  EXPECT_TRUE(near(ov->last, {3, 0}));

  const auto t = segment_intersection({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}});
  const auto* tp = std::get_if<PointIntersection>(&t);
  ASSERT_NE(tp, nullptr);
  EXPECT_TRUE(near(tp->point, {1, 0}));

  EXPECT_TRUE(std::holds_alternative<NoIntersection>(segment_intersection({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}})));
  EXPECT_TRUE(std::holds_alternative<NoIntersection>(segment_intersection({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}})));
}

TEST(SegmentIntersection, DegenerateSegments) {
  EXPECT_TRUE(std::holds_alternative<PointIntersection>(segment_intersection({{1, 0}, {1, 0}}, {{0, 0}, {2, 0}})));
  EXPECT_TRUE(std::holds_alternative<NoIntersection>(segment_intersection({{1, 1}, {1, 1}}, {{0, 0}, {2, 0}})));
}

TEST(PointInPolygon, AgreesWithWindingNumberOracle) { EXPECT_EQ(checks::point_in_polygon_mismatches(3000, 3), 0); }

TEST(PointInPolygon, SquareCases) {
  const Polygon s = square(0, 0, 2, 2);
  EXPECT_EQ(point_in_polygon({1, 1}, s), Location::Inside);
  EXPECT_EQ(point_in_polygon({2, 1}, s), Location::Boundary);
  EXPECT_EQ(point_in_polygon({0, 0}, s), Location::Boundary);
  EXPECT_EQ(point_in_polygon({3, 1}, s), Location::Outside);
}

TEST(ConvexHull, AgreesWithBruteForceExtremePoints) { EXPECT_EQ(checks::convex_hull_mismatches(1000, 4), 0); }

TEST(ConvexHull, AllPointsInClosedHalfPlanesOfEdges) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 200; ++k) {
    std::vector<Point2> pts(20);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const Polygon h = convex_hull(pts);
    ASSERT_GE(h.size(), 3u);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (const auto& p : pts) EXPECT_GE(cross(h.edge(i).b - h.edge(i).a, p - h.edge(i).a), -1e-9);
  }
}

TEST(ConvexHull, DegenerateInputs) {
  const std::vector<Point2> line{{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}};
  EXPECT_EQ(convex_hull(line).size(), 2u);
  const std::vector<Point2> one{{1, 1}, {1, 1}};
  EXPECT_EQ(convex_hull(one).size(), 1u);
  EXPECT_THROW(convex_hull(std::vector<Point2>{}), Error);
}

TEST(MakePolygon, ValidatesAndOrients) {
  const Polygon cw = make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_GT(signed_area(cw), 0.0);
  EXPECT_THROW(make_polygon({{0, 0}, {1, 1}}), Error);
  EXPECT_THROW(make_polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}}), Error);  // bow tie
  EXPECT_THROW(make_polygon({{0, 0}, {1, 0}, {2, 0}}), Error);           // zero area
  const Polygon closed = make_polygon({{0, 0}, {1, 0}, {0, 1}, {0, 0}});
  EXPECT_EQ(closed.size(), 3u);
}

TEST(SegmentClear, TouchingIsClearCrossingIsNot) {
  const Polygon s = square(1, 1, 2, 2);
  EXPECT_TRUE(segment_clear({{0, 1}, {3, 1}}, s));     // slides along an edge
  EXPECT_TRUE(segment_clear({{0, 0}, {1, 1}}, s));     // ends at a corner
  EXPECT_TRUE(segment_clear({{0, 2}, {2, 0}}, s));     // touches the corner (1,1)
  EXPECT_FALSE(segment_clear({{0, 3}, {3, 0}}, s));    // corner to corner through the inside
  EXPECT_FALSE(segment_clear({{0, 0}, {3, 3}}, s));    // diagonal through
  EXPECT_FALSE(segment_clear({{1.5, 0}, {1.5, 1.2}}, s));
  EXPECT_TRUE(segment_clear({{0, 0}, {2.5, 0.5}}, s));
}

TEST(InteriorPole, StrictlyInsideAndCentredForSquare) {
  const Polygon s = square(0, 0, 4, 2);
  const Point2 p = interior_pole(s);
  EXPECT_TRUE(strictly_inside(p, s));
  EXPECT_NEAR(p.y, 1.0, 1e-3);
  const Polygon l = make_polygon({{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 4}, {0, 4}});
  EXPECT_TRUE(strictly_inside(interior_pole(l), l));
}

TEST(PolygonInteriors, EdgeContactIsNotOverlap) {
  EXPECT_FALSE(polygon_interiors_intersect(square(0, 0, 1, 1), square(1, 0, 2, 1)));
  EXPECT_TRUE(polygon_interiors_intersect(square(0, 0, 1, 1), square(0.5, 0.5, 2, 2)));
  EXPECT_TRUE(polygon_interiors_intersect(square(0, 0, 1, 1), square(0, 0, 1, 1)));
  EXPECT_TRUE(polygon_interiors_intersect(square(0, 0, 3, 3), square(1, 1, 2, 2)));  // containment
}

TEST(Polyline, RejectsBadInput) {
  EXPECT_THROW(Polyline(std::vector<Point2>{}), Error);
  EXPECT_THROW(Polyline({{0, 0}, {0, 0}}), Error);
  EXPECT_THROW(Polyline({{0, 0}, {NAN, 0}}), Error);
  EXPECT_NO_THROW(Polyline::from_points({{0, 0}, {0, 0}, {1, 0}}));
}

TEST(Polyline, ArcLengthParametrisation) {
  const Polyline p({{0, 0}, {3, 0}, {3, 4}});
  EXPECT_DOUBLE_EQ(p.length(), 7.0);
  EXPECT_TRUE(near(p.at(0.0), {0, 0}));
  EXPECT_TRUE(near(p.at(3.0 / 7.0), {3, 0}));
  EXPECT_TRUE(near(p.at(5.0 / 7.0), {3, 2}));
  EXPECT_TRUE(near(p.at(1.0), {3, 4}));
  const Polyline s = p.sub(1.0 / 7.0, 5.0 / 7.0);
  EXPECT_NEAR(s.length(), 4.0, 1e-12);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(p.reversed().reversed(), p);
  EXPECT_TRUE(Polyline::constant({1, 1}).length() == 0.0);
}

TEST(Polyline, ConcatenationRequiresMatchingEnds) {
  const Polyline a({{0, 0}, {1, 0}});
  const Polyline b({{1, 0}, {1, 1}});
  EXPECT_EQ(a.then(b).size(), 3u);
  EXPECT_THROW(b.then(a), Error);
}

TEST(SelfIntersections, FigureEightAndClosedLoop) {
  const Polyline eight({{0, 0}, {2, 2}, {2, 0}, {0, 2}});
  const auto xs = self_intersections(eight);
  ASSERT_EQ(xs.size(), 1u);
  EXPECT_TRUE(near(xs[0].point, {1, 1}));
  EXPECT_LT(xs[0].s1, xs[0].s2);

  const Polyline loop({{0, 0}, {1, 0}, {1, 1}, {0, 0}});
  EXPECT_TRUE(loop.closed());
  EXPECT_TRUE(self_intersections(loop).empty());
}
