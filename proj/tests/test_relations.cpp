#include <gtest/gtest.h>

#include <set>

#include "entk/relations.hpp"
#include "entk/scenario_io.hpp"

using namespace entk;

TEST(Generator, DeterministicPerSeedAndIndex) {
  GenParams gp;
  for (std::uint64_t i = 0; i < 5; ++i)
    EXPECT_EQ(render_scenario(random_scenario(gp, i)), render_scenario(random_scenario(gp, i)));
  GenParams other = gp;
  other.seed = 7;
  EXPECT_NE(render_scenario(random_scenario(gp, 0)), render_scenario(random_scenario(other, 0)));
}

TEST(Generator, ScenariosPassValidation) {
  GenParams gp;
  gp.p_multi = 0.5;
  int multi = 0, closed = 0, taut = 0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Scenario s = random_scenario(gp, i);
    EXPECT_NO_THROW(load_scenario(render_scenario(s)));
    EXPECT_EQ(s.id, "gen-" + std::to_string(i));
    multi += s.robots.size() > 1;
    closed += s.focus_tether().closed();
    taut += s.focus_tether().taut;
  }
  EXPECT_GT(multi, 0);
  EXPECT_GT(closed, 0);
  EXPECT_GT(taut, 0);
}

TEST(Generator, ZeroObstacles) {
  GenParams gp;
  gp.obstacles_min = gp.obstacles_max = 0;
  gp.p_multi = 0.0;
  for (std::uint64_t i = 0; i < 10; ++i) EXPECT_TRUE(random_scenario(gp, i).env.obstacles.empty());
}

TEST(Generator, RejectsBadParams) {
  GenParams gp;
  gp.p_taut = 1.5;
  EXPECT_THROW(random_scenario(gp, 0), Error);
  gp = GenParams{};
  gp.obstacles_min = 3;
  gp.obstacles_max = 1;
  EXPECT_THROW(random_scenario(gp, 0), Error);
}

TEST(Marks, TableShape) {
  const auto& marks = implication_marks();
  EXPECT_EQ(marks.size(), 29u);
  std::set<std::pair<int, int>> seen;
  for (const auto& m : marks) {
    EXPECT_NE(m.row, m.col);
    EXPECT_TRUE(seen.insert({m.row, m.col}).second);
  }
  ASSERT_NE(find_mark(4, 11), nullptr);
  EXPECT_TRUE(find_mark(4, 11)->closed_only);
  EXPECT_EQ(find_mark(11, 4), nullptr);
}

TEST(Matrix, RejectsZeroTrials) { EXPECT_THROW(run_matrix(GenParams{}, 0), Error); }

TEST(Matrix, SingleRobotRunsNeverApplyMultiRobotPairs) {
  GenParams gp;
  gp.p_multi = 0.0;
  const auto r = run_matrix(gp, 20);
  EXPECT_EQ(r.generated, 20);
  EXPECT_TRUE(r.low_power());
  EXPECT_EQ(r.pair(2, 1).applicable, 0);
  EXPECT_EQ(r.pair(3, 4).applicable, 0);
  EXPECT_EQ(r.marked_violations(), 0);
}

TEST(Matrix, ThreadCountDoesNotChangeResults) {
  GenParams gp;
  const auto a = run_matrix(gp, 24, 1);
  const auto b = run_matrix(gp, 24, 3);
  EXPECT_EQ(matrix_json(a), matrix_json(b));
  EXPECT_EQ(matrix_markdown(a), matrix_markdown(b));
}

TEST(Matrix, TabulateCountsViolations) {
  TrialRecord t;
  t.id = "t";
  t.generated = true;
  t.state.fill('-');
  t.state[6] = 'N';
  t.state[7] = 'E';
  t.state[9] = 'E';
  t.conservative[9] = true;
  const auto r = tabulate(GenParams{}, {t});
  EXPECT_EQ(r.pair(6, 7).violations.size(), 1u);
  EXPECT_TRUE(r.pair(6, 9).violations.empty());
  EXPECT_EQ(r.pair(6, 9).conservative.size(), 1u);
  EXPECT_EQ(r.marked_violations(), 1);
  EXPECT_EQ(r.pair(7, 6).applicable, 1);
  EXPECT_EQ(r.pair(6, 1).applicable, 0);
}
