#include <gtest/gtest.h>

#include <string>

#include "entk/pipeline.hpp"
#include "entk/report.hpp"
#include "support.hpp"

using namespace entk;

TEST(Report, NumberFormatting) {
  EXPECT_EQ(fmt_num(1.0), "1");
  EXPECT_EQ(fmt_num(0.125), "0.125");
  EXPECT_EQ(fmt_num(2.0 / 3.0), "0.6667");
  EXPECT_EQ(fmt_num(-0.00001), "0");
  EXPECT_EQ(fmt_num(12.5, 0), "12");
}

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Report, CsvLayout) {
  std::vector<ClassifiedRow> rows;
  rows.push_back({"fig,3", evaluate_all(support::figure("fig3_hull_vs_linear")), ""});
  rows.push_back({"broken", {}, "schema: missing id"});
  const std::string csv = verdicts_csv(rows);
  EXPECT_EQ(csv,
            "scenario,def1,def2,def3,def4,def5,def6,def7,def8,def9,def10,def11\n"
            "\"fig,3\",--,--,--,N,--,E,N,N,E,N,N\n"
            "broken,--,--,--,--,--,--,--,--,--,--,--\n");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(Report, MarkdownListsErrors) {
  std::vector<ClassifiedRow> rows;
  rows.push_back({"ok", evaluate_all(support::figure("free_straight_taut")), ""});
  rows.push_back({"broken", {}, "schema: missing id"});
  const std::string md = verdicts_markdown(rows);
  EXPECT_NE(md.find("| ok | N | -- | -- | N | -- | N | N | N | N | N | N |"), std::string::npos);
  EXPECT_NE(md.find("- broken: schema: missing id"), std::string::npos);
}

TEST(Report, SvgIsDeterministicAndNamesElements) {
  const Scenario s = support::figure("multi_robot_wrap");
  const std::string a = render_svg(s);
  EXPECT_EQ(a, render_svg(support::figure("multi_robot_wrap")));
  EXPECT_EQ(a.rfind("<svg ", 0), 0u);
  EXPECT_NE(a.find("id=\"tether-r1\""), std::string::npos);
  EXPECT_NE(a.find("id=\"anchor-r2\""), std::string::npos);
  EXPECT_NE(a.find("</svg>\n"), std::string::npos);

  const Scenario f = support::figure("fig5_gamma1");
  const NEMap m = map_visibility(f.env, f.focus_tether().anchor(), 20);
  const std::string with_map = render_svg(f, &m);
  EXPECT_NE(with_map.find("id=\"map-def7\""), std::string::npos);
  EXPECT_NE(with_map.find("id=\"obstacle-1\""), std::string::npos);
}

TEST(Pipeline, OrderIndependentOfThreads) {
  const auto files = corpus_files(support::source_dir() / "corpus" / "figures");
  const auto one = rows_of(classify_files(files, {}, 1));
  const auto four = rows_of(classify_files(files, {}, 4));
  EXPECT_EQ(verdicts_csv(one), verdicts_csv(four));
  EXPECT_TRUE(std::is_sorted(one.begin(), one.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
  EXPECT_FALSE(any_errors(one));
}

TEST(Pipeline, LoadFailureKeepsFileStem) {
  const auto r = classify_file(support::source_dir() / "tests" / "data" / "bad" / "obstacle_overlap.json", {});
  EXPECT_EQ(r.row.id, "obstacle_overlap");
  EXPECT_EQ(r.row.error.rfind("obstacles-overlap", 0), 0u);
  EXPECT_FALSE(r.scenario);
  EXPECT_TRUE(any_errors({r.row}));
}

TEST(Pipeline, OverridesApplyAndValidate) {
  ParamOverrides ov;
  ov.d_max = 3.0;
  ov.safe_base = 6;
  DefinitionParams p;
  ov.apply(p);
  EXPECT_EQ(p.d_max, 3.0);
  EXPECT_EQ(p.safe_base, 6);
  ov.d_max = -1.0;
  EXPECT_THROW(ov.apply(p), Error);
}
