// SPDX-License-Identifier: Apache-2.0

#include "support/test_support.h"

#include "ehap/error.h"
#include "ehap/report/project_report.h"
#include "ehap/report/render.h"
#include "ehap/report/table_io.h"

#include <gtest/gtest.h>

#include <numeric>

namespace {

using namespace ehap;
using namespace ehap::report;
using A = detect::AntiPatternId;
using detect::Finding;
using ehap::testing::data_path;

std::vector<Finding> with(std::initializer_list<std::pair<A, std::size_t>> ids) {
  std::vector<Finding> out;
  for (auto [id, n] : ids)
    out.push_back({id, {}, n, {}});
  return out;
}

TEST(Percent, Arithmetic) {
  EXPECT_EQ(format_percent(12, 30), "40.00");
  EXPECT_EQ(format_percent(0, 57), "0.00");
  EXPECT_EQ(format_percent(0, 0), "0.00");
  EXPECT_EQ(format_percent(1, 3), "33.33");
  EXPECT_EQ(format_percent(2, 3), "66.67");
  EXPECT_EQ(format_percent(1, 8), "12.50");
  EXPECT_EQ(format_percent(1, 16), "6.25");
  // 1/32 = 3.125 rounds half-up.
  EXPECT_EQ(format_percent(1, 32), "3.13");
  EXPECT_EQ(format_percent(7, 7), "100.00");
}

TEST(Percent, HalfUpAgainstLongDivision) {
  for (std::size_t t = 1; t <= 300; ++t)
    for (std::size_t a = 0; a <= t; a += 1 + t / 37) {
      // 100*a/t in hundredths: 10000a/t, rounded half-up by comparing the remainder.
      std::size_t q = 10000 * a / t, r = 10000 * a % t;
      std::int64_t want = static_cast<std::int64_t>(q + (2 * r >= t ? 1 : 0));
      ASSERT_EQ(percent_hundredths(a, t), want) << a << "/" << t;
    }
}

TEST(Aggregate, CountsDistinctAffectedUnits) {
  ProjectTotals totals{"demo", 30, 4, 3, 0, 0};
  std::vector<std::vector<Finding>> catches(30);
  for (int i = 0; i < 12; ++i)
    catches[i] = with({{A::CatchGeneric, 0}});
  catches[0].push_back({A::OverCatch, {}, 3, {}});
  std::vector<std::vector<Finding>> throws_sites{with({{A::ThrowsGeneric, 0}}), {}, {}, {}};
  auto r = aggregate_project(totals, catches, throws_sites);
  ASSERT_EQ(r.patterns.size(), 19u);
  EXPECT_EQ(r[A::CatchGeneric].affected, 12u);
  EXPECT_EQ(r[A::CatchGeneric].total, 30u);
  EXPECT_EQ(r[A::CatchGeneric].percent_text(), "40.00");
  EXPECT_EQ(r[A::OverCatch].affected, 1u);
  EXPECT_EQ(r[A::DummyHandler].percent_text(), "0.00");
  EXPECT_EQ(r[A::ThrowsGeneric].total, 4u);
  EXPECT_EQ(r[A::ThrowsGeneric].percent_text(), "25.00");
  for (const auto &p : r.patterns)
    EXPECT_LE(p.affected, p.total);
}

TEST(Aggregate, ZeroDenominator) {
  auto r = aggregate_project({"empty", 0, 0, 0, 0, 0}, {}, {});
  for (const auto &p : r.patterns) {
    EXPECT_TRUE(p.zero_denominator);
    EXPECT_EQ(p.percent_text(), "0.00");
  }
}

TEST(Aggregate, RejectsMoreListsThanUnits) {
  std::vector<std::vector<Finding>> catches(3);
  EXPECT_THROW(aggregate_project({"x", 2, 0, 0, 0, 0}, catches, {}), std::invalid_argument);
}

TEST(Aggregate, GuavaTotalsVerbatim) {
  std::vector<std::vector<Finding>> catches(317), throws_sites(509);
  auto r = aggregate_project({"Guava", 317, 509, 0, 0, 0}, catches, throws_sites);
  auto csv = render({r}, Format::Csv);
  EXPECT_NE(csv.find("Guava,CatchGeneric,catch,0,317,0.00%"), std::string::npos) << csv;
  EXPECT_NE(csv.find("Guava,ThrowsGeneric,throws,0,509,0.00%"), std::string::npos) << csv;
  auto js = to_json(r);
  EXPECT_EQ(js.dump().find("317") != std::string::npos, true);
  EXPECT_EQ(js.dump().find("509") != std::string::npos, true);
}

TEST(Render, PercentCellAndHeader) {
  std::vector<std::vector<Finding>> catches(30);
  for (int i = 0; i < 12; ++i)
    catches[i] = with({{A::DummyHandler, 0}});
  auto r = aggregate_project({"p", 30, 0, 1, 0, 0}, catches, {});
  auto csv = render({r}, Format::Csv);
  EXPECT_EQ(csv.rfind("project,anti_pattern,unit,affected,total,percent\n", 0), 0u);
  EXPECT_NE(csv.find("p,DummyHandler,catch,12,30,40.00%\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 20);
}

TEST(Render, JsonCarriesRawAndFormatted) {
  std::vector<std::vector<Finding>> catches(3);
  catches[0] = with({{A::DummyHandler, 0}});
  auto r = aggregate_project({"p", 3, 0, 1, 0, 0}, catches, {});
  auto js = nlohmann::json::parse(render({r}, Format::Json));
  bool found = false;
  for (const auto &p : js.at("projects").at(0).at("anti_patterns"))
    if (p.at("anti_pattern") == "DummyHandler") {
      found = true;
      EXPECT_NEAR(p.at("percent").get<double>(), 100.0 / 3, 1e-12);
      EXPECT_EQ(p.at("percent_text"), "33.33%");
    }
  EXPECT_TRUE(found) << js.dump();
}

TEST(Render, Deterministic) {
  std::vector<std::vector<Finding>> catches(5);
  catches[1] = with({{A::OverCatch, 2}, {A::CatchGeneric, 0}});
  auto r = aggregate_project({"p", 5, 0, 1, 0, 0}, catches, {});
  EXPECT_EQ(render({r}, Format::Csv), render({r}, Format::Csv));
  EXPECT_EQ(render({r}, Format::Json), render({r}, Format::Json));
}

TEST(Render, NumberFormat) {
  EXPECT_EQ(format_number(40.84), "40.84");
  EXPECT_EQ(format_number(31.905), "31.905");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(parse_format("csv"), Format::Csv);
  EXPECT_EQ(parse_format("json"), Format::Json);
  EXPECT_EQ(parse_format("xml"), std::nullopt);
}

TEST(Distribution, Buckets) {
  auto row = bucket_row("g", {1, 1, 2, 7});
  EXPECT_FALSE(row.empty);
  EXPECT_EQ(row.hundredths, (std::array<std::int64_t, 6>{5000, 2500, 0, 0, 0, 2500}));
  EXPECT_EQ(row.affected, 4u);
  EXPECT_EQ(row.max_count, 7u);
}

TEST(Distribution, SingleLargeCount) {
  auto row = bucket_row("g", {37});
  EXPECT_EQ(row.counts[5], 1u);
  EXPECT_EQ(row.hundredths[5], 10000);
  EXPECT_EQ(row.max_count, 37u);
}

TEST(Distribution, EmptyAndZeroCounts) {
  EXPECT_TRUE(bucket_row("g", {}).empty);
  auto row = bucket_row("g", {0, 0});
  EXPECT_TRUE(row.empty);
  EXPECT_EQ(row.affected, 0u);
}

TEST(Distribution, RowsSumToHundred) {
  std::vector<std::size_t> counts;
  for (std::size_t n = 1; n < 60; ++n) {
    counts.push_back(1 + (n * 7) % 9);
    auto row = bucket_row("g", counts);
    EXPECT_EQ(std::accumulate(row.hundredths.begin(), row.hundredths.end(), std::int64_t{0}),
              10000);
    for (std::size_t i = 0; i < kFlowBuckets; ++i) {
      double exact = 10000.0 * static_cast<double>(row.counts[i]) / static_cast<double>(n);
      EXPECT_LT(std::abs(static_cast<double>(row.hundredths[i]) - exact), 1.0);
    }
  }
}

TEST(Distribution, FromCatchFindings) {
  std::vector<std::vector<Finding>> catches{
      with({{A::UnhandledExceptions, 3}, {A::UnreachableHandler, 3}}),
      with({{A::OverCatch, 2}, {A::OverCatchAndAbort, 2}}),
      with({{A::UnreachableHandler, 0}}),
      with({{A::UnhandledExceptions, 9}})};
  auto d = flow_distribution(catches);
  EXPECT_EQ(d.unhandled_unreachable.affected, 2u);
  EXPECT_EQ(d.unhandled_unreachable.counts[2], 1u);
  EXPECT_EQ(d.unhandled_unreachable.counts[5], 1u);
  EXPECT_EQ(d.over_catch.affected, 1u);
  EXPECT_EQ(d.over_catch.counts[1], 1u);
}

TEST(Table, CsvQuoting) {
  auto rows = parse_csv("a,\"b,c\",\"d\"\"e\"\r\n1,2,3\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "2", "3"}));
}

TEST(Table, WideLayout) {
  auto t = parse_table("project,language,Over-catch,Catch Generic,# Catch\n"
                       "x,Java,10.00%,20.5,100\ny,C#,,1,50\n",
                       "t");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].percents.at(A::OverCatch), 10.0);
  EXPECT_EQ(t.rows[0].totals.at("catch"), 100.0);
  EXPECT_FALSE(t.rows[1].percents.contains(A::OverCatch));
  EXPECT_EQ(column_values(t, A::CatchGeneric), (std::vector<double>{20.5, 1}));
  EXPECT_EQ(column_values(t, A::CatchGeneric, {RowFilter::parse("language=c#")}),
            std::vector<double>{1});
}

TEST(Table, LongLayoutRoundTrip) {
  std::vector<std::vector<Finding>> catches(4);
  catches[0] = with({{A::CatchGeneric, 0}});
  auto r = aggregate_project({"p", 4, 0, 1, 0, 0}, catches, {});
  auto t = parse_table(render({r}, Format::Csv), "long");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].project, "p");
  EXPECT_EQ(t.rows[0].percents.at(A::CatchGeneric), 25.0);
}

TEST(Table, Errors) {
  EXPECT_THROW(parse_table("a,b\n1,2\n", "t"), ConfigError);
  EXPECT_THROW(parse_table("project,Over-catch\nx,abc\n", "t"), ConfigError);
  EXPECT_THROW(read_table("/nonexistent/table.csv"), ConfigError);
  EXPECT_THROW(RowFilter::parse("novalue"), std::invalid_argument);
}

TEST(Table, SummarizeSingleRow) {
  auto t = parse_table("project,Over-catch\nx,12.5\n", "t");
  auto m = summarize_prevalence(t);
  ASSERT_EQ(m.size(), 19u);
  EXPECT_EQ(m[0].median, 12.5);
  EXPECT_EQ(m[1].n, 0u);
  EXPECT_FALSE(m[1].median.has_value());
}

TEST(Table, Transcriptions) {
  auto t3 = read_table(data_path("table3.csv"));
  auto t4 = read_table(data_path("table4.csv"));
  EXPECT_EQ(t3.rows.size(), 16u);
  EXPECT_EQ(t4.rows.size(), 9u);
  for (const auto &row : t3.rows) {
    EXPECT_EQ(row.percents.size(), 17u) << row.project;
    EXPECT_TRUE(row.totals.contains("catch")) << row.project;
  }
}

TEST(Findings, JsonShape) {
  auto pa = ehap::testing::analyze_corpus();
  auto doc = findings_json("corpus", pa, [](const std::string &f) {
    return std::filesystem::path(f).filename().string();
  });
  EXPECT_EQ(doc.at("schema_version"), 1);
  EXPECT_EQ(doc.at("total_catches").get<std::size_t>(), pa.total_catches());
  EXPECT_EQ(doc.at("catches").size(), pa.total_catches());
  EXPECT_EQ(doc.at("files_skipped"), 1);
  for (const auto &c : doc.at("catches")) {
    for (auto key : {"file", "line", "column", "method", "try_line", "try_column",
                     "declared_types", "resolved_types", "details", "caught_flows",
                     "uncaught_flows", "finally_flows"})
      EXPECT_TRUE(c.contains(key)) << key;
    for (const auto &f : c.at("flags"))
      EXPECT_TRUE(detect::parse_anti_pattern(f.get<std::string>()).has_value());
  }
  EXPECT_EQ(dump(doc), dump(doc));
  EXPECT_EQ(dump(doc).back(), '\n');
}

} // namespace
