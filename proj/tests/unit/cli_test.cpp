// SPDX-License-Identifier: Apache-2.0

#include "support/test_support.h"

#include "cli.h"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using ehap::testing::data_path;
using ehap::testing::fixture_path;
using ehap::testing::TempDir;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ehap");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = ehap::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> corpus_args(const TempDir &dir, const std::string &name) {
  return {"analyze",   fixture_path("corpus").string(), "--taxonomy",
          data_path("jdk_taxonomy.json").string(),      "--catalog",
          fixture_path("catalog.json").string(),        "--out",
          (dir.path() / name).string()};
}

TEST(Cli, AnalyzeWritesReports) {
  TempDir dir;
  auto r = invoke(corpus_args(dir, "report"));
  ASSERT_EQ(r.code, ehap::cli::kOk) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "report.findings.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "report.csv"));
  EXPECT_TRUE(fs::exists(dir.path() / "report.distribution.csv"));
  EXPECT_NE(r.out.find("1 skipped"), std::string::npos) << r.out;
  auto doc = nlohmann::json::parse(slurp(dir.path() / "report.findings.json"));
  EXPECT_EQ(doc.at("files_skipped"), 1);
}

TEST(Cli, AnalyzeJsonFormat) {
  TempDir dir;
  auto args = corpus_args(dir, "r");
  args.insert(args.end(), {"--format", "json"});
  ASSERT_EQ(invoke(args).code, ehap::cli::kOk);
  EXPECT_TRUE(nlohmann::json::accept(slurp(dir.path() / "r.json")));
  EXPECT_TRUE(nlohmann::json::accept(slurp(dir.path() / "r.distribution.json")));
}

TEST(Cli, AnalyzeIsByteIdenticalAcrossRuns) {
  TempDir dir;
  ASSERT_EQ(invoke(corpus_args(dir, "a")).code, 0);
  ASSERT_EQ(invoke(corpus_args(dir, "b")).code, 0);
  for (auto suffix : {".findings.json", ".csv", ".distribution.csv"})
    EXPECT_EQ(slurp(dir.path() / (std::string("a") + suffix)),
              slurp(dir.path() / (std::string("b") + suffix)))
        << suffix;
}

TEST(Cli, MissingTaxonomyIsConfigError) {
  TempDir dir;
  auto r = invoke({"analyze", fixture_path("corpus").string(), "--taxonomy",
                   "/nonexistent/jdk.json", "--out", (dir.path() / "x").string()});
  EXPECT_EQ(r.code, ehap::cli::kConfig);
  EXPECT_NE(r.err.find("/nonexistent/jdk.json"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir.path() / "x.csv"));
}

TEST(Cli, MalformedCatalogIsConfigError) {
  TempDir dir;
  auto bad = dir.write("bad.json", R"({"Foo#bar": []})");
  auto r = invoke({"analyze", fixture_path("corpus").string(), "--taxonomy",
                   data_path("jdk_taxonomy.json").string(), "--catalog", bad.string(), "--out",
                   (dir.path() / "x").string()});
  EXPECT_EQ(r.code, ehap::cli::kConfig);
  EXPECT_NE(r.err.find("Foo#bar"), std::string::npos) << r.err;
}

TEST(Cli, MissingRootIsConfigError) {
  TempDir dir;
  auto r = invoke({"analyze", "/nonexistent/src", "--taxonomy",
                   data_path("jdk_taxonomy.json").string(), "--out", (dir.path() / "x").string()});
  EXPECT_EQ(r.code, ehap::cli::kConfig);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, ehap::cli::kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, ehap::cli::kUsage);
  EXPECT_EQ(invoke({"analyze", "src"}).code, ehap::cli::kUsage);
  EXPECT_EQ(invoke({"analyze", "src", "--taxonomy", "t.json", "--format", "xml"}).code,
            ehap::cli::kUsage);
  EXPECT_EQ(
      invoke({"analyze", "src", "--taxonomy", "t.json", "--kitchen-sink-threshold", "1"}).code,
      ehap::cli::kUsage);
  EXPECT_EQ(invoke({"stats", "ranksum", "--column", "OverCatch"}).code, ehap::cli::kUsage);
}

TEST(Cli, HelpExitsZero) {
  auto r = invoke({"--help"});
  EXPECT_EQ(r.code, ehap::cli::kOk);
  EXPECT_NE(r.out.find("analyze"), std::string::npos);
  auto sub = invoke({"stats", "ranksum", "--help"});
  EXPECT_EQ(sub.code, ehap::cli::kOk);
  EXPECT_NE(sub.out.find("--group-a"), std::string::npos);
}

TEST(Cli, PrevalenceMedians) {
  auto r = invoke({"stats", "prevalence", data_path("table3.csv").string()});
  ASSERT_EQ(r.code, ehap::cli::kOk) << r.err;
  EXPECT_NE(r.out.find("UnhandledExceptions,16,40.84\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("CatchGeneric,16,31.905\n"), std::string::npos) << r.out;
}

TEST(Cli, PrevalenceMissingTable) {
  EXPECT_EQ(invoke({"stats", "prevalence", "/nonexistent/t.csv"}).code, ehap::cli::kConfig);
}

TEST(Cli, RankSum) {
  auto t3 = data_path("table3.csv").string();
  auto r = invoke({"stats", "ranksum", "--column", "Destructive Wrapping", "--group-a", t3,
                   "--filter-a", "language=Java", "--group-b", t3, "--filter-b", "language=C#",
                   "--format", "json"});
  ASSERT_EQ(r.code, ehap::cli::kOk) << r.err;
  auto js = nlohmann::json::parse(r.out);
  EXPECT_EQ(js.at("n_a"), 9);
  EXPECT_EQ(js.at("n_b"), 7);
  EXPECT_LT(js.at("p_two_sided").get<double>(), 0.05);
  auto bad = invoke({"stats", "ranksum", "--column", "Nope", "--group-a", t3, "--group-b", t3});
  EXPECT_EQ(bad.code, ehap::cli::kUsage);
}

TEST(Cli, CatalogList) {
  auto r = invoke({"catalog", "list"});
  ASSERT_EQ(r.code, ehap::cli::kOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 19);
  EXPECT_EQ(r.out.rfind("OverCatch\tcatch\t", 0), 0u);
  EXPECT_NE(r.out.find("ThrowsKitchenSink\tthrows\t"), std::string::npos);
}

nlohmann::json analyze_flags_fixture(const TempDir &dir, const std::string &name,
                                     std::vector<std::string> extra) {
  std::vector<std::string> args{"analyze",
                                fixture_path("flags").string(),
                                "--taxonomy",
                                data_path("jdk_taxonomy.json").string(),
                                "--catalog",
                                fixture_path("catalog.json").string(),
                                "--out",
                                (dir.path() / name).string()};
  args.insert(args.end(), extra.begin(), extra.end());
  auto r = invoke(args);
  EXPECT_EQ(r.code, ehap::cli::kOk) << r.err;
  return nlohmann::json::parse(slurp(dir.path() / (name + ".findings.json")));
}

bool has_flag(const nlohmann::json &site, const std::string &flag) {
  for (const auto &f : site.at("flags"))
    if (f == flag)
      return true;
  return false;
}

TEST(Cli, LogMethodsFlagChangesClassification) {
  TempDir dir;
  auto base = analyze_flags_fixture(dir, "base", {});
  auto custom = analyze_flags_fixture(dir, "custom", {"--log-methods", "audit,println"});
  EXPECT_FALSE(has_flag(base.at("catches").at(0), "DummyHandler"));
  EXPECT_TRUE(has_flag(custom.at("catches").at(0), "DummyHandler"));
}

TEST(Cli, GenericTypesFlagChangesClassification) {
  TempDir dir;
  auto base = analyze_flags_fixture(dir, "base", {});
  auto custom = analyze_flags_fixture(dir, "custom", {"--generic-types", "IOException"});
  EXPECT_FALSE(has_flag(base.at("catches").at(0), "CatchGeneric"));
  EXPECT_TRUE(has_flag(custom.at("catches").at(0), "CatchGeneric"));
}

TEST(Cli, KitchenSinkThresholdFlagChangesClassification) {
  TempDir dir;
  auto base = analyze_flags_fixture(dir, "base", {});
  auto custom = analyze_flags_fixture(dir, "custom", {"--kitchen-sink-threshold", "2"});
  EXPECT_FALSE(has_flag(base.at("throws_sites").at(0), "ThrowsKitchenSink"));
  EXPECT_TRUE(has_flag(custom.at("throws_sites").at(0), "ThrowsKitchenSink"));
}

} // namespace
