// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace qtw {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kE1 = "y^2=x^3+(t)*x+(1)";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qtwist");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("qtwist_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    ::unsetenv("QTWIST_THREADS");
  }
  void TearDown() override {
    fs::remove_all(dir);
    ::unsetenv("QTWIST_THREADS");
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kValidation);
  EXPECT_EQ(run({"lpoly", "--q", "4", "--D", "t"}).code, cli::kValidation);
  EXPECT_EQ(run({"lpoly", "--q", "7", "--D", "t"}).code, cli::kValidation);
  EXPECT_EQ(run({"moment", "--q", "5", "--curve", kE1, "--kind", "first", "--g", "9"}).code, cli::kCostCap);
  EXPECT_EQ(run({"moment", "--curve", kE1, "--a", "t", "--b", "1"}).code, cli::kValidation);
  EXPECT_EQ(run({"constants", "--q", "5"}).code, cli::kValidation);
  const CliRun r = run({"moment", "--q", "5", "--curve", "y^2=x^3+(1)*x+(2)"});
  EXPECT_EQ(r.code, cli::kValidation);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, LpolyReport) {
  const CliRun r = run({"lpoly", "--q", "5", "--curve", kE1, "--D", "t^3+t+1"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("epsilon"), -1);
  EXPECT_EQ(j.at("b").size(), 8u);
}

TEST_F(CliTest, PoissonVerifyReport) {
  const CliRun r = run({"verify", "--suite", "poisson", "--q", "5", "--max-deg", "2", "--max-m", "3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("suite"), "poisson");
  EXPECT_EQ(j.at("failures"), 0);
  EXPECT_EQ(j.at("total"), j.at("checks").size());
  EXPECT_GT(j.at("total").get<int>(), 0);
}

TEST_F(CliTest, ThreadsFromEnvironmentAndFlag) {
  const std::vector<std::string> base{"moment", "--q", "5", "--curve", kE1, "--g", "1", "--cutoff", "6"};
  ::setenv("QTWIST_THREADS", "abc", 1);
  EXPECT_EQ(run(base).code, cli::kValidation);
  auto with_flag = base;
  with_flag.insert(with_flag.end(), {"--threads", "2", "--out", path("a.json")});
  ASSERT_EQ(run(with_flag).code, cli::kOk);
  EXPECT_EQ(json::parse(slurp(path("a.json.run.json"))).at("threads"), 2);
  ::setenv("QTWIST_THREADS", "3", 1);
  auto env_only = base;
  env_only.insert(env_only.end(), {"--out", path("b.json")});
  ASSERT_EQ(run(env_only).code, cli::kOk);
  EXPECT_EQ(json::parse(slurp(path("b.json.run.json"))).at("threads"), 3);
  // The report itself does not depend on the thread count.
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, MomentReportFields) {
  const CliRun r = run({"moment", "--q", "5", "--curve", kE1, "--g", "1", "--cutoff", "6", "--csv", path("m.csv")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  for (const char* k : {"job", "kind", "family_size", "empirical_exact", "empirical", "predicted", "ratio"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_FALSE(j.at("job").contains("threads"));
  const std::string csv = slurp(path("m.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "g,kind,empirical,predicted,ratio,family_size,seconds");
}

TEST_F(CliTest, PlotFiles) {
  ASSERT_EQ(run({"moment", "--q", "5", "--curve", kE1, "--g", "1", "--cutoff", "6", "--plot", path("one")}).code, cli::kOk);
  const std::string one = slurp(path("one.ratio.dat"));
  EXPECT_EQ(one.rfind("# g ratio\n", 0), 0u);
  EXPECT_EQ(std::count(one.begin(), one.end(), '\n'), 2);

  const std::vector<std::string> trend{"trend", "--q", "5", "--curve", kE1, "--g-min", "1", "--g-max", "2", "--cutoff", "6",
                                       "--plot", path("tr"), "--out", path("tr.json")};
  ASSERT_EQ(run(trend).code, cli::kOk);
  const std::string first = slurp(path("tr.empirical.dat"));
  std::istringstream in(first);
  std::string line;
  std::vector<int> gs;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') gs.push_back(std::stoi(line));
  EXPECT_EQ(gs, (std::vector<int>{1, 2}));
  const std::string ratio = slurp(path("tr.ratio.dat")), report = slurp(path("tr.json"));
  ASSERT_EQ(run(trend).code, cli::kOk);
  EXPECT_EQ(slurp(path("tr.empirical.dat")), first);
  EXPECT_EQ(slurp(path("tr.ratio.dat")), ratio);
  EXPECT_EQ(slurp(path("tr.json")), report);
  EXPECT_EQ(json::parse(report).at("rows").size(), 2u);
}

TEST_F(CliTest, ConstantsReport) {
  const CliRun r = run({"constants", "--q", "5", "--cutoff", "6", "--curve", "y^2=x^3+(0)*x+(t)"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("c1"), 0.0);
  EXPECT_EQ(j.at("exclusions").at("c1"), "sign_base = -1 and M = 1");
}

}  // namespace
}  // namespace qtw
