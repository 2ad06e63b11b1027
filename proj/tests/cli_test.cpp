#include "firstswap/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + FIRSTSWAP_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("firstswap_cli_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Cli, PmfCsvIsExact) {
  const auto r = run("pmf --n 4 --format csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "n,k,p_num,p_den,p_float64\n"
            "4,1,5,16,0.3125\n"
            "4,2,3,8,0.375\n"
            "4,3,5,16,0.3125\n");
}

TEST(Cli, PmfRangeParsesBack) {
  const auto r = run("pmf --n-range 2..12 --format csv");
  ASSERT_EQ(r.status, 0);
  const auto rows = firstswap::io::parse_pmf_csv(r.out);
  EXPECT_EQ(rows.size(), 66u);  // sum of n-1 over 2..12
  for (const auto& row : rows) EXPECT_EQ(row.p, firstswap::pmf(row.n).p(row.k));
}

TEST(Cli, Count) {
  const auto r = run("count --n 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "768\n");
  EXPECT_EQ(run("count --n 7").out, "1100742656\n");
}

TEST(Cli, BoundsSweepCsvAllPass) {
  const auto r = run("bounds-sweep --n 2..64 --format csv");
  EXPECT_EQ(r.status, 0);
  const auto rows = firstswap::io::parse_sweep_csv(r.out);
  ASSERT_EQ(rows.size(), 63u);
  for (const auto& row : rows) EXPECT_TRUE(row.pass) << row.n;
  EXPECT_EQ(run("bounds-sweep --n 2..20 --scaled --format csv").status, 0);
}

TEST(Cli, EnumerationCapIsAUsageError) {
  EXPECT_EQ(run("enumerate --n 7").status, 1);
  EXPECT_EQ(run("first-letter-hist --n 8").status, 1);
  EXPECT_EQ(run("sample --n 7 --words").status, 1);
}

TEST(Cli, BadArgumentsAreUsageErrors) {
  EXPECT_EQ(run("pmf --n 1").status, 1);
  EXPECT_EQ(run("pmf --n abc").status, 1);
  EXPECT_EQ(run("pmf --n 4 --format xml").status, 1);
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("stein-solve --function nonsense").status, 1);
}

TEST(Cli, FailedCheckExitsTwo) {
  // A negative tolerance makes every bound check fail.
  EXPECT_EQ(run("wasserstein --n 10 --tolerance -1").status, 2);
  EXPECT_EQ(run("stein-solve --function w --tolerance -1").status, 2);
  EXPECT_EQ(run("wasserstein --n 10").status, 0);
}

TEST(Cli, EnumerateWritesReducedWords) {
  const auto r = run("enumerate --n 4");
  ASSERT_EQ(r.status, 0);
  const auto words = firstswap::io::parse_words_text(4, r.out);
  EXPECT_EQ(words, firstswap::enumerate_words(4));
}

TEST(Cli, SamplingIsReproducible) {
  const auto a = run("sample --n 30 --seed 5 --samples 200 --format csv");
  const auto b = run("sample --n 30 --seed 5 --samples 200 --format csv");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("sample --n 30 --seed 6 --samples 200 --format csv").out);
}

TEST(Cli, JsonOutputsParse) {
  for (const char* args : {"moments --n 2..5 --format json", "yb-stats --n 4 --format json",
                           "stein-solve --function w --format json", "count --n 3..6 --format json"}) {
    const auto r = run(args);
    EXPECT_EQ(r.status, 0) << args;
    EXPECT_TRUE(firstswap::io::Json::accept(r.out)) << args;
  }
}

TEST(Cli, OutPathResolvesUnderOutputDir) {
  const auto dir = scratch_dir("out");
  const auto r = run("pmf --n 3 --format csv --out sub/pmf.csv", "FIRSTSWAP_OUTPUT_DIR=" + dir.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(dir / "sub" / "pmf.csv"), "n,k,p_num,p_den,p_float64\n3,1,1,2,0.5\n3,2,1,2,0.5\n");
  std::filesystem::remove_all(dir);
}

TEST(Cli, ReportWritesJsonSummary) {
  const auto dir = scratch_dir("report");
  const auto r = run("report --n 2..20 --samples 20000", "FIRSTSWAP_OUTPUT_DIR=" + dir.string());
  EXPECT_EQ(r.status, 0);
  const auto j = firstswap::io::Json::parse(slurp(dir / "report.json"));
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_EQ(j["criteria"].size(), 11u);
  std::filesystem::remove_all(dir);
}

}  // namespace
