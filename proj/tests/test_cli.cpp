#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mga/cli.hpp"
#include "mga/coverage.hpp"

using namespace mga;
namespace fs = std::filesystem;

#ifndef MGA_TEST_DATA
#define MGA_TEST_DATA "tests/data"
#endif

namespace {

// Answers success to everything and unsat to check-sat.
const char* kUnsatSolver =
    "sh -c 'while read l; do case \"$l\" in *check-sat*) echo unsat;; *) echo success;; esac; done'";

struct Result {
  int rc;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = cli_main(args, out, err);
  return {rc, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mga-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).rc, kExitUsage);
  EXPECT_EQ(run({"run"}).rc, kExitUsage);
  EXPECT_EQ(run({"run", path("missing.smt2")}).rc, kExitUsage);
  EXPECT_EQ(run({"run", MGA_TEST_DATA "/intro-example.smt2", "--strategy", "bogus"}).rc, kExitUsage);
  EXPECT_EQ(run({"run", MGA_TEST_DATA "/intro-example.smt2", "--record-transcript", path("a"),
                 "--replay-transcript", path("b")})
                .rc,
            kExitUsage);
}

TEST_F(Cli, SyntaxAndUnsupported) {
  write("bad.smt2", "(declare-const x Int)\n(assert (>= x 0)");
  EXPECT_EQ(run({"run", path("bad.smt2")}).rc, kExitSyntax);
  write("real.smt2", "(declare-const x Real)(assert (>= x 0))");
  EXPECT_EQ(run({"run", path("real.smt2")}).rc, kExitUnsupported);
}

TEST_F(Cli, UnsatLeavesNoSamples) {
  Result r = run({"run", MGA_TEST_DATA "/unsat.smt2", "--solver-cmd", kUnsatSolver,
                  "--samples-out", path("s.jsonl")});
  EXPECT_EQ(r.rc, kExitUnsat) << r.err;
  EXPECT_FALSE(fs::exists(path("s.jsonl")));
}

TEST_F(Cli, InjectedSeedWithoutSolver) {
  // The solver is never consulted when one epoch suffices.
  Result r = run({"run", MGA_TEST_DATA "/intro-example.smt2", "--solver-cmd", "false",
                  "--inject-seed", R"({"x":12,"y":2})", "--max-epochs", "1",
                  "--samples-per-round", "50", "--samples-out", path("s.jsonl"),
                  "--intervals-out", path("iv.jsonl"), "--coverage-out", path("cov.bin"),
                  "--stats-out", path("stats.json")});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  std::ifstream iv(path("iv.jsonl"));
  std::string line;
  ASSERT_TRUE(std::getline(iv, line));
  auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["intervals"].dump(), R"({"x":[0,15],"y":[2,"+inf"]})");
  EXPECT_EQ(j["epoch"], 1);

  Result v = run({"verify", path("s.jsonl"), MGA_TEST_DATA "/intro-example.smt2"});
  EXPECT_EQ(v.rc, kExitOk) << v.out;
  auto vj = nlohmann::json::parse(v.out);
  EXPECT_GT(vj["samples"].get<int>(), 0);
  EXPECT_EQ(vj["violations"], 0);

  auto stats = nlohmann::json::parse(std::ifstream(path("stats.json")));
  EXPECT_EQ(stats["epochs"], 1);
  EXPECT_EQ(stats["solver_calls"], 0);
  EXPECT_EQ(stats["stop_reason"], "max-epochs");
  std::ifstream cov(path("cov.bin"), std::ios::binary);
  EXPECT_GT(read_bitmap(cov).covered_bits(), 0u);
}

TEST_F(Cli, VerifyFlagsCorruptedSamples) {
  write("s.jsonl", "{\"x\":1,\"y\":0}\n{\"x\":100,\"y\":0}\n{\"x\":1,\"y\":0}\n");
  Result v = run({"verify", path("s.jsonl"), MGA_TEST_DATA "/intro-example.smt2"});
  EXPECT_EQ(v.rc, kExitFindings);
  auto j = nlohmann::json::parse(v.out);
  EXPECT_EQ(j["samples"], 3);
  EXPECT_EQ(j["violations"], 1);
  EXPECT_EQ(j["duplicates"], 1);
  EXPECT_EQ(j["violating_lines"], nlohmann::json::array({2}));
  write("junk.jsonl", "not json\n");
  EXPECT_EQ(run({"verify", path("junk.jsonl"), MGA_TEST_DATA "/intro-example.smt2"}).rc,
            kExitFindings);
}

TEST_F(Cli, MergeCoverage) {
  CoverageBitmap a, b;
  a.nodes.push_back({64, 0xF0, 0xF0});
  b.nodes.push_back({64, 0x0F, 0x0F});
  {
    std::ofstream f(path("a.bin"), std::ios::binary);
    write_bitmap(f, a);
  }
  {
    std::ofstream f(path("b.bin"), std::ios::binary);
    write_bitmap(f, b);
  }
  Result r = run({"merge-coverage", "-o", path("m.bin"), path("a.bin"), path("b.bin")});
  ASSERT_EQ(r.rc, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["union_covered_bits"], 8);
  EXPECT_EQ(j["inputs"][0]["normalized_coverage"], 0.5);
  std::ifstream m(path("m.bin"), std::ios::binary);
  EXPECT_EQ(read_bitmap(m).covered_bits(), 8u);

  CoverageBitmap c;
  c.nodes.push_back({1, 1, 1});
  {
    std::ofstream f(path("c.bin"), std::ios::binary);
    write_bitmap(f, c);
  }
  EXPECT_EQ(run({"merge-coverage", path("a.bin"), path("c.bin")}).rc, kExitUsage);
}
