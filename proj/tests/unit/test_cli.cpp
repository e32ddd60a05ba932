#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pedkin/io.hpp"
#include "pedkin_cli.hpp"

namespace fs = std::filesystem;
using namespace pedkin;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("pedkin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string file(const std::string& name, const std::string& content) {
    const auto p = dir / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string trio() { return file("trio.ped", "A 0 0 M\nB 0 0 F\nC A B F\n"); }
  std::string sibs() { return file("sibs.ped", "A 0 0 M\nB 0 0 F\nC A B F\nD A B M\n"); }
};

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_F(CliTest, ExactWritesDenseMatrix) {
  const auto out = (dir / "out.tsv").string();
  const auto r = run({"exact", trio(), "-o", out});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  std::ifstream in(out);
  const auto m = read_kinship_matrix(in);
  EXPECT_EQ(m.at("A", "C"), 0.25);
  EXPECT_EQ(m.at("C", "C"), 0.0);
}

TEST_F(CliTest, ExactOptions) {
  const auto psi = file("psi.txt", "A B 0.25\n");
  const auto r = run({"exact", trio(), "--founder-kinship", psi, "--diagonal", "self-kinship",
                      "--format", "triplet"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# diagonal=self-kinship"), std::string::npos);
  EXPECT_NE(r.out.find("C\tC\t0.625"), std::string::npos);
  const auto avg = run({"exact", trio(), "--founder-kinship", file("d.txt", "A A 0.5\n"), "--average-psi",
                        "--format", "triplet"});
  ASSERT_EQ(avg.code, 0) << avg.err;
  EXPECT_NE(avg.out.find("A\tB\t0.25"), std::string::npos);
}

TEST_F(CliTest, CutOutputsInterestSubmatrix) {
  const auto interest = file("interest.txt", "C D\n");
  const auto r = run({"cut", sibs(), "--interest", interest, "--max-segment", "2", "--emit-plan"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("segments\t2"), std::string::npos);
  EXPECT_NE(r.out.find("C\tD\n0\t0.25\n0.25\t0\n"), std::string::npos);
}

TEST_F(CliTest, SampleIsDeterministicAndReportsSeed) {
  const auto interest = file("interest.txt", "C D\n");
  const auto a = run({"sample", sibs(), "--interest", interest, "-S", "500", "--seed", "4", "--stderr"});
  const auto b = run({"sample", sibs(), "--interest", interest, "-S", "500", "--seed", "4", "--stderr",
                      "--threads", "4"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("# standard-error"), std::string::npos);
  const auto c = run({"sample", sibs(), "--interest", interest, "-S", "10"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.err.rfind("seed=", 0), 0u);
  const auto lit = run({"sample", sibs(), "--interest", interest, "-S", "10", "--seed", "1",
                        "--merge-rule", "paper"});
  EXPECT_EQ(lit.code, 0);
}

TEST_F(CliTest, SimulateBothModels) {
  const auto wf = run({"simulate", "--model", "wf", "-N", "3", "-G", "2", "--seed", "1"});
  ASSERT_EQ(wf.code, 0) << wf.err;
  EXPECT_EQ(data_lines(wf.out).size(), 12u);
  const auto rnd = run({"simulate", "--model", "random", "-n", "9", "--founders", "0.4", "--seed", "1"});
  ASSERT_EQ(rnd.code, 0) << rnd.err;
  EXPECT_EQ(data_lines(rnd.out).size(), 9u);
  EXPECT_EQ(run({"simulate", "--model", "wf", "-N", "3"}).code, cli::kExitUsage);
}

TEST_F(CliTest, Ancestors) {
  const auto r = run({"ancestors", trio(), "C"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "A\nB\nC\n");
  EXPECT_EQ(run({"ancestors", trio(), "Z"}).code, cli::kExitFailure);
}

TEST_F(CliTest, StatesTable) {
  const auto r = run({"states"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(data_lines(r.out).size(), 15u);
}

TEST_F(CliTest, VerifyPassAndCorruptedMatrix) {
  const auto ok = run({"verify", trio()});
  EXPECT_EQ(ok.code, 0) << ok.out;
  const auto bad = file("bad.tsv", "# diagonal=inbreeding\nA\tB\tC\n0\t0\t0.25\n0\t0\t0.3\n0.25\t0.3\t0\n");
  const auto r = run({"verify", trio(), "--matrix", bad});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.out.find("mismatch\tB\tC"), std::string::npos);
}

TEST_F(CliTest, BenchPrintsFits) {
  const auto r = run({"bench", "-N", "4", "-G", "2", "--algos", "exact,cut,sample", "--samples", "5",
                      "--repeats", "1", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# fit\texact"), std::string::npos);
  EXPECT_NE(r.out.find("# fit\tcut"), std::string::npos);
  EXPECT_NE(r.out.find("# fit\tsample"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"exact"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"exact", trio(), "--diagonal", "diag"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"sample", trio(), "--interest", file("i", "C"), "-S", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, InputErrorsExitOne) {
  const auto r = run({"exact", file("cyc.ped", "D D B F\n")});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("D"), std::string::npos);
}
