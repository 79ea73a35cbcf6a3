#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "evendct/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = evendct::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_substr(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, GenDot) {
  const Result r = run({"gen", "--n", "6", "--scaled", "--format", "dot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_substr(r.out, "shape=box"), 12u);
}

TEST(Cli, GenJsonFoldedCounts) {
  const Result r = run({"gen", "--n", "8", "--scaled", "--fold", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"mu\": 5"), std::string::npos);
  EXPECT_NE(r.out.find("\"alpha\": 29"), std::string::npos);
  EXPECT_NE(r.out.find("\"sigma\": 0"), std::string::npos);
}

TEST(Cli, GenRejectsBadLength) {
  const Result r = run({"gen", "--n", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("q*2^m"), std::string::npos);
  EXPECT_EQ(run({"gen", "--n", "9", "--scaled"}).code, 2);
  EXPECT_EQ(run({"gen", "--n", "5000"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"gen", "--n", "4", "--format", "png"}).code, 2);
  EXPECT_EQ(run({"verify", "--tol", "0"}).code, 2);
  EXPECT_EQ(run({"verify", "--tol", "0.01"}).code, 2);
  EXPECT_EQ(run({"gen", "--n", "4", "--q", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Count) {
  EXPECT_EQ(run({"count", "--n", "6", "--scaled", "--fold"}).out, "1,16,2\n");
  EXPECT_EQ(run({"count", "--q", "1", "--m", "3", "--scaled", "--fold"}).out, "5,29,0\n");
  const Result r = run({"count", "--n", "24", "--compare"});
  EXPECT_NE(r.out.find("difference 0,0,0"), std::string::npos) << r.out;
  const Result c = run({"count", "--n", "16", "--scaled", "--compare", "--format", "csv"});
  EXPECT_EQ(c.out.rfind("source,mu,alpha,sigma\n", 0), 0u);
  EXPECT_NE(c.out.find("difference,0,0,0"), std::string::npos) << c.out;
}

TEST(Cli, Formula) {
  EXPECT_EQ(run({"formula", "--q", "15", "--m", "3", "--scaled"}).out, "183,1090,43\n");
  EXPECT_EQ(run({"formula", "--q", "5", "--m", "4", "--pfa-scaled"}).out, "142\n");
  EXPECT_EQ(run({"formula", "--q", "3", "--m", "1"}).out, "5,16,3\n");
  const Result bad = run({"formula", "--q", "7", "--m", "2"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("2, 3, 4, 5, 8, 15, 16"), std::string::npos);
  const Result cmp = run({"formula", "--q", "3", "--m", "2", "--scaled", "--fold", "--compare"});
  EXPECT_NE(cmp.out.find("difference 0,0,0"), std::string::npos) << cmp.out;
}

TEST(Cli, Tables) {
  const Result t = run({"table2"});
  EXPECT_NE(t.out.find("3,4,48,66,337,16,63\n"), std::string::npos);
  EXPECT_EQ(t.out, run({"table2"}).out);
  const Result f = run({"fig5"});
  EXPECT_NE(f.out.find("2^m,8,0.625\n"), std::string::npos);
  for (const char* fam : {"2^m,", "3*2^m,", "5*2^m,", "15*2^m,"}) EXPECT_NE(f.out.find(fam), std::string::npos);
}

TEST(Cli, EvalDeterministic) {
  const Result a = run({"eval", "--n", "12", "--scaled", "--fold", "--seed", "42"});
  const Result b = run({"eval", "--n", "12", "--scaled", "--fold", "--seed", "42"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed: 42"), std::string::npos);
  const Result c = run({"eval", "--n", "2", "--input", "1,1"});
  EXPECT_NE(c.out.find("y: 2,0"), std::string::npos) << c.out;
  EXPECT_EQ(run({"eval", "--n", "2", "--input", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--n", "2", "--input", "1,x"}).code, 2);
}

TEST(Cli, VerifyDefault) {
  const Result r = run({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  for (const char* id : {"dct4_via_dct2 ", "even_odd_split ", "dct4_via_dct3 ", "involution ", "kok_oracle ", "scaled_oracle ", "transpose "})
    EXPECT_NE(r.out.find(id), std::string::npos) << id;
}

TEST(Cli, VerifyFlagsCorruptedPlan) {
  const std::string good = std::string(EVENDCT_TEST_TMPDIR) + "/cli_good.json";
  const std::string bad = std::string(EVENDCT_TEST_TMPDIR) + "/cli_corrupt.json";
  {
    std::ofstream f(good);
    f << run({"gen", "--n", "8", "--scaled", "--fold"}).out;
  }
  {
    // Same plan with one constant perturbed.
    std::string text = run({"gen", "--n", "8"}).out;
    const std::size_t p = text.find("\"mantissa\": 1.");
    ASSERT_NE(p, std::string::npos);
    text[p + 14] = text[p + 14] == '5' ? '6' : '5';
    std::ofstream f(bad);
    f << text;
  }
  EXPECT_EQ(run({"verify", "--max-n", "8", "--plan", good}).code, 0);
  const Result r = run({"verify", "--max-n", "8", "--plan", good, "--plan", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("failed: plan_file " + bad), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("failed: plan_file " + good), std::string::npos);
}
