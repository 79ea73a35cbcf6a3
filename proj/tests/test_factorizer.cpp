#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "evendct/factorizer.hpp"
#include "evendct/fold.hpp"
#include "evendct/oracle.hpp"
#include "evendct/plan_io.hpp"
#include "random_plan.hpp"

using namespace evendct;

namespace {

std::vector<std::size_t> family_lengths(std::size_t max_n) {
  std::vector<std::size_t> out;
  for (std::size_t q : {1, 3, 5, 15})
    for (std::size_t n = q; n <= max_n; n *= 2) out.push_back(n);
  return out;
}

}  // namespace

TEST(Factorizer, Decompose) {
  EXPECT_EQ(decompose(48).q, 3u);
  EXPECT_EQ(decompose(48).m, 4u);
  EXPECT_EQ(decompose(1).q, 1u);
  EXPECT_EQ(decompose(1).m, 0u);
  EXPECT_THROW(decompose(0), std::invalid_argument);
}

TEST(Factorizer, BasePlans) {
  EXPECT_EQ(count_ops(base_plan_2()), (OpCount{1, 2, 0}));
  EXPECT_EQ(count_ops(base_plan_3()), (OpCount{1, 4, 1}));
  EXPECT_LT(oracle_error(base_plan_2()), 1e-15);
  EXPECT_LT(oracle_error(base_plan_3()), 1e-15);

  const ScaledFactorization s2 = base_scaled_2();
  EXPECT_EQ(s2.pi, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(s2.delta[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s2.delta[1], std::sqrt(0.5), 1e-15);
  EXPECT_LT(max_abs_diff(to_matrix(s2.plan), DenseMatrix(2, 2, {std::sqrt(2.0), std::sqrt(2.0), 1, -1})), 1e-15);
  EXPECT_LT(oracle_error(s2), 1e-12);

  const ScaledFactorization s3 = base_scaled_3();
  for (double d : s3.delta) EXPECT_EQ(d, 0.5);
  EXPECT_LT(oracle_error(s3), 1e-12);
  EXPECT_EQ(count_ops(fold(s3).plan), (OpCount{0, 4, 1}));
  EXPECT_EQ(count_ops(fold(s2).plan), (OpCount{0, 2, 0}));
}

TEST(Factorizer, DenseBase) {
  EXPECT_EQ(to_matrix(dense_base_plan(1)), DenseMatrix::identity(1));
  for (std::size_t q : {3, 5, 7, 9, 15}) EXPECT_LT(oracle_error(dense_base_plan(q)), 1e-12) << q;
  EXPECT_THROW(dense_base_plan(4), std::invalid_argument);
}

TEST(Factorizer, KokMatchesOracle) {
  for (std::size_t n : family_lengths(240)) EXPECT_LT(oracle_error(kok_plan(n)), 1e-9) << n;
  for (std::size_t n : {7, 14, 28, 9, 18, 36}) EXPECT_LT(oracle_error(kok_plan(n)), 1e-9) << n;
}

TEST(Factorizer, KokSmallCounts) {
  EXPECT_EQ(count_ops(kok_plan(4)), (OpCount{4, 9, 1}));
  EXPECT_EQ(count_ops(kok_plan(6)), (OpCount{5, 16, 3}));
}

TEST(Factorizer, ScaledReconstruction) {
  for (std::size_t n = 2; n <= 48; n += 2) EXPECT_LT(oracle_error(scaled_plan(n)), 1e-10) << n;
  for (std::size_t n : family_lengths(240))
    if (n % 2 == 0) EXPECT_LT(oracle_error(scaled_plan(n)), 1e-9) << n;
  EXPECT_THROW(scaled_plan(9), std::invalid_argument);
  EXPECT_THROW(scaled_plan(0), std::invalid_argument);
}

TEST(Factorizer, ScaledPermutationAndDelta) {
  const ScaledFactorization sf = scaled_plan(8);
  std::vector<std::size_t> sorted = sf.pi;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(sorted[i], i);
  for (double d : sf.delta) EXPECT_GT(d, 0.0);
  const DenseMatrix rec = reconstruct_matrix(sf);
  EXPECT_LT(max_abs_diff(rec, oracle::dct2_matrix(8)), 1e-12);
  std::vector<double> x{1, -2, 0.5, 3, 0, 0.25, -1, 2};
  const auto y = apply_scaled(sf, x);
  const DenseMatrix c = oracle::dct2_matrix(8);
  for (std::size_t k = 0; k < 8; ++k) {
    double ref = 0;
    for (std::size_t i = 0; i < 8; ++i) ref += c(k, i) * x[i];
    EXPECT_NEAR(y[k], ref, 1e-12);
  }
}

TEST(Factorizer, FoldedScaledTargets) {
  EXPECT_EQ(count_ops(fold(scaled_plan(8)).plan), (OpCount{5, 29, 0}));
  EXPECT_EQ(count_ops(fold(scaled_plan(6)).plan), (OpCount{1, 16, 2}));
  EXPECT_EQ(count_ops(fold(kok_plan(4))), (OpCount{4, 9, 0}));
  for (std::size_t n : family_lengths(240))
    if (n % 2 == 0) EXPECT_LT(oracle_error(fold(scaled_plan(n))), 1e-9) << n;
}

TEST(Factorizer, Dct3Routes) {
  for (std::size_t n : family_lengths(96)) {
    EXPECT_LT(max_abs_diff(to_matrix(dct3_plan(n)), oracle::dct3_matrix(n)), 1e-9) << n;
    EXPECT_EQ(count_ops(dct3_plan(n)), count_ops(kok_plan(n))) << n;
    if (n % 2 == 0)
      EXPECT_LT(max_abs_diff(to_matrix(dct3_plan_via_scaled(n)), oracle::dct3_matrix(n)), 1e-9) << n;
  }
}

TEST(BaseLibrary, CustomBasesAreChecked) {
  BaseLibrary lib;
  EXPECT_THROW(lib.set_unscaled(3, identity_plan(3)), std::invalid_argument);
  lib.set_unscaled(5, dense_base_plan(5));
  EXPECT_LT(oracle_error(kok_plan(20, lib)), 1e-10);
  const auto lengths = lib.stored_lengths();
  EXPECT_NE(std::find(lengths.begin(), lengths.end(), 5u), lengths.end());
}

TEST(BaseLibrary, LoadPlanFile) {
  const std::string path = std::string(EVENDCT_TEST_TMPDIR) + "/base5.json";
  {
    std::ofstream f(path);
    f << to_json(dense_base_plan(5));
  }
  BaseLibrary lib;
  lib.load_plan_file(path);
  EXPECT_LT(oracle_error(kok_plan(10, lib)), 1e-10);

  const std::string bad = std::string(EVENDCT_TEST_TMPDIR) + "/bad3.json";
  {
    std::ofstream f(bad);
    f << to_json(identity_plan(3));
  }
  try {
    lib.load_plan_file(bad);
    FAIL() << "expected a throw";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("bad3.json"), std::string::npos);
  }
}

TEST(Factorizer, SpecExamples) {
  // Column 0 of the 6-point transform.
  std::vector<double> e0(6, 0.0);
  e0[0] = 1.0;
  const auto y = evaluate(kok_plan(6), e0);
  const DenseMatrix c = oracle::dct2_matrix(6);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(y[k], c(k, 0), 1e-12);
  EXPECT_EQ(count_ops(kok_plan(8)).mu, 12);
  EXPECT_EQ(count_ops(dense_base_plan(5)).mu, 16);
  EXPECT_LT(max_abs_diff(to_matrix(dct3_plan(2)), to_matrix(kok_plan(2)).transposed()), 1e-15);
  EXPECT_LT(max_abs_diff(to_matrix(dct3_plan(4)), oracle::dct3_matrix(4)), 1e-12);
}

TEST(Factorizer, DeltaMultiset) {
  for (std::size_t n : {4, 6, 8, 12, 16, 24, 40, 48, 96}) {
    const ScaledFactorization sf = scaled_plan(n);
    const Length len = decompose(n);
    std::size_t base_len = len.q == 1 ? 2 : len.q;
    std::vector<double> want = BaseLibrary::standard().scaled(base_len).delta;
    for (std::size_t h = n / 2; h >= base_len; h /= 2)
      for (std::size_t k = 0; k < h; ++k) want.push_back(oracle::d_entry(h, k));
    std::vector<double> got = sf.delta;
    ASSERT_EQ(got.size(), want.size()) << n;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-15) << n;
  }
}

TEST(Factorizer, FoldPreservesMatricesOfAllGeneratedPlans) {
  for (std::size_t n : family_lengths(240)) {
    const PlanGraph k = kok_plan(n);
    EXPECT_LT(max_abs_diff(to_matrix(fold(k)), to_matrix(k)), 1e-12) << n;
    if (n % 2 == 0) {
      const ScaledFactorization s = scaled_plan(n);
      EXPECT_LT(max_abs_diff(reconstruct_matrix(fold(s)), reconstruct_matrix(s)), 1e-12) << n;
    }
  }
}
