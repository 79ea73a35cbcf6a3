#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "evendct/oracle.hpp"

using namespace evendct;
using namespace evendct::oracle;

namespace {

void expect_near(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  EXPECT_LT(max_abs_diff(a, b), tol);
}

}  // namespace

TEST(Oracle, CosPiExactCases) {
  EXPECT_EQ(cos_pi(0, 1), 1.0);
  EXPECT_EQ(cos_pi(1, 2), 0.0);
  EXPECT_EQ(cos_pi(1, 1), -1.0);
  EXPECT_EQ(cos_pi(1, 3), 0.5);
  EXPECT_EQ(cos_pi(3, 2), 0.0);
  EXPECT_NEAR(cos_pi(1, 4), std::sqrt(0.5), 1e-16);
  EXPECT_NEAR(cos_pi(7, 9), std::cos(7 * std::numbers::pi / 9), 1e-15);
  EXPECT_NEAR(cos_pi(-5, 12), std::cos(-5 * std::numbers::pi / 12), 1e-15);
}

TEST(Oracle, Dct2Small) {
  const double c = std::cos(std::numbers::pi / 4);
  expect_near(dct2_matrix(2), DenseMatrix(2, 2, {1, 1, c, -c}), 1e-15);
  const double c6 = std::cos(std::numbers::pi / 6);
  expect_near(dct2_matrix(3), DenseMatrix(3, 3, {1, 1, 1, c6, 0, -c6, 0.5, -1, 0.5}), 1e-15);
  EXPECT_EQ(dct2_matrix(1), DenseMatrix(1, 1, {1}));
}

TEST(Oracle, Dct3IsTranspose) {
  for (std::size_t n = 1; n <= 16; ++n) EXPECT_EQ(dct3_matrix(n), dct2_matrix(n).transposed());
  // Rows of dct2_matrix are frequencies, so C2 * C3 is the diagonal product.
  const DenseMatrix p = dct2_matrix(4) * dct3_matrix(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) EXPECT_LT(std::abs(p(i, j)), 1e-12);
  EXPECT_NEAR(p(0, 0), 4.0, 1e-12);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(p(i, i), 2.0, 1e-12);
}

TEST(Oracle, Dct4Small) {
  EXPECT_NEAR(dct4_matrix(1)(0, 0), std::cos(std::numbers::pi / 4), 1e-16);
  const double a = std::cos(std::numbers::pi / 8), b = std::cos(3 * std::numbers::pi / 8);
  expect_near(dct4_matrix(2), DenseMatrix(2, 2, {a, b, b, -a}), 1e-15);
}

TEST(Oracle, AuxiliaryMatrices) {
  EXPECT_EQ(r_matrix(1), DenseMatrix(1, 1, {0.5}));
  EXPECT_EQ(r_matrix(3), DenseMatrix(3, 3, {0.5, 0, 0, -0.5, 1, 0, 0.5, -1, 1}));
  const DenseMatrix r2 = r_matrix(2);
  EXPECT_DOUBLE_EQ(r2(0, 0) * r2(1, 1) - r2(0, 1) * r2(1, 0), 0.5);
  EXPECT_NEAR(d_matrix(1)(0, 0), std::sqrt(2.0), 1e-15);
  const DenseMatrix d4 = d_matrix(4);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_GT(d4(k, k), 0.0);
    if (k) EXPECT_LT(d4(k, k), d4(k - 1, k - 1));
    EXPECT_DOUBLE_EQ(d4(k, k), d_entry(4, k));
  }
  EXPECT_EQ(j_matrix(2), DenseMatrix(2, 2, {0, 1, 1, 0}));
  EXPECT_EQ(b_matrix(2), DenseMatrix(2, 2, {1, 1, 1, -1}));
}

TEST(Oracle, RejectsBadLengths) {
  EXPECT_THROW(dct2_matrix(0), std::invalid_argument);
  EXPECT_THROW(dct3_matrix(0), std::invalid_argument);
  EXPECT_THROW(dct4_matrix(0), std::invalid_argument);
  EXPECT_THROW(r_matrix(0), std::invalid_argument);
  EXPECT_THROW(b_matrix(3), std::invalid_argument);
  EXPECT_THROW(p_matrix(5), std::invalid_argument);
}

TEST(OracleIdentity, RecursiveSubtraction) {
  for (std::size_t n = 1; n <= 32; ++n)
    EXPECT_LT(max_abs_diff(dct4_matrix(n), r_matrix(n) * dct2_matrix(n) * d_matrix(n)), 1e-10) << n;
}

TEST(OracleIdentity, TransposedForm) {
  for (std::size_t n = 1; n <= 32; ++n)
    EXPECT_LT(max_abs_diff(dct4_matrix(n), d_matrix(n) * dct3_matrix(n) * r_matrix(n).transposed()), 1e-10) << n;
}

TEST(OracleIdentity, EvenOddSplit) {
  for (std::size_t n = 2; n <= 64; n += 2) {
    const std::size_t h = n / 2;
    const DenseMatrix mid = block_diag(dct2_matrix(h), dct4_matrix(h) * j_matrix(h));
    EXPECT_LT(max_abs_diff(dct2_matrix(n), p_matrix(n) * mid * b_matrix(n)), 1e-10) << n;
  }
}

TEST(OracleIdentity, PermutationOrientation) {
  // Row 2i of P picks entry i, row 2i+1 picks entry h+i.
  const DenseMatrix p = p_matrix(6);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(p(2 * i, i), 1.0);
    EXPECT_EQ(p(2 * i + 1, 3 + i), 1.0);
  }
}

TEST(OracleIdentity, Dct4Involution) {
  const DenseMatrix c2 = dct4_matrix(2);
  const double c = (c2 * c2)(0, 0);
  EXPECT_NEAR(c, 1.0, 1e-15);
  for (std::size_t n = 1; n <= 32; ++n) {
    const DenseMatrix c4 = dct4_matrix(n);
    EXPECT_LT(max_abs_diff(c4 * c4, DenseMatrix::identity(n).scaled(c * n / 2.0)), 1e-8) << n;
  }
}

TEST(DenseMatrix, Basics) {
  EXPECT_THROW(DenseMatrix(0, 1), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(1, 1, {NAN}), std::invalid_argument);
  EXPECT_THROW(DenseMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
  const DenseMatrix a(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(a.transposed().transposed(), a);
  EXPECT_EQ((DenseMatrix::identity(2) * a), a);
  EXPECT_THROW(a * a, std::invalid_argument);
  const DenseMatrix b = block_diag(DenseMatrix::identity(1), a);
  EXPECT_EQ(b.rows(), 3u);
  EXPECT_EQ(b.cols(), 4u);
  EXPECT_EQ(b(1, 1), 1.0);
  EXPECT_EQ(b(0, 1), 0.0);
}
