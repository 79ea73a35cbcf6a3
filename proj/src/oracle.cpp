#include "evendct/oracle.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace evendct::oracle {
namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": N must be positive");
}

void require_even(std::size_t n, const char* what) {
  require_positive(n, what);
  if (n % 2 != 0) throw std::invalid_argument(std::string(what) + ": N must be even");
}

}  // namespace

double cos_pi(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("cos_pi: denominator must be positive");
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  // Reduce the angle num/den (in units of pi) into [0, 2).
  const std::int64_t period = 2 * den;
  num %= period;
  if (num < 0) num += period;
  // cos is even about pi: fold (1, 2) onto (0, 1).
  if (num > den) num = period - num;
  // Fold (1/2, 1] onto [0, 1/2) with a sign flip.
  double sign = 1.0;
  if (2 * num > den) {
    num = den - num;
    sign = -1.0;
  }
  if (num == 0) return sign;
  if (2 * num == den) return 0.0;
  if (3 * num == den) return sign * 0.5;
  const double angle = std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  // Past pi/4 the complementary sine is the better-conditioned evaluation.
  if (4 * num > den) {
    const double complement =
        std::numbers::pi * static_cast<double>(den - 2 * num) / static_cast<double>(2 * den);
    return sign * std::sin(complement);
  }
  return sign * std::cos(angle);
}

DenseMatrix dct2_matrix(std::size_t n) {
  require_positive(n, "dct2_matrix");
  const auto nn = static_cast<std::int64_t>(n);
  DenseMatrix m(n, n);
  for (std::int64_t k = 0; k < nn; ++k)
    for (std::int64_t j = 0; j < nn; ++j) m(k, j) = cos_pi((2 * j + 1) * k, 2 * nn);
  return m;
}

DenseMatrix dct3_matrix(std::size_t n) {
  require_positive(n, "dct3_matrix");
  return dct2_matrix(n).transposed();
}

DenseMatrix dct4_matrix(std::size_t n) {
  require_positive(n, "dct4_matrix");
  const auto nn = static_cast<std::int64_t>(n);
  DenseMatrix m(n, n);
  for (std::int64_t k = 0; k < nn; ++k)
    for (std::int64_t j = 0; j < nn; ++j) m(k, j) = cos_pi((2 * j + 1) * (2 * k + 1), 4 * nn);
  return m;
}

DenseMatrix r_matrix(std::size_t n) {
  require_positive(n, "r_matrix");
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, 0) = (i % 2 == 0) ? 0.5 : -0.5;
    for (std::size_t j = 1; j <= i; ++j) m(i, j) = ((i - j) % 2 == 0) ? 1.0 : -1.0;
  }
  return m;
}

double d_entry(std::size_t n, std::size_t k) {
  return 2.0 * cos_pi(static_cast<std::int64_t>(2 * k + 1), static_cast<std::int64_t>(4 * n));
}

DenseMatrix d_matrix(std::size_t n) {
  require_positive(n, "d_matrix");
  DenseMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = d_entry(n, k);
  return m;
}

DenseMatrix j_matrix(std::size_t n) {
  require_positive(n, "j_matrix");
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1.0;
  return m;
}

DenseMatrix b_matrix(std::size_t n) {
  require_even(n, "b_matrix");
  const std::size_t h = n / 2;
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < h; ++i) {
    m(i, i) = 1.0;
    m(i, n - 1 - i) = 1.0;
    m(h + i, h - 1 - i) = 1.0;
    m(h + i, h + i) = -1.0;
  }
  return m;
}

DenseMatrix p_matrix(std::size_t n) {
  require_even(n, "p_matrix");
  const std::size_t h = n / 2;
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < h; ++i) {
    m(2 * i, i) = 1.0;
    m(2 * i + 1, h + i) = 1.0;
  }
  return m;
}

}  // namespace evendct::oracle
