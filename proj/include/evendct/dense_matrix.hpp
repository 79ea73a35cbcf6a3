#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evendct {

/// Row-major dense matrix of doubles. Used as the ground truth every plan is
/// checked against, so it favours clarity over speed.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const double> entries() const { return entries_; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(entries_).subspan(r * cols_, cols_);
  }

  DenseMatrix transposed() const;
  DenseMatrix scaled(double factor) const;

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

/// Largest absolute entrywise difference. Shapes must agree.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

/// Block-diagonal composition diag(a, b).
DenseMatrix block_diag(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace evendct
