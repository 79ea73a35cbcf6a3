#pragma once

#include <cstddef>
#include <cstdint>

#include "evendct/dense_matrix.hpp"

// Definition-level builders for the unnormalized cosine transforms and the
// auxiliary matrices of the even-length splitting. Everything here is O(N^2)
// on purpose: these matrices are what the fast plans are measured against.
namespace evendct::oracle {

/// cos(pi * num / den), reduced to the first quadrant so that the common
/// exact cases (0, 1/2, 1) come out exact.
double cos_pi(std::int64_t num, std::int64_t den);

/// [C2]_{n,k} = cos(pi (2n+1) k / 2N); row 0 of the returned matrix is the
/// DC row of ones, i.e. the matrix maps a signal to its spectrum.
DenseMatrix dct2_matrix(std::size_t n);
/// Transpose of dct2_matrix(n).
DenseMatrix dct3_matrix(std::size_t n);
/// [C4]_{n,k} = cos(pi (2n+1)(2k+1) / 4N).
DenseMatrix dct4_matrix(std::size_t n);

/// Recursive-subtraction matrix: lower triangular, column 0 is (-1)^i / 2,
/// entry (i, j) = (-1)^{i-j} for 1 <= j <= i.
DenseMatrix r_matrix(std::size_t n);
/// diag(2 cos((2k+1) pi / 4N)).
DenseMatrix d_matrix(std::size_t n);
/// Order reversal.
DenseMatrix j_matrix(std::size_t n);
/// Butterfly [[I, J], [J, -I]] with N/2 blocks. N must be even.
DenseMatrix b_matrix(std::size_t n);
/// Output interleave: row 2i picks the first half, row 2i+1 the second half.
DenseMatrix p_matrix(std::size_t n);

/// Diagonal entry k of D_N, 2 cos((2k+1) pi / 4N).
double d_entry(std::size_t n, std::size_t k);

}  // namespace evendct::oracle
