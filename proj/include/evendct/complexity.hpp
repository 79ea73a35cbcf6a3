#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evendct/plan_graph.hpp"

// Closed-form operation counts for the Kok recursion, its scaled variant and
// the prime-factor comparisons, plus the tables built from them. Everything
// is exact integer arithmetic; formula terms that are fractional on their own
// are combined first and checked for integrality, never rounded.
namespace evendct::complexity {

/// Published costs of a short DCT-II, plain and scaled.
struct BaseCounts {
  long long q = 0;
  OpCount unscaled;
  OpCount scaled;
};

/// Short-length DCT-II costs (lengths 3, 5, 15, 2, 4, 8, 16) exactly as
/// tabulated in the literature. The dyadic rows are reference numbers for
/// algorithms other than the recursion implemented here (for example the
/// scaled 16-point row is 16, the scaled recursion gives 17).
class ComplexityRegistry {
 public:
  static const ComplexityRegistry& standard();

  std::span<const BaseCounts> entries() const { return entries_; }
  std::optional<BaseCounts> find(long long q) const;
  /// Throws std::out_of_range listing the available lengths.
  const BaseCounts& at(long long q) const;
  std::string describe() const;  // "2, 3, 4, 5, 8, 15, 16"

 private:
  ComplexityRegistry();
  std::vector<BaseCounts> entries_;
};

/// Kok recursion, N = q 2^m:
///   mu    = 2^m mu(q) + (m/2) N
///   alpha = 2^m alpha(q) + (3m/2) N - 2^m + 1
///   sigma = 2^m sigma(q) + 2^m - 1
OpCount kok_counts(const BaseCounts& base, unsigned m);

/// Scaled recursion with an unscaled Kok DCT-III in every lower branch:
///   mu~    = mu~(q) + (2^m - 1) mu(q) + (m/2 - 1 + 2^-m) N
///   alpha~ = alpha~(q) + (2^m - 1) alpha(q) + (3m/2) N - 2^m + 1
///   sigma~ = sigma~(q) + (2^m - 1) sigma(q) + 2^m - 1
OpCount scaled_counts(const BaseCounts& base, unsigned m);

/// Multiplications saved by the scaled recursion over Kok's: mu(N) - mu~(N).
long long savings(const BaseCounts& base, unsigned m);

/// Scaled 2^m-point transform after the DC-path sqrt2 factors absorb the
/// halves of R^T:
///   mu~ = m 2^{m-1} - 2^m + 1,  alpha~ = 3m 2^{m-1} - 2^m + 1,  sigma~ = 0.
OpCount dyadic_scaled_folded(unsigned m);
/// Scaled 3*2^m-point transform with the factor 2 moved to the 3-point DC path:
///   mu~ = 3m 2^{m-1} - 2^{m+1} + 2,  alpha~ = 9m 2^{m-1} + 3*2^m + 1,
///   sigma~ = 2^m.
OpCount three_scaled_folded(unsigned m);

/// Upper bound on the multiplications of a scaled prime-factor DCT-II
/// (Feig-Linzer construction over a Feig-Winograd dyadic stage):
///   2^m mu~(q) + (5/2) N - q (m(m+3) + 5)/2 - 2^{m-1} + 1/2.
/// m must be >= 1.
long long pfa_scaled_bound(const BaseCounts& base, unsigned m);

/// Lower bound on the multiplications of an unscaled prime-factor DCT-II,
/// 2^m mu(q) + q (2^{m+1} - m - 2). m must be >= 1.
long long pfa_unscaled_lower_bound(const BaseCounts& base, unsigned m);
/// Kok's multiplication count minus the prime-factor lower bound.
long long kok_excess_over_pfa(const BaseCounts& base, unsigned m);
/// True iff Kok's recursion reaches the prime-factor lower bound, which
/// happens exactly for m in {1, 2}. m must be >= 1.
bool matches_pfa(unsigned m);

struct Table2Row {
  long long q = 0;
  unsigned m = 0;
  long long n = 0;
  OpCount proposed;
  long long fl_mu = 0;
  // Published Feig-Linzer additions and shifts; display only.
  long long fl_alpha = 0;
  long long fl_sigma = 0;
};

/// Scaled composite-length comparison, q in {3, 5, 15}, m in 1..4. The q = 3
/// rows use three_scaled_folded; q = 5 and 15 use scaled_counts with the
/// registry bases. fl_mu is pfa_scaled_bound.
std::vector<Table2Row> table2();

struct Fig5Point {
  std::string family;  // "2^m", "3*2^m", "5*2^m", "15*2^m"
  long long n = 0;
  long long mu = 0;
  double mu_norm = 0.0;  // mu / n
};

/// Normalized scaled multiplicative complexity for N = 2^m (m = 1..max_m) and
/// N = q 2^m, q in {3, 5, 15} (m = 0..max_m), with the same accounting as
/// table2 (the dyadic family uses dyadic_scaled_folded).
std::vector<Fig5Point> fig5_data(unsigned max_m);

std::string table2_csv();
std::string fig5_csv(unsigned max_m);

}  // namespace evendct::complexity
