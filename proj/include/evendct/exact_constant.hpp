#pragma once

#include <string>

namespace evendct {

/// How a multiplier is charged when counting operations.
enum class ConstantClass {
  kTrivial,  ///< +-1: free, the sign is absorbed into an add or subtract.
  kShift,    ///< +-2^k with k != 0.
  kGeneral,  ///< anything else: a real multiplication.
};

/// A nonzero multiplier in the normal form sign * 2^exponent * mantissa with
/// mantissa in [1, 2). Products of constants add exponents and multiply
/// mantissas, so dyadic factors (2 * 1/2) cancel exactly without needing any
/// symbolic cosine algebra.
class ExactConstant {
 public:
  /// Mantissas this close to 1 (or to 2) are snapped to an exact power of two.
  static constexpr double kUnitTolerance = 1e-12;

  ExactConstant() = default;
  ExactConstant(int sign, int exponent, double mantissa);

  static ExactConstant from_double(double value);
  static ExactConstant power_of_two(int exponent, int sign = 1);

  int sign() const { return sign_; }
  int exponent() const { return exponent_; }
  double mantissa() const { return mantissa_; }
  bool is_unit_mantissa() const { return mantissa_ == 1.0; }

  double value() const;
  ConstantClass classify() const;

  ExactConstant operator*(const ExactConstant& other) const;
  ExactConstant inverse() const;
  ExactConstant negated() const { return ExactConstant(-sign_, exponent_, mantissa_); }
  ExactConstant magnitude() const { return ExactConstant(1, exponent_, mantissa_); }

  /// Same mantissa within kUnitTolerance (relative), regardless of sign and
  /// exponent: the two constants differ by a signed power of two.
  bool same_mantissa(const ExactConstant& other) const;
  /// Same sign, exponent and mantissa (mantissa within tolerance).
  bool approx_equal(const ExactConstant& other) const;

  std::string to_string() const;

 private:
  void normalize();

  int sign_ = 1;
  int exponent_ = 0;
  double mantissa_ = 1.0;
};

}  // namespace evendct
