#include "evendct/exact_constant.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace evendct {

ExactConstant::ExactConstant(int sign, int exponent, double mantissa)
    : sign_(sign), exponent_(exponent), mantissa_(mantissa) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("ExactConstant: sign must be +-1");
  if (!std::isfinite(mantissa) || mantissa <= 0.0)
    throw std::invalid_argument("ExactConstant: mantissa must be finite and positive");
  normalize();
}

ExactConstant ExactConstant::from_double(double value) {
  if (!std::isfinite(value) || value == 0.0)
    throw std::invalid_argument("ExactConstant: value must be finite and nonzero");
  return ExactConstant(value < 0 ? -1 : 1, 0, std::abs(value));
}

ExactConstant ExactConstant::power_of_two(int exponent, int sign) {
  return ExactConstant(sign, exponent, 1.0);
}

void ExactConstant::normalize() {
  int e = 0;
  const double frac = std::frexp(mantissa_, &e);  // frac in [0.5, 1)
  mantissa_ = frac * 2.0;
  exponent_ += e - 1;
  if (std::abs(mantissa_ - 1.0) < kUnitTolerance) {
    mantissa_ = 1.0;
  } else if (std::abs(mantissa_ - 2.0) < 2.0 * kUnitTolerance) {
    mantissa_ = 1.0;
    exponent_ += 1;
  }
}

double ExactConstant::value() const {
  return static_cast<double>(sign_) * std::ldexp(mantissa_, exponent_);
}

ConstantClass ExactConstant::classify() const {
  if (!is_unit_mantissa()) return ConstantClass::kGeneral;
  return exponent_ == 0 ? ConstantClass::kTrivial : ConstantClass::kShift;
}

ExactConstant ExactConstant::operator*(const ExactConstant& other) const {
  return ExactConstant(sign_ * other.sign_, exponent_ + other.exponent_,
                       mantissa_ * other.mantissa_);
}

ExactConstant ExactConstant::inverse() const {
  return ExactConstant(sign_, -exponent_, 1.0 / mantissa_);
}

bool ExactConstant::same_mantissa(const ExactConstant& other) const {
  return std::abs(mantissa_ - other.mantissa_) < kUnitTolerance * mantissa_;
}

bool ExactConstant::approx_equal(const ExactConstant& other) const {
  return sign_ == other.sign_ && exponent_ == other.exponent_ && same_mantissa(other);
}

std::string ExactConstant::to_string() const {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value());
  return std::string(buf, res.ptr);
}

}  // namespace evendct
