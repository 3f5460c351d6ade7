#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "hdgeom/errors.hpp"

namespace hdgeom {

/// Signed scalar stored as (sign, log|value|), for products of many gamma
/// factors and powers like delta^{s(n-s)} that leave double range.
class LogValue {
 public:
  /// Opposite-sign sums smaller than this fraction of the larger operand throw.
  static constexpr double kCancellationTolerance = 1e-12;

  constexpr LogValue() = default;

  static LogValue zero() { return {}; }
  static LogValue from_log(double log_mag, int sign = 1) {
    if (sign == 0 || log_mag == -std::numeric_limits<double>::infinity()) return {};
    if (std::isnan(log_mag)) throw DomainError("LogValue: NaN log magnitude");
    return LogValue(sign > 0 ? 1 : -1, log_mag);
  }
  static LogValue from_double(double v) {
    if (std::isnan(v)) throw DomainError("LogValue: NaN");
    if (v == 0.0) return {};
    return LogValue(v > 0 ? 1 : -1, std::log(std::abs(v)));
  }

  int sign() const { return sign_; }
  /// Natural log of |value|; -inf for zero.
  double log_mag() const { return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_mag_; }
  double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_mag_); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.sign_ == 0 || b.sign_ == 0) return {};
    return LogValue(a.sign_ * b.sign_, a.log_mag_ + b.log_mag_);
  }
  friend LogValue operator/(LogValue a, LogValue b) {
    if (b.sign_ == 0) throw DomainError("LogValue: division by zero");
    if (a.sign_ == 0) return {};
    return LogValue(a.sign_ * b.sign_, a.log_mag_ - b.log_mag_);
  }
  friend LogValue operator-(LogValue a) { return LogValue(-a.sign_, a.log_mag_); }

  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (b.log_mag_ > a.log_mag_) std::swap(a, b);
    const double ratio = std::exp(b.log_mag_ - a.log_mag_);  // in (0, 1]
    if (a.sign_ == b.sign_) return LogValue(a.sign_, a.log_mag_ + std::log1p(ratio));
    const double rest = 1.0 - ratio;
    if (rest < kCancellationTolerance)
      throw DomainError("LogValue: catastrophic cancellation (relative result " + std::to_string(rest) + ")");
    return LogValue(a.sign_, a.log_mag_ + std::log1p(-ratio));
  }
  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

  LogValue& operator*=(LogValue o) { return *this = *this * o; }
  LogValue& operator/=(LogValue o) { return *this = *this / o; }
  LogValue& operator+=(LogValue o) { return *this = *this + o; }

 private:
  LogValue(int sign, double log_mag) : sign_(sign), log_mag_(log_mag) {}

  int sign_ = 0;
  double log_mag_ = 0.0;
};

}  // namespace hdgeom
