#pragma once

#include <cmath>
#include <limits>
#include <span>

namespace asygeo {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// ln(e^a + e^b) without overflow; -inf acts as the additive identity.
double log_add_exp(double a, double b) noexcept;

/// ln(e^a - e^b) for a >= b; returns -inf when a == b.
double log_sub_exp(double a, double b) noexcept;

/// ln(sum_i e^{x_i}).
double log_sum_exp(std::span<const double> xs) noexcept;

/// A real number stored as sign and natural log of its magnitude.
///
/// Capacities and eigenvalues routinely leave the double range (Cap_p for
/// p in the thousands, lambda_{1,p} ~ (n/p)^p), so every quantity that can
/// under- or overflow travels as a LogQuantity. Exact zero is sign 0 with
/// log_abs = -inf.
class LogQuantity {
 public:
  constexpr LogQuantity() noexcept = default;

  static LogQuantity zero() noexcept { return {}; }
  static LogQuantity from_log(double log_abs, int sign = 1) noexcept;
  static LogQuantity from_value(double v) noexcept;

  int sign() const noexcept { return sign_; }
  double log_abs() const noexcept { return log_abs_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  bool is_finite() const noexcept { return sign_ == 0 || std::isfinite(log_abs_); }

  /// Linear value; under/overflows to 0 or +-inf as doubles do.
  double value() const noexcept;

  LogQuantity operator-() const noexcept { return from_log(log_abs_, -sign_); }
  LogQuantity& operator+=(const LogQuantity& o) noexcept;
  LogQuantity& operator-=(const LogQuantity& o) noexcept { return *this += -o; }
  LogQuantity& operator*=(const LogQuantity& o) noexcept;
  LogQuantity& operator/=(const LogQuantity& o) noexcept;

  /// |x|^e for x >= 0 (sign preserved for zero and positive only).
  LogQuantity pow(double e) const noexcept;

  friend LogQuantity operator+(LogQuantity a, const LogQuantity& b) noexcept { return a += b; }
  friend LogQuantity operator-(LogQuantity a, const LogQuantity& b) noexcept { return a -= b; }
  friend LogQuantity operator*(LogQuantity a, const LogQuantity& b) noexcept { return a *= b; }
  friend LogQuantity operator/(LogQuantity a, const LogQuantity& b) noexcept { return a /= b; }

  friend bool operator<(const LogQuantity& a, const LogQuantity& b) noexcept;
  friend bool operator==(const LogQuantity& a, const LogQuantity& b) noexcept = default;

 private:
  int sign_ = 0;
  double log_abs_ = kNegInf;
};

}  // namespace asygeo
