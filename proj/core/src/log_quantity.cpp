#include "asygeo/log_quantity.hpp"

#include <algorithm>

namespace asygeo {

double log_add_exp(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a == kPosInf || b == kPosInf) return kPosInf;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sub_exp(double a, double b) noexcept {
  if (b == kNegInf) return a;
  if (a <= b) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

double log_sum_exp(std::span<const double> xs) noexcept {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf || hi == kPosInf) return hi;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - hi);
  return hi + std::log(s);
}

LogQuantity LogQuantity::from_log(double log_abs, int sign) noexcept {
  LogQuantity q;
  if (sign == 0 || log_abs == kNegInf) return q;
  q.sign_ = sign > 0 ? 1 : -1;
  q.log_abs_ = log_abs;
  return q;
}

LogQuantity LogQuantity::from_value(double v) noexcept {
  if (v == 0.0) return {};
  return from_log(std::log(std::fabs(v)), v > 0 ? 1 : -1);
}

double LogQuantity::value() const noexcept {
  return sign_ == 0 ? 0.0 : sign_ * std::exp(log_abs_);
}

LogQuantity& LogQuantity::operator+=(const LogQuantity& o) noexcept {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  if (sign_ == o.sign_) {
    log_abs_ = log_add_exp(log_abs_, o.log_abs_);
    return *this;
  }
  if (log_abs_ == o.log_abs_) return *this = LogQuantity{};
  if (log_abs_ > o.log_abs_) {
    log_abs_ = log_sub_exp(log_abs_, o.log_abs_);
  } else {
    log_abs_ = log_sub_exp(o.log_abs_, log_abs_);
    sign_ = o.sign_;
  }
  if (log_abs_ == kNegInf) sign_ = 0;
  return *this;
}

LogQuantity& LogQuantity::operator*=(const LogQuantity& o) noexcept {
  if (sign_ == 0 || o.sign_ == 0) return *this = LogQuantity{};
  sign_ *= o.sign_;
  log_abs_ += o.log_abs_;
  return *this;
}

LogQuantity& LogQuantity::operator/=(const LogQuantity& o) noexcept {
  if (sign_ == 0) return *this;
  if (o.sign_ == 0) {
    log_abs_ = kPosInf;
    return *this;
  }
  sign_ *= o.sign_;
  log_abs_ -= o.log_abs_;
  return *this;
}

LogQuantity LogQuantity::pow(double e) const noexcept {
  if (sign_ == 0) return e > 0 ? LogQuantity{} : from_log(kPosInf);
  return from_log(e * log_abs_, 1);
}

bool operator<(const LogQuantity& a, const LogQuantity& b) noexcept {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  return a.sign_ > 0 ? a.log_abs_ < b.log_abs_ : a.log_abs_ > b.log_abs_;
}

}  // namespace asygeo
