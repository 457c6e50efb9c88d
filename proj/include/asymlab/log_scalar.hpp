#pragma once

#include <compare>
#include <limits>
#include <ostream>

#include "asymlab/common.hpp"

namespace asymlab {

/// Signed quantity stored as sign and natural-log magnitude. Zero carries
/// sign 0; its log_mag is meaningless and kept at 0 internally.
class LogScalar {
 public:
  LogScalar() = default;

  static LogScalar zero() { return {}; }
  static LogScalar from_log(const Real& log_mag, int sign = 1) {
    LogScalar s;
    s.sign_ = sign == 0 ? 0 : (sign > 0 ? 1 : -1);
    s.log_mag_ = s.sign_ == 0 ? Real(0) : log_mag;
    return s;
  }
  static LogScalar from_value(const Real& v) {
    if (v == 0) return zero();
    return from_log(log(abs(v)), v > 0 ? 1 : -1);
  }
  static LogScalar from_int(const BigInt& v) {
    if (v == 0) return zero();
    return from_log(log(Real(abs(v))), v > 0 ? 1 : -1);
  }

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  /// -inf for zero.
  double log_double() const {
    return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_mag_.convert_to<double>();
  }
  const Real& log_mag() const noexcept { return log_mag_; }
  Real value() const { return sign_ == 0 ? Real(0) : Real(sign_) * exp(log_mag_); }

  friend LogScalar operator*(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return zero();
    return from_log(a.log_mag_ + b.log_mag_, a.sign_ * b.sign_);
  }
  friend LogScalar operator/(const LogScalar& a, const LogScalar& b) {
    if (b.sign_ == 0) throw std::domain_error("LogScalar division by zero");
    if (a.sign_ == 0) return zero();
    return from_log(a.log_mag_ - b.log_mag_, a.sign_ * b.sign_);
  }
  LogScalar pow(const Real& e) const {
    if (sign_ < 0) throw std::domain_error("LogScalar::pow of negative value");
    if (sign_ == 0) return zero();
    return from_log(log_mag_ * e);
  }

  friend LogScalar operator+(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const bool a_big = a.log_mag_ >= b.log_mag_;
    const LogScalar& hi = a_big ? a : b;
    const LogScalar& lo = a_big ? b : a;
    Real d = exp(lo.log_mag_ - hi.log_mag_);
    if (hi.sign_ == lo.sign_) return from_log(hi.log_mag_ + log1p(d), hi.sign_);
    if (d == 1) return zero();
    return from_log(hi.log_mag_ + log1p(-d), hi.sign_);
  }
  LogScalar operator-() const {
    LogScalar r = *this;
    r.sign_ = -r.sign_;
    return r;
  }
  friend LogScalar operator-(const LogScalar& a, const LogScalar& b) { return a + (-b); }

  friend std::partial_ordering operator<=>(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    if (a.sign_ == 0) return std::partial_ordering::equivalent;
    if (a.log_mag_ == b.log_mag_) return std::partial_ordering::equivalent;
    bool a_less_mag = a.log_mag_ < b.log_mag_;
    if (a.sign_ > 0) return a_less_mag ? std::partial_ordering::less : std::partial_ordering::greater;
    return a_less_mag ? std::partial_ordering::greater : std::partial_ordering::less;
  }
  friend bool operator==(const LogScalar& a, const LogScalar& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_mag_ == b.log_mag_);
  }

  friend std::ostream& operator<<(std::ostream& os, const LogScalar& s) {
    if (s.sign_ == 0) return os << "0";
    return os << (s.sign_ < 0 ? "-" : "") << "exp(" << s.log_mag_.convert_to<double>() << ")";
  }

 private:
  int sign_ = 0;
  Real log_mag_ = 0;
};

}  // namespace asymlab
