#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "belyi/errors.hpp"

namespace belyi {

/// Arbitrary precision rational number with the small interface the
/// polynomial and matrix templates expect from a coefficient field.
class QQ {
 public:
  QQ() = default;
  QQ(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  QQ(long n, long d) : v_(n, d) { v_.canonicalize(); }
  explicit QQ(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit QQ(const mpz_class& n) : v_(n) {}

  static QQ parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw SchemaError("not a rational number: " + s);
    v.canonicalize();
    if (v.get_den() == 0) throw SchemaError("zero denominator in " + s);
    return QQ(v);
  }

  const mpq_class& value() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  QQ zero() const { return QQ(); }
  QQ one() const { return QQ(1); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  QQ inverse() const {
    if (is_zero()) throw MathError("division by zero");
    return QQ(mpq_class(1) / v_);
  }

  QQ operator-() const { return QQ(mpq_class(-v_)); }
  QQ& operator+=(const QQ& o) { v_ += o.v_; return *this; }
  QQ& operator-=(const QQ& o) { v_ -= o.v_; return *this; }
  QQ& operator*=(const QQ& o) { v_ *= o.v_; return *this; }
  QQ& operator/=(const QQ& o) {
    if (o.is_zero()) throw MathError("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend QQ operator+(QQ a, const QQ& b) { return a += b; }
  friend QQ operator-(QQ a, const QQ& b) { return a -= b; }
  friend QQ operator*(QQ a, const QQ& b) { return a *= b; }
  friend QQ operator/(QQ a, const QQ& b) { return a /= b; }
  friend bool operator==(const QQ& a, const QQ& b) { return a.v_ == b.v_; }
  friend bool operator!=(const QQ& a, const QQ& b) { return a.v_ != b.v_; }
  friend bool operator<(const QQ& a, const QQ& b) { return a.v_ < b.v_; }
  friend int compare(const QQ& a, const QQ& b) { return cmp(a.v_, b.v_); }

  QQ pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return QQ(mpq_class(n, d));
  }

  /// Reduced fraction "p/q" with positive denominator, or "p".
  std::string str() const { return v_.get_str(10); }

 private:
  mpq_class v_;
};

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

}  // namespace belyi
