#pragma once

#include <string>

#include "belyi/numberfield.hpp"

namespace belyi {

/// Element of F(t): reduced fraction num/den with den monic.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const NFElem& c);
  RatFunc(FPoly num, FPoly den);
  static RatFunc variable(const NumberField* F);

  const FPoly& num() const { return num_; }
  const FPoly& den() const { return den_; }
  const NumberField* field() const { return num_.zero_elem().field(); }

  RatFunc zero() const { return RatFunc(num_.zero_elem().zero()); }
  RatFunc one() const { return RatFunc(num_.zero_elem().one()); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.degree() == 0 && num_.is_one(); }
  /// Degree 0 in t, i.e. an element of F.
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  NFElem constant_value() const { return num_.coeff(0); }
  RatFunc inverse() const;
  RatFunc pow(long e) const;

  /// Value at t = tau; throws MathError when the denominator vanishes.
  NFElem eval(const NFElem& tau) const;
  bool den_vanishes_at(const NFElem& tau) const { return den_.eval(tau).is_zero(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend int compare(const RatFunc& a, const RatFunc& b);

 private:
  void normalize();
  FPoly num_;
  FPoly den_;
};

/// Expanded polynomial string in the variable `var` with number field
/// coefficients, e.g. "t^2 - (alpha + 1)*t + 3".
std::string poly_str(const FPoly& p, const std::string& var);

}  // namespace belyi
