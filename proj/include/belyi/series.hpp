#pragma once

#include <optional>
#include <vector>

#include "belyi/field.hpp"

namespace belyi {

/// Truncated Laurent series sum_{k >= start} c_k s^k over K, known for all
/// exponents below prec(). Terms past the stored coefficients and below the
/// precision are zero. prec() == kExact marks a finite exact expansion.
class Series {
 public:
  static constexpr long kExact = 1L << 40;

  Series() = default;
  Series(const FieldElem& zero, long start, std::vector<FieldElem> coeffs, long prec);
  static Series exact(const FieldElem& zero, long start, std::vector<FieldElem> coeffs) {
    return Series(zero, start, std::move(coeffs), kExact);
  }
  static Series monomial(const FieldElem& c, long k) { return exact(c.zero(), k, {c}); }

  long start() const { return start_; }
  long prec() const { return prec_; }
  bool is_exact() const { return prec_ >= kExact / 2; }
  const FieldElem& zero_elem() const { return zero_; }
  /// Coefficient of s^k; requires k < prec().
  FieldElem coeff(long k) const;
  /// Lowest exponent with a nonzero coefficient, if one is known.
  std::optional<long> valuation() const;

  Series truncate(long prec) const;
  Series shift(long k) const;
  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const FieldElem& c);

  /// Multiplicative inverse; needs a known valuation.
  Series inverse() const;
  /// (1 + higher terms)^beta for a series with constant term 1 and start 0.
  Series unit_power(const QQ& beta) const;
  /// p(this) for a polynomial p over K.
  Series compose_into(const Poly<FieldElem>& p) const;

 private:
  void trim();
  FieldElem zero_;
  long start_ = 0;
  std::vector<FieldElem> c_;
  long prec_ = kExact;
};

}  // namespace belyi
