#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "belyi/ratfunc.hpp"

namespace belyi {

using RPoly = Poly<RatFunc>;

/// K = F(t)(u): number field F, at most one transcendental t, and at most
/// one algebraic generator u with monic minimal polynomial g over F(t).
class FieldTower {
 public:
  /// Validates F and g. `algebraic_ext` is an expression in u, t, alpha.
  static std::shared_ptr<const FieldTower> build(const QPoly& base_min_poly,
                                                 const std::vector<std::string>& transcendentals,
                                                 const std::optional<std::string>& algebraic_ext);
  /// Variant taking g(u) already as a polynomial over F(t).
  static std::shared_ptr<const FieldTower> build(std::shared_ptr<const NumberField> F,
                                                 const std::vector<std::string>& transcendentals,
                                                 const std::optional<RPoly>& g);
  /// K = F.
  static std::shared_ptr<const FieldTower> of(std::shared_ptr<const NumberField> F);

  const NumberField* base() const { return F_.get(); }
  const std::shared_ptr<const NumberField>& base_ptr() const { return F_; }
  bool has_t() const { return !tname_.empty(); }
  const std::string& t_name() const { return tname_; }
  bool has_u() const { return g_.has_value(); }
  const RPoly& ext_poly() const { return *g_; }
  int ext_degree() const { return g_ ? g_->degree() : 1; }
  /// Numerators of u^k in the basis 1..u^{r-1} over the common denominator
  /// reduction_den(), for r <= k <= 2r-2.
  const std::vector<FPoly>& reduction(int k) const { return reduce_[static_cast<size_t>(k - ext_degree())]; }
  const FPoly& reduction_den() const { return reduce_den_; }
  /// Text description, e.g. "Q(alpha)(t)(u), alpha^2 + alpha + 1, u^3 - t^2 + t".
  std::string describe() const;

 private:
  FieldTower() = default;
  std::shared_ptr<const NumberField> F_;
  std::string tname_;
  std::optional<RPoly> g_;
  std::vector<std::vector<FPoly>> reduce_;
  FPoly reduce_den_;
};

/// Element of K in the basis 1, u, ..., u^{r-1} over F(t), stored as
/// polynomial numerators over one monic denominator coprime to all of them.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(const FieldTower* K, long n);
  FieldElem(const FieldTower* K, const QQ& q);
  FieldElem(const FieldTower* K, const NFElem& c);
  FieldElem(const FieldTower* K, const RatFunc& c);
  FieldElem(const FieldTower* K, std::vector<RatFunc> coords);
  static FieldElem alpha(const FieldTower* K);
  static FieldElem t(const FieldTower* K);
  static FieldElem u(const FieldTower* K);

  const FieldTower* tower() const { return K_; }
  int ext_degree() const { return static_cast<int>(num_.size()); }
  /// Coordinate of u^j as a reduced rational function.
  RatFunc coord(int j) const { return RatFunc(num_[static_cast<size_t>(j)], den_); }
  std::vector<RatFunc> coords() const;
  const std::vector<FPoly>& numerators() const { return num_; }
  const FPoly& denominator() const { return den_; }

  FieldElem zero() const { return FieldElem(K_, 0L); }
  FieldElem one() const { return FieldElem(K_, 1L); }
  bool is_zero() const;
  bool is_one() const;
  /// t-free and u-free, i.e. an element of F.
  bool is_algebraic() const;
  /// Requires is_algebraic().
  NFElem algebraic_value() const;
  FieldElem inverse() const;
  FieldElem pow(long e) const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inverse(); }
  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.den_ == b.den_ && a.num_ == b.num_; }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }
  friend int compare(const FieldElem& a, const FieldElem& b);

  /// Expanded canonical string.
  std::string str() const;

 private:
  const FieldTower* K_ = nullptr;
  FieldElem(const FieldTower* K, std::vector<FPoly> num, FPoly den);
  void normalize();
  bool u_free() const;

  std::vector<FPoly> num_;
  FPoly den_;
};

/// Free function form of FieldElem::is_algebraic.
inline bool is_algebraic(const FieldElem& e) { return e.is_algebraic(); }

/// Parses the canonical expression grammar into an element of K.
FieldElem parse_elem(const FieldTower* K, const std::string& text);

/// Parses a polynomial in `var` whose coefficients are expressions over F(t).
RPoly parse_poly_in(const std::shared_ptr<const NumberField>& F, const std::string& tname, const std::string& var,
                    const std::string& text);

/// Parses a univariate rational polynomial, either "x^2+x+1" style text or a
/// descending coefficient list.
QPoly parse_qpoly(const std::string& text);
QPoly qpoly_from_descending(const std::vector<QQ>& coeffs);

/// Image of e under t -> tau, u -> u_value in the base field; MathError at a pole.
NFElem specialize(const FieldElem& e, const NFElem& tau, const NFElem& u_value);

/// Coefficientwise image in a tower over an extension of the base field.
RatFunc embed(const RatFunc& r, const NumberField* target, const NFElem& alpha_image);
FieldElem embed(const FieldElem& e, const FieldTower* target, const NFElem& alpha_image);

}  // namespace belyi
