#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belyi/field.hpp"
#include "belyi/series.hpp"

namespace belyi {

using KPoly = Poly<FieldElem>;

enum class PlaceKind { Zero = 0, One = 1, Infinity = 2, Generic = 3 };

/// A place of the superelliptic curve: a branch place over 0 or 1 (with an
/// index among its fiber), the unique place at infinity, or a K-rational
/// point (x0, y0) away from the branch fibers.
struct Place {
  PlaceKind kind = PlaceKind::Infinity;
  int index = 0;
  FieldElem x, y;  // set for Generic only

  static Place zero(int k) { return Place{PlaceKind::Zero, k, {}, {}}; }
  static Place one(int k) { return Place{PlaceKind::One, k, {}, {}}; }
  static Place infinity() { return Place{}; }

  bool is_branch() const { return kind != PlaceKind::Generic; }
  std::string str() const;
  friend bool operator<(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b);
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
};

class Divisor {
 public:
  Divisor() = default;
  static Divisor point(const Place& p, long c = 1) {
    Divisor d;
    d.add(p, c);
    return d;
  }

  void add(const Place& p, long c);
  long coeff(const Place& p) const;
  long degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Place, long>& terms() const { return terms_; }
  /// True when no coefficient involves the transcendental.
  bool is_t_free() const;
  std::string str() const;

  Divisor operator-() const;
  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o) { return *this += -o; }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(long k, const Divisor& d);
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.terms_ < b.terms_; }

 private:
  std::map<Place, long> terms_;
};

class Curve;

/// f = (sum_{j<N} num_j(x) y^j) / den(x) with den monic and no common factor.
class CurveFunction {
 public:
  CurveFunction() = default;
  CurveFunction(const Curve* C, std::vector<KPoly> num, KPoly den);
  static CurveFunction constant(const Curve* C, const FieldElem& c);
  static CurveFunction x(const Curve* C);
  static CurveFunction y(const Curve* C);

  const Curve* curve() const { return C_; }
  const KPoly& num(int j) const { return num_[static_cast<size_t>(j)]; }
  const KPoly& den() const { return den_; }
  bool is_zero() const;
  /// Constant value if the function lies in K.
  std::optional<FieldElem> constant_value() const;

  CurveFunction operator-() const;
  friend CurveFunction operator+(const CurveFunction& a, const CurveFunction& b);
  friend CurveFunction operator-(const CurveFunction& a, const CurveFunction& b) { return a + (-b); }
  friend CurveFunction operator*(const CurveFunction& a, const CurveFunction& b);
  friend CurveFunction operator*(const CurveFunction& a, const FieldElem& c);
  CurveFunction inverse() const;
  friend CurveFunction operator/(const CurveFunction& a, const CurveFunction& b) { return a * b.inverse(); }
  friend bool operator==(const CurveFunction& a, const CurveFunction& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }
  /// Image under y -> zeta^i y.
  CurveFunction conjugate(int i) const;
  bool is_algebraic() const;
  std::string str() const;

 private:
  void normalize();
  const Curve* C_ = nullptr;
  std::vector<KPoly> num_;
  KPoly den_;
};

std::string kpoly_str(const KPoly& p, const std::string& var);

/// Superelliptic cover y^N = x^a (x-1)^b of the line with f = x.
class Curve {
 public:
  static constexpr long kMaxExpansion = 1024;

  static std::shared_ptr<const Curve> build(int N, int a, int b, std::shared_ptr<const FieldTower> K);
  /// The same curve over a tower on an extension of the base field, keeping
  /// zeta, lambda and omega so that branch place indices agree.
  static std::shared_ptr<const Curve> base_change(const Curve& parent, std::shared_ptr<const FieldTower> K,
                                                  const NFElem& alpha_image);

  int N() const { return N_; }
  int a() const { return a_; }
  int b() const { return b_; }
  int n() const { return a_ + b_; }
  int r0() const { return r0_; }
  int r1() const { return r1_; }
  int e0() const { return N_ / r0_; }
  int e1() const { return N_ / r1_; }
  int genus() const { return genus_; }
  const FieldTower* field() const { return K_.get(); }
  const std::shared_ptr<const FieldTower>& field_ptr() const { return K_; }
  const FieldElem& zeta() const { return zeta_; }
  const FieldElem& lambda() const { return lambda_; }
  const FieldElem& omega0() const { return omega_; }
  FieldElem zero() const { return FieldElem(K_.get(), 0L); }
  std::string describe() const;

  /// x^a (x-1)^b as a polynomial and evaluated.
  const KPoly& h() const { return h_; }
  FieldElem h(const FieldElem& x) const { return h_.eval(x); }

  int ram_index(const Place& p) const;
  /// x-coordinate of a finite place; nullopt at infinity.
  std::optional<FieldElem> x_value(const Place& p) const;
  std::vector<Place> places_over_zero() const;
  std::vector<Place> places_over_one() const;
  std::vector<Place> places_over_infinity() const { return {Place::infinity()}; }
  /// Fiber of f over x = c; c in {0, 1} yields the branch fiber.
  std::vector<Place> places_over(const FieldElem& c) const;
  /// All places lying over the same point of the line as p.
  std::vector<Place> fiber_of(const Place& p) const;
  /// Validated generic place; (1, y0) with b = 0 becomes the matching place over 1.
  Place make_place(const FieldElem& x0, const FieldElem& y0) const;

  Place galois_translate(const Place& p, int i) const;
  Divisor galois_translate(const Divisor& d, int i) const;
  /// f^*(c) as a divisor, for c a point of the line (nullopt for infinity).
  Divisor fiber_divisor(const std::optional<FieldElem>& c) const;
  Divisor canonical_divisor() const;

  /// Local parametrization (x(s), y(s)); y carries relative precision terms.
  std::pair<Series, Series> param(const Place& p, long terms) const;
  /// Laurent expansion of f at p, known to at least the given absolute order
  /// and far enough to read off the valuation (doubling up to kMaxExpansion).
  Series local_expansion(const CurveFunction& f, const Place& p, long order) const;
  long valuation(const CurveFunction& f, const Place& p) const;
  /// Value of f at a place where it is regular.
  FieldElem value(const CurveFunction& f, const Place& p) const;

  /// Integral basis element w_j = y^j / (x^floor(ja/N) (x-1)^floor(jb/N)).
  int alpha(int j) const { return j * a_ / N_; }
  int beta(int j) const { return j * b_ / N_; }
  /// Pole order of w_j at infinity.
  long pole_at_infinity(int j) const { return static_cast<long>(j) * n() - static_cast<long>(N_) * (alpha(j) + beta(j)); }
  CurveFunction w(int j) const;

 private:
  Curve() = default;
  Series expand_with(const CurveFunction& f, const Place& p, long terms) const;
  int N_ = 2, a_ = 1, b_ = 0, r0_ = 1, r1_ = 1, genus_ = 0;
  std::shared_ptr<const FieldTower> K_;
  FieldElem zeta_, lambda_, omega_;
  KPoly h_;
};

}  // namespace belyi
