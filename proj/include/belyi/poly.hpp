#pragma once

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "belyi/errors.hpp"

namespace belyi {

/// Dense univariate polynomial over a field R.
///
/// R must provide `zero()`, `one()`, `is_zero()`, `inverse()`, `==` and the
/// ring operators. Field elements may carry a context (number field, tower),
/// so every polynomial keeps a zero element of R to manufacture constants.
template <class R>
class Poly {
 public:
  Poly() = default;
  explicit Poly(R zero) : zero_(std::move(zero)) {}
  Poly(std::vector<R> coeffs, R zero) : c_(std::move(coeffs)), zero_(std::move(zero)) { trim(); }

  static Poly constant(const R& c) { return Poly(std::vector<R>{c}, c.zero()); }
  static Poly monomial(const R& c, int deg) {
    std::vector<R> v(static_cast<size_t>(deg) + 1, c.zero());
    v.back() = c;
    return Poly(std::move(v), c.zero());
  }
  /// x - r
  static Poly linear_root(const R& r) { return Poly({-r, r.one()}, r.zero()); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const R& zero_elem() const { return zero_; }
  const R& coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(i)] : zero_;
  }
  const R& lead() const { return c_.empty() ? zero_ : c_.back(); }
  const std::vector<R>& coeffs() const { return c_; }

  Poly zero() const { return Poly(zero_); }
  Poly one() const { return constant(zero_.one()); }
  bool is_one() const { return c_.size() == 1 && c_[0] == zero_.one(); }

  R eval(const R& x) const {
    R acc = zero_;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<R> v;
    v.reserve(c_.size() - 1);
    R k = zero_;
    for (size_t i = 1; i < c_.size(); ++i) {
      k = k + zero_.one();
      v.push_back(c_[i] * k);
    }
    return Poly(std::move(v), zero_);
  }

  Poly monic() const {
    if (is_zero()) return *this;
    R inv = lead().inverse();
    return *this * inv;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    adopt_zero(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    adopt_zero(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_);
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    R z = a.c_.empty() && !b.c_.empty() ? b.zero_ : a.zero_;
    if (a.is_zero() || b.is_zero()) return Poly(z);
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, z);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v), z);
  }
  friend Poly operator*(Poly a, const R& s) {
    if (s.is_zero()) return Poly(a.zero_);
    for (auto& x : a.c_) x = x * s;
    a.trim();
    return a;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(unsigned e) const {
    Poly r = one(), b = *this;
    while (e) {
      if (e & 1U) r = r * b;
      e >>= 1U;
      if (e) b = b * b;
    }
    return r;
  }

  /// Euclidean division: *this = q * d + r, deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw MathError("polynomial division by zero");
    Poly r = *this;
    r.adopt_zero(d);
    if (r.degree() < d.degree()) return {Poly(r.zero_), r};
    std::vector<R> q(static_cast<size_t>(r.degree() - d.degree()) + 1, r.zero_);
    R inv = d.lead().inverse();
    const int dd = d.degree();
    for (int k = r.degree(); k >= dd; --k) {
      const R& top = r.c_[static_cast<size_t>(k)];
      if (top.is_zero()) continue;
      R f = top * inv;
      q[static_cast<size_t>(k - dd)] = f;
      for (int i = 0; i <= dd; ++i) {
        auto& slot = r.c_[static_cast<size_t>(k - dd + i)];
        slot = slot - f * d.c_[static_cast<size_t>(i)];
      }
    }
    r.trim();
    return {Poly(std::move(q), r.zero_), r};
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    auto [q, r] = a.divmod(b);
    ensure(r.is_zero(), "inexact polynomial division");
    return q;
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  /// Compose: this(p(x)).
  Poly compose(const Poly& p) const {
    Poly acc(zero_);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * p + constant(c_[i]);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void adopt_zero(const Poly& o) {
    if (c_.empty() && !o.c_.empty()) zero_ = o.zero_;
  }

  std::vector<R> c_;
  R zero_{};
};

/// Monic gcd (zero if both are zero).
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  // Monic remainders keep rational coefficient growth in check.
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    if (b.degree() == 0) return b.one();
    Poly<R> r = (a % b).monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> xgcd(const Poly<R>& a, const Poly<R>& b) {
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = a.one(), s1 = a.zero(), t0 = a.zero(), t1 = a.one();
  if (a.is_zero()) {
    s0 = b.zero();
    t0 = b.one();
    s1 = b.one();
    t1 = b.zero();
  }
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<R> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  auto inv = r0.lead().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

template <class R>
bool is_squarefree(const Poly<R>& p) {
  return gcd(p, p.derivative()).degree() == 0;
}

}  // namespace belyi
