#include "belyi/ratfunc.hpp"

#include <sstream>

namespace belyi {

RatFunc::RatFunc(const NFElem& c) : num_(FPoly::constant(c)), den_(FPoly::constant(c.one())) {
  if (c.is_zero()) num_ = FPoly(c.zero());
}

RatFunc::RatFunc(FPoly num, FPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw MathError("rational function with zero denominator");
  normalize();
}

RatFunc RatFunc::variable(const NumberField* F) {
  NFElem z(F, 0L);
  return RatFunc(FPoly({z, z.one()}, z), FPoly::constant(z.one()));
}

void RatFunc::normalize() {
  const NFElem z = den_.zero_elem();
  if (num_.is_zero()) {
    num_ = FPoly(z);
    den_ = FPoly::constant(z.one());
    return;
  }
  if (den_.degree() > 0 && num_.degree() > 0 && !certainly_coprime(num_, den_)) {
    FPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
  if (!den_.lead().is_one()) {
    NFElem inv = den_.lead().inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw MathError("division by zero in F(t)");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r = one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

NFElem RatFunc::eval(const NFElem& tau) const {
  NFElem d = den_.eval(tau);
  if (d.is_zero()) throw MathError("rational function has a pole at the specialization point");
  return num_.eval(tau) / d;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.degree() == 0 && b.den_.degree() == 0) {
    RatFunc r;
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    if (r.num_.is_zero()) r.num_ = FPoly(a.den_.zero_elem());
    return r;
  }
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.den_.degree() == 0 && b.den_.degree() == 0) {
    RatFunc r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    return r;
  }
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

int compare(const RatFunc& a, const RatFunc& b) {
  auto cmp_poly = [](const FPoly& p, const FPoly& q) {
    if (p.degree() != q.degree()) return p.degree() < q.degree() ? -1 : 1;
    for (int i = p.degree(); i >= 0; --i) {
      int c = compare(p.coeff(i), q.coeff(i));
      if (c != 0) return c;
    }
    return 0;
  };
  int c = cmp_poly(a.den_, b.den_);
  return c != 0 ? c : cmp_poly(a.num_, b.num_);
}

std::string poly_str(const FPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const NFElem& c = p.coeff(i);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool neg = false;
    if (c.term_count() == 1 && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool compound = c.term_count() > 1;
    if (i == 0) {
      os << (compound ? "(" + cs + ")" : cs);
      continue;
    }
    if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

}  // namespace belyi
