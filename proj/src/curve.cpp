#include "belyi/curve.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "belyi/factor.hpp"

namespace belyi {

// ---------------------------------------------------------------- places

std::string Place::str() const {
  switch (kind) {
    case PlaceKind::Zero: return "P0[" + std::to_string(index) + "]";
    case PlaceKind::One: return "P1[" + std::to_string(index) + "]";
    case PlaceKind::Infinity: return "Pinf";
    case PlaceKind::Generic: return "(" + x.str() + ", " + y.str() + ")";
  }
  return "?";
}

bool operator<(const Place& a, const Place& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.kind != PlaceKind::Generic) return a.index < b.index;
  int c = compare(a.x, b.x);
  if (c != 0) return c < 0;
  return compare(a.y, b.y) < 0;
}

bool operator==(const Place& a, const Place& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != PlaceKind::Generic) return a.index == b.index;
  return a.x == b.x && a.y == b.y;
}

void Divisor::add(const Place& p, long c) {
  if (c == 0) return;
  long& v = terms_[p];
  v += c;
  if (v == 0) terms_.erase(p);
}

long Divisor::coeff(const Place& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

long Divisor::degree() const {
  long d = 0;
  for (auto& [p, c] : terms_) d += c;
  return d;
}

bool Divisor::is_t_free() const {
  for (auto& [p, c] : terms_)
    if (p.kind == PlaceKind::Generic && !(p.x.is_algebraic() && p.y.is_algebraic())) return false;
  return true;
}

std::string Divisor::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, c] : terms_) {
    long m = c;
    if (first) {
      if (m < 0) os << "-";
    } else {
      os << (m < 0 ? " - " : " + ");
    }
    first = false;
    if (m < 0) m = -m;
    if (m != 1) os << m << "*";
    os << p.str();
  }
  return os.str();
}

Divisor Divisor::operator-() const {
  Divisor d = *this;
  for (auto& [p, c] : d.terms_) c = -c;
  return d;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (auto& [p, c] : o.terms_) add(p, c);
  return *this;
}

Divisor operator*(long k, const Divisor& d) {
  Divisor r;
  for (auto& [p, c] : d.terms_) r.add(p, k * c);
  return r;
}

// ------------------------------------------------------------- functions

namespace {

bool compound(const std::string& s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '/' || (s[i] == '-' && s[i - 1] == ' ')) return true;
  return false;
}

}  // namespace

std::string kpoly_str(const KPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const FieldElem& c = p.coeff(i);
    if (c.is_zero()) continue;
    std::string cs = c.str();
    const bool comp = compound(cs);
    bool neg = false;
    if (!comp && cs[0] == '-') {
      neg = true;
      cs = cs.substr(1);
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (comp) cs = "(" + cs + ")";
    if (i == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") os << cs << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

CurveFunction::CurveFunction(const Curve* C, std::vector<KPoly> num, KPoly den)
    : C_(C), num_(std::move(num)), den_(std::move(den)) {
  ensure(static_cast<int>(num_.size()) == C_->N(), "curve function needs N numerators");
  if (den_.is_zero()) throw MathError("curve function with zero denominator");
  normalize();
}

CurveFunction CurveFunction::constant(const Curve* C, const FieldElem& c) {
  const KPoly z(C->zero());
  std::vector<KPoly> num(static_cast<size_t>(C->N()), z);
  num[0] = c.is_zero() ? z : KPoly::constant(c);
  return CurveFunction(C, std::move(num), KPoly::constant(C->zero().one()));
}

CurveFunction CurveFunction::x(const Curve* C) {
  const FieldElem z = C->zero();
  const KPoly zp(z);
  std::vector<KPoly> num(static_cast<size_t>(C->N()), zp);
  num[0] = KPoly::monomial(z.one(), 1);
  return CurveFunction(C, std::move(num), KPoly::constant(z.one()));
}

CurveFunction CurveFunction::y(const Curve* C) {
  const FieldElem z = C->zero();
  const KPoly zp(z);
  std::vector<KPoly> num(static_cast<size_t>(C->N()), zp);
  num[1] = KPoly::constant(z.one());
  return CurveFunction(C, std::move(num), KPoly::constant(z.one()));
}

void CurveFunction::normalize() {
  const FieldElem z = den_.zero_elem();
  bool all_zero = true;
  for (auto& p : num_) all_zero = all_zero && p.is_zero();
  if (all_zero) {
    den_ = KPoly::constant(z.one());
    return;
  }
  if (den_.degree() > 0) {
    KPoly g = den_;
    for (auto& p : num_) {
      if (g.degree() == 0) break;
      if (!p.is_zero()) g = gcd(g, p);
    }
    if (g.degree() > 0) {
      for (auto& p : num_) p = p / g;
      den_ = den_ / g;
    }
  }
  if (!den_.lead().is_one()) {
    const FieldElem inv = den_.lead().inverse();
    for (auto& p : num_) p = p * inv;
    den_ = den_ * inv;
  }
}

bool CurveFunction::is_zero() const {
  for (auto& p : num_)
    if (!p.is_zero()) return false;
  return true;
}

std::optional<FieldElem> CurveFunction::constant_value() const {
  if (den_.degree() != 0) return std::nullopt;
  for (size_t j = 1; j < num_.size(); ++j)
    if (!num_[j].is_zero()) return std::nullopt;
  if (num_[0].degree() > 0) return std::nullopt;
  return num_[0].coeff(0);
}

CurveFunction CurveFunction::operator-() const {
  CurveFunction r = *this;
  for (auto& p : r.num_) p = -p;
  return r;
}

CurveFunction operator+(const CurveFunction& a, const CurveFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<KPoly> num = a.num_;
  if (a.den_ == b.den_) {
    for (size_t j = 0; j < num.size(); ++j) num[j] += b.num_[j];
    return CurveFunction(a.C_, std::move(num), a.den_);
  }
  for (size_t j = 0; j < num.size(); ++j) num[j] = a.num_[j] * b.den_ + b.num_[j] * a.den_;
  return CurveFunction(a.C_, std::move(num), a.den_ * b.den_);
}

CurveFunction operator*(const CurveFunction& a, const CurveFunction& b) {
  const int N = a.C_->N();
  const KPoly zp(a.C_->zero());
  std::vector<KPoly> lo(static_cast<size_t>(N), zp), hi(static_cast<size_t>(N), zp);
  for (int i = 0; i < N; ++i) {
    if (a.num_[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < N; ++j) {
      if (b.num_[static_cast<size_t>(j)].is_zero()) continue;
      KPoly prod = a.num_[static_cast<size_t>(i)] * b.num_[static_cast<size_t>(j)];
      if (i + j < N)
        lo[static_cast<size_t>(i + j)] += prod;
      else
        hi[static_cast<size_t>(i + j - N)] += prod;
    }
  }
  for (int k = 0; k < N; ++k)
    if (!hi[static_cast<size_t>(k)].is_zero()) lo[static_cast<size_t>(k)] += hi[static_cast<size_t>(k)] * a.C_->h();
  return CurveFunction(a.C_, std::move(lo), a.den_ * b.den_);
}

CurveFunction operator*(const CurveFunction& a, const FieldElem& c) {
  CurveFunction r = a;
  for (auto& p : r.num_) p = p * c;
  if (c.is_zero()) r.den_ = KPoly::constant(c.one());
  return r;
}

CurveFunction CurveFunction::conjugate(int i) const {
  CurveFunction r = *this;
  const FieldElem zi = C_->zeta().pow(i);
  FieldElem f = zi.one();
  for (auto& p : r.num_) {
    p = p * f;
    f = f * zi;
  }
  return r;
}

CurveFunction CurveFunction::inverse() const {
  if (is_zero()) throw MathError("division by the zero function");
  // f^{-1} = prod_{i>0} sigma^i f / Norm(f), with Norm(f) in K(x).
  CurveFunction rest = constant(C_, C_->zero().one());
  for (int i = 1; i < C_->N(); ++i) rest = rest * conjugate(i);
  CurveFunction norm = *this * rest;
  for (int j = 1; j < C_->N(); ++j) ensure(norm.num(j).is_zero(), "norm of a curve function left K(x)");
  const KPoly zp(C_->zero());
  std::vector<KPoly> num(static_cast<size_t>(C_->N()), zp);
  num[0] = norm.den_;
  return rest * CurveFunction(C_, std::move(num), norm.num_[0]);
}

bool CurveFunction::is_algebraic() const {
  auto alg = [](const KPoly& p) {
    for (auto& c : p.coeffs())
      if (!c.is_algebraic()) return false;
    return true;
  };
  if (!alg(den_)) return false;
  for (auto& p : num_)
    if (!alg(p)) return false;
  return true;
}

std::string CurveFunction::str() const {
  std::vector<std::string> parts;
  for (size_t j = 0; j < num_.size(); ++j) {
    const KPoly& p = num_[j];
    if (p.is_zero()) continue;
    std::string ys = j == 0 ? "" : (j == 1 ? "y" : "y^" + std::to_string(j));
    std::string ps = kpoly_str(p, "x");
    if (j == 0)
      parts.push_back(ps);
    else if (ps == "1")
      parts.push_back(ys);
    else
      parts.push_back("(" + ps + ")*" + ys);
  }
  if (parts.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  if (den_.degree() == 0) return s;
  return "(" + s + ")/(" + kpoly_str(den_, "x") + ")";
}

// ----------------------------------------------------------------- curve

std::shared_ptr<const Curve> Curve::build(int N, int a, int b, std::shared_ptr<const FieldTower> K) {
  if (N < 2 || a < 1 || b < 0) throw MathError("curve exponents need N >= 2, a >= 1, b >= 0");
  if (b > 0 && std::gcd(N, std::gcd(a, b)) != 1)
    throw MathError("gcd(N, a, b) must be 1 for y^N - x^a (x-1)^b to be irreducible");
  if (b == 0 && std::gcd(N, a) != 1) throw MathError("gcd(N, a) must be 1 for y^N - x^a to be irreducible");
  if (std::gcd(N, a + b) != 1) throw MathError("gcd(N, a + b) must be 1: exactly one place at infinity is supported");
  auto zeta = primitive_root_of_unity(*K->base(), N);
  if (!zeta) throw MathError("the base field lacks a primitive " + std::to_string(N) + "-th root of unity");

  std::shared_ptr<Curve> c(new Curve());
  c->N_ = N;
  c->a_ = a;
  c->b_ = b;
  c->r0_ = std::gcd(N, a);
  c->r1_ = b == 0 ? N : std::gcd(N, b);
  c->K_ = std::move(K);
  const FieldTower* T = c->K_.get();
  c->zeta_ = FieldElem(T, *zeta);

  // Over 0: x = lambda s^e0 and y = omega s^a' (unit) need omega^N = lambda^a (-1)^b.
  const NFElem one(T->base(), 1L);
  std::vector<NFElem> lambdas{one, -one};
  for (int k = 1; k < N; ++k) {
    lambdas.push_back(zeta->pow(k));
    lambdas.push_back(-zeta->pow(k));
  }
  bool found = false;
  for (const NFElem& lam : lambdas) {
    NFElem target = lam.pow(a) * (b % 2 ? -one : one);
    FPoly eq = FPoly::monomial(one, N) - FPoly::constant(target);
    auto roots = roots_in_field(eq);
    if (roots.empty()) continue;
    c->lambda_ = FieldElem(T, lam);
    c->omega_ = FieldElem(T, roots.front());
    found = true;
    break;
  }
  if (!found)
    throw MathError("places over 0 are not defined over the base field (no lambda with lambda^a (-1)^b an N-th power)");

  const FieldElem z(T, 0L);
  c->h_ = KPoly::monomial(z.one(), a) * KPoly({-z.one(), z.one()}, z).pow(static_cast<unsigned>(b));
  // Riemann-Hurwitz: 2g - 2 = -2N + sum (e - 1).
  const int ram = (N - c->r0_) + (N - c->r1_) + (N - 1);
  const int twog = -2 * N + ram + 2;
  ensure(twog >= 0 && twog % 2 == 0, "Riemann-Hurwitz produced a non-integral genus");
  c->genus_ = twog / 2;
  return c;
}

std::shared_ptr<const Curve> Curve::base_change(const Curve& parent, std::shared_ptr<const FieldTower> K,
                                                const NFElem& alpha_image) {
  std::shared_ptr<Curve> c(new Curve(parent));
  c->K_ = std::move(K);
  const FieldTower* T = c->K_.get();
  auto lift = [&](const FieldElem& e) { return FieldElem(T, embed(e.algebraic_value(), T->base(), alpha_image)); };
  c->zeta_ = lift(parent.zeta_);
  c->lambda_ = lift(parent.lambda_);
  c->omega_ = lift(parent.omega_);
  const FieldElem z(T, 0L);
  c->h_ = KPoly::monomial(z.one(), c->a_) * KPoly({-z.one(), z.one()}, z).pow(static_cast<unsigned>(c->b_));
  return c;
}

std::string Curve::describe() const {
  std::ostringstream os;
  os << "y^" << N_ << " = x^" << a_;
  if (b_ > 0) os << "*(x - 1)^" << b_;
  os << " over " << K_->describe();
  return os.str();
}

int Curve::ram_index(const Place& p) const {
  switch (p.kind) {
    case PlaceKind::Zero: return e0();
    case PlaceKind::One: return e1();
    case PlaceKind::Infinity: return N_;
    case PlaceKind::Generic: return 1;
  }
  return 1;
}

std::optional<FieldElem> Curve::x_value(const Place& p) const {
  switch (p.kind) {
    case PlaceKind::Zero: return zero();
    case PlaceKind::One: return zero().one();
    case PlaceKind::Infinity: return std::nullopt;
    case PlaceKind::Generic: return p.x;
  }
  return std::nullopt;
}

std::vector<Place> Curve::places_over_zero() const {
  std::vector<Place> v;
  for (int k = 0; k < r0_; ++k) v.push_back(Place::zero(k));
  return v;
}

std::vector<Place> Curve::places_over_one() const {
  std::vector<Place> v;
  for (int k = 0; k < r1_; ++k) v.push_back(Place::one(k));
  return v;
}

std::vector<Place> Curve::places_over(const FieldElem& c) const {
  if (c.is_zero()) return places_over_zero();
  if (c.is_one()) return places_over_one();
  const FieldElem hc = h(c);
  if (!hc.is_algebraic())
    throw MathError("fiber over x = " + c.str() + " needs an N-th root of a transcendental element; give y explicitly");
  const NFElem one(K_->base(), 1L);
  auto roots = roots_in_field(FPoly::monomial(one, N_) - FPoly::constant(hc.algebraic_value()));
  if (static_cast<int>(roots.size()) != N_)
    throw MathError("fiber over x = " + c.str() + " is not rational over the coefficient field");
  std::vector<Place> v;
  for (auto& r : roots) v.push_back(Place{PlaceKind::Generic, 0, c, FieldElem(K_.get(), r)});
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Place> Curve::fiber_of(const Place& p) const {
  switch (p.kind) {
    case PlaceKind::Zero: return places_over_zero();
    case PlaceKind::One: return places_over_one();
    case PlaceKind::Infinity: return places_over_infinity();
    case PlaceKind::Generic: break;
  }
  std::vector<Place> v;
  for (int i = 0; i < N_; ++i) v.push_back(galois_translate(p, i));
  std::sort(v.begin(), v.end());
  return v;
}

Place Curve::make_place(const FieldElem& x0, const FieldElem& y0) const {
  if (x0.tower() != K_.get() || y0.tower() != K_.get()) throw InternalError("place coordinates from another field");
  if (x0.is_zero()) throw MathError("x = 0 lies in the branch fiber; use a branch place");
  if (x0.is_one() && b_ > 0) throw MathError("x = 1 lies in the branch fiber; use a branch place");
  if (y0.pow(N_) != h(x0)) throw MathError("point (" + x0.str() + ", " + y0.str() + ") is not on the curve");
  if (x0.is_one()) {
    FieldElem z = zero().one();
    for (int k = 0; k < N_; ++k, z = z * zeta_)
      if (z == y0) return Place::one(k);
    throw InternalError("root of unity not found among powers of zeta");
  }
  return Place{PlaceKind::Generic, 0, x0, y0};
}

Place Curve::galois_translate(const Place& p, int i) const {
  auto mod = [](long v, long m) { return static_cast<int>(((v % m) + m) % m); };
  switch (p.kind) {
    case PlaceKind::Zero: return Place::zero(mod(p.index - i, r0_));
    case PlaceKind::One: return Place::one(mod(p.index - i, r1_));
    case PlaceKind::Infinity: return p;
    case PlaceKind::Generic: break;
  }
  return Place{PlaceKind::Generic, 0, p.x, p.y * zeta_.pow(-mod(i, N_))};
}

Divisor Curve::galois_translate(const Divisor& d, int i) const {
  Divisor r;
  for (auto& [p, c] : d.terms()) r.add(galois_translate(p, i), c);
  return r;
}

Divisor Curve::fiber_divisor(const std::optional<FieldElem>& c) const {
  Divisor d;
  if (!c) {
    d.add(Place::infinity(), N_);
    return d;
  }
  for (auto& p : places_over(*c)) d.add(p, ram_index(p));
  return d;
}

Divisor Curve::canonical_divisor() const {
  // K_X = f^*(-2 inf) + R.
  Divisor d = -2 * fiber_divisor(std::nullopt);
  d.add(Place::infinity(), N_ - 1);
  for (auto& p : places_over_zero()) d.add(p, e0() - 1);
  for (auto& p : places_over_one()) d.add(p, e1() - 1);
  return d;
}

namespace {

/// (1 + c s^e)^beta to relative precision terms.
Series binomial_series(const FieldElem& c, int e, const QQ& beta, long terms) {
  const FieldElem z = c.zero();
  std::vector<FieldElem> v(static_cast<size_t>(terms), z);
  QQ coef(1);
  FieldElem cp = z.one();
  for (long m = 0; m * e < terms; ++m) {
    v[static_cast<size_t>(m * e)] = FieldElem(c.tower(), coef) * cp;
    coef = coef * (beta - QQ(m)) / QQ(m + 1);
    cp = cp * c;
    if (coef.is_zero()) break;
  }
  return Series(z, 0, std::move(v), terms);
}

}  // namespace

std::pair<Series, Series> Curve::param(const Place& p, long terms) const {
  const FieldElem z = zero();
  const FieldElem one = z.one();
  switch (p.kind) {
    case PlaceKind::Zero: {
      Series X = Series::monomial(lambda_, e0());
      const FieldElem w = omega_ * zeta_.pow(p.index);
      Series Y = (binomial_series(-lambda_, e0(), QQ(b_, N_), terms) * w).shift(a_ / r0_);
      return {X, Y};
    }
    case PlaceKind::One: {
      std::vector<FieldElem> xc(static_cast<size_t>(e1()) + 1, z);
      xc.front() = one;
      xc.back() = one;
      Series X = Series::exact(z, 0, std::move(xc));
      Series Y = (binomial_series(one, e1(), QQ(a_, N_), terms) * zeta_.pow(p.index)).shift(b_ / r1_);
      return {X, Y};
    }
    case PlaceKind::Infinity: {
      Series X = Series::monomial(one, -N_);
      Series Y = binomial_series(-one, N_, QQ(b_, N_), terms).shift(-n());
      return {X, Y};
    }
    case PlaceKind::Generic: {
      Series X = Series::exact(z, 0, {p.x, one});
      Series Y = binomial_series(p.x.inverse(), 1, QQ(a_, N_), terms) * p.y;
      if (b_ > 0) Y = Y * binomial_series((p.x - one).inverse(), 1, QQ(b_, N_), terms);
      return {X, Y};
    }
  }
  throw InternalError("unknown place kind");
}

Series Curve::expand_with(const CurveFunction& f, const Place& p, long terms) const {
  auto [X, Y] = param(p, terms);
  const FieldElem z = zero();
  Series acc = Series::exact(z, 0, {});
  Series ypow = Series::monomial(z.one(), 0);
  for (int j = 0; j < N_; ++j) {
    if (!f.num(j).is_zero()) acc = acc + X.compose_into(f.num(j)) * ypow;
    if (j + 1 < N_) ypow = ypow * Y;
  }
  Series d = X.compose_into(f.den());
  const long vd = *d.valuation();
  return acc * d.truncate(vd + terms).inverse();
}

Series Curve::local_expansion(const CurveFunction& f, const Place& p, long order) const {
  if (f.is_zero()) throw MathError("local expansion of the zero function has no valuation");
  for (long terms = std::max<long>(2L * N_, 8); terms <= kMaxExpansion; terms *= 2) {
    Series s = expand_with(f, p, terms);
    if (s.valuation() && s.prec() >= order) return s;
  }
  throw MathError("expansion bound of " + std::to_string(kMaxExpansion) + " terms exceeded at " + p.str());
}

long Curve::valuation(const CurveFunction& f, const Place& p) const {
  return *local_expansion(f, p, std::numeric_limits<long>::min() / 4).valuation();
}

FieldElem Curve::value(const CurveFunction& f, const Place& p) const {
  if (f.is_zero()) return zero();
  Series s = local_expansion(f, p, 1);
  if (*s.valuation() < 0) throw MathError("function has a pole at " + p.str());
  return s.coeff(0);
}

CurveFunction Curve::w(int j) const {
  const FieldElem z = zero();
  const KPoly zp(z);
  std::vector<KPoly> num(static_cast<size_t>(N_), zp);
  num[static_cast<size_t>(j)] = KPoly::constant(z.one());
  KPoly den = KPoly::monomial(z.one(), alpha(j)) * KPoly({-z.one(), z.one()}, z).pow(static_cast<unsigned>(beta(j)));
  return CurveFunction(this, std::move(num), std::move(den));
}

}  // namespace belyi
