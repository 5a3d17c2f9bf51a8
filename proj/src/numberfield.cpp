#include "belyi/numberfield.hpp"

#include <sstream>

#include "belyi/factor.hpp"

namespace belyi {

namespace {

QPoly qpoly_x() { return QPoly({QQ(0), QQ(1)}, QQ(0)); }

}  // namespace

NumberField::NumberField(QPoly minpoly, std::string name)
    : minpoly_(std::move(minpoly)), degree_(minpoly_.degree()), name_(std::move(name)) {
  const int d = degree_;
  // alpha^d = -sum m_i alpha^i; higher powers by shifting.
  std::vector<mpq_class> cur(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) cur[static_cast<size_t>(i)] = -minpoly_.coeff(i).value();
  for (int k = d; k <= 2 * d - 2; ++k) {
    reduce_.push_back(cur);
    std::vector<mpq_class> nxt(static_cast<size_t>(d));
    const mpq_class top = cur[static_cast<size_t>(d - 1)];
    for (int i = d - 1; i >= 1; --i) nxt[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
    for (int i = 0; i < d; ++i) nxt[static_cast<size_t>(i)] -= top * minpoly_.coeff(i).value();
    cur = std::move(nxt);
  }
  mpz_class p = 1000000007;
  for (int tries = 0; tries < 200; ++tries) {
    if (auto r = root_mod_p(minpoly_, p.get_si())) {
      prime_ = p.get_si();
      root_ = *r;
      break;
    }
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
}

std::shared_ptr<const NumberField> NumberField::make(const QPoly& minpoly, std::string name) {
  if (minpoly.degree() < 1) throw MathError("number field minimal polynomial must have degree >= 1");
  QPoly m = minpoly.monic();
  if (m.degree() > 1 && !is_irreducible_over_Q(m))
    throw MathError("base minimal polynomial is reducible over Q");
  return std::shared_ptr<const NumberField>(new NumberField(std::move(m), std::move(name)));
}

std::shared_ptr<const NumberField> NumberField::rationals(std::string name) {
  return make(qpoly_x(), std::move(name));
}

NFElem::NFElem(const NumberField* F, long n) : F_(F), c_(static_cast<size_t>(F->degree())) { c_[0] = n; }

NFElem::NFElem(const NumberField* F, const QQ& q) : F_(F), c_(static_cast<size_t>(F->degree())) {
  c_[0] = q.value();
}

NFElem::NFElem(const NumberField* F, std::vector<mpq_class> coeffs) : F_(F), c_(std::move(coeffs)) {
  const auto d = static_cast<size_t>(F->degree());
  if (c_.size() > d) {
    // Reduce a longer representation modulo the minimal polynomial.
    QPoly p(std::vector<QQ>(), QQ(0));
    std::vector<QQ> q;
    q.reserve(c_.size());
    for (auto& v : c_) q.emplace_back(v);
    p = QPoly(std::move(q), QQ(0)) % F->minpoly();
    c_.assign(d, mpq_class(0));
    for (int i = 0; i <= p.degree(); ++i) c_[static_cast<size_t>(i)] = p.coeff(i).value();
  } else {
    c_.resize(d);
  }
}

NFElem NFElem::generator(const NumberField* F) {
  if (F->degree() == 1) return NFElem(F, QQ(-F->minpoly().coeff(0)));
  NFElem r(F, 0L);
  r.c_[1] = 1;
  return r;
}

QPoly NFElem::as_qpoly() const {
  std::vector<QQ> q;
  q.reserve(c_.size());
  for (auto& v : c_) q.emplace_back(v);
  return QPoly(std::move(q), QQ(0));
}

bool NFElem::is_zero() const {
  for (auto& v : c_)
    if (sgn(v) != 0) return false;
  return true;
}

bool NFElem::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

bool NFElem::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw MathError("division by zero in number field");
  if (is_rational()) {
    NFElem r(F_, 0L);
    r.c_[0] = 1 / c_[0];
    return r;
  }
  auto [g, s, t] = xgcd(as_qpoly(), F_->minpoly());
  ensure(g.degree() == 0, "non-invertible number field element");
  std::vector<mpq_class> out(static_cast<size_t>(F_->degree()));
  for (int i = 0; i <= s.degree(); ++i) out[static_cast<size_t>(i)] = s.coeff(i).value();
  return NFElem(F_, std::move(out));
}

NFElem NFElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  NFElem r = one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

NFElem NFElem::operator-() const {
  NFElem r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

NFElem& NFElem::operator+=(const NFElem& o) {
  if (!F_) F_ = o.F_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
  if (!F_) F_ = o.F_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  const NumberField* F = a.F_ ? a.F_ : b.F_;
  const int d = F->degree();
  if (d == 1) {
    NFElem r(F, 0L);
    r.c_[0] = a.c_[0] * b.c_[0];
    return r;
  }
  if (a.is_rational() || b.is_rational()) {
    const NFElem& s = a.is_rational() ? a : b;
    const NFElem& v = a.is_rational() ? b : a;
    NFElem r = v;
    for (auto& c : r.c_) c *= s.c_[0];
    return r;
  }
  std::vector<mpq_class> prod(static_cast<size_t>(2 * d - 1));
  for (int i = 0; i < d; ++i) {
    if (sgn(a.c_[static_cast<size_t>(i)]) == 0) continue;
    for (int j = 0; j < d; ++j)
      prod[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
  }
  NFElem r(F, 0L);
  for (int i = 0; i < d; ++i) r.c_[static_cast<size_t>(i)] = prod[static_cast<size_t>(i)];
  for (int k = d; k <= 2 * d - 2; ++k) {
    const mpq_class& p = prod[static_cast<size_t>(k)];
    if (sgn(p) == 0) continue;
    const auto& red = F->reduction(k);
    for (int i = 0; i < d; ++i) r.c_[static_cast<size_t>(i)] += p * red[static_cast<size_t>(i)];
  }
  return r;
}

int compare(const NFElem& a, const NFElem& b) {
  const size_t n = std::max(a.c_.size(), b.c_.size());
  for (size_t i = n; i-- > 0;) {
    mpq_class x = i < a.c_.size() ? a.c_[i] : mpq_class(0);
    mpq_class y = i < b.c_.size() ? b.c_[i] : mpq_class(0);
    int c = cmp(x, y);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

int NFElem::term_count() const {
  int n = 0;
  for (auto& v : c_)
    if (sgn(v) != 0) ++n;
  return n;
}

std::string NFElem::str() const {
  std::ostringstream os;
  bool first = true;
  const std::string& name = F_ ? F_->name() : std::string("alpha");
  for (size_t i = c_.size(); i-- > 0;) {
    const mpq_class& v = c_[i];
    if (sgn(v) == 0) continue;
    mpq_class mag = abs(v);
    if (first) {
      if (sgn(v) < 0) os << "-";
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << name;
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

std::optional<NFElem> primitive_root_of_unity(const NumberField& F, int n) {
  const NumberField* Fp = &F;
  if (n <= 0) throw MathError("root of unity order must be positive");
  auto order_is = [&](const NFElem& z) {
    if (!z.pow(n).is_one()) return false;
    for (int p = 2; p <= n; ++p) {
      if (n % p != 0) continue;
      bool prime = true;
      for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) prime = false;
      if (prime && z.pow(n / p).is_one()) return false;
    }
    return true;
  };
  NFElem one(Fp, 1L);
  if (n == 1) return one;
  if (n == 2) return NFElem(Fp, -1L);
  // Euler phi(n) must divide the degree.
  int phi = n;
  {
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      while (m % p == 0) m /= p;
      phi -= phi / p;
    }
    if (m > 1) phi -= phi / m;
  }
  if (F.degree() % phi != 0) return std::nullopt;

  // Powers of +-alpha cover the cyclotomic presentations.
  NFElem a = NFElem::generator(Fp);
  for (const NFElem& base : {a, -a}) {
    int ord = 0;
    NFElem p = base;
    for (int k = 1; k <= 400; ++k) {
      if (p.is_one()) {
        ord = k;
        break;
      }
      p = p * base;
    }
    if (ord > 0 && ord % n == 0) {
      NFElem z = base.pow(ord / n);
      if (order_is(z)) return z;
    }
  }
  // All n-th roots of unity in F; the first primitive one in canonical order.
  NFElem z(Fp, 0L);
  std::vector<NFElem> c(static_cast<size_t>(n) + 1, z);
  c[0] = NFElem(Fp, -1L);
  c.back() = one;
  for (const NFElem& r : roots_in_field(FPoly(c, z)))
    if (order_is(r)) return r;
  return std::nullopt;
}

NFElem embed(const NFElem& x, const NumberField* target, const NFElem& alpha_image) {
  NFElem acc(target, 0L);
  const auto& c = x.coeffs();
  for (size_t i = c.size(); i-- > 0;) acc = acc * alpha_image + NFElem(target, QQ(c[i]));
  return acc;
}

FieldExtension adjoin_root(const std::shared_ptr<const NumberField>& F, const FPoly& p, const std::string& name) {
  if (p.degree() < 1) throw MathError("cannot adjoin a root of a constant");
  if (!is_irreducible_over(p)) throw MathError("extension polynomial is reducible");
  const FPoly pm = p.monic();
  if (pm.degree() == 1) {
    // Root already in F.
    return FieldExtension{F, NFElem::generator(F.get()), -pm.coeff(0)};
  }
  const int d = F->degree();
  for (long k = 0; k < 64; ++k) {
    // theta = v + k*alpha has minimal polynomial N(p(u - k*alpha)).
    QPoly R = shifted_norm(pm, k);
    if (!is_squarefree(R)) continue;
    auto Fp = NumberField::make(R, name);
    const NumberField* G = Fp.get();
    NFElem theta = NFElem::generator(G);
    if (d == 1) {
      NFElem a = NFElem::generator(G).zero() + NFElem(G, QQ(-F->minpoly().coeff(0)));
      return FieldExtension{Fp, a, theta};
    }
    // z = alpha is the unique common root of m(z) and p(theta - k z, z).
    using GPoly = Poly<NFElem>;
    NFElem gz(G, 0L);
    GPoly m(gz);
    for (int i = 0; i <= d; ++i) m += GPoly::monomial(NFElem(G, F->minpoly().coeff(i)), i);
    GPoly lin({theta, NFElem(G, QQ(-k))}, gz);  // theta - k z
    GPoly acc(gz), pw = GPoly::constant(NFElem(G, 1L));
    for (int i = 0; i <= pm.degree(); ++i) {
      GPoly ci(gz);
      const auto& cc = pm.coeff(i).coeffs();
      for (size_t j = 0; j < cc.size(); ++j) ci += GPoly::monomial(NFElem(G, QQ(cc[j])), static_cast<int>(j));
      acc += ci * pw;
      pw = pw * lin;
    }
    GPoly g = gcd(m, acc);
    ensure(g.degree() == 1, "primitive element gcd is not linear");
    NFElem a = -g.coeff(0);
    NFElem v = theta - NFElem(G, QQ(k)) * a;
    return FieldExtension{Fp, a, v};
  }
  throw InternalError("no primitive element shift found");
}

}  // namespace belyi
