#include "belyi/field.hpp"

#include <cctype>
#include <functional>
#include <sstream>

#include "belyi/factor.hpp"

namespace belyi {

namespace {

/// Recursive-descent parser for + - * / ^ and parentheses over a value type V.
template <class V>
class ExprParser {
 public:
  struct Hooks {
    std::function<V(const mpz_class&)> number;
    std::function<V(const std::string&)> name;
    std::function<V(const V&, const V&)> div;
    std::function<V(const V&, long)> pow;
  };

  ExprParser(std::string text, Hooks hooks) : s_(std::move(text)), h_(std::move(hooks)) {}

  V parse() {
    V v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SchemaError("expression \"" + s_ + "\": " + msg + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  V expr() {
    V v = term();
    while (true) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }
  V term() {
    V v = unary();
    while (true) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = h_.div(v, unary());
      } else {
        return v;
      }
    }
  }
  V unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  V power() {
    V base = atom();
    if (eat('^')) {
      skip();
      bool neg = false;
      if (eat('-')) neg = true;
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) {
        if (eat('(')) {
          bool n2 = eat('-');
          skip();
          size_t st = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
          const size_t en = pos_;
          if (st == en || !eat(')')) fail("exponent must be an integer");
          long e = std::stol(s_.substr(st, en - st));
          return h_.pow(base, (neg != n2) ? -e : e);
        }
        fail("exponent must be an integer");
      }
      long e = std::stol(s_.substr(start, pos_ - start));
      return h_.pow(base, neg ? -e : e);
    }
    return base;
  }
  V atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      V v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return h_.number(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return h_.name(s_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  Hooks h_;
  size_t pos_ = 0;
};

void append_term(std::ostringstream& os, bool& first, bool negative, const std::string& body) {
  if (first) {
    if (negative) os << "-";
  } else {
    os << (negative ? " - " : " + ");
  }
  first = false;
  os << body;
}

std::string join_monomial(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

std::string power_str(const std::string& name, long k) {
  if (k == 0) return "";
  if (k == 1) return name;
  return name + "^" + std::to_string(k);
}

}  // namespace

// ---------------------------------------------------------------- FieldTower

std::shared_ptr<const FieldTower> FieldTower::of(std::shared_ptr<const NumberField> F) {
  return build(std::move(F), {}, std::nullopt);
}

std::shared_ptr<const FieldTower> FieldTower::build(const QPoly& base_min_poly,
                                                    const std::vector<std::string>& transcendentals,
                                                    const std::optional<std::string>& algebraic_ext) {
  auto F = NumberField::make(base_min_poly);
  if (transcendentals.size() > 1) throw SchemaError("at most one transcendental is supported");
  std::optional<RPoly> g;
  if (algebraic_ext) {
    std::string tname = transcendentals.empty() ? std::string() : transcendentals[0];
    g = parse_poly_in(F, tname, "u", *algebraic_ext);
  }
  return build(F, transcendentals, g);
}

std::shared_ptr<const FieldTower> FieldTower::build(std::shared_ptr<const NumberField> F,
                                                    const std::vector<std::string>& transcendentals,
                                                    const std::optional<RPoly>& g) {
  if (transcendentals.size() > 1) throw SchemaError("at most one transcendental is supported");
  for (auto& n : transcendentals)
    if (n.empty() || n == "u" || n == "alpha" || n == F->name())
      throw SchemaError("invalid transcendental name: " + n);
  std::shared_ptr<FieldTower> K(new FieldTower());
  K->F_ = std::move(F);
  if (!transcendentals.empty()) K->tname_ = transcendentals[0];
  if (g) {
    if (g->degree() < 1) throw SchemaError("algebraic extension polynomial must have positive degree in u");
    if (!g->lead().is_one()) throw SchemaError("algebraic extension polynomial must be monic in u");
    // Coefficients must be t-free when there is no transcendental.
    for (auto& c : g->coeffs())
      if (!K->has_t() && !c.is_constant()) throw SchemaError("extension polynomial mentions an undeclared variable");
    const NumberField* Fp = K->F_.get();
    bool certified = false;
    if (!K->has_t()) {
      std::vector<NFElem> cs;
      for (auto& c : g->coeffs()) cs.push_back(c.constant_value());
      certified = is_irreducible_over(FPoly(cs, NFElem(Fp, 0L)));
      if (!certified) throw MathError("algebraic extension polynomial is reducible over the base field");
    } else {
      // u^r - c(t) with c having a simple zero: that place is totally ramified.
      bool binomial = true;
      for (int i = 1; i < g->degree(); ++i) binomial = binomial && g->coeff(i).is_zero();
      if (binomial && !g->coeff(0).is_zero()) {
        const FPoly& c = g->coeff(0).num();
        const FPoly rad = c / gcd(c, c.derivative());
        certified = rad.degree() > 0 && gcd(rad, c.derivative()).degree() < rad.degree();
      }
      // Irreducibility of a specialization g(tau, u) over F at a point where
      // no coefficient has a pole implies irreducibility over F(t).
      for (long i = 1; i <= 10 && !certified; ++i) {
        long tau = (i % 2 == 1) ? (i + 3) / 2 : -(i / 2);
        NFElem tv(Fp, tau);
        bool ok = true;
        std::vector<NFElem> cs;
        for (auto& c : g->coeffs()) {
          if (c.den_vanishes_at(tv)) {
            ok = false;
            break;
          }
          cs.push_back(c.eval(tv));
        }
        if (!ok) continue;
        certified = is_irreducible_over(FPoly(cs, NFElem(Fp, 0L)));
      }
      if (!certified)
        throw MathError("could not certify irreducibility of the extension polynomial over F(t); enlarge or change F");
    }
    K->g_ = g;
    const int r = g->degree();
    std::vector<std::vector<RatFunc>> table;
    std::vector<RatFunc> cur(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) cur[static_cast<size_t>(i)] = -g->coeff(i);
    for (int k = r; k <= 2 * r - 2; ++k) {
      table.push_back(cur);
      std::vector<RatFunc> nxt(static_cast<size_t>(r), g->coeff(0).zero());
      const RatFunc top = cur[static_cast<size_t>(r - 1)];
      for (int i = r - 1; i >= 1; --i) nxt[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
      for (int i = 0; i < r; ++i) nxt[static_cast<size_t>(i)] -= top * g->coeff(i);
      cur = std::move(nxt);
    }
    FPoly E = FPoly::constant(NFElem(Fp, 1L));
    for (auto& row : table)
      for (auto& c : row) E = E / gcd(E, c.den()) * c.den();
    K->reduce_den_ = E;
    for (auto& row : table) {
      std::vector<FPoly> nums;
      for (auto& c : row) nums.push_back(c.num() * (E / c.den()));
      K->reduce_.push_back(std::move(nums));
    }
  } else {
    K->reduce_den_ = FPoly::constant(NFElem(K->F_.get(), 1L));
  }
  return K;
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "Q(" << F_->name() << ")";
  if (has_t()) os << "(" << tname_ << ")";
  if (has_u()) os << "(u)";
  std::vector<NFElem> mc;
  for (auto& c : F_->minpoly().coeffs()) mc.push_back(NFElem(F_.get(), c));
  os << ", " << poly_str(FPoly(mc, NFElem(F_.get(), 0L)), F_->name()) << " = 0";
  if (has_u()) {
    std::vector<std::string> parts;
    std::ostringstream gs;
    bool first = true;
    for (int j = g_->degree(); j >= 0; --j) {
      const RatFunc& c = g_->coeff(j);
      if (c.is_zero()) continue;
      FieldElem e(this, c);
      std::string s = e.str();
      std::string mono = power_str("u", j);
      if (!first) gs << " + ";
      first = false;
      if (mono.empty()) {
        gs << "(" << s << ")";
      } else if (s == "1") {
        gs << mono;
      } else {
        gs << "(" << s << ")*" << mono;
      }
    }
    os << ", " << gs.str() << " = 0";
  }
  return os.str();
}

// ----------------------------------------------------------------- FieldElem

namespace {

bool is_unit_poly(const FPoly& p) { return p.degree() == 0 && p.lead().is_one(); }

/// Determinant over F[t] by fraction-free (Bareiss) elimination.
FPoly bareiss_det(std::vector<std::vector<FPoly>> m, const FPoly& zero) {
  const size_t n = m.size();
  if (n == 0) return zero.one();
  FPoly prev = zero.one();
  bool neg = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return zero;
      std::swap(m[p], m[k]);
      neg = !neg;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return neg ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

}  // namespace

FieldElem::FieldElem(const FieldTower* K, long n) : FieldElem(K, NFElem(K->base(), n)) {}

FieldElem::FieldElem(const FieldTower* K, const QQ& q) : FieldElem(K, NFElem(K->base(), q)) {}

FieldElem::FieldElem(const FieldTower* K, const NFElem& c) : K_(K) {
  const NFElem z(K->base(), 0L);
  num_.assign(static_cast<size_t>(K->ext_degree()), FPoly(z));
  if (!c.is_zero()) num_[0] = FPoly::constant(c);
  den_ = FPoly::constant(z.one());
}

FieldElem::FieldElem(const FieldTower* K, const RatFunc& c) : K_(K) {
  const NFElem z(K->base(), 0L);
  num_.assign(static_cast<size_t>(K->ext_degree()), FPoly(z));
  num_[0] = c.num();
  den_ = c.den();
  if (c.is_zero()) den_ = FPoly::constant(z.one());
}

FieldElem::FieldElem(const FieldTower* K, std::vector<RatFunc> coords) : K_(K) {
  const auto r = static_cast<size_t>(K->ext_degree());
  ensure(coords.size() == r, "coordinate vector length does not match the extension degree");
  const NFElem z(K->base(), 0L);
  den_ = FPoly::constant(z.one());
  for (auto& c : coords) den_ = den_ / gcd(den_, c.den()) * c.den();
  for (auto& c : coords) num_.push_back(c.num() * (den_ / c.den()));
  normalize();
}

FieldElem::FieldElem(const FieldTower* K, std::vector<FPoly> num, FPoly den)
    : K_(K), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void FieldElem::normalize() {
  if (den_.is_zero()) throw MathError("zero denominator in K");
  bool all_zero = true;
  for (auto& p : num_)
    if (!p.is_zero()) all_zero = false;
  const NFElem one(K_->base(), 1L);
  if (all_zero) {
    den_ = FPoly::constant(one);
    return;
  }
  if (den_.degree() > 0) {
    FPoly g = den_;
    for (auto& p : num_) {
      if (p.is_zero()) continue;
      if (certainly_coprime(g, p)) {
        g = g.one();
        break;
      }
      g = gcd(g, p);
      if (g.degree() == 0) break;
    }
    if (g.degree() > 0) {
      den_ = den_ / g;
      for (auto& p : num_)
        if (!p.is_zero()) p = p / g;
    }
  }
  if (!den_.lead().is_one()) {
    NFElem inv = den_.lead().inverse();
    den_ = den_ * inv;
    for (auto& p : num_) p = p * inv;
  }
}

std::vector<RatFunc> FieldElem::coords() const {
  std::vector<RatFunc> out;
  for (size_t j = 0; j < num_.size(); ++j) out.push_back(coord(static_cast<int>(j)));
  return out;
}

FieldElem FieldElem::alpha(const FieldTower* K) { return FieldElem(K, NFElem::generator(K->base())); }

FieldElem FieldElem::t(const FieldTower* K) {
  if (!K->has_t()) throw SchemaError("field has no transcendental");
  return FieldElem(K, RatFunc::variable(K->base()));
}

FieldElem FieldElem::u(const FieldTower* K) {
  if (!K->has_u()) throw SchemaError("field has no algebraic generator u");
  if (K->ext_degree() == 1) return FieldElem(K, -K->ext_poly().coeff(0));
  FieldElem r(K, 0L);
  r.num_[1] = FPoly::constant(NFElem(K->base(), 1L));
  return r;
}

bool FieldElem::u_free() const {
  for (size_t i = 1; i < num_.size(); ++i)
    if (!num_[i].is_zero()) return false;
  return true;
}

bool FieldElem::is_zero() const {
  for (auto& p : num_)
    if (!p.is_zero()) return false;
  return true;
}

bool FieldElem::is_one() const { return u_free() && is_unit_poly(den_) && num_[0].is_one(); }

bool FieldElem::is_algebraic() const { return u_free() && den_.degree() == 0 && num_[0].degree() <= 0; }

NFElem FieldElem::algebraic_value() const {
  ensure(is_algebraic(), "algebraic_value of a non-algebraic element");
  return num_[0].coeff(0);
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (auto& p : r.num_) p = -p;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  if (!K_) return *this = o;
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    for (size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
    if (den_.degree() > 0) normalize();
    else if (is_zero()) den_ = den_.one();
    return *this;
  }
  // a/D1 + b/D2 over lcm(D1, D2).
  FPoly g = certainly_coprime(den_, o.den_) ? den_.one() : gcd(den_, o.den_);
  FPoly m1 = o.den_ / g, m2 = den_ / g;
  for (size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * m1 + o.num_[i] * m2;
  den_ = den_ * m1;
  normalize();
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  const FieldTower* K = a.K_ ? a.K_ : b.K_;
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  const size_t r = a.num_.size();
  const bool plain_den = a.den_.degree() == 0 && b.den_.degree() == 0;
  if (a.u_free() || b.u_free()) {
    const FieldElem& s = a.u_free() ? a : b;
    const FieldElem& v = a.u_free() ? b : a;
    std::vector<FPoly> num = v.num_;
    for (auto& p : num)
      if (!p.is_zero()) p = p * s.num_[0];
    if (plain_den) {
      FieldElem out;
      out.K_ = K;
      out.num_ = std::move(num);
      out.den_ = v.den_;
      return out;
    }
    return FieldElem(K, std::move(num), v.den_ * s.den_);
  }
  const FPoly z(NFElem(K->base(), 0L));
  std::vector<FPoly> prod(2 * r - 1, z);
  for (size_t i = 0; i < r; ++i) {
    if (a.num_[i].is_zero()) continue;
    for (size_t j = 0; j < r; ++j)
      if (!b.num_[j].is_zero()) prod[i + j] += a.num_[i] * b.num_[j];
  }
  const FPoly& E = K->reduction_den();
  const bool plain_e = E.degree() == 0;
  std::vector<FPoly> out(r, z);
  for (size_t i = 0; i < r; ++i) out[i] = plain_e ? prod[i] : prod[i] * E;
  for (size_t k = r; k < prod.size(); ++k) {
    if (prod[k].is_zero()) continue;
    const auto& red = K->reduction(static_cast<int>(k));
    for (size_t i = 0; i < r; ++i)
      if (!red[i].is_zero()) out[i] += prod[k] * red[i];
  }
  FPoly den = a.den_ * b.den_;
  if (!plain_e) den = den * E;
  return FieldElem(K, std::move(out), std::move(den));
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw MathError("division by zero in K");
  const FPoly z(NFElem(K_->base(), 0L));
  if (u_free()) {
    std::vector<FPoly> num(num_.size(), z);
    num[0] = den_;
    return FieldElem(K_, std::move(num), num_[0]);
  }
  // Columns of the multiplication-by-this matrix: this * u^j = M[:, j] / d_j.
  // Solving M w = e_0 by cofactors gives the inverse sum_j d_j w_j u^j.
  const size_t r = num_.size();
  std::vector<FieldElem> cols;
  FieldElem uj = one(), u = FieldElem::u(K_);
  for (size_t j = 0; j < r; ++j) {
    cols.push_back(*this * uj);
    uj = uj * u;
  }
  std::vector<FPoly> cof(r, z);
  FPoly det = z;
  for (size_t j = 0; j < r; ++j) {
    std::vector<std::vector<FPoly>> minor;
    for (size_t i = 1; i < r; ++i) {
      minor.emplace_back();
      for (size_t c = 0; c < r; ++c)
        if (c != j) minor.back().push_back(cols[c].num_[i]);
    }
    cof[j] = bareiss_det(std::move(minor), z);
    if (j % 2 == 1) cof[j] = -cof[j];
    det += cols[j].num_[0] * cof[j];
  }
  ensure(!det.is_zero(), "non-invertible element of K");
  std::vector<FPoly> num(r, z);
  for (size_t j = 0; j < r; ++j) num[j] = cols[j].den_ * cof[j];
  return FieldElem(K_, std::move(num), det);
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem r = one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

int compare(const FieldElem& a, const FieldElem& b) {
  for (size_t i = a.num_.size(); i-- > 0;) {
    int c = compare(a.coord(static_cast<int>(i)), b.coord(static_cast<int>(i)));
    if (c != 0) return c;
  }
  return 0;
}

std::string FieldElem::str() const {
  std::ostringstream os;
  bool first = true;
  const std::string an = K_->base()->name();
  const std::string tn = K_->has_t() ? K_->t_name() : "t";
  for (size_t j = num_.size(); j-- > 0;) {
    if (num_[j].is_zero()) continue;
    const RatFunc c = coord(static_cast<int>(j));
    const std::string um = power_str("u", static_cast<long>(j));
    if (c.den().degree() > 0) {
      std::string body = "(" + poly_str(c.num(), tn) + ")/(" + poly_str(c.den(), tn) + ")";
      append_term(os, first, false, join_monomial(body, um));
      continue;
    }
    for (int k = c.num().degree(); k >= 0; --k) {
      const auto& q = c.num().coeff(k).coeffs();
      for (size_t i = q.size(); i-- > 0;) {
        if (sgn(q[i]) == 0) continue;
        std::string mono = join_monomial(join_monomial(power_str(an, static_cast<long>(i)), power_str(tn, k)), um);
        mpq_class mag = abs(q[i]);
        std::string body = mono.empty() ? mag.get_str() : (mag == 1 ? mono : mag.get_str() + "*" + mono);
        append_term(os, first, sgn(q[i]) < 0, body);
      }
    }
  }
  return first ? "0" : os.str();
}

// ------------------------------------------------------------------- parsing

FieldElem parse_elem(const FieldTower* K, const std::string& text) {
  typename ExprParser<FieldElem>::Hooks h;
  h.number = [K](const mpz_class& n) { return FieldElem(K, QQ(n)); };
  h.name = [K](const std::string& s) {
    if (s == K->base()->name() || s == "alpha") return FieldElem::alpha(K);
    if (K->has_t() && s == K->t_name()) return FieldElem::t(K);
    if (s == "u" && K->has_u()) return FieldElem::u(K);
    throw SchemaError("unknown symbol '" + s + "'");
  };
  h.div = [](const FieldElem& a, const FieldElem& b) {
    if (b.is_zero()) throw SchemaError("division by zero in expression");
    return a / b;
  };
  h.pow = [](const FieldElem& b, long e) {
    if (e < 0 && b.is_zero()) throw SchemaError("zero to a negative power");
    return b.pow(e);
  };
  return ExprParser<FieldElem>(text, h).parse();
}

RPoly parse_poly_in(const std::shared_ptr<const NumberField>& F, const std::string& tname, const std::string& var,
                    const std::string& text) {
  const NumberField* Fp = F.get();
  const RatFunc z(NFElem(Fp, 0L));
  typename ExprParser<RPoly>::Hooks h;
  h.number = [z, Fp](const mpz_class& n) { return RPoly::constant(RatFunc(NFElem(Fp, QQ(n)))); };
  h.name = [=](const std::string& s) {
    if (s == var) return RPoly::monomial(z.one(), 1);
    if (s == Fp->name() || s == "alpha") return RPoly::constant(RatFunc(NFElem::generator(Fp)));
    if (!tname.empty() && s == tname) return RPoly::constant(RatFunc::variable(Fp));
    throw SchemaError("unknown symbol '" + s + "' in polynomial");
  };
  h.div = [](const RPoly& a, const RPoly& b) {
    if (b.is_zero()) throw SchemaError("division by zero in polynomial");
    if (b.degree() > 0) throw SchemaError("division by a non-constant polynomial");
    return a * b.coeff(0).inverse();
  };
  h.pow = [](const RPoly& b, long e) {
    if (e < 0) {
      if (b.degree() != 0) throw SchemaError("negative power of a non-constant polynomial");
      return RPoly::constant(b.coeff(0).pow(e));
    }
    return b.pow(static_cast<unsigned>(e));
  };
  RPoly p = ExprParser<RPoly>(text, h).parse();
  return RPoly(p.coeffs(), z);
}

QPoly qpoly_from_descending(const std::vector<QQ>& coeffs) {
  std::vector<QQ> asc(coeffs.rbegin(), coeffs.rend());
  return QPoly(std::move(asc), QQ(0));
}

QPoly parse_qpoly(const std::string& text) {
  std::string var;
  typename ExprParser<QPoly>::Hooks h;
  h.number = [](const mpz_class& n) { return QPoly::constant(QQ(n)); };
  h.name = [&var](const std::string& s) {
    if (var.empty()) var = s;
    if (s != var) throw SchemaError("base polynomial must be univariate");
    return QPoly({QQ(0), QQ(1)}, QQ(0));
  };
  h.div = [](const QPoly& a, const QPoly& b) {
    if (b.is_zero() || b.degree() > 0) throw SchemaError("division by a non-constant or zero polynomial");
    return a * b.coeff(0).inverse();
  };
  h.pow = [](const QPoly& b, long e) {
    if (e < 0) throw SchemaError("negative exponent in polynomial");
    return b.pow(static_cast<unsigned>(e));
  };
  return ExprParser<QPoly>(text, h).parse();
}

NFElem specialize(const FieldElem& e, const NFElem& tau, const NFElem& u_value) {
  NFElem acc = tau.zero(), up = tau.one();
  for (int j = 0; j < e.ext_degree(); ++j) {
    RatFunc c = e.coord(j);
    if (!c.is_zero()) acc += c.eval(tau) * up;
    up = up * u_value;
  }
  return acc;
}

RatFunc embed(const RatFunc& r, const NumberField* target, const NFElem& alpha_image) {
  auto map = [&](const FPoly& p) {
    std::vector<NFElem> c;
    for (auto& x : p.coeffs()) c.push_back(embed(x, target, alpha_image));
    return FPoly(std::move(c), NFElem(target, 0L));
  };
  return RatFunc(map(r.num()), map(r.den()));
}

FieldElem embed(const FieldElem& e, const FieldTower* target, const NFElem& alpha_image) {
  std::vector<RatFunc> c;
  for (auto& r : e.coords()) c.push_back(embed(r, target->base(), alpha_image));
  return FieldElem(target, std::move(c));
}

}  // namespace belyi
