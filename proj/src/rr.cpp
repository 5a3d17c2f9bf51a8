#include "belyi/rr.hpp"

#include <algorithm>

#include "belyi/factor.hpp"

namespace belyi {

namespace {

KPoly linear(const FieldElem& c) { return KPoly::linear_root(c); }

/// Groups the finite places of supp(D) by x-coordinate.
std::vector<FieldElem> finite_x_values(const Curve& c, const Divisor& D) {
  std::vector<FieldElem> xs;
  for (auto& [p, m] : D.terms()) {
    auto x = c.x_value(p);
    if (!x) continue;
    if (std::find(xs.begin(), xs.end(), *x) == xs.end()) xs.push_back(*x);
  }
  return xs;
}

Place representative(const Curve& c, const Divisor& D, const FieldElem& x) {
  for (auto& [p, m] : D.terms())
    if (auto v = c.x_value(p); v && *v == x) return p;
  if (x.is_zero()) return Place::zero(0);
  if (x.is_one()) return Place::one(0);
  throw InternalError("no place of the divisor over the requested x-value");
}

}  // namespace

// The ansatz. O = K[x] w_0 + ... + K[x] w_{N-1} is the ring of functions
// regular at every finite place (w_j is integral: at a place over 0 with
// ramification e0 its valuation is e0 * frac(ja/N) >= 0, likewise over 1,
// and y is integral elsewhere). For f in L(D) and a finite x-value c put
// B_c = max(0, max_{P over c} ceil(D(P)/e_P)); then q = prod (x - c)^B_c
// makes q f regular at every finite place, so q f = sum p_j(x) w_j.
// At infinity v(x^k w_j) = -(N k + d_j) with d_j = pole order of w_j; the
// d_j are distinct mod N because d_j = j(a+b) mod N and gcd(N, a+b) = 1, so
// the valuation of sum p_j w_j is the minimum over j and
// v_inf(q f) >= -N deg q - D(inf) forces deg p_j <= (N deg q + D(inf) - d_j)/N.
// Hence L(D) embeds in the finite ansatz space. The remaining conditions
// v_P(q f) >= e_P B_c - D(P) at places over each c are linear, and L(D) is
// exactly their common kernel.
RRSpace::RRSpace(const Curve& c, const Divisor& D) : C_(&c), D_(D) {
  const FieldElem z = c.zero();
  const int N = c.N();
  std::vector<std::pair<Place, long>> conditions;  // place, required valuation of q f
  q_ = KPoly::constant(z.one());
  for (const FieldElem& x : finite_x_values(c, D)) {
    const auto fiber = c.fiber_of(representative(c, D, x));
    long B = 0;
    for (auto& p : fiber) B = std::max(B, ceil_div(D.coeff(p), c.ram_index(p)));
    if (B > 0) q_ = q_ * linear(x).pow(static_cast<unsigned>(B));
    for (auto& p : fiber) {
      long need = c.ram_index(p) * B - D.coeff(p);
      if (need > 0) conditions.emplace_back(p, need);
    }
  }
  const long Dinf = D.coeff(Place::infinity());
  for (int j = 0; j < N; ++j) {
    long bound = floor_div(static_cast<long>(N) * q_.degree() + Dinf - c.pole_at_infinity(j), N);
    deg_.push_back(std::max(bound, -1L));
    offset_.push_back(unknowns_);
    unknowns_ += static_cast<size_t>(deg_.back() + 1);
  }

  KMatrix sys(0, unknowns_, z);
  for (auto& [p, need] : conditions) {
    auto [X, Y] = c.param(p, 1);
    std::vector<std::vector<FieldElem>> rows(static_cast<size_t>(need), std::vector<FieldElem>(unknowns_, z));
    for (int j = 0; j < N; ++j) {
      if (deg_[static_cast<size_t>(j)] < 0) continue;
      Series s = c.local_expansion(c.w(j), p, need);
      for (long k = 0; k <= deg_[static_cast<size_t>(j)]; ++k) {
        for (long e = 0; e < need; ++e) rows[static_cast<size_t>(e)][offset_[static_cast<size_t>(j)] + static_cast<size_t>(k)] = s.coeff(e);
        s = s * X;
      }
    }
    for (auto& r : rows) sys.append_row(r);
    constraints_ += static_cast<size_t>(need);
  }
  rows_ = sys.kernel();
  for (size_t i = 0; i < rows_.rows(); ++i) {
    size_t piv = 0;
    while (rows_(i, piv).is_zero()) ++piv;
    pivots_.push_back(piv);
    basis_.push_back(from_ansatz(rows_.row(i)));
  }
}

CurveFunction RRSpace::from_ansatz(const std::vector<FieldElem>& v) const {
  const FieldElem z = C_->zero();
  const int N = C_->N();
  int amax = 0, bmax = 0;
  for (int j = 0; j < N; ++j) {
    amax = std::max(amax, C_->alpha(j));
    bmax = std::max(bmax, C_->beta(j));
  }
  const KPoly xm1({-z.one(), z.one()}, z);
  std::vector<KPoly> num;
  for (int j = 0; j < N; ++j) {
    std::vector<FieldElem> co;
    for (long k = 0; k <= deg_[static_cast<size_t>(j)]; ++k) co.push_back(v[offset_[static_cast<size_t>(j)] + static_cast<size_t>(k)]);
    KPoly p(co, z);
    num.push_back(p * KPoly::monomial(z.one(), amax - C_->alpha(j)) * xm1.pow(static_cast<unsigned>(bmax - C_->beta(j))));
  }
  KPoly den = q_ * KPoly::monomial(z.one(), amax) * xm1.pow(static_cast<unsigned>(bmax));
  return CurveFunction(C_, std::move(num), std::move(den));
}

std::optional<std::vector<FieldElem>> RRSpace::ansatz_vector(const CurveFunction& f) const {
  const FieldElem z = C_->zero();
  const KPoly xm1({-z.one(), z.one()}, z);
  std::vector<FieldElem> v(unknowns_, z);
  for (int j = 0; j < C_->N(); ++j) {
    if (f.num(j).is_zero()) continue;
    KPoly top = q_ * f.num(j) * KPoly::monomial(z.one(), C_->alpha(j)) * xm1.pow(static_cast<unsigned>(C_->beta(j)));
    auto [quo, rem] = top.divmod(f.den());
    if (!rem.is_zero() || quo.degree() > deg_[static_cast<size_t>(j)]) return std::nullopt;
    for (int k = 0; k <= quo.degree(); ++k) v[offset_[static_cast<size_t>(j)] + static_cast<size_t>(k)] = quo.coeff(k);
  }
  return v;
}

std::optional<std::vector<FieldElem>> RRSpace::coordinates(const CurveFunction& f) const {
  auto v = ansatz_vector(f);
  if (!v) return std::nullopt;
  const FieldElem z = C_->zero();
  std::vector<FieldElem> coef;
  std::vector<FieldElem> rebuilt(unknowns_, z);
  for (size_t i = 0; i < pivots_.size(); ++i) {
    coef.push_back((*v)[pivots_[i]]);
    if (coef.back().is_zero()) continue;
    for (size_t k = 0; k < unknowns_; ++k)
      if (!rows_(i, k).is_zero()) rebuilt[k] += coef.back() * rows_(i, k);
  }
  if (rebuilt != *v) return std::nullopt;
  return coef;
}

FunctionBasis rr_space(const Curve& c, const Divisor& D) { return RRSpace(c, D).as_basis(); }

long ell(const Curve& c, const Divisor& D) {
  return static_cast<long>(RRSpace(c, D).dim());
}

bool in_space(const Curve& c, const CurveFunction& f, const Divisor& D) {
  if (f.is_zero()) return true;
  std::vector<FieldElem> xs = finite_x_values(c, D);
  for (long v : {0L, 1L}) {
    FieldElem e(c.field(), v);
    if (std::find(xs.begin(), xs.end(), e) == xs.end()) xs.push_back(e);
  }
  // Poles can only sit over roots of den(x) and at infinity.
  KPoly rest = f.den();
  for (auto& x : xs) {
    const KPoly l = linear(x);
    while (rest.degree() > 0) {
      auto [q, r] = rest.divmod(l);
      if (!r.is_zero()) break;
      rest = q;
    }
  }
  if (rest.degree() > 0) return false;
  std::vector<Place> places{Place::infinity()};
  for (auto& x : xs) {
    auto fiber = c.fiber_of(representative(c, D, x));
    places.insert(places.end(), fiber.begin(), fiber.end());
  }
  for (auto& p : places)
    if (c.valuation(f, p) < -D.coeff(p)) return false;
  return true;
}

bool has_divisor(const Curve& c, const CurveFunction& f, const Divisor& E) {
  // div f + (-E) >= 0 with degree 0 forces div f = E.
  return !f.is_zero() && E.degree() == 0 && in_space(c, f, -E);
}

LinEquiv lin_equiv(const Curve& c, const Divisor& D1, const Divisor& D2) {
  LinEquiv r;
  if (D1.degree() != D2.degree()) return r;
  RRSpace L(c, D2 - D1);
  r.ell = static_cast<long>(L.dim());
  if (L.dim() != 1) return r;
  const CurveFunction& f = L.basis().front();
  if (!has_divisor(c, f, D1 - D2)) throw InternalError("linear equivalence witness failed verification");
  r.equivalent = true;
  r.witness = f;
  return r;
}

FunctionBasis hom_space(const Curve& c, const Divisor& D1, const Divisor& D2) {
  return rr_space(c, D2 - D1);
}

std::string to_string(OracleVerdict::Kind k) {
  switch (k) {
    case OracleVerdict::Kind::Descends: return "Descends";
    case OracleVerdict::Kind::Fails: return "Fails";
    case OracleVerdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<NFElem> small_integers(const NumberField* F, int count) {
  const int d = F->degree();
  std::vector<NFElem> out;
  for (int H = 1; H <= 6 && static_cast<int>(out.size()) < count; ++H) {
    std::vector<std::vector<int>> vecs;
    std::vector<int> v(static_cast<size_t>(d), -H);
    while (true) {
      int mx = 0;
      for (int x : v) mx = std::max(mx, std::abs(x));
      if (mx == H) vecs.push_back(v);
      size_t i = 0;
      while (i < v.size() && v[i] == H) v[i++] = -H;
      if (i == v.size()) break;
      ++v[i];
    }
    auto key = [](const std::vector<int>& a) {
      int l1 = 0;
      std::vector<std::pair<int, int>> k;
      for (int x : a) {
        l1 += std::abs(x);
        k.emplace_back(std::abs(x), x < 0);
      }
      return std::make_pair(l1, k);
    };
    std::sort(vecs.begin(), vecs.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    for (auto& w : vecs) {
      std::vector<mpq_class> co;
      for (int x : w) co.emplace_back(x);
      NFElem e(F, co);
      if (e.is_zero() || e.is_one()) continue;
      out.push_back(e);
      if (static_cast<int>(out.size()) == count) break;
    }
  }
  return out;
}

namespace {

struct Specialization {
  std::shared_ptr<const Curve> curve;  // comparison curve (maybe base-changed)
  Divisor D, Dtau;
  std::string tau, u_tau, field;
};

/// Maps D to the comparison curve and specializes it; nullopt when tau is bad.
std::optional<Specialization> specialize_divisor(std::shared_ptr<const Curve> target,
                                                 const std::optional<NFElem>& alpha_image, const Divisor& D,
                                                 const NFElem& tau, const NFElem& u) {
  const FieldTower* K = target->field();
  auto lift = [&](const FieldElem& e) { return alpha_image ? embed(e, K, *alpha_image) : e; };
  Specialization s;
  s.curve = target;
  std::vector<Place> seen;
  for (auto& [p, m] : D.terms()) {
    if (p.kind != PlaceKind::Generic) {
      s.D.add(p, m);
      s.Dtau.add(p, m);
      continue;
    }
    Place q{PlaceKind::Generic, 0, lift(p.x), lift(p.y)};
    s.D.add(q, m);
    if (p.x.is_algebraic() && p.y.is_algebraic()) {
      s.Dtau.add(q, m);
      seen.push_back(q);
      continue;
    }
    NFElem x0, y0;
    try {
      x0 = specialize(q.x, tau, u);
      y0 = specialize(q.y, tau, u);
    } catch (const MathError&) {
      return std::nullopt;  // pole at tau
    }
    if (x0.is_zero() || x0.is_one() || y0.is_zero()) return std::nullopt;
    Place r{PlaceKind::Generic, 0, FieldElem(K, x0), FieldElem(K, y0)};
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) return std::nullopt;
    seen.push_back(r);
    s.Dtau.add(r, m);
  }
  // A t-free place in D must not collide with a specialized one.
  for (auto& [p, m] : D.terms())
    if (p.kind == PlaceKind::Generic && p.x.is_algebraic() && p.y.is_algebraic() &&
        std::count(seen.begin(), seen.end(), Place{PlaceKind::Generic, 0, lift(p.x), lift(p.y)}) > 1)
      return std::nullopt;
  return s;
}

OracleVerdict compare_classes(const Specialization& s) {
  OracleVerdict v;
  v.tau = s.tau;
  v.u_tau = s.u_tau;
  v.field = s.field;
  v.curve = s.curve;
  LinEquiv le = lin_equiv(*s.curve, s.D, s.Dtau);
  v.ell = le.ell;
  if (le.equivalent) {
    v.kind = OracleVerdict::Kind::Descends;
    v.representative = s.Dtau;
    v.witness = le.witness;
  } else {
    v.kind = OracleVerdict::Kind::Fails;
    v.note = "l(D(tau) - D) = " + std::to_string(le.ell) + " at a good specialization";
  }
  return v;
}

}  // namespace

OracleVerdict line_descent_oracle(const Curve& c, const Divisor& D, int max_tau) {
  OracleVerdict v;
  if (D.is_t_free()) {
    v.kind = OracleVerdict::Kind::Descends;
    v.representative = D;
    v.field = c.field()->describe();
    v.note = "divisor is t-free";
    return v;
  }
  const FieldTower* K = c.field();
  if (!K->has_t()) throw InternalError("t-dependent divisor over a tower without t");
  const NumberField* F = K->base();
  const NFElem one(F, 1L);

  struct Candidate {
    NFElem tau;
    FPoly g;
  };
  std::optional<Candidate> deferred;
  for (const NFElem& tau : small_integers(F, max_tau)) {
    NFElem u = one.zero();
    if (K->has_u()) {
      std::vector<NFElem> co;
      try {
        for (auto& r : K->ext_poly().coeffs()) co.push_back(r.eval(tau));
      } catch (const MathError&) {
        continue;
      }
      FPoly g(co, one.zero());
      if (g.degree() != K->ext_degree() || !is_squarefree(g)) continue;  // degenerate fiber of the relation
      auto roots = roots_in_field(g);
      if (roots.empty()) {
        if (!deferred && is_irreducible_over(g)) deferred = Candidate{tau, g};
        continue;
      }
      u = roots.front();
    }
    auto s = specialize_divisor(std::shared_ptr<const Curve>(std::shared_ptr<const Curve>{}, &c), std::nullopt, D, tau, u);
    if (!s) continue;
    s->tau = tau.str();
    s->u_tau = K->has_u() ? u.str() : "";
    s->field = K->describe();
    return compare_classes(*s);
  }
  if (deferred) {
    // u(tau) generates a proper extension F' of F; compare over F'(t)(u).
    FieldExtension ext = adjoin_root(K->base_ptr(), deferred->g, "beta");
    std::vector<RatFunc> gco;
    for (auto& r : K->ext_poly().coeffs()) gco.push_back(embed(r, ext.field.get(), ext.alpha_image));
    RPoly g2(gco, RatFunc(NFElem(ext.field.get(), 0L)));
    auto K2 = FieldTower::build(ext.field, {K->t_name()}, g2);
    auto C2 = Curve::base_change(c, K2, ext.alpha_image);
    const NFElem tau2 = embed(deferred->tau, ext.field.get(), ext.alpha_image);
    auto s = specialize_divisor(C2, ext.alpha_image, D, tau2, ext.root);
    if (s) {
      s->tau = deferred->tau.str();
      s->u_tau = ext.root.str();
      s->field = K2->describe();
      return compare_classes(*s);
    }
  }
  v.kind = OracleVerdict::Kind::Unknown;
  v.note = "no good specialization among the first " + std::to_string(max_tau) + " candidates";
  return v;
}

}  // namespace belyi
