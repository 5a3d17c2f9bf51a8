#include "belyi/descent.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "belyi/factor.hpp"

namespace belyi {

size_t JetCondition::count() const {
  size_t n = 0;
  for (auto& f : functionals) n += f.rows();
  return n;
}

size_t ConstrainedBundle::condition_count() const {
  size_t n = 0;
  for (auto& c : conditions) n += c.count();
  return n;
}

namespace {

Divisor inf_multiple(const Curve& c, long m) { return Divisor::point(Place::infinity(), m * c.N()); }

/// The frame coefficient of h at p is h x^{-twist}; its t^n coefficient is that of h at n - shift.
long frame_shift(const Curve& c, const Place& p, long twist) {
  return p.kind == PlaceKind::Infinity ? static_cast<long>(c.N()) * twist : 0;
}

std::vector<Divisor> sorted(std::vector<Divisor> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// y * v in K[y]/(y^N - c) on coefficient vectors.
std::vector<FieldElem> times_y(const std::vector<FieldElem>& v, const FieldElem& c) {
  const size_t N = v.size();
  std::vector<FieldElem> w(N, c.zero());
  for (size_t l = 0; l + 1 < N; ++l) w[l + 1] = v[l];
  w[0] = c * v[N - 1];
  return w;
}

/// Points (tau, u(tau)) with u(tau) in F where the relation stays separable.
std::vector<std::pair<NFElem, NFElem>> rank_probes(const FieldTower& K, size_t count) {
  std::vector<std::pair<NFElem, NFElem>> out;
  if (!K.has_t()) return out;
  const NFElem zero(K.base(), 0L);
  for (const NFElem& tau : small_integers(K.base(), 64)) {
    if (out.size() == count) break;
    NFElem u = zero;
    if (K.has_u()) {
      std::vector<NFElem> co;
      try {
        for (auto& r : K.ext_poly().coeffs()) co.push_back(r.eval(tau));
      } catch (const MathError&) {
        continue;
      }
      FPoly g(co, zero);
      if (g.degree() != K.ext_degree() || !is_squarefree(g)) continue;
      auto roots = roots_in_field(g);
      if (roots.empty()) continue;
      u = roots.front();
    }
    out.emplace_back(tau, u);
  }
  return out;
}

/// Full row rank, certified first at specializations (rank can only drop there).
bool full_row_rank(const KMatrix& m, const std::vector<std::pair<NFElem, NFElem>>& probes) {
  for (auto& [tau, u] : probes) {
    Matrix<NFElem> s(0, m.cols(), NFElem(tau.field(), 0L));
    try {
      for (size_t i = 0; i < m.rows(); ++i) {
        std::vector<NFElem> row;
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(specialize(m(i, j), tau, u));
        s.append_row(row);
      }
    } catch (const MathError&) {
      continue;
    }
    if (s.rank() == m.rows()) return true;
  }
  return m.rank() == m.rows();
}

}  // namespace

ConstrainedBundle parabolic_pullback(const ParabolicP1Bundle& W, std::shared_ptr<const Curve> Y) {
  const Curve& X = *W.source.curve;
  require(Y->a() == X.a() && Y->b() == X.b() && Y->N() % X.N() == 0,
          "pullback target must be a cover y^N = x^a (x-1)^b with N divisible by " + std::to_string(X.N()));
  ConstrainedBundle U;
  U.curve = Y;
  U.ambient.curve = Y;
  U.frame_twist = W.splitting;
  Divisor poles;
  const FieldElem z = Y->zero();
  const size_t n = W.splitting.size();
  for (BasePoint y : kBasePoints) {
    const ParabolicPoint& pt = W.at(y);
    const std::vector<Place> over = places_over(*Y, y);
    const long eY = Y->ram_index(over.front());
    // Integral twist w_k * e_Y of every flag step.
    std::vector<long> twist;
    for (auto& fl : pt.flags) {
      std::vector<long> tw;
      for (auto& w : fl.weights) {
        const QQ t = w * QQ(eY);
        require(t.is_integer(), "weight " + weight_str(w) + " at " + fl.place.str() + " is incompatible with multiplicity " +
                                    std::to_string(eY));
        tw.push_back(t.num().get_si());
      }
      if (twist.empty()) twist = tw;
      require(tw == twist, "places over " + to_string(y) + " carry different weights");
    }
    const long depth = twist.empty() ? 0 : *std::max_element(twist.begin(), twist.end());
    if (depth <= 0) continue;
    JetCondition proto;
    for (long j = 1; j <= depth; ++j) {
      size_t k = 0;
      while (twist[k] < j) ++k;
      KMatrix F(0, n, z);
      for (auto& fl : pt.flags)
        for (size_t a = 0; a < fl.E[k].rows(); ++a) F.append_row(fl.E[k].row(a));
      proto.functionals.push_back(F.kernel());
    }
    for (auto& P : over) {
      JetCondition c = proto;
      c.place = P;
      U.conditions.push_back(c);
      poles.add(P, depth);
    }
  }
  for (long m : W.splitting) U.ambient.D.push_back(inf_multiple(*Y, m) + poles);
  return U;
}

ConstrainedBundle plain_pullback(std::shared_ptr<const Curve> Y, const std::vector<long>& m) {
  ConstrainedBundle U;
  U.curve = Y;
  U.ambient.curve = Y;
  U.frame_twist = m;
  for (long v : m) U.ambient.D.push_back(inf_multiple(*Y, v));
  return U;
}

std::vector<std::vector<CurveFunction>> hom_into(const ConstrainedBundle& U, const Divisor& D) {
  const Curve& c = *U.curve;
  const FieldElem z = c.zero();
  std::vector<RRSpace> L;
  std::vector<size_t> offset;
  size_t n = 0;
  for (auto& A : U.ambient.D) {
    L.emplace_back(c, A - D);
    offset.push_back(n);
    n += L.back().dim();
  }
  if (n == 0) return {};
  KMatrix rows(0, n, z);
  for (auto& cond : U.conditions) {
    const long d = cond.depth();
    const long DP = D.coeff(cond.place);
    // coeff[k][b][j-1] = coefficient of t^{-j} in t^{-D(P)} * (frame coefficient of basis b of L_k).
    std::vector<std::vector<std::vector<FieldElem>>> coeff(L.size());
    for (size_t k = 0; k < L.size(); ++k) {
      const long sh = frame_shift(c, cond.place, U.frame_twist[k]);
      for (auto& b : L[k].basis()) {
        Series s = c.local_expansion(b, cond.place, DP - sh);
        std::vector<FieldElem> v;
        for (long j = 1; j <= d; ++j) v.push_back(s.coeff(DP - j - sh));
        coeff[k].push_back(v);
      }
    }
    for (long j = 1; j <= d; ++j) {
      const KMatrix& phi = cond.functionals[static_cast<size_t>(j - 1)];
      for (size_t a = 0; a < phi.rows(); ++a) {
        std::vector<FieldElem> row(n, z);
        for (size_t k = 0; k < L.size(); ++k) {
          if (phi(a, k).is_zero()) continue;
          for (size_t b = 0; b < L[k].dim(); ++b)
            row[offset[k] + b] = phi(a, k) * coeff[k][b][static_cast<size_t>(j - 1)];
        }
        rows.append_row(row);
      }
    }
  }
  KMatrix ker = rows.rows() ? rows.kernel() : KMatrix::identity(n, z);
  std::vector<std::vector<CurveFunction>> out;
  for (size_t r = 0; r < ker.rows(); ++r) {
    std::vector<CurveFunction> h;
    for (size_t k = 0; k < L.size(); ++k) {
      CurveFunction f = CurveFunction::constant(&c, z);
      for (size_t b = 0; b < L[k].dim(); ++b)
        if (!ker(r, offset[k] + b).is_zero()) f = f + L[k].basis()[b] * ker(r, offset[k] + b);
      h.push_back(f);
    }
    out.push_back(std::move(h));
  }
  return out;
}

ClassMatch class_decompose(const ConstrainedBundle& U, const std::vector<Divisor>& candidates, std::uint64_t seed) {
  const Curve& c = *U.curve;
  const FieldElem z = c.zero();
  const size_t r = static_cast<size_t>(U.rank());
  const size_t N = static_cast<size_t>(c.N());
  ClassMatch M;
  M.degree = U.degree();
  if (candidates.size() < r) {
    M.reason = "fewer candidates than the rank " + std::to_string(r);
    return M;
  }
  if (candidates.size() == r) {
    long d = 0;
    for (auto& D : candidates) d += D.degree();
    if (d != M.degree) {
      M.reason = "candidate degrees sum to " + std::to_string(d) + " but the bundle has degree " + std::to_string(M.degree);
      return M;
    }
  }
  std::vector<size_t> order(candidates.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (candidates[a].degree() != candidates[b].degree()) return candidates[a].degree() > candidates[b].degree();
    return candidates[a].str() < candidates[b].str();
  });
  std::vector<Divisor> avoid = U.ambient.D;
  avoid.insert(avoid.end(), candidates.begin(), candidates.end());
  const FieldElem x0(c.field(), good_point(c, avoid, {}));
  const FieldElem hx0 = c.h(x0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-2, 2);

  const auto probes = rank_probes(*c.field(), 3);
  KMatrix image(0, N * r, z);
  auto block = [&](const std::vector<CurveFunction>& h) {
    KMatrix b(0, N * r, z);
    std::vector<std::vector<FieldElem>> v;
    for (auto& f : h) {
      ensure(f.is_zero() || !f.den().eval(x0).is_zero(), "hom section has a pole over the test point");
      v.push_back(fiber_values(f, x0));
    }
    for (size_t l = 0; l < N; ++l) {
      std::vector<FieldElem> row;
      for (auto& comp : v) row.insert(row.end(), comp.begin(), comp.end());
      b.append_row(row);
      for (auto& comp : v) comp = times_y(comp, hx0);
    }
    return b;
  };
  auto extends = [&](const std::vector<CurveFunction>& h) {
    KMatrix m = image;
    KMatrix b = block(h);
    for (size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
    if (!full_row_rank(m, probes)) return false;
    image = m;
    return true;
  };

  std::map<Divisor, std::vector<std::vector<CurveFunction>>> homs;
  std::map<Divisor, std::set<size_t>> used;
  long deg = 0;
  for (size_t idx : order) {
    if (M.matched.size() == r) break;
    const Divisor& D = candidates[idx];
    auto it = homs.find(D);
    if (it == homs.end()) it = homs.emplace(D, hom_into(U, D)).first;
    const auto& H = it->second;
    if (H.empty()) continue;
    std::optional<std::vector<CurveFunction>> pick;
    auto& taken = used[D];  // basis maps already in the image
    for (size_t a = 0; a < H.size() && !pick; ++a)
      if (!taken.count(a) && extends(H[a])) {
        pick = H[a];
        taken.insert(a);
      }
    for (int attempt = 0; attempt < 8 && !pick && H.size() > 1; ++attempt) {
      std::vector<CurveFunction> h(r, CurveFunction::constant(&c, z));
      for (auto& g : H) {
        const FieldElem a(c.field(), coef(rng));
        for (size_t k = 0; k < r; ++k) h[k] = h[k] + g[k] * a;
      }
      if (extends(h)) pick = h;
    }
    if (!pick) continue;
    M.matched.push_back(idx);
    M.maps.push_back(*pick);
    deg += D.degree();
  }
  for (size_t idx : M.matched) M.classes.push_back(candidates[idx]);
  M.classes = sorted(M.classes);
  if (M.matched.size() != r) {
    M.reason = "only " + std::to_string(M.matched.size()) + " of " + std::to_string(r) + " independent summands found";
  } else if (deg != M.degree) {
    M.reason = "injection of degree " + std::to_string(deg) + " into a bundle of degree " + std::to_string(M.degree);
  } else {
    M.success = true;
  }
  return M;
}

std::vector<Divisor> translate_classes(const SplitBundle& E) {
  std::vector<Divisor> out;
  for (int g = 0; g < E.curve->N(); ++g)
    for (auto& D : E.D) out.push_back(E.curve->galois_translate(D, g));
  return out;
}

bool verify_e18(const SplitBundle& E, std::uint64_t seed) {
  ConstrainedBundle U = parabolic_pullback(assemble_parabolic(E, seed), E.curve);
  if (U.degree() != E.curve->N() * E.degree()) return false;
  const auto cands = translate_classes(E);
  ClassMatch m = class_decompose(U, cands, seed);
  return m.success && m.classes == sorted(cands);
}

TowerSpec TowerSpec::build(std::shared_ptr<const Curve> Y, int M) {
  require(M >= 2 && Y->N() % M == 0, "tower degree M = " + std::to_string(M) + " must be at least 2 and divide N = " + std::to_string(Y->N()));
  TowerSpec T;
  T.Y = Y;
  T.M = M;
  T.X = M == Y->N() ? Y : Curve::build(M, Y->a(), Y->b(), Y->field_ptr());
  ensure(T.check_composition(), "tower maps do not compose to the x-map");
  return T;
}

namespace {

/// Unit at the branch places over 0 (or 1): y^e / x^{v}, with v the valuation of y.
CurveFunction branch_unit(const Curve& C, bool at_zero, long y_power_factor, const Curve& src) {
  const int e = at_zero ? src.e0() : src.e1();
  const int v = at_zero ? src.a() / src.r0() : src.b() / src.r1();
  const Curve* P = &C;
  const FieldElem one = C.zero().one();
  CurveFunction y = CurveFunction::y(P), base = CurveFunction::x(P);
  if (!at_zero) base = base - CurveFunction::constant(P, one);
  CurveFunction num = CurveFunction::constant(P, one), den = CurveFunction::constant(P, one);
  for (long i = 0; i < y_power_factor * e; ++i) num = num * y;
  for (int i = 0; i < v; ++i) den = den * base;
  return num / den;
}

}  // namespace

Divisor TowerSpec::pullback(const Place& p) const {
  if (X == Y) return Divisor::point(p);
  const int d = degree_gamma();
  Divisor out;
  switch (p.kind) {
    case PlaceKind::Infinity:
      out.add(Place::infinity(), d);
      break;
    case PlaceKind::Zero:
    case PlaceKind::One: {
      const bool zero = p.kind == PlaceKind::Zero;
      const FieldElem target = X->value(branch_unit(*X, zero, 1, *X), p);
      const CurveFunction pulled = branch_unit(*Y, zero, d, *X);
      const auto over = zero ? Y->places_over_zero() : Y->places_over_one();
      const int e = Y->ram_index(over.front()) / X->ram_index(p);
      for (auto& q : over)
        if (Y->value(pulled, q) == target) out.add(q, e);
      break;
    }
    case PlaceKind::Generic:
      for (auto& q : Y->places_over(p.x))
        if (q.y.pow(d) == p.y) out.add(q, 1);
      break;
  }
  ensure(out.degree() == d, "pullback of " + p.str() + " has the wrong degree");
  return out;
}

Divisor TowerSpec::pullback(const Divisor& D) const {
  Divisor out;
  for (auto& [p, m] : D.terms()) out += m * pullback(p);
  return out;
}

bool TowerSpec::check_composition() const {
  for (BasePoint y : kBasePoints) {
    Divisor fx;
    for (auto& q : places_over(*X, y)) fx.add(q, X->ram_index(q));
    Divisor fy;
    for (auto& q : places_over(*Y, y)) fy.add(q, Y->ram_index(q));
    if (pullback(fx) != fy) return false;
  }
  return true;
}

Transversal invariants_transversal(const TowerSpec& T) {
  Transversal tr;
  for (int g = 0; g < T.M; ++g) tr.S.push_back(g);
  tr.epsilon = 0;
  std::set<int> cosets;
  int in_g = 0;
  for (int g : tr.S) {
    cosets.insert(g % T.M);
    if (T.in_G(g)) ++in_g;
  }
  ensure(static_cast<int>(cosets.size()) == T.M && in_g == 1 && T.in_G(tr.epsilon), "transversal is not a bijection onto Gamma/G");
  return tr;
}

LabeledCandidates tower_candidates(const TowerSpec& T, const SplitBundle& E, const std::vector<int>& S) {
  LabeledCandidates out;
  for (int g : S)
    for (size_t i = 0; i < E.D.size(); ++i) {
      out.classes.push_back(T.Y->galois_translate(T.pullback(E.D[i]), g));
      out.labels.emplace_back(g, static_cast<int>(i));
    }
  return out;
}

std::vector<Divisor> pushdown_extract(const ClassMatch& m, const std::vector<std::pair<int, int>>& labels,
                                      const std::vector<Divisor>& sources, int epsilon) {
  std::set<size_t> used(m.matched.begin(), m.matched.end());
  if (used.size() != m.matched.size() || used.size() != labels.size() || (!used.empty() && *used.rbegin() >= labels.size()))
    throw InternalError("class matching does not use every labelled candidate exactly once");
  std::vector<std::optional<Divisor>> out(sources.size());
  for (size_t idx : m.matched) {
    auto [g, i] = labels[idx];
    if (g != epsilon) continue;
    if (i < 0 || static_cast<size_t>(i) >= sources.size() || out[static_cast<size_t>(i)])
      throw InternalError("inconsistent class bookkeeping for summand " + std::to_string(i));
    out[static_cast<size_t>(i)] = sources[static_cast<size_t>(i)];
  }
  std::vector<Divisor> res;
  for (auto& d : out) {
    if (!d) throw InternalError("a summand is missing from the epsilon component");
    res.push_back(*d);
  }
  return res;
}

bool verify_invariant_subbundle(const TowerSpec& T, const SplitBundle& E, std::uint64_t seed) {
  require(E.curve.get() == T.X.get(), "bundle must live on the intermediate curve of the tower");
  ConstrainedBundle U = parabolic_pullback(assemble_parabolic(E, seed), T.Y);
  const Transversal tr = invariants_transversal(T);
  // Pullbacks along gamma are fixed by G.
  for (auto& D : E.D) {
    const Divisor P = T.pullback(D);
    for (int g = 0; g < T.Y->N(); ++g)
      if (T.in_G(g) && T.Y->galois_translate(P, g) != P) return false;
  }
  LabeledCandidates lc = tower_candidates(T, E, tr.S);
  if (U.degree() != T.Y->N() * E.degree()) return false;
  ClassMatch m = class_decompose(U, lc.classes, seed);
  if (!m.success || m.classes != sorted(lc.classes)) return false;
  return pushdown_extract(m, lc.labels, E.D, tr.epsilon) == E.D;
}

EndAlgebra::EndAlgebra(const SplitBundle& B) : B_(B) {
  const Curve& c = *B.curve;
  const int r = B.rank();
  std::vector<RRSpace> spaces;
  std::vector<size_t> offset;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      spaces.emplace_back(c, B.D[static_cast<size_t>(i)] - B.D[static_cast<size_t>(j)]);
      offset.push_back(basis_.size());
      for (auto& f : spaces.back().basis()) basis_.push_back(BasisElem{i, j, f});
    }
  const FieldElem z = c.zero();
  const size_t n = basis_.size();
  table_.assign(n, std::vector<Elem>(n, Elem(n, z)));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (basis_[a].j != basis_[b].i) continue;
      const size_t s = static_cast<size_t>(basis_[a].i * r + basis_[b].j);
      auto co = spaces[s].coordinates(basis_[a].f * basis_[b].f);
      ensure(co.has_value(), "endomorphisms are not closed under composition");
      for (size_t k = 0; k < co->size(); ++k) table_[a][b][offset[s] + k] = (*co)[k];
    }
}

EndAlgebra EndAlgebra::of(const ConstrainedBundle& U, const ClassMatch& m) {
  require(m.success, "End(U) needs a certified decomposition of U");
  return EndAlgebra(SplitBundle{U.curve, m.classes});
}

EndAlgebra::Elem EndAlgebra::unit(size_t k) const {
  Elem e(dim(), B_.curve->zero());
  e[k] = B_.curve->zero().one();
  return e;
}

EndAlgebra::Elem EndAlgebra::identity() const {
  Elem e(dim(), B_.curve->zero());
  for (size_t k = 0; k < dim(); ++k)
    if (basis_[k].i == basis_[k].j) e[k] = *basis_[k].f.constant_value();
  return e;
}

EndAlgebra::Elem EndAlgebra::multiply(const Elem& a, const Elem& b) const {
  Elem out(dim(), B_.curve->zero());
  for (size_t p = 0; p < dim(); ++p) {
    if (a[p].is_zero()) continue;
    for (size_t q = 0; q < dim(); ++q) {
      if (b[q].is_zero() || basis_[p].j != basis_[q].i) continue;
      const FieldElem s = a[p] * b[q];
      for (size_t k = 0; k < dim(); ++k)
        if (!table_[p][q][k].is_zero()) out[k] = out[k] + s * table_[p][q][k];
    }
  }
  return out;
}

FieldElem EndAlgebra::trace(const Elem& a) const {
  FieldElem t = B_.curve->zero();
  for (size_t k = 0; k < dim(); ++k)
    if (basis_[k].i == basis_[k].j && !a[k].is_zero()) t = t + a[k] * *basis_[k].f.constant_value();
  return t;
}

bool EndAlgebra::check() const {
  const Elem one = identity();
  if (trace(one) != FieldElem(B_.curve->field(), static_cast<long>(rank()))) return false;
  for (size_t k = 0; k < dim(); ++k)
    if (multiply(one, unit(k)) != unit(k) || multiply(unit(k), one) != unit(k)) return false;
  return true;
}

std::string EndAlgebra::str(const Elem& a) const {
  const Curve* c = B_.curve.get();
  const int r = rank();
  std::vector<std::vector<CurveFunction>> m(static_cast<size_t>(r),
                                            std::vector<CurveFunction>(static_cast<size_t>(r), CurveFunction::constant(c, c->zero())));
  for (size_t k = 0; k < dim(); ++k)
    if (!a[k].is_zero()) {
      auto& cell = m[static_cast<size_t>(basis_[k].i)][static_cast<size_t>(basis_[k].j)];
      cell = cell + basis_[k].f * a[k];
    }
  std::string s = "[";
  for (int i = 0; i < r; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < r; ++j) s += (j ? ", " : "") + m[static_cast<size_t>(i)][static_cast<size_t>(j)].str();
    s += "]";
  }
  return s + "]";
}

bool indecomposable_test(const EndAlgebra& A) {
  const size_t n = A.dim();
  const FieldElem z = A.trace(A.unit(0)).zero();
  KMatrix tr(1, n, z);
  for (size_t k = 0; k < n; ++k) tr(0, k) = A.trace(A.unit(k));
  const KMatrix I = tr.kernel();
  KMatrix P = I;
  for (size_t step = 0; step <= n; ++step) {
    if (P.rows() == 0) return true;
    KMatrix next(0, n, z);
    for (size_t a = 0; a < P.rows(); ++a)
      for (size_t b = 0; b < I.rows(); ++b) next.append_row(A.multiply(P.row(a), I.row(b)));
    P = next.row_space();
  }
  return P.rows() == 0;
}

std::string to_string(DescentVerdict::Kind k) {
  switch (k) {
    case DescentVerdict::Kind::DefinedOverF: return "DefinedOverF";
    case DescentVerdict::Kind::NotDefined: return "NotDefined";
    case DescentVerdict::Kind::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

DescentVerdict::Kind aggregate(const std::vector<OracleVerdict>& vs) {
  bool unknown = false;
  for (auto& v : vs) {
    if (v.kind == OracleVerdict::Kind::Fails) return DescentVerdict::Kind::NotDefined;
    if (v.kind == OracleVerdict::Kind::Unknown) unknown = true;
  }
  return unknown ? DescentVerdict::Kind::Unknown : DescentVerdict::Kind::DefinedOverF;
}

}  // namespace

DescentVerdict descent_verdict(const SplitBundle& E, int max_tau, std::uint64_t seed) {
  const Curve& c = *E.curve;
  DescentVerdict v;
  std::vector<OracleVerdict> direct;
  for (auto& D : E.D) direct.push_back(line_descent_oracle(c, D, max_tau));
  v.direct = aggregate(direct);
  if (!c.field()->has_t()) {
    v.kind = DescentVerdict::Kind::DefinedOverF;
    v.certificate = E.D;
    v.summands = direct;
    v.note = "no transcendental in the coefficient field";
    v.agrees = v.kind == v.direct;
    return v;
  }
  ConstrainedBundle U = parabolic_pullback(assemble_parabolic(E, seed), E.curve);
  const auto cands = translate_classes(E);
  std::vector<std::pair<int, int>> labels;
  for (int g = 0; g < c.N(); ++g)
    for (int i = 0; i < E.rank(); ++i) labels.emplace_back(g, i);
  ClassMatch m = class_decompose(U, cands, seed);
  v.pullback_matches = m.success && m.classes == sorted(cands);
  if (!v.pullback_matches) throw InternalError("parabolic pullback does not decompose into the Galois translates: " + m.reason);
  const std::vector<Divisor> classes = pushdown_extract(m, labels, E.D, 0);
  for (auto& D : classes) v.summands.push_back(line_descent_oracle(c, D, max_tau));
  v.kind = aggregate(v.summands);
  for (auto& s : v.summands) {
    if (s.kind == OracleVerdict::Kind::Fails && !v.witness) v.witness = s;
    if (s.kind == OracleVerdict::Kind::Descends) v.certificate.push_back(s.representative);
  }
  if (v.kind != DescentVerdict::Kind::DefinedOverF) v.certificate.clear();
  v.agrees = v.kind == v.direct;
  return v;
}

}  // namespace belyi
