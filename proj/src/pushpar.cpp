#include "belyi/pushpar.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace belyi {

long SplitBundle::degree() const {
  long d = 0;
  for (auto& x : D) d += x.degree();
  return d;
}

bool SplitBundle::is_t_free() const {
  return std::all_of(D.begin(), D.end(), [](const Divisor& x) { return x.is_t_free(); });
}

std::string SplitBundle::str() const {
  std::string s;
  for (size_t i = 0; i < D.size(); ++i) {
    if (i) s += " + ";
    s += D[i].is_zero() ? "O" : "O(" + D[i].str() + ")";
  }
  return s;
}

std::string to_string(BasePoint y) {
  switch (y) {
    case BasePoint::Zero: return "0";
    case BasePoint::One: return "1";
    case BasePoint::Infinity: return "infinity";
  }
  return "?";
}

std::vector<Place> places_over(const Curve& c, BasePoint y) {
  switch (y) {
    case BasePoint::Zero: return c.places_over_zero();
    case BasePoint::One: return c.places_over_one();
    case BasePoint::Infinity: return c.places_over_infinity();
  }
  return {};
}

std::string weight_str(const QQ& w) { return w.str(); }

namespace {

/// l(D), using Riemann-Roch outside 0 <= deg D <= 2g - 2.
long ell_fast(const Curve& c, const Divisor& D) {
  const long d = D.degree();
  if (d < 0) return 0;
  if (d > 2L * c.genus() - 2) return d + 1 - c.genus();
  return ell(c, D);
}

Divisor inf_multiple(const Curve& c, long m) { return Divisor::point(Place::infinity(), m * c.N()); }

CurveFunction combine(const Curve& c, const std::vector<CurveFunction>& basis, const std::vector<FieldElem>& v,
                      size_t offset) {
  CurveFunction out = CurveFunction::constant(&c, c.zero());
  for (size_t j = 0; j < basis.size(); ++j)
    if (!v[offset + j].is_zero()) out = out + basis[j] * v[offset + j];
  return out;
}

}  // namespace

long h0_twist(const SplitBundle& E, long m) {
  long h = 0;
  for (auto& D : E.D) h += ell_fast(*E.curve, D + inf_multiple(*E.curve, m));
  return h;
}

SplittingType pushforward_splitting_type(const SplitBundle& E) {
  const Curve& c = *E.curve;
  require(E.rank() >= 1, "split bundle must have rank at least 1");
  const long rN = static_cast<long>(E.rank()) * c.N();
  const long B = std::abs(E.degree()) + rN + c.genus() + 1;
  std::map<long, long> h;
  for (long m = -B - 2; m <= B; ++m) h[m] = h0_twist(E, m);
  auto delta = [&](long m) { return h[m] - h[m - 1]; };  // #{k : m_k >= -m}
  ensure(h[-B - 1] == 0 && delta(B) == rN, "splitting type scan window exhausted");
  SplittingType T;
  for (long j = B; j >= -B; --j) {
    const long count = delta(-j) - delta(-j - 1);
    ensure(count >= 0, "h0 profile is not convex");
    for (long k = 0; k < count; ++k) T.m.push_back(j);
  }
  for (long m = -B; m <= B; ++m) T.profile.emplace_back(m, h[m]);
  long sum = 0;
  for (long v : T.m) sum += v;
  ensure(static_cast<long>(T.m.size()) == rN, "splitting type has the wrong rank");
  ensure(sum == E.degree() + E.rank() * (1L - c.genus()) - rN, "pushforward degree differs from the Euler characteristic");
  return T;
}

KMatrix FiberModel::block(size_t p, const FieldElem& zero) const {
  KMatrix m(0, dim(), zero);
  for (int k = 0; k < e; ++k)
    for (int i = 0; i < r; ++i) {
      std::vector<FieldElem> row(dim(), zero);
      row[index(p, k, i)] = zero.one();
      m.append_row(row);
    }
  return m;
}

FiberModel fiber_decomposition(const SplitBundle& E, BasePoint y) {
  const Curve& c = *E.curve;
  FiberModel F;
  F.y = y;
  F.places = places_over(c, y);
  F.e = c.ram_index(F.places.front());
  F.r = E.rank();
  for (auto& P : F.places) {
    std::vector<long> s;
    for (auto& D : E.D) s.push_back(D.coeff(P));
    F.shift.push_back(s);
  }
  ensure(F.dim() == static_cast<size_t>(c.N() * E.rank()), "fiber dimension differs from N r");
  return F;
}

std::vector<FieldElem> fiber_jets(const SplitBundle& E, const FiberModel& F, int i, const CurveFunction& f, long twist) {
  const Curve& c = *E.curve;
  std::vector<FieldElem> v(F.dim(), c.zero());
  if (f.is_zero()) return v;
  for (size_t p = 0; p < F.places.size(); ++p) {
    long lo = -F.shift[p][static_cast<size_t>(i)];
    if (F.y == BasePoint::Infinity) lo -= static_cast<long>(c.N()) * twist;
    Series s = c.local_expansion(f, F.places[p], lo + F.e);
    ensure(*s.valuation() >= lo, "section is not regular in the local trivialization");
    for (int k = 0; k < F.e; ++k) v[F.index(p, k, i)] = s.coeff(lo + k);
  }
  return v;
}

std::vector<Flag> parabolic_filtration(const SplitBundle& E, const FiberModel& F) {
  const FieldElem z = E.curve->zero();
  std::vector<Flag> out;
  for (size_t p = 0; p < F.places.size(); ++p) {
    Flag fl;
    fl.place = F.places[p];
    for (int k = 0; k <= F.e; ++k) {
      KMatrix m(0, F.dim(), z);
      for (int kk = k; kk < F.e; ++kk)
        for (int i = 0; i < F.r; ++i) {
          std::vector<FieldElem> row(F.dim(), z);
          row[F.index(p, kk, i)] = z.one();
          m.append_row(row);
        }
      fl.E.push_back(m);
      if (k < F.e) fl.weights.emplace_back(k, F.e);
    }
    out.push_back(std::move(fl));
  }
  return out;
}

long good_point(const Curve& c, const std::vector<Divisor>& divisors, const std::vector<CurveFunction>& functions) {
  std::vector<FieldElem> avoid;
  for (auto& D : divisors)
    for (auto& [P, m] : D.terms())
      if (auto x = c.x_value(P)) avoid.push_back(*x);
  for (long x0 = 2;; ++x0) {
    const FieldElem v(c.field(), x0);
    if (std::any_of(avoid.begin(), avoid.end(), [&](const FieldElem& a) { return a == v; })) continue;
    if (std::any_of(functions.begin(), functions.end(), [&](const CurveFunction& f) { return f.den().eval(v).is_zero(); }))
      continue;
    return x0;
  }
}

std::vector<FieldElem> fiber_values(const CurveFunction& f, const FieldElem& x0) {
  const Curve& c = *f.curve();
  std::vector<FieldElem> v(static_cast<size_t>(c.N()), c.zero());
  if (f.is_zero()) return v;
  const FieldElem d = f.den().eval(x0);
  require(!d.is_zero(), "function has a pole over x = " + x0.str());
  const FieldElem di = d.inverse();
  for (int j = 0; j < c.N(); ++j) v[static_cast<size_t>(j)] = f.num(j).eval(x0) * di;
  return v;
}

bool sections_are_isomorphism(const SplitBundle& E, const std::vector<SplittingSection>& S) {
  const Curve& c = *E.curve;
  const size_t n = static_cast<size_t>(c.N() * E.rank());
  if (S.size() != n) return false;
  std::vector<CurveFunction> fs;
  for (auto& s : S) fs.insert(fs.end(), s.f.begin(), s.f.end());
  const FieldElem x0(c.field(), good_point(c, E.D, fs));
  KMatrix M(n, n, c.zero());
  for (size_t j = 0; j < n; ++j)
    for (int i = 0; i < E.rank(); ++i) {
      auto v = fiber_values(S[j].f[static_cast<size_t>(i)], x0);
      for (int l = 0; l < c.N(); ++l) M(static_cast<size_t>(i * c.N() + l), j) = v[static_cast<size_t>(l)];
    }
  return M.rank() == n;
}

std::vector<SplittingSection> compute_splitting_maps(const SplitBundle& E, const SplittingType& T, std::uint64_t seed) {
  const Curve& c = *E.curve;
  const FieldElem z = c.zero();
  std::mt19937_64 rng(seed);
  std::vector<long> levels;
  for (long m : T.m)
    if (levels.empty() || levels.back() != m) levels.push_back(m);
  std::vector<SplittingSection> chosen;
  const CurveFunction X = CurveFunction::x(&c);
  for (long mu : levels) {
    const long want = std::count(T.m.begin(), T.m.end(), mu);
    std::vector<RRSpace> L;
    std::vector<size_t> offset;
    size_t n = 0;
    for (auto& D : E.D) {
      L.emplace_back(c, D - inf_multiple(c, mu));
      offset.push_back(n);
      n += L.back().dim();
    }
    auto to_vector = [&](const std::vector<CurveFunction>& f) {
      std::vector<FieldElem> v(n, z);
      for (size_t i = 0; i < L.size(); ++i) {
        if (f[i].is_zero()) continue;
        auto co = L[i].coordinates(f[i]);
        ensure(co.has_value(), "section of a higher summand left its Riemann-Roch space");
        for (size_t j = 0; j < co->size(); ++j) v[offset[i] + j] = (*co)[j];
      }
      return v;
    };
    // Span of x^k s over already chosen sections of larger degree.
    KMatrix U(0, n, z);
    for (auto& s : chosen) {
      std::vector<CurveFunction> g = s.f;
      for (long k = 0; k <= s.m - mu; ++k) {
        U.append_row(to_vector(g));
        for (auto& h : g) h = h * X;
      }
    }
    const size_t base = U.rank();
    ensure(n - base == static_cast<size_t>(want), "global sections disagree with the splitting type");
    auto accept = [&](const std::vector<std::vector<FieldElem>>& picks) {
      KMatrix M = U;
      for (auto& p : picks) M.append_row(p);
      return M.rank() == base + picks.size();
    };
    std::vector<std::vector<FieldElem>> picks;
    if (seed != 0) {
      std::uniform_int_distribution<long> coef(-2, 2);
      for (int attempt = 0; attempt < 8 && picks.empty(); ++attempt) {
        std::vector<std::vector<FieldElem>> trial;
        for (long k = 0; k < want; ++k) {
          std::vector<FieldElem> v(n, z);
          for (auto& x : v) x = FieldElem(c.field(), coef(rng));
          trial.push_back(v);
        }
        if (accept(trial)) picks = trial;
      }
    }
    if (picks.empty()) {
      for (size_t j = 0; j < n && static_cast<long>(picks.size()) < want; ++j) {
        std::vector<FieldElem> v(n, z);
        v[j] = z.one();
        picks.push_back(v);
        if (!accept(picks)) picks.pop_back();
      }
    }
    ensure(static_cast<long>(picks.size()) == want, "no complement to the higher splitting sections");
    for (auto& v : picks) {
      SplittingSection s;
      s.m = mu;
      for (size_t i = 0; i < L.size(); ++i) s.f.push_back(combine(c, L[i].basis(), v, offset[i]));
      chosen.push_back(std::move(s));
    }
  }
  ensure(sections_are_isomorphism(E, chosen), "splitting sections are not an isomorphism");
  return chosen;
}

KMatrix fiber_matrix(const SplitBundle& E, const FiberModel& F, const std::vector<SplittingSection>& S) {
  KMatrix M(F.dim(), S.size(), E.curve->zero());
  for (size_t j = 0; j < S.size(); ++j)
    for (int i = 0; i < E.rank(); ++i) {
      auto v = fiber_jets(E, F, i, S[j].f[static_cast<size_t>(i)], -S[j].m);
      for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero()) M(a, j) = M(a, j) + v[a];
    }
  return M;
}

std::vector<QQ> ParabolicP1Bundle::weights(BasePoint y) const {
  std::vector<QQ> w;
  for (auto& fl : at(y).flags) w.insert(w.end(), fl.weights.begin(), fl.weights.end());
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

ParabolicP1Bundle assemble_parabolic(const SplitBundle& E, std::uint64_t seed) {
  ParabolicP1Bundle W;
  W.source = E;
  SplittingType T = pushforward_splitting_type(E);
  W.splitting = T.m;
  W.sections = compute_splitting_maps(E, T, seed);
  const FieldElem z = E.curve->zero();
  for (BasePoint y : kBasePoints) {
    ParabolicPoint pt;
    pt.y = y;
    pt.fiber = fiber_decomposition(E, y);
    pt.Sy = fiber_matrix(E, pt.fiber, W.sections);
    const KMatrix inv = pt.Sy.inverse();
    for (Flag fl : parabolic_filtration(E, pt.fiber)) {
      for (auto& m : fl.E) {
        KMatrix rows(0, inv.rows(), z);
        for (size_t a = 0; a < m.rows(); ++a) rows.append_row(inv.apply(m.row(a)));
        m = rows.row_space();
      }
      pt.flags.push_back(std::move(fl));
    }
    W.points.push_back(std::move(pt));
  }
  return W;
}

std::vector<std::string> parabolic_violations(const ParabolicP1Bundle& W) {
  std::vector<std::string> bad;
  const int r = W.source.rank();
  for (auto& pt : W.points) {
    const int e = pt.fiber.e;
    for (auto& fl : pt.flags) {
      const std::string at = " at " + fl.place.str() + " over " + to_string(pt.y);
      if (fl.E.size() != static_cast<size_t>(e) + 1 || fl.weights.size() != static_cast<size_t>(e)) {
        bad.push_back("flag length differs from the multiplicity" + at);
        continue;
      }
      if (fl.E[0].rows() != static_cast<size_t>(e * r)) bad.push_back("first flag step is not the whole V_x" + at);
      if (fl.E.back().rows() != 0) bad.push_back("last flag step is not zero" + at);
      for (int k = 0; k < e; ++k) {
        const auto& big = fl.E[static_cast<size_t>(k)];
        const auto& small = fl.E[static_cast<size_t>(k) + 1];
        KMatrix both = big;
        for (size_t a = 0; a < small.rows(); ++a) both.append_row(small.row(a));
        if (both.rank() != big.rows()) bad.push_back("flag is not nested" + at);
        if (big.rows() != small.rows() + static_cast<size_t>(r))
          bad.push_back("flag step " + std::to_string(k) + " does not drop by the rank" + at);
        const QQ& w = fl.weights[static_cast<size_t>(k)];
        if (w != QQ(k, e))
          bad.push_back("weight " + weight_str(w) + " of step " + std::to_string(k) + " is not k/m_x = " +
                        weight_str(QQ(k, e)) + at);
        if (w < QQ(0) || !(w < QQ(1))) bad.push_back("weight " + weight_str(w) + " outside [0,1)" + at);
        if (k > 0 && !(fl.weights[static_cast<size_t>(k) - 1] < w)) bad.push_back("weights do not increase" + at);
      }
    }
  }
  return bad;
}

bool verify_prop1(const SplitBundle& E, std::uint64_t seed) {
  require(E.is_t_free(), "verify-prop1 needs t-free divisors");
  ParabolicP1Bundle W = assemble_parabolic(E, seed);
  for (auto& pt : W.points)
    for (auto& fl : pt.flags)
      for (auto& m : fl.E)
        if (!subspace_is_rational(m)) return false;
  return true;
}

KMatrix twisted_image(const SplitBundle& E, const FiberModel& F, size_t p, int k) {
  const Curve& c = *E.curve;
  KMatrix rows(0, F.dim(), c.zero());
  for (int i = 0; i < E.rank(); ++i) {
    Divisor D = E.D[static_cast<size_t>(i)] - Divisor::point(F.places[p], k);
    for (size_t q = 0; q < F.places.size(); ++q)
      if (q != p) D -= Divisor::point(F.places[q], F.e);
    // deg D + (M - 1) N > 2g - 2 makes the twisted pushforward globally generated.
    const long M = floor_div(2L * c.genus() - 2 - D.degree(), c.N()) + 2;
    RRSpace L(c, D + inf_multiple(c, M));
    for (auto& g : L.basis()) rows.append_row(fiber_jets(E, F, i, g, M));
  }
  return rows.row_space();
}

}  // namespace belyi
