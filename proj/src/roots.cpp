#include <algorithm>
#include <functional>

#include "belyi/factor.hpp"

namespace belyi {

namespace {

using Z = mpz_class;

Z mod(const Z& a, const Z& m) {
  Z r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Z> inv_mod(const Z& a, const Z& m) {
  Z r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

/// Image of a rational number in Z/m, if its denominator is a unit.
std::optional<Z> image(const mpq_class& q, const Z& m) {
  auto d = inv_mod(q.get_den(), m);
  if (!d) return std::nullopt;
  return mod(q.get_num() * *d, m);
}

/// Polynomial over Z/m from a polynomial over F and a root R of the minimal
/// polynomial modulo m (ascending coefficients).
std::optional<std::vector<Z>> specialize(const FPoly& f, const Z& R, const Z& m) {
  std::vector<Z> out;
  for (auto& c : f.coeffs()) {
    Z acc = 0;
    const auto& q = c.coeffs();
    for (size_t i = q.size(); i-- > 0;) {
      auto v = image(q[i], m);
      if (!v) return std::nullopt;
      acc = mod(acc * R + *v, m);
    }
    out.push_back(acc);
  }
  return out;
}

Z eval(const std::vector<Z>& f, const Z& x, const Z& m) {
  Z acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = mod(acc * x + f[i], m);
  return acc;
}

Z eval_deriv(const std::vector<Z>& f, const Z& x, const Z& m) {
  Z acc = 0;
  for (size_t i = f.size(); i-- > 1;) acc = mod(acc * x + f[i] * static_cast<long>(i), m);
  return acc;
}

/// Roots of f modulo a small prime p by exhaustive evaluation.
std::vector<long> roots_mod_small_p(const std::vector<Z>& f, long p) {
  std::vector<long> c;
  for (auto& v : f) c.push_back(v.get_si());
  std::vector<long> out;
  for (long x = 0; x < p; ++x) {
    long acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
    if (acc == 0) out.push_back(x);
  }
  return out;
}

/// Newton lift of a simple root from modulus p to modulus target = p^k.
Z hensel(const std::function<std::vector<Z>(const Z&)>& poly_at, Z x, long p, const Z& target) {
  Z m = p;
  while (m < target) {
    m = m * m;
    if (m > target) m = target;
    std::vector<Z> fm = poly_at(m);
    Z d = eval_deriv(fm, x, m);
    auto di = inv_mod(d, m);
    ensure(di.has_value(), "Hensel lift hit a singular root");
    x = mod(x - eval(fm, x, m) * *di, m);
  }
  return x;
}

/// Rational reconstruction of a residue modulo m with |num|, den <= sqrt(m/2).
std::optional<mpq_class> rat_recon(const Z& a, const Z& m) {
  Z bound;
  mpz_sqrt(bound.get_mpz_t(), Z(m / 2).get_mpz_t());
  Z r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 > bound) {
    Z q = r0 / r1;
    Z r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (abs(s1) > bound || s1 == 0) return std::nullopt;
  Z g;
  mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class q(r1, s1);
  q.canonicalize();
  return q;
}

bool is_prime(long p) { return mpz_probab_prime_p(Z(p).get_mpz_t(), 30) > 0; }

}  // namespace

std::vector<NFElem> roots_in_field(const FPoly& f_in) {
  if (f_in.is_zero()) throw MathError("roots of the zero polynomial");
  if (f_in.degree() < 1) return {};
  const NumberField* F = f_in.lead().field();
  const int d = F->degree();
  FPoly f = f_in.monic();
  FPoly g = gcd(f, f.derivative());
  if (g.degree() > 0) f = f / g;
  if (f.degree() == 1) return {-f.coeff(0)};

  std::vector<NFElem> found;
  for (long p = 1009; p < 200000; p += 2) {
    if (!is_prime(p)) continue;
    const Z P = p;
    // F must split completely with simple roots, f must stay squarefree.
    std::vector<Z> mq;
    bool ok = true;
    for (auto& c : F->minpoly().coeffs()) {
      auto v = image(c.value(), P);
      if (!v) ok = false;
      else mq.push_back(*v);
    }
    if (!ok) continue;
    std::vector<long> ar = roots_mod_small_p(mq, p);
    if (static_cast<int>(ar.size()) != d) continue;
    bool simple = true;
    for (long r : ar)
      if (eval_deriv(mq, Z(r), P) == 0) simple = false;
    if (!simple) continue;
    std::vector<std::vector<long>> yr(static_cast<size_t>(d));
    for (int i = 0; i < d && ok; ++i) {
      auto fi = specialize(f, Z(ar[static_cast<size_t>(i)]), P);
      if (!fi || fi->back() == 0) {
        ok = false;
        break;
      }
      yr[static_cast<size_t>(i)] = roots_mod_small_p(*fi, p);
      for (long y : yr[static_cast<size_t>(i)])
        if (eval_deriv(*fi, Z(y), P) == 0) ok = false;
      if (yr[static_cast<size_t>(i)].empty()) return {};  // no roots in this component, so none in F
    }
    if (!ok) continue;

    size_t combos = 1;
    for (auto& v : yr) combos *= v.size();
    if (combos > 2000000) throw MathError("root search in the number field is too large");

    for (int bits : {256, 1024, 4096}) {
      Z target;
      mpz_ui_pow_ui(target.get_mpz_t(), 2, static_cast<unsigned long>(bits));
      Z m = P;
      while (m < target) m *= P;
      // Lift the roots of the minimal polynomial, then the roots of f in each component.
      std::vector<Z> R(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i) {
        auto mpoly_at = [&](const Z& mm) {
          std::vector<Z> out;
          for (auto& c : F->minpoly().coeffs()) out.push_back(*image(c.value(), mm));
          return out;
        };
        R[static_cast<size_t>(i)] = hensel(mpoly_at, Z(ar[static_cast<size_t>(i)]), p, m);
      }
      // Roots of m lifted to full precision determine each component map.
      std::vector<std::vector<Z>> Y(static_cast<size_t>(d));
      bool lifted = true;
      for (int i = 0; i < d && lifted; ++i) {
        auto fi_at = [&](const Z& mm) {
          Z Ri = mod(R[static_cast<size_t>(i)], mm);
          auto s = specialize(f, Ri, mm);
          ensure(s.has_value(), "specialization lost a unit");
          return *s;
        };
        for (long y : yr[static_cast<size_t>(i)])
          Y[static_cast<size_t>(i)].push_back(hensel(fi_at, Z(y), p, m));
      }
      // Inverse Vandermonde V_{ij} = R_i^j modulo m.
      std::vector<std::vector<Z>> A(static_cast<size_t>(d), std::vector<Z>(static_cast<size_t>(2 * d)));
      for (int i = 0; i < d; ++i) {
        Z pw = 1;
        for (int j = 0; j < d; ++j) {
          A[static_cast<size_t>(i)][static_cast<size_t>(j)] = pw;
          pw = mod(pw * R[static_cast<size_t>(i)], m);
        }
        A[static_cast<size_t>(i)][static_cast<size_t>(d + i)] = 1;
      }
      for (int c = 0; c < d; ++c) {
        int piv = c;
        while (piv < d && !inv_mod(A[static_cast<size_t>(piv)][static_cast<size_t>(c)], m)) ++piv;
        ensure(piv < d, "Vandermonde not invertible at the split prime");
        std::swap(A[static_cast<size_t>(piv)], A[static_cast<size_t>(c)]);
        Z inv = *inv_mod(A[static_cast<size_t>(c)][static_cast<size_t>(c)], m);
        for (auto& v : A[static_cast<size_t>(c)]) v = mod(v * inv, m);
        for (int r = 0; r < d; ++r) {
          if (r == c) continue;
          Z fct = A[static_cast<size_t>(r)][static_cast<size_t>(c)];
          if (fct == 0) continue;
          for (int j = 0; j < 2 * d; ++j)
            A[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                mod(A[static_cast<size_t>(r)][static_cast<size_t>(j)] - fct * A[static_cast<size_t>(c)][static_cast<size_t>(j)], m);
        }
      }
      // coefficient vector c = Vinv * y; Vinv_{j,i} = A[j][d+i]
      std::vector<size_t> idx(static_cast<size_t>(d), 0);
      while (true) {
        std::vector<mpq_class> coords;
        bool good = true;
        for (int j = 0; j < d && good; ++j) {
          Z acc = 0;
          for (int i = 0; i < d; ++i)
            acc += A[static_cast<size_t>(j)][static_cast<size_t>(d + i)] * Y[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
          auto q = rat_recon(mod(acc, m), m);
          if (!q) good = false;
          else coords.push_back(*q);
        }
        if (good) {
          NFElem y(F, coords);
          if (f.eval(y).is_zero() &&
              std::none_of(found.begin(), found.end(), [&](const NFElem& z) { return z == y; }))
            found.push_back(y);
        }
        int k = 0;
        while (k < d && ++idx[static_cast<size_t>(k)] == Y[static_cast<size_t>(k)].size()) idx[static_cast<size_t>(k++)] = 0;
        if (k == d) break;
      }
      if (static_cast<int>(found.size()) == f.degree()) break;
      if (static_cast<int>(found.size()) == static_cast<int>(std::min_element(yr.begin(), yr.end(), [](auto& x, auto& y) { return x.size() < y.size(); })->size()))
        break;
    }
    std::sort(found.begin(), found.end(), [](const NFElem& x, const NFElem& y) { return compare(x, y) < 0; });
    return found;
  }
  throw MathError("no completely split prime found for root finding");
}

}  // namespace belyi
