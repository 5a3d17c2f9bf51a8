#include "belyi/factor.hpp"

#include <functional>
#include <set>

namespace belyi {

namespace {

using ZVec = std::vector<mpz_class>;
using Mod = std::vector<long long>;

const int kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
                       59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127,
                       131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};

/// Primitive integer coefficients of a nonzero rational polynomial.
ZVec integer_primitive(const QPoly& f) {
  mpz_class l = 1;
  for (auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  ZVec z;
  mpz_class g = 0;
  for (auto& c : f.coeffs()) {
    mpq_class v = c.value() * l;
    z.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  for (auto& c : z) c /= g;
  return z;
}

long long mod_of(const mpz_class& v, long long p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_si();
}

void mtrim(Mod& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long long mulm(long long a, long long b, long long p) {
  return static_cast<long long>(static_cast<__int128>(a) * b % p);
}

long long inv_mod(long long a, long long p) {
  long long r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = mulm(r, b, p);
    b = mulm(b, b, p);
    e >>= 1;
  }
  return r;
}

Mod mmul(const Mod& a, const Mod& b, long long p) {
  if (a.empty() || b.empty()) return {};
  Mod r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
  mtrim(r);
  return r;
}

std::pair<Mod, Mod> mdivmod(Mod a, const Mod& b, long long p) {
  Mod q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  long long inv = inv_mod(b.back(), p);
  for (size_t k = a.size() - 1;; --k) {
    long long f = mulm(a[k], inv, p);
    q[k - b.size() + 1] = f;
    for (size_t i = 0; i < b.size(); ++i) {
      auto& s = a[k - b.size() + 1 + i];
      s = (s - mulm(f, b[i], p) + p) % p;
    }
    if (k == b.size() - 1) break;
  }
  mtrim(a);
  mtrim(q);
  return {q, a};
}

Mod mgcd(Mod a, Mod b, long long p) {
  while (!b.empty()) {
    Mod r = mdivmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long long inv = inv_mod(a.back(), p);
    for (auto& c : a) c = mulm(c, inv, p);
  }
  return a;
}

Mod mderiv(const Mod& a, long long p) {
  Mod r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(mulm(static_cast<long long>(i) % p, a[i], p));
  mtrim(r);
  return r;
}

Mod mpowmod(Mod base, long long e, const Mod& f, long long p) {
  Mod r{1};
  base = mdivmod(base, f, p).second;
  while (e) {
    if (e & 1) r = mdivmod(mmul(r, base, p), f, p).second;
    e >>= 1;
    if (e) base = mdivmod(mmul(base, base, p), f, p).second;
  }
  return r;
}

/// Degrees of the irreducible factors of a squarefree monic f mod p.
std::vector<int> ddf_degrees(Mod f, long long p) {
  std::vector<int> out;
  Mod h{0, 1};
  for (int i = 1; 2 * i <= static_cast<int>(f.size()) - 1; ++i) {
    h = mpowmod(h, p, f, p);
    Mod hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] - 1 + p) % p;
    mtrim(hx);
    Mod g = mgcd(f, hx, p);
    const int dg = static_cast<int>(g.size()) - 1;
    if (dg > 0) {
      for (int k = 0; k < dg / i; ++k) out.push_back(i);
      f = mdivmod(f, g, p).first;
      h = mdivmod(h, f, p).second;
    }
  }
  if (f.size() > 1) out.push_back(static_cast<int>(f.size()) - 1);
  return out;
}

std::set<int> subset_sums(const std::vector<int>& degs) {
  std::set<int> s{0};
  for (int d : degs) {
    std::set<int> t = s;
    for (int x : s) t.insert(x + d);
    s = std::move(t);
  }
  return s;
}

std::vector<mpz_class> divisors_signed(const mpz_class& v) {
  mpz_class a = abs(v);
  std::vector<mpz_class> out;
  // Values are small for the degrees handled here; trial division suffices.
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    out.push_back(d);
    if (d * d != a) out.push_back(a / d);
  }
  std::vector<mpz_class> signed_out;
  for (auto& d : out) {
    signed_out.push_back(d);
    signed_out.push_back(-d);
  }
  return signed_out;
}

/// Kronecker: does f have an integer factor of degree s?
bool has_factor_of_degree(const QPoly& f, int s) {
  std::vector<QQ> xs;
  std::vector<std::vector<mpz_class>> choices;
  long x = 0;
  while (static_cast<int>(xs.size()) < s + 1) {
    QQ v = f.eval(QQ(x));
    if (v.is_zero()) return true;  // rational root, so a linear factor
    xs.emplace_back(x);
    choices.push_back(divisors_signed(v.num()));
    x = x > 0 ? -x : -x + 1;
  }
  std::vector<QQ> ys(xs.size());
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == xs.size()) {
      QPoly g = interpolate(xs, ys);
      if (g.degree() != s) return false;
      for (auto& c : g.coeffs())
        if (!c.is_integer()) return false;
      return (f % g).is_zero();
    }
    for (auto& d : choices[i]) {
      // Fix the sign of the first value to halve the search.
      if (i == 0 && d < 0) continue;
      ys[i] = QQ(d);
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

std::optional<long long> root_mod_p(const QPoly& f, long long p) {
  if (f.degree() < 1) return std::nullopt;
  Mod fm;
  for (auto& c : f.coeffs()) {
    if (mod_of(c.den(), p) == 0) return std::nullopt;
    fm.push_back(mulm(mod_of(c.num(), p), inv_mod(mod_of(c.den(), p), p), p));
  }
  mtrim(fm);
  if (static_cast<int>(fm.size()) - 1 != f.degree()) return std::nullopt;
  long long inv = inv_mod(fm.back(), p);
  for (auto& c : fm) c = mulm(c, inv, p);
  // h = gcd(x^p - x, f) is the product of the linear factors.
  Mod xp = mpowmod(Mod{0, 1}, p, fm, p);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = (xp[1] - 1 + p) % p;
  mtrim(xp);
  Mod h = mgcd(fm, xp, p);
  if (h.size() < 2) return std::nullopt;
  // Equal-degree splitting with deterministic shifts.
  for (long long a = 1; h.size() > 2 && a < 200; ++a) {
    Mod w = mpowmod(Mod{a, 1}, (p - 1) / 2, h, p);
    if (w.empty()) w.push_back(0);
    w[0] = (w[0] - 1 + p) % p;
    mtrim(w);
    Mod g = mgcd(h, w, p);
    if (g.size() > 1 && g.size() < h.size()) h = g;
  }
  if (h.size() != 2) return std::nullopt;
  return (p - h[0]) % p;
}

bool certainly_coprime(const FPoly& a, const FPoly& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.degree() == 0 || b.degree() == 0) return true;
  const NumberField* F = a.lead().field();
  const long long p = F->split_prime();
  if (p == 0) return false;
  const long long r = F->split_root();
  auto image = [&](const FPoly& f, Mod& out) {
    out.clear();
    for (auto& c : f.coeffs()) {
      long long acc = 0;
      const auto& q = c.coeffs();
      for (size_t i = q.size(); i-- > 0;) {
        long long den = mod_of(q[i].get_den(), p);
        if (den == 0) return false;
        long long v = mulm(mod_of(q[i].get_num(), p), inv_mod(den, p), p);
        acc = (mulm(acc, r, p) + v) % p;
      }
      out.push_back(acc);
    }
    // The leading coefficient must survive so that degrees are preserved.
    return !out.empty() && out.back() != 0;
  };
  Mod am, bm;
  if (!image(a, am) || !image(b, bm)) return false;
  return mgcd(am, bm, p).size() == 1;
}

QQ resultant(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QQ(0);
  if (b.degree() == 0) return b.lead().pow(a.degree());
  if (a.degree() == 0) return a.lead().pow(b.degree());
  QPoly r = a % b;
  if (r.is_zero()) return QQ(0);
  QQ sign = (a.degree() % 2 == 1 && b.degree() % 2 == 1) ? QQ(-1) : QQ(1);
  return sign * b.lead().pow(a.degree() - r.degree()) * resultant(b, r);
}

QPoly interpolate(const std::vector<QQ>& xs, const std::vector<QQ>& ys) {
  const size_t n = xs.size();
  std::vector<QQ> dd = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly acc(QQ(0));
  for (size_t i = n; i-- > 0;) {
    acc = acc * QPoly({-xs[i], QQ(1)}, QQ(0)) + QPoly::constant(dd[i]);
  }
  return acc;
}

bool is_irreducible_over_Q(const QPoly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  if (n > kMaxFactorDegree) throw MathError("irreducibility test limited to degree 12");
  if (!is_squarefree(f)) return false;
  ZVec z = integer_primitive(f);
  std::set<int> possible;
  for (int i = 0; i <= n; ++i) possible.insert(i);
  int good = 0;
  for (int p : kPrimes) {
    if (mod_of(z.back(), p) == 0) continue;
    Mod fm;
    for (auto& c : z) fm.push_back(mod_of(c, p));
    mtrim(fm);
    long long inv = inv_mod(fm.back(), p);
    for (auto& c : fm) c = mulm(c, inv, p);
    if (mgcd(fm, mderiv(fm, p), p).size() != 1) continue;
    std::set<int> s = subset_sums(ddf_degrees(fm, p));
    std::set<int> both;
    for (int d : possible)
      if (s.count(d)) both.insert(d);
    possible = std::move(both);
    if (possible.size() == 2) return true;
    if (++good >= 25) break;
  }
  for (int s : possible) {
    if (s == 0 || 2 * s > n) continue;
    if (has_factor_of_degree(f, s)) return false;
  }
  return true;
}

QPoly shifted_norm(const FPoly& g, long k) {
  const NumberField* F = g.lead().field();
  const int d = F->degree();
  const int n = g.degree();
  const QPoly& m = F->minpoly();
  std::vector<QPoly> gi;
  for (int i = 0; i <= n; ++i) gi.push_back(g.coeff(i).as_qpoly());
  std::vector<QQ> xs, ys;
  for (int w = 0; w <= d * n; ++w) {
    // H(z) = sum_i g_i(z) (w - k z)^i
    QPoly lin({QQ(w), QQ(-k)}, QQ(0));
    QPoly H(QQ(0)), pw = QPoly::constant(QQ(1));
    for (int i = 0; i <= n; ++i) {
      H += gi[static_cast<size_t>(i)] * pw;
      pw = pw * lin;
    }
    xs.emplace_back(w);
    ys.push_back(resultant(m, H));
  }
  return interpolate(xs, ys);
}

bool is_irreducible_over(const FPoly& g) {
  const int n = g.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const NumberField* F = g.lead().field();
  if (F->degree() * n > kMaxFactorDegree) throw MathError("irreducibility test limited to norm degree 12");
  if (!is_squarefree(g)) return false;
  if (F->degree() == 1) {
    std::vector<QQ> c;
    for (int i = 0; i <= n; ++i) c.push_back(g.coeff(i).rational_part());
    return is_irreducible_over_Q(QPoly(std::move(c), QQ(0)));
  }
  for (long k = 0; k < 64; ++k) {
    QPoly N = shifted_norm(g, k);
    if (is_squarefree(N)) return is_irreducible_over_Q(N);
  }
  throw InternalError("no squarefree shifted norm found");
}

}  // namespace belyi
