#include "belyi/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "belyi/descent.hpp"

namespace belyi {

namespace {

using CurvePtr = std::shared_ptr<const Curve>;

constexpr size_t kMaxFailures = 5;

std::shared_ptr<const FieldTower> number_field(const std::string& minpoly) {
  return FieldTower::build(parse_qpoly(minpoly), {}, std::nullopt);
}

CurvePtr conic() { return Curve::build(2, 1, 0, number_field("x")); }
CurvePtr cubic() { return Curve::build(3, 1, 1, number_field("x^2+x+1")); }
CurvePtr quintic() { return Curve::build(5, 1, 1, number_field("x^4+x^3+x^2+x+1")); }
CurvePtr quartic() { return Curve::build(4, 2, 1, number_field("x^2+1")); }
CurvePtr cubic_over_t() {
  return Curve::build(3, 1, 1, FieldTower::build(parse_qpoly("x^2+x+1"), {"t"}, std::string("u^3 - t^2 + t")));
}

FieldElem elem(const Curve& c, const std::string& s) { return parse_elem(c.field(), s); }
Divisor pt(const Place& p, long k = 1) { return Divisor::point(p, k); }
const Place P0 = Place::zero(0), P1 = Place::one(0), Pinf = Place::infinity();

/// Places over 0 and 1, plus K-rational places over a few generic x-values.
std::vector<Place> support(const Curve& c, bool generic) {
  std::vector<Place> s = c.places_over_zero();
  for (auto& p : c.places_over_one()) s.push_back(p);
  if (!generic) return s;
  std::vector<std::string> xs;
  if (c.N() == 2) xs = {"4", "9"};
  if (c.N() == 3) xs = {"-alpha"};
  for (auto& x : xs)
    for (auto& p : c.places_over(elem(c, x))) s.push_back(p);
  return s;
}

/// Random divisor on the support, with degree exactly `degree`.
Divisor random_divisor(const std::vector<Place>& s, std::mt19937_64& rng, long degree, int terms = 3) {
  std::uniform_int_distribution<long> coef(-2, 2);
  std::uniform_int_distribution<size_t> pick(0, s.size() - 1);
  Divisor D;
  for (int i = 0; i < terms; ++i) D.add(s[pick(rng)], coef(rng));
  D.add(Pinf, degree - D.degree());
  return D;
}

SplitBundle random_bundle(const CurvePtr& c, const std::vector<Place>& s, std::mt19937_64& rng, int rank) {
  std::uniform_int_distribution<long> deg(-2, 2);
  SplitBundle E{c, {}};
  for (int i = 0; i < rank; ++i) E.D.push_back(random_divisor(s, rng, deg(rng), 2));
  return E;
}

struct Tally {
  CriterionResult& r;
  void check(bool ok, const std::function<std::string()>& what) {
    ++r.checks;
    if (!ok && r.failures.size() < kMaxFailures) r.failures.push_back(what());
    if (!ok) fail = true;
  }
  bool fail = false;
};

std::string join(const std::vector<std::string>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s + "]";
}

std::string join(const std::vector<long>& v) {
  std::vector<std::string> s;
  for (long x : v) s.push_back(std::to_string(x));
  return join(s);
}

std::vector<std::string> weight_strs(const ParabolicP1Bundle& W, BasePoint y) {
  std::vector<std::string> out;
  for (auto& w : W.weights(y)) out.push_back(weight_str(w));
  return out;
}

/// h0(W(m)) from Riemann-Roch spaces against sum max(0, m_j + m + 1).
void check_profile(Tally& t, const SplitBundle& E, const std::vector<long>& m) {
  const Curve& c = *E.curve;
  const long B = std::abs(E.degree()) + E.rank() * c.N() + c.genus() + 1;
  for (long k = -B; k <= B; ++k) {
    long direct = 0, split = 0;
    for (auto& D : E.D) direct += static_cast<long>(RRSpace(c, D + pt(Pinf, k * c.N())).dim());
    for (long v : m) split += std::max(0L, v + k + 1);
    t.check(direct == split, [&] {
      return "h0(W(" + std::to_string(k) + ")) = " + std::to_string(direct) + " but the splitting gives " +
             std::to_string(split);
    });
  }
}

/// Structure sheaf of a cover: splitting type and weights at the listed base points.
void structure_sheaf(Tally& t, const CurvePtr& c, const std::vector<long>& m, const std::vector<BasePoint>& ramified,
                     const std::vector<std::string>& weights, const AcceptanceOptions& opt) {
  SplitBundle E{c, {Divisor()}};
  ParabolicP1Bundle W = assemble_parabolic(E, opt.seed);
  if (opt.corrupt_weight) W.points[0].flags[0].weights[1] = QQ(1, c->N() + 1);
  t.check(W.splitting == m, [&] { return "splitting type " + join(W.splitting) + ", expected " + join(m); });
  check_profile(t, E, W.splitting);
  for (BasePoint y : ramified) {
    auto w = weight_strs(W, y);
    t.check(w == weights, [&] { return "weights at " + to_string(y) + " are " + join(w) + ", expected " + join(weights); });
    for (auto& fl : W.at(y).flags) {
      const size_t e = fl.E.size() - 1;
      t.check(fl.E[e].rows() == 0, [&] { return "last flag step at " + fl.place.str() + " is nonzero"; });
      for (size_t k = 0; k < e; ++k)
        t.check(fl.E[k].rows() == fl.E[k + 1].rows() + 1,
                [&] { return "weight multiplicity at " + fl.place.str() + " step " + std::to_string(k) + " is not 1"; });
    }
  }
  for (auto& v : parabolic_violations(W)) t.check(false, [&] { return v; });
}

void criterion1(Tally& t, const AcceptanceOptions& opt) {
  structure_sheaf(t, conic(), {0, -1}, {BasePoint::Zero, BasePoint::Infinity}, {"0", "1/2"}, opt);
}

void criterion2(Tally& t, const AcceptanceOptions& opt) {
  structure_sheaf(t, cubic(), {0, -1, -2}, {BasePoint::Zero, BasePoint::One, BasePoint::Infinity}, {"0", "1/3", "2/3"},
                  opt);
}

void criterion3(Tally& t, const AcceptanceOptions&) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> deg(-5, 8);
  for (const CurvePtr& c : {conic(), cubic(), quintic()}) {
    const auto s = support(*c, true);
    const Divisor K = c->canonical_divisor();
    t.check(K.degree() == 2 * c->genus() - 2, [&] { return "canonical divisor degree on " + c->describe(); });
    for (int it = 0; it < 18; ++it) {
      const Divisor D = random_divisor(s, rng, deg(rng));
      const long lhs = ell(*c, D) - ell(*c, K - D), rhs = D.degree() + 1 - c->genus();
      t.check(lhs == rhs, [&] {
        return c->describe() + " D = " + D.str() + ": l(D) - l(K-D) = " + std::to_string(lhs) + ", expected " +
               std::to_string(rhs);
      });
    }
  }
}

void criterion4(Tally& t, const AcceptanceOptions&) {
  std::mt19937_64 rng(4);
  for (const CurvePtr& c : {conic(), cubic(), quintic(), quartic()}) {
    const auto s = support(*c, false);
    for (int it = 0; it < 8; ++it) {
      const SplitBundle E = random_bundle(c, s, rng, 1 + it % 3);
      const auto T = pushforward_splitting_type(E);
      long sum = 0;
      for (long m : T.m) sum += m;
      const long expected = E.degree() + E.rank() * (1 - c->genus()) - E.rank() * c->N();
      t.check(sum == expected && static_cast<long>(T.m.size()) == E.rank() * c->N(), [&] {
        return c->describe() + " E = " + E.str() + ": deg = " + std::to_string(sum) + ", expected " +
               std::to_string(expected);
      });
      long direct = 0, split = 0;
      for (auto& D : E.D) direct += ell(*c, D);
      for (long m : T.m) split += std::max(0L, m + 1);
      t.check(direct == split, [&] { return "h0 mismatch for " + E.str(); });
    }
  }
}

void criterion5(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(5);
  for (const CurvePtr& c : {conic(), cubic(), quartic(), cubic_over_t()}) {
    const auto s = support(*c, false);
    for (int it = 0; it < 6; ++it) {
      const SplitBundle E = random_bundle(c, s, rng, 1 + it % 2);
      t.check(E.is_t_free() && verify_prop1(E, opt.seed), [&] { return c->describe() + " E = " + E.str(); });
    }
  }
}

void criterion6(Tally& t, const AcceptanceOptions& opt) {
  std::mt19937_64 rng(6);
  long generic = 0;
  for (const CurvePtr& c : {conic(), cubic(), quartic()}) {
    const auto s = support(*c, true);
    for (int it = 0; it < 6; ++it) {
      const SplitBundle E = random_bundle(c, s, rng, 1 + it % 2);
      bool has_generic = false;
      for (auto& D : E.D)
        for (auto& [p, k] : D.terms()) has_generic = has_generic || !p.is_branch();
      if (has_generic) ++generic;
      t.check(verify_e18(E, opt.seed), [&] { return c->describe() + " E = " + E.str(); });
    }
  }
  // Generic places whose translates are pairwise distinct.
  for (const CurvePtr& c : {conic(), cubic()}) {
    const Place q = support(*c, true).back();
    for (int i = 1; i < c->N(); ++i)
      t.check(c->galois_translate(q, i) != q, [&] { return "translate of " + q.str() + " is fixed"; });
    const SplitBundle E{c, {pt(q) - pt(Pinf)}};
    ++generic;
    t.check(verify_e18(E, opt.seed), [&] { return c->describe() + " E = " + E.str(); });
  }
  t.check(generic > 0, [] { return "no bundle was supported at a generic place"; });
}

void criterion7(Tally& t, const AcceptanceOptions& opt) {
  const TowerSpec T = TowerSpec::build(quartic(), 2);
  t.check(T.check_composition(), [] { return "tower maps do not compose to the x-map"; });
  for (const Divisor& D : {Divisor(), pt(T.X->places_over_zero()[0]) - pt(Pinf)}) {
    const SplitBundle E{T.X, {D}};
    t.check(verify_invariant_subbundle(T, E, opt.seed), [&] { return "E = " + E.str(); });
  }
}

using Kind = DescentVerdict::Kind;

void criterion8(Tally& t, const AcceptanceOptions& opt) {
  const CurvePtr c = cubic_over_t();
  const Place q = c->make_place(elem(*c, "t"), elem(*c, "u"));
  const Divisor Q = pt(q) - pt(Pinf);
  const Divisor orbit = pt(q) + pt(c->galois_translate(q, 1)) + pt(c->galois_translate(q, 2)) - pt(Pinf, 3);
  const Divisor tfree = pt(P0) - pt(Pinf);
  struct Case {
    std::vector<Divisor> D;
    Kind expected;
  };
  const std::vector<Case> cases{
      {{tfree}, Kind::DefinedOverF},
      {{Divisor(), pt(P1)}, Kind::DefinedOverF},
      {{2 * pt(P0) - pt(P1) - pt(Pinf)}, Kind::DefinedOverF},
      {{pt(P0), -pt(Pinf)}, Kind::DefinedOverF},
      {{Q}, Kind::NotDefined},
      {{Q, Divisor()}, Kind::NotDefined},
      {{2 * Q}, Kind::NotDefined},
      {{pt(q) - pt(P0)}, Kind::NotDefined},
      {{pt(c->galois_translate(q, 1)) - pt(Pinf)}, Kind::NotDefined},
      {{orbit}, Kind::DefinedOverF},
      {{orbit, tfree}, Kind::DefinedOverF},
  };
  for (auto& cs : cases) {
    const SplitBundle E{c, cs.D};
    const DescentVerdict v = descent_verdict(E, 64, opt.seed);
    t.check(v.kind == cs.expected && v.agrees && v.direct == v.kind && v.pullback_matches, [&] {
      return E.str() + ": verdict " + to_string(v.kind) + ", direct " + to_string(v.direct) + ", expected " +
             to_string(cs.expected) + (v.note.empty() ? "" : " (" + v.note + ")");
    });
    if (v.kind == Kind::DefinedOverF)
      for (auto& D : v.certificate) t.check(D.is_t_free(), [&] { return "certificate " + D.str() + " depends on t"; });
    if (v.kind == Kind::NotDefined)
      t.check(v.witness.has_value() && v.witness->ell == 0, [&] { return E.str() + ": missing failure witness"; });
  }
  // The invariant class is certified by (x - t)/(x - tau).
  const OracleVerdict o = line_descent_oracle(*c, orbit);
  const bool ok = o.kind == OracleVerdict::Kind::Descends && o.witness && o.curve.get() == c.get();
  t.check(ok, [] { return "invariant class has no witness over the base field"; });
  if (ok) {
    const Curve* C = c.get();
    const CurveFunction expected = (CurveFunction::x(C) - CurveFunction::constant(C, elem(*c, "t"))) /
                                   (CurveFunction::x(C) - CurveFunction::constant(C, elem(*c, o.tau)));
    t.check((*o.witness / expected).constant_value().has_value(),
            [&] { return "witness " + o.witness->str() + " is not a multiple of (x - t)/(x - tau)"; });
    t.check(has_divisor(*c, *o.witness, orbit - o.representative), [] { return "witness divisor mismatch"; });
  }
}

void criterion9(Tally& t, const AcceptanceOptions& opt) {
  const CurvePtr k = conic(), c = cubic(), q = quartic();
  const std::vector<SplitBundle> lines{{k, {Divisor()}},
                                       {k, {pt(P0) - pt(Pinf, 2)}},
                                       {c, {pt(P0) - pt(Pinf)}},
                                       {c, {pt(P1, 2)}},
                                       {q, {pt(q->places_over_zero()[1]) - pt(Pinf)}}};
  for (auto& E : lines) {
    const EndAlgebra A(E);
    t.check(A.check() && indecomposable_test(A), [&] { return E.str() + " should be indecomposable"; });
  }
  const std::vector<SplitBundle> split{{k, {Divisor(), -pt(Pinf)}},
                                       {c, {Divisor(), Divisor()}},
                                       {c, {pt(P0), pt(P1)}},
                                       {c, {Divisor(), pt(P0) - pt(Pinf)}},
                                       {q, {Divisor(), pt(P1), -pt(Pinf)}}};
  for (auto& E : split) {
    const EndAlgebra A(E);
    t.check(A.check() && !indecomposable_test(A), [&] { return E.str() + " should be decomposable"; });
  }
  // diag(1, -1) on O + O(-1) is a trace-zero idempotent-type witness.
  const EndAlgebra A(split[0]);
  EndAlgebra::Elem d = A.identity();
  for (size_t i = 0; i < A.dim(); ++i)
    if (A.basis()[i].i == 1 && A.basis()[i].j == 1) d[i] = -d[i];
  t.check(A.trace(d).is_zero() && A.multiply(d, d) == A.identity(),
          [] { return "diag(1, -1) is not a trace-zero square root of the identity"; });

  const Place g = support(*c, true).back();
  const SplitBundle E{c, {pt(g) - pt(Pinf), pt(P0) - pt(Pinf)}};
  const ConstrainedBundle U = parabolic_pullback(assemble_parabolic(E, opt.seed), c);
  std::vector<Divisor> cands = translate_classes(E);
  const ClassMatch base = class_decompose(U, cands, opt.seed);
  t.check(base.success, [&] { return "class_decompose failed: " + base.reason; });
  std::mt19937_64 rng(9);
  for (int it = 0; it < 5; ++it) {
    std::shuffle(cands.begin(), cands.end(), rng);
    const ClassMatch m = class_decompose(U, cands, opt.seed + static_cast<std::uint64_t>(it));
    t.check(m.success && m.classes == base.classes, [&] { return "permutation " + std::to_string(it) + " changed the classes"; });
  }
}

struct Spec {
  const char* name;
  double limit;
  void (*run)(Tally&, const AcceptanceOptions&);
};

const Spec kSpecs[] = {
    {"pushforward of O on the degree-2 cover", 5, criterion1},
    {"pushforward of O on the genus-1 cover", 30, criterion2},
    {"Riemann-Roch identity on random divisors", 300, criterion3},
    {"Euler characteristic of the pushforward", 0, criterion4},
    {"flags of t-free bundles are defined over F", 0, criterion5},
    {"pullback of the parabolic pushforward is the sum of translates", 600, criterion6},
    {"invariant subbundle on the (4,2,1) tower", 0, criterion7},
    {"descent verdict agrees with the per-summand oracle", 0, criterion8},
    {"Krull-Schmidt tests", 0, criterion9},
};

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  ensure(id >= 1 && id <= 9, "no criterion " + std::to_string(id));
  const Spec& s = kSpecs[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = s.name;
  r.time_limit = s.limit;
  Tally t{r};
  const auto start = std::chrono::steady_clock::now();
  try {
    s.run(t, opt);
  } catch (const std::exception& e) {
    t.fail = true;
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = !t.fail && r.checks > 0;
  return r;
}

std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opt) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id, opt));
  return out;
}

}  // namespace belyi
