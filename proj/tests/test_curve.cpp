#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"

using namespace belyi;
using namespace fixtures;

namespace {

long fiber_total(const Curve& c, const std::vector<Place>& fiber) {
  long s = 0;
  for (auto& p : fiber) s += c.ram_index(p);
  return s;
}

CurveFunction random_function(const Curve& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  const FieldElem z = c.zero();
  std::vector<KPoly> num;
  for (int j = 0; j < c.N(); ++j) {
    std::vector<FieldElem> co;
    for (int i = 0; i < 3; ++i) co.push_back(FieldElem(c.field(), static_cast<long>(d(rng))));
    num.emplace_back(co, z);
  }
  if (num[0].is_zero() && num[1].is_zero()) num[0] = KPoly::constant(z.one());
  std::vector<FieldElem> dc{FieldElem(c.field(), static_cast<long>(d(rng) + 7)), z.one()};
  return CurveFunction(&c, num, KPoly(dc, z));
}

}  // namespace

TEST(CurveBuild, GenusFromRamification) {
  EXPECT_EQ(conic()->genus(), 0);
  EXPECT_EQ(cubic()->genus(), 1);
  EXPECT_EQ(quintic()->genus(), 2);
  EXPECT_EQ(quartic()->genus(), 1);
}

TEST(CurveBuild, RejectsInvalidParameters) {
  EXPECT_THROW(curve(4, 2, 2, gaussian()), MathError);    // gcd(N, a, b) = 2
  EXPECT_THROW(curve(2, 1, 1, rationals()), MathError);   // two places at infinity
  EXPECT_THROW(curve(3, 1, 1, rationals()), MathError);   // no cube root of unity
  EXPECT_THROW(curve(3, 3, 0, eisenstein()), MathError);  // reducible
}

TEST(CurveBuild, RequiresRationalPlacesOverZero) {
  // y^2 = x^2 (x - 1) splits over 0 only when sqrt(-1) is available.
  EXPECT_THROW(curve(2, 2, 1, rationals()), MathError);
  EXPECT_EQ(curve(2, 2, 1, gaussian())->r0(), 2);
}

TEST(Fibers, BranchFiberCounts) {
  auto c = cubic();
  EXPECT_EQ(c->places_over_zero().size(), 1u);
  EXPECT_EQ(c->ram_index(Place::zero(0)), 3);
  auto q = quartic();
  auto f0 = q->places_over_zero();
  ASSERT_EQ(f0.size(), 2u);
  EXPECT_EQ(q->ram_index(f0[0]), 2);
  EXPECT_EQ(q->ram_index(f0[1]), 2);
  auto k = conic();
  EXPECT_EQ(k->places_over_one().size(), 2u);
  EXPECT_EQ(k->ram_index(Place::one(0)), 1);
}

TEST(Fibers, MultiplicitiesSumToDegree) {
  for (auto c : {conic(), cubic(), quintic(), quartic()}) {
    EXPECT_EQ(fiber_total(*c, c->places_over_zero()), c->N());
    EXPECT_EQ(fiber_total(*c, c->places_over_one()), c->N());
    EXPECT_EQ(fiber_total(*c, c->places_over_infinity()), c->N());
  }
  auto k = conic();
  for (long v : {4L, 9L, 25L}) EXPECT_EQ(fiber_total(*k, k->places_over(FieldElem(k->field(), v))), 2);
  // x^2 (x - 1) = 4 at x = 2 has all four roots in Q(zeta_8).
  auto q = curve(4, 2, 1, cyclotomic8());
  EXPECT_EQ(fiber_total(*q, q->places_over(FieldElem(q->field(), 2L))), 4);
}

TEST(Fibers, GenericFiberOfConic) {
  auto k = conic();
  auto f = k->places_over(K(*k, "4"));
  ASSERT_EQ(f.size(), 2u);
  std::set<std::string> ys{f[0].y.str(), f[1].y.str()};
  EXPECT_EQ(ys, (std::set<std::string>{"2", "-2"}));
  EXPECT_THROW(k->places_over(K(*k, "2")), MathError);
}

TEST(Fibers, DegenerateGenericPlacesRejected) {
  auto c = cubic();
  EXPECT_THROW(c->make_place(K(*c, "0"), K(*c, "0")), MathError);
  EXPECT_THROW(c->make_place(K(*c, "1"), K(*c, "0")), MathError);
  EXPECT_THROW(c->make_place(K(*c, "2"), K(*c, "1")), MathError);
  auto k = conic();
  EXPECT_EQ(k->make_place(K(*k, "1"), K(*k, "-1")), Place::one(1));
}

TEST(LocalExpansion, BranchValuations) {
  auto c = cubic();
  const Curve* C = c.get();
  auto x = CurveFunction::x(C), y = CurveFunction::y(C);
  auto one = CurveFunction::constant(C, c->zero().one());
  EXPECT_EQ(c->valuation(x, Place::zero(0)), 3);
  EXPECT_EQ(c->valuation(y, Place::zero(0)), 1);
  EXPECT_EQ(c->valuation(x - one, Place::one(0)), 3);
  EXPECT_EQ(c->valuation(x, Place::infinity()), -3);
  EXPECT_EQ(c->valuation(y, Place::infinity()), -2);
  auto q = quartic();
  EXPECT_EQ(q->valuation(CurveFunction::y(q.get()), Place::zero(1)), 1);
  EXPECT_EQ(q->valuation(CurveFunction::x(q.get()), Place::zero(1)), 2);
}

TEST(LocalExpansion, ParametrizationSatisfiesEquation) {
  for (auto c : {conic(), cubic(), quintic(), quartic()}) {
    std::vector<Place> places = c->places_over_zero();
    for (auto& p : c->places_over_one()) places.push_back(p);
    places.push_back(Place::infinity());
    if (c->N() == 2) for (auto& p : c->places_over(FieldElem(c->field(), 9L))) places.push_back(p);
    for (auto& p : places) {
      auto [X, Y] = c->param(p, 20);
      Series lhs = Y;
      for (int i = 1; i < c->N(); ++i) lhs = lhs * Y;
      Series diff = lhs - X.compose_into(c->h());
      EXPECT_FALSE(diff.valuation().has_value()) << c->describe() << " at " << p.str();
      EXPECT_GE(diff.prec() - *lhs.valuation(), 20);
    }
  }
}

TEST(LocalExpansion, ValuationIsAdditive) {
  std::mt19937_64 rng(11);
  for (auto c : {conic(), cubic(), quartic()}) {
    std::vector<Place> places = c->places_over_zero();
    places.push_back(Place::one(0));
    places.push_back(Place::infinity());
    for (int it = 0; it < 4; ++it) {
      CurveFunction f = random_function(*c, rng), g = random_function(*c, rng);
      for (auto& p : places) EXPECT_EQ(c->valuation(f * g, p), c->valuation(f, p) + c->valuation(g, p));
    }
  }
}

TEST(CurveFunction, InverseAndConstants) {
  auto c = cubic();
  std::mt19937_64 rng(3);
  for (int it = 0; it < 3; ++it) {
    CurveFunction f = random_function(*c, rng);
    auto one = f * f.inverse();
    ASSERT_TRUE(one.constant_value().has_value());
    EXPECT_TRUE(one.constant_value()->is_one());
  }
  auto y = CurveFunction::y(c.get());
  EXPECT_EQ((y * y * y).str(), "x^2 - x");
}

TEST(Galois, TranslateExamples) {
  auto k = conic();
  Divisor d = Divisor::point(k->make_place(K(*k, "4"), K(*k, "2")));
  EXPECT_EQ(k->galois_translate(d, 0), d);
  EXPECT_EQ(k->galois_translate(d, 1), Divisor::point(k->make_place(K(*k, "4"), K(*k, "-2"))));
  auto c = cubic();
  Divisor p0 = Divisor::point(Place::zero(0));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(c->galois_translate(p0, i), p0);
}

TEST(Galois, TranslateIsAnAction) {
  auto q = curve(4, 2, 1, cyclotomic8());
  Divisor d = Divisor::point(Place::zero(0), 2) - Divisor::point(Place::infinity()) +
              Divisor::point(q->places_over(FieldElem(q->field(), 2L)).front(), 3) + Divisor::point(Place::one(0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Divisor lhs = q->galois_translate(q->galois_translate(d, i), j);
      EXPECT_EQ(lhs, q->galois_translate(d, (i + j) % 4));
      EXPECT_EQ(lhs.degree(), d.degree());
    }
  EXPECT_NE(q->galois_translate(Divisor::point(Place::zero(0)), 1), Divisor::point(Place::zero(0)));
}

TEST(Canonical, DegreeIsTwoGenusMinusTwo) {
  EXPECT_EQ(conic()->canonical_divisor().degree(), -2);
  EXPECT_EQ(cubic()->canonical_divisor().degree(), 0);
  EXPECT_EQ(quintic()->canonical_divisor().degree(), 2);
  EXPECT_EQ(quartic()->canonical_divisor().degree(), 0);
}

TEST(Divisor, ArithmeticDropsZeros) {
  Divisor d = Divisor::point(Place::zero(0), 2) + Divisor::point(Place::infinity(), -2);
  EXPECT_EQ(d.degree(), 0);
  EXPECT_EQ(d - d, Divisor());
  EXPECT_EQ((d - d).terms().size(), 0u);
  EXPECT_EQ(d.str(), "2*P0[0] - 2*Pinf");
}

TEST(Fibers, TranscendentalPointOnGenusOneCurve) {
  auto c = curve(3, 1, 1, eisenstein_t_u());
  Place p = c->make_place(K(*c, "t"), K(*c, "u"));
  EXPECT_EQ(c->fiber_of(p).size(), 3u);
  EXPECT_FALSE(Divisor::point(p).is_t_free());
  EXPECT_EQ(c->valuation(CurveFunction::x(c.get()) - CurveFunction::constant(c.get(), K(*c, "t")), p), 1);
}
