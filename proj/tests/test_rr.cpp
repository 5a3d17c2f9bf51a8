#include <gtest/gtest.h>

#include <random>

#include "belyi/rr.hpp"
#include "fixtures.hpp"

using namespace belyi;
using namespace fixtures;

namespace {

Divisor pt(const Place& p, long c = 1) { return Divisor::point(p, c); }
const Place P0 = Place::zero(0), P1 = Place::one(0), Pinf = Place::infinity();

/// Random divisor of degree in [lo, hi] supported on the given places.
Divisor random_divisor(const Curve& c, const std::vector<Place>& support, std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> target(lo, hi), coef(-3, 3);
  std::uniform_int_distribution<size_t> pick(0, support.size() - 1);
  Divisor D;
  for (int i = 0; i < 3; ++i) D.add(support[pick(rng)], coef(rng));
  D.add(Pinf, target(rng) - D.degree());
  (void)c;
  return D;
}

std::vector<Place> desk_support(const Curve& c) {
  std::vector<Place> s = c.places_over_zero();
  for (auto& p : c.places_over_one()) s.push_back(p);
  if (c.N() == 2 && c.b() == 0)
    for (long v : {4L, 9L}) for (auto& p : c.places_over(FieldElem(c.field(), v))) s.push_back(p);
  return s;
}

}  // namespace

TEST(RRSpace, WorkedExamples) {
  auto c = cubic();
  auto L1 = rr_space(*c, pt(Pinf));
  ASSERT_EQ(L1.dim(), 1u);
  EXPECT_EQ(L1.basis[0].str(), "1");
  EXPECT_EQ(ell(*c, pt(Pinf, 3)), 3);
  auto k = conic();
  auto L0 = rr_space(*k, Divisor());
  ASSERT_EQ(L0.dim(), 1u);
  EXPECT_EQ(L0.basis[0].str(), "1");
}

TEST(RRSpace, BasisElementsSatisfyValuationBounds) {
  for (auto c : {conic(), cubic(), quartic()}) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 4; ++it) {
      Divisor D = random_divisor(*c, desk_support(*c), rng, 0, 6);
      RRSpace L(*c, D);
      for (auto& f : L.basis()) {
        EXPECT_TRUE(in_space(*c, f, D)) << D.str() << " : " << f.str();
        auto co = L.coordinates(f);
        ASSERT_TRUE(co.has_value());
      }
      if (D.degree() > 2 * c->genus() - 2)
        EXPECT_EQ(static_cast<long>(L.dim()), D.degree() + 1 - c->genus()) << D.str();
    }
  }
}

TEST(RRSpace, RiemannRochIdentity) {
  std::mt19937_64 rng(17);
  for (auto c : {conic(), cubic(), quintic()}) {
    const Divisor K = c->canonical_divisor();
    for (int it = 0; it < 5; ++it) {
      Divisor D = random_divisor(*c, desk_support(*c), rng, -5, 8);
      EXPECT_EQ(ell(*c, D) - ell(*c, K - D), D.degree() + 1 - c->genus()) << c->describe() << " D = " << D.str();
    }
  }
}

TEST(RRSpace, NegativeDegreeAndZero) {
  for (auto c : {conic(), cubic(), quintic()}) {
    EXPECT_EQ(ell(*c, Divisor()), 1);
    EXPECT_EQ(ell(*c, pt(P0, 2) - pt(Pinf, 3)), 0);
  }
}

TEST(RRSpace, CoordinatesRejectOutsiders) {
  auto c = cubic();
  RRSpace L(*c, pt(Pinf, 3));
  EXPECT_TRUE(L.coordinates(CurveFunction::x(c.get())).has_value());
  EXPECT_TRUE(L.coordinates(CurveFunction::y(c.get())).has_value());
  EXPECT_FALSE(L.coordinates(CurveFunction::x(c.get()) * CurveFunction::y(c.get())).has_value());
}

TEST(LinEquiv, WorkedExamples) {
  auto c = cubic();
  Divisor D = pt(P0) - pt(Pinf);
  auto same = lin_equiv(*c, D, D);
  ASSERT_TRUE(same.equivalent);
  EXPECT_EQ(same.witness->str(), "1");
  EXPECT_FALSE(lin_equiv(*c, D, Divisor()).equivalent);
  EXPECT_EQ(lin_equiv(*c, D, Divisor()).ell, 0);
  auto k = conic();
  auto r = lin_equiv(*k, 2 * (pt(P0) - pt(Pinf)), Divisor());
  ASSERT_TRUE(r.equivalent);
  EXPECT_EQ(r.witness->str(), "x");
  EXPECT_TRUE(has_divisor(*k, *r.witness, 2 * (pt(P0) - pt(Pinf))));
}

TEST(LinEquiv, EquivalenceRelationOnSamples) {
  auto c = cubic();
  std::vector<Divisor> ds{pt(P0, 3), pt(P1, 3), pt(Pinf, 3), pt(P0) + pt(P1) + pt(Pinf), pt(P0, 2) + pt(P1)};
  for (auto& a : ds) EXPECT_TRUE(lin_equiv(*c, a, a).equivalent);
  for (auto& a : ds)
    for (auto& b : ds) {
      bool ab = lin_equiv(*c, a, b).equivalent;
      EXPECT_EQ(ab, lin_equiv(*c, b, a).equivalent);
      for (auto& d : ds)
        if (ab && lin_equiv(*c, b, d).equivalent) EXPECT_TRUE(lin_equiv(*c, a, d).equivalent);
    }
  EXPECT_TRUE(lin_equiv(*c, pt(P0, 3), pt(Pinf, 3)).equivalent);
}

TEST(LinEquiv, WitnessesCarryTheClaimedDivisor) {
  auto k = conic();
  auto places = k->places_over(FieldElem(k->field(), 4L));
  Divisor a = pt(places[0]) + pt(P1);
  Divisor b = pt(places[1]) + pt(P0);
  auto r = lin_equiv(*k, a, b);
  ASSERT_TRUE(r.equivalent);
  EXPECT_TRUE(has_divisor(*k, *r.witness, a - b));
  EXPECT_FALSE(has_divisor(*k, *r.witness, b - a));
}

TEST(HomSpace, Examples) {
  auto c = cubic();
  auto h = hom_space(*c, pt(P0), pt(P0));
  ASSERT_EQ(h.dim(), 1u);
  EXPECT_EQ(h.basis[0].str(), "1");
  auto k = conic();
  EXPECT_EQ(hom_space(*k, -pt(Pinf), Divisor()).dim(), 2u);
  EXPECT_EQ(hom_space(*k, pt(Pinf), Divisor()).dim(), 0u);
}

TEST(DescentOracle, TFreeDivisorDescends) {
  auto c = cubic();
  auto v = line_descent_oracle(*c, pt(P0) - pt(Pinf));
  EXPECT_EQ(v.kind, OracleVerdict::Kind::Descends);
  EXPECT_EQ(v.representative, pt(P0) - pt(Pinf));
}

TEST(DescentOracle, TranscendentalPointFails) {
  auto c = curve(3, 1, 1, eisenstein_t_u());
  Place p = c->make_place(K(*c, "t"), K(*c, "u"));
  auto v = line_descent_oracle(*c, pt(p) - pt(Pinf));
  EXPECT_EQ(v.kind, OracleVerdict::Kind::Fails);
  EXPECT_EQ(v.ell, 0);
}

TEST(DescentOracle, InvariantClassDescendsWithWitness) {
  auto c = curve(3, 1, 1, eisenstein_t_u());
  Place p = c->make_place(K(*c, "t"), K(*c, "u"));
  Divisor D = pt(p) + pt(c->galois_translate(p, 1)) + pt(c->galois_translate(p, 2)) - pt(Pinf, 3);
  auto v = line_descent_oracle(*c, D);
  ASSERT_EQ(v.kind, OracleVerdict::Kind::Descends);
  ASSERT_TRUE(v.witness.has_value());
  // The witness is a multiple of (x - t)/(x - tau).
  const Curve* C = c.get();
  auto expected = (CurveFunction::x(C) - CurveFunction::constant(C, K(*c, "t"))) /
                  (CurveFunction::x(C) - CurveFunction::constant(C, K(*c, v.tau)));
  EXPECT_TRUE((*v.witness / expected).constant_value().has_value()) << v.witness->str();
  EXPECT_TRUE(has_divisor(*c, *v.witness, D - v.representative));
  EXPECT_TRUE(v.representative.is_t_free());
}

TEST(DescentOracle, GenusZeroPointsDescend) {
  auto K = FieldTower::build(parse_qpoly("x"), {"t"}, std::nullopt);
  auto c = curve(2, 1, 0, K);
  Place p = c->make_place(parse_elem(K.get(), "t^2"), parse_elem(K.get(), "t"));
  auto v = line_descent_oracle(*c, pt(p) - pt(Pinf));
  EXPECT_EQ(v.kind, OracleVerdict::Kind::Descends);
  EXPECT_TRUE(v.witness.has_value());
}

TEST(DescentOracle, AdjoinsTheSpecializedRoot) {
  // The first candidate is tau = alpha, where u^3 = alpha^2 - alpha has no root in Q(zeta_3).
  auto c = curve(3, 1, 1, eisenstein_t_u());
  Place p = c->make_place(K(*c, "t"), K(*c, "u"));
  auto v = line_descent_oracle(*c, pt(p) - pt(Pinf), 1);
  EXPECT_EQ(v.kind, OracleVerdict::Kind::Fails);
  EXPECT_EQ(v.tau, "alpha");
  EXPECT_EQ(v.curve->field()->base()->degree(), 6);
}

TEST(SmallIntegers, Enumeration) {
  auto F = NumberField::rationals();
  auto v = small_integers(F.get(), 4);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0].str(), "-1");
  EXPECT_EQ(v[1].str(), "2");
  EXPECT_EQ(v[2].str(), "-2");
}
