#include <gtest/gtest.h>

#include <random>

#include "belyi/factor.hpp"
#include "belyi/linalg.hpp"

using namespace belyi;

namespace {

std::shared_ptr<const FieldTower> zeta3_t_u() {
  return FieldTower::build(parse_qpoly("x^2+x+1"), {"t"}, std::string("u^3 - t^2 + t"));
}

KMatrix mat(const FieldTower* K, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<FieldElem>> r;
  for (auto& row : rows) {
    r.emplace_back();
    for (auto& s : row) r.back().push_back(parse_elem(K, s));
  }
  return KMatrix(r, rows.empty() ? 0 : rows[0].size(), FieldElem(K, 0L));
}

FieldElem random_elem(const FieldTower* K, std::mt19937_64& rng, bool with_den = true) {
  std::uniform_int_distribution<int> d(-3, 3);
  FieldElem a = FieldElem::alpha(K), t = FieldElem::t(K), u = FieldElem::u(K);
  FieldElem e(K, 0L);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) e += FieldElem(K, static_cast<long>(d(rng))) * a.pow(i) * t.pow(k) * u.pow(j);
  if (with_den && d(rng) > 1) e = e / (t + FieldElem(K, static_cast<long>(d(rng) + 5)));
  return e;
}

}  // namespace

TEST(TowerBuild, RationalsFromDegreeOnePolynomial) {
  auto K = FieldTower::build(parse_qpoly("x"), {}, std::nullopt);
  EXPECT_EQ(K->base()->degree(), 1);
  EXPECT_FALSE(K->has_t());
  EXPECT_TRUE(FieldElem::alpha(K.get()).is_zero());
}

TEST(TowerBuild, CyclotomicWithTranscendental) {
  auto K = FieldTower::build(parse_qpoly("x^2+x+1"), {"t"}, std::nullopt);
  EXPECT_EQ(K->base()->degree(), 2);
  EXPECT_TRUE(K->has_t());
  FieldElem a = FieldElem::alpha(K.get());
  EXPECT_TRUE((a * a + a + FieldElem(K.get(), 1L)).is_zero());
}

TEST(TowerBuild, GenusOneTranscendentalPoint) {
  auto K = zeta3_t_u();
  EXPECT_EQ(K->ext_degree(), 3);
  FieldElem t = FieldElem::t(K.get()), u = FieldElem::u(K.get());
  EXPECT_EQ(u.pow(3), t * t - t);
}

TEST(TowerBuild, RejectsReducibleBase) {
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^2-1"), {}, std::nullopt), MathError);
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^4+4"), {}, std::nullopt), MathError);
}

TEST(TowerBuild, RejectsReducibleExtension) {
  // u^2 - t^2 = (u - t)(u + t)
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^2+1"), {"t"}, std::string("u^2 - t^2")), MathError);
  // u^2 + 1 splits over Q(i)
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^2+1"), {}, std::string("u^2 + 1")), MathError);
}

TEST(TowerBuild, RejectsMalformedExtension) {
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^2+1"), {"t"}, std::string("2*u^2 + t")), SchemaError);
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^2+1"), {"t"}, std::string("u^2 + s")), SchemaError);
  EXPECT_THROW(FieldTower::build(parse_qpoly("x^2+1"), {"t"}, std::string("u^2 +")), SchemaError);
}

TEST(IsAlgebraic, Examples) {
  auto K = zeta3_t_u();
  EXPECT_TRUE(parse_elem(K.get(), "3/2 + alpha").is_algebraic());
  EXPECT_FALSE(parse_elem(K.get(), "t").is_algebraic());
  FieldElem e = parse_elem(K.get(), "(t*u)/(t*u)");
  EXPECT_TRUE(e.is_algebraic());
  EXPECT_TRUE(e.is_one());
  EXPECT_FALSE(parse_elem(K.get(), "u").is_algebraic());
}

TEST(Rref, Examples) {
  auto K = zeta3_t_u();
  const FieldTower* k = K.get();
  EXPECT_EQ(rref(mat(k, {{"t", "t"}})), mat(k, {{"1", "1"}}));
  EXPECT_EQ(rref(mat(k, {{"1", "t"}, {"0", "0"}})), mat(k, {{"1", "t"}, {"0", "0"}}));
  EXPECT_EQ(rref(mat(k, {{"2", "4"}, {"1", "2"}})), mat(k, {{"1", "2"}, {"0", "0"}}));
}

TEST(SubspaceIsRational, Examples) {
  auto K = zeta3_t_u();
  const FieldTower* k = K.get();
  EXPECT_FALSE(subspace_is_rational(mat(k, {{"1", "t"}})));
  EXPECT_TRUE(subspace_is_rational(mat(k, {{"t", "t"}})));
  EXPECT_TRUE(subspace_is_rational(mat(k, {{"1", "0"}, {"t", "1"}})));
}

TEST(FieldElem, AxiomsOnRandomTriples) {
  auto K = zeta3_t_u();
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 12; ++it) {
    FieldElem a = random_elem(K.get(), rng), b = random_elem(K.get(), rng), c = random_elem(K.get(), rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
  }
}

TEST(FieldElem, DivisionByZeroRejected) {
  auto K = zeta3_t_u();
  EXPECT_THROW(FieldElem(K.get(), 0L).inverse(), MathError);
  EXPECT_THROW(parse_elem(K.get(), "1/(t - t)"), SchemaError);
}

TEST(FieldElem, CanonicalStringRoundTrip) {
  auto K = zeta3_t_u();
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    FieldElem a = random_elem(K.get(), rng);
    EXPECT_EQ(parse_elem(K.get(), a.str()), a) << a.str();
  }
  EXPECT_EQ(parse_elem(K.get(), "alpha^2").str(), "-alpha - 1");
  EXPECT_EQ(parse_elem(K.get(), "u^4").str(), "t^2*u - t*u");
  EXPECT_EQ(parse_elem(K.get(), "1/(t+1)").str(), "(1)/(t + 1)");
}

TEST(Rref, IdempotentAndRowOperationInvariant) {
  auto K = zeta3_t_u();
  std::mt19937_64 rng(99);
  for (int it = 0; it < 3; ++it) {
    KMatrix m(3, 4, FieldElem(K.get(), 0L));
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 4; ++j) m(i, j) = random_elem(K.get(), rng, false);
    FieldElem c = random_elem(K.get(), rng, false);
    for (size_t j = 0; j < 4; ++j) m(2, j) = m(0, j) + c * m(1, j);
    KMatrix r = rref(m);
    EXPECT_EQ(rref(r), r);
    EXPECT_EQ(m.rank(), 2u);
    KMatrix m2 = m;
    for (size_t j = 0; j < 4; ++j) m2(0, j) = m(0, j) * c + m(1, j);
    if (!c.is_zero()) {
      EXPECT_EQ(m2.row_space(), m.row_space());
      EXPECT_EQ(subspace_is_rational(m2), subspace_is_rational(m));
    }
  }
}

TEST(SubspaceIsRational, AlgebraicEntriesAlwaysRational) {
  auto K = zeta3_t_u();
  KMatrix m = mat(K.get(), {{"alpha", "2", "1/3"}, {"1", "alpha+1", "0"}});
  EXPECT_TRUE(subspace_is_rational(m));
}

TEST(Matrix, KernelInverseDet) {
  auto K = zeta3_t_u();
  KMatrix m = mat(K.get(), {{"1", "t"}, {"u", "1"}});
  KMatrix inv = m.inverse();
  EXPECT_EQ(m * inv, KMatrix::identity(2, FieldElem(K.get(), 0L)));
  EXPECT_EQ(m.det(), parse_elem(K.get(), "1 - t*u"));
  KMatrix s = mat(K.get(), {{"1", "t", "u"}});
  KMatrix ker = s.kernel();
  EXPECT_EQ(ker.rows(), 2u);
  EXPECT_TRUE((s * ker.transpose()).is_zero());
}

TEST(Factor, IrreducibilityOverQ) {
  EXPECT_TRUE(is_irreducible_over_Q(parse_qpoly("x^2+x+1")));
  EXPECT_TRUE(is_irreducible_over_Q(parse_qpoly("x^6+x^3+1")));
  EXPECT_FALSE(is_irreducible_over_Q(parse_qpoly("x^4+4")));
  EXPECT_FALSE(is_irreducible_over_Q(parse_qpoly("x^6-1")));
  // Reducible modulo every prime, irreducible over Q.
  EXPECT_TRUE(is_irreducible_over_Q(parse_qpoly("x^4-10*x^2+1")));
  EXPECT_FALSE(is_irreducible_over_Q(parse_qpoly("(x^2-10*x+1)*(x^2+x+7)")));
  EXPECT_THROW(is_irreducible_over_Q(parse_qpoly("x^13+2")), MathError);
}

TEST(Factor, ResultantMatchesProductOfValues) {
  // Res(x^2+1, x-3) = (3)^2 + 1 for monic linear second argument.
  EXPECT_EQ(resultant(parse_qpoly("x^2+1"), parse_qpoly("x-3")), QQ(10));
  EXPECT_EQ(resultant(parse_qpoly("x^2-2"), parse_qpoly("x^2-3")), QQ(1));
}

TEST(NumberFieldExt, AdjoinSqrt2ToGaussian) {
  auto F = NumberField::make(parse_qpoly("x^2+1"));
  NFElem z(F.get(), 0L);
  FPoly p({NFElem(F.get(), -2L), z, z.one()}, z);
  FieldExtension E = adjoin_root(F, p);
  EXPECT_EQ(E.field->degree(), 4);
  EXPECT_EQ(E.root * E.root, NFElem(E.field.get(), 2L));
  EXPECT_EQ(E.alpha_image * E.alpha_image, NFElem(E.field.get(), -1L));
}

TEST(NumberFieldExt, AdjoinCubeRootOverZeta3) {
  auto F = NumberField::make(parse_qpoly("x^2+x+1"));
  NFElem z(F.get(), 0L);
  FPoly p({NFElem(F.get(), -2L), z, z, z.one()}, z);
  EXPECT_TRUE(is_irreducible_over(p));
  FieldExtension E = adjoin_root(F, p);
  EXPECT_EQ(E.field->degree(), 6);
  EXPECT_EQ(E.root.pow(3), NFElem(E.field.get(), 2L));
  NFElem a = E.alpha_image;
  EXPECT_TRUE((a * a + a + a.one()).is_zero());
  NFElem emb = embed(NFElem::generator(F.get()), E.field.get(), a);
  EXPECT_EQ(emb, a);
}

TEST(NumberFieldExt, RootsOfUnity) {
  auto Q = NumberField::rationals();
  EXPECT_FALSE(primitive_root_of_unity(*Q, 3).has_value());
  auto F3 = NumberField::make(parse_qpoly("x^2+x+1"));
  auto z6 = primitive_root_of_unity(*F3, 6);
  ASSERT_TRUE(z6.has_value());
  EXPECT_TRUE(z6->pow(6).is_one());
  EXPECT_FALSE(z6->pow(3).is_one());
  EXPECT_FALSE(z6->pow(2).is_one());
  auto Fi = NumberField::make(parse_qpoly("x^2+1"));
  EXPECT_TRUE(primitive_root_of_unity(*Fi, 4).has_value());
  EXPECT_FALSE(primitive_root_of_unity(*Fi, 8).has_value());
  auto F5 = NumberField::make(parse_qpoly("x^4+x^3+x^2+x+1"));
  EXPECT_TRUE(primitive_root_of_unity(*F5, 5).has_value());
  EXPECT_TRUE(primitive_root_of_unity(*F5, 10).has_value());
}

TEST(NumberFieldExt, RootsInField) {
  auto F = NumberField::make(parse_qpoly("x^2+x+1"));
  NFElem z(F.get(), 0L);
  // y^3 = 8 has the three roots 2, 2*zeta, 2*zeta^2.
  FPoly p({NFElem(F.get(), -8L), z, z, z.one()}, z);
  auto r = roots_in_field(p);
  ASSERT_EQ(r.size(), 3u);
  for (auto& y : r) EXPECT_EQ(y.pow(3), NFElem(F.get(), 8L));
  // y^2 = -3 is solvable in Q(zeta3): (2 zeta + 1)^2 = -3.
  FPoly q({NFElem(F.get(), 3L), z, z.one()}, z);
  EXPECT_EQ(roots_in_field(q).size(), 2u);
  // y^2 = 2 is not.
  FPoly w({NFElem(F.get(), -2L), z, z.one()}, z);
  EXPECT_TRUE(roots_in_field(w).empty());
  auto Q = NumberField::rationals();
  NFElem zq(Q.get(), 0L);
  FPoly s({NFElem(Q.get(), QQ(-9, 4)), zq, zq.one()}, zq);
  auto rs = roots_in_field(s);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0], NFElem(Q.get(), QQ(-3, 2)));
}
