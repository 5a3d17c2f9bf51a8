#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "belyi/descent.hpp"
#include "fixtures.hpp"

using namespace belyi;
using namespace fixtures;

namespace {

const Place P0 = Place::zero(0), P1 = Place::one(0), Pinf = Place::infinity();
Divisor pt(const Place& p, long c = 1) { return Divisor::point(p, c); }
SplitBundle bundle(const std::shared_ptr<const Curve>& c, std::vector<Divisor> D) { return SplitBundle{c, std::move(D)}; }

/// A K-rational point of y^3 = x^2 - x away from the branch fibers: x^2 - x = -1 at x = -zeta_3.
Place cubic_point(const Curve& c) { return c.make_place(K(c, "-alpha"), K(c, "-1")); }

}  // namespace

TEST(Pullback, ConicStructureSheafIsTrivial) {
  auto c = conic();
  SplitBundle E = bundle(c, {Divisor()});
  auto U = parabolic_pullback(assemble_parabolic(E), c);
  EXPECT_EQ(U.rank(), 2);
  EXPECT_EQ(U.degree(), 0);
  auto m = class_decompose(U, {Divisor(), Divisor()});
  EXPECT_TRUE(m.success) << m.reason;
  EXPECT_EQ(m.classes, (std::vector<Divisor>{Divisor(), Divisor()}));
}

TEST(Pullback, TrivialWeightsGivePlainPullback) {
  auto c = conic();
  auto W = assemble_parabolic(bundle(c, {Divisor()}));
  for (auto& p : W.points)
    for (auto& fl : p.flags) {
      for (auto& w : fl.weights) w = QQ(0);
      for (auto& E : fl.E) E = fl.E[0];
    }
  auto U = parabolic_pullback(W, c);
  EXPECT_TRUE(U.conditions.empty());
  EXPECT_EQ(U.degree(), 2 * -1);
}

TEST(Pullback, IncompatibleWeightRejected) {
  auto c = cubic();
  auto W = assemble_parabolic(bundle(c, {Divisor()}));
  W.points[0].flags[0].weights[1] = QQ(1, 2);
  EXPECT_THROW(parabolic_pullback(W, c), MathError);
}

TEST(ClassDecompose, PlainPullbackOfSplitBundle) {
  auto c = conic();
  auto U = plain_pullback(c, {0, -1});
  auto m = class_decompose(U, {Divisor(), -pt(P0) - pt(Pinf)});
  EXPECT_TRUE(m.success) << m.reason;
}

TEST(ClassDecompose, WrongDegreeFails) {
  auto c = conic();
  auto U = plain_pullback(c, {0, -1});
  auto m = class_decompose(U, {Divisor(), Divisor()});
  EXPECT_FALSE(m.success);
  EXPECT_NE(m.reason.find("degree"), std::string::npos);
}

TEST(ClassDecompose, OrderIndependent) {
  auto c = cubic();
  Place q = cubic_point(*c);
  SplitBundle E = bundle(c, {pt(q) - pt(Pinf)});
  auto U = parabolic_pullback(assemble_parabolic(E), c);
  auto cands = translate_classes(E);
  auto base = class_decompose(U, cands);
  ASSERT_TRUE(base.success) << base.reason;
  std::mt19937_64 rng(4);
  for (int it = 0; it < 3; ++it) {
    std::shuffle(cands.begin(), cands.end(), rng);
    EXPECT_EQ(class_decompose(U, cands, static_cast<std::uint64_t>(it)).classes, base.classes);
  }
}

TEST(TranslateSum, WorkedExamples) {
  EXPECT_TRUE(verify_e18(bundle(conic(), {Divisor()})));
  EXPECT_TRUE(verify_e18(bundle(cubic(), {pt(P0) - pt(Pinf)})));
  auto c = cubic();
  Place q = cubic_point(*c);
  SplitBundle E = bundle(c, {pt(q) - pt(Pinf)});
  auto cls = translate_classes(E);
  EXPECT_NE(cls[0], cls[1]);
  EXPECT_NE(cls[1], cls[2]);
  EXPECT_TRUE(verify_e18(E));
}

TEST(TranslateSum, RankTwoAndSeeds) {
  auto c = cubic();
  EXPECT_TRUE(verify_e18(bundle(c, {Divisor(), pt(P1) - pt(P0)}), 7));
  auto k = conic();
  Place q = k->make_place(K(*k, "4"), K(*k, "2"));
  EXPECT_TRUE(verify_e18(bundle(k, {pt(q), -pt(P0)}), 3));
}

TEST(Tower, Transversals) {
  auto Y = curve(4, 2, 1, gaussian());
  auto T = TowerSpec::build(Y, 2);
  auto tr = invariants_transversal(T);
  EXPECT_EQ(tr.S, (std::vector<int>{0, 1}));
  EXPECT_EQ(tr.epsilon, 0);
  EXPECT_EQ(invariants_transversal(TowerSpec::build(Y, 4)).S, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_THROW(TowerSpec::build(Y, 1), MathError);
  EXPECT_THROW(TowerSpec::build(Y, 3), MathError);
  EXPECT_THROW(curve(6, 1, 1, eisenstein()), MathError);
}

TEST(Tower, PullbackIsGInvariantAndComposes) {
  auto Y = curve(4, 2, 1, gaussian());
  auto T = TowerSpec::build(Y, 2);
  EXPECT_TRUE(T.check_composition());
  for (auto& p : T.X->places_over_zero()) {
    Divisor d = T.pullback(p);
    EXPECT_EQ(d.degree(), 2);
    EXPECT_EQ(Y->galois_translate(d, 2), d);
  }
  EXPECT_EQ(T.pullback(Place::infinity()), pt(Pinf, 2));
}

TEST(Tower, InvariantSubbundle) {
  auto Y = curve(4, 2, 1, gaussian());
  auto T = TowerSpec::build(Y, 2);
  EXPECT_TRUE(verify_invariant_subbundle(T, SplitBundle{T.X, {Divisor()}}));
  EXPECT_TRUE(verify_invariant_subbundle(T, SplitBundle{T.X, {pt(T.X->places_over_zero()[0]) - pt(Pinf)}}));
}

TEST(Tower, GaloisCaseReducesToTranslateSum) {
  auto c = cubic();
  auto T = TowerSpec::build(c, 3);
  EXPECT_TRUE(verify_invariant_subbundle(T, bundle(c, {pt(P0) - pt(Pinf)})));
}

TEST(PushdownExtract, Bookkeeping) {
  ClassMatch m;
  m.success = true;
  m.matched = {2, 0, 1, 3};
  std::vector<std::pair<int, int>> labels{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  std::vector<Divisor> src{pt(P0), pt(P1)};
  EXPECT_EQ(pushdown_extract(m, labels, src, 0), src);
  m.matched = {0, 0, 1, 3};
  EXPECT_THROW(pushdown_extract(m, labels, src, 0), InternalError);
}

TEST(EndAlgebra, Dimensions) {
  auto c = cubic();
  EndAlgebra line(bundle(c, {pt(P0) - pt(Pinf)}));
  EXPECT_EQ(line.dim(), 1u);
  EXPECT_TRUE(line.check());
  auto k = conic();
  EndAlgebra split(bundle(k, {Divisor(), -pt(Pinf)}));
  EXPECT_EQ(split.dim(), 4u);
  EXPECT_TRUE(split.check());
  EndAlgebra trivial(bundle(c, {Divisor(), Divisor()}));
  EXPECT_EQ(trivial.dim(), 4u);
}

TEST(EndAlgebra, IndecomposableTest) {
  auto c = cubic();
  EXPECT_TRUE(indecomposable_test(EndAlgebra(bundle(c, {pt(P0) - pt(Pinf)}))));
  auto k = conic();
  EndAlgebra split(bundle(k, {Divisor(), -pt(Pinf)}));
  EXPECT_FALSE(indecomposable_test(split));
  // diag(1, -1) is trace zero and squares to the identity.
  EndAlgebra::Elem d = split.identity();
  for (size_t i = 0; i < split.dim(); ++i)
    if (split.basis()[i].i == 1 && split.basis()[i].j == 1) d[i] = -d[i];
  EXPECT_TRUE(split.trace(d).is_zero());
  EXPECT_EQ(split.multiply(d, d), split.identity());
  EXPECT_FALSE(indecomposable_test(EndAlgebra(bundle(c, {Divisor(), Divisor()}))));
}

TEST(EndAlgebra, OfConstrainedBundle) {
  auto c = conic();
  auto U = parabolic_pullback(assemble_parabolic(bundle(c, {Divisor()})), c);
  auto m = class_decompose(U, {Divisor(), Divisor()});
  auto A = EndAlgebra::of(U, m);
  EXPECT_EQ(A.dim(), 4u);
  EXPECT_FALSE(indecomposable_test(A));
}

TEST(Descent, TFreeBundleIsDefined) {
  auto v = descent_verdict(bundle(cubic(), {pt(P0) - pt(Pinf)}));
  EXPECT_EQ(v.kind, DescentVerdict::Kind::DefinedOverF);
  EXPECT_TRUE(v.agrees);
}

TEST(Descent, TranscendentalPointIsNotDefined) {
  auto c = curve(3, 1, 1, eisenstein_t_u());
  Place p = c->make_place(K(*c, "t"), K(*c, "u"));
  auto v = descent_verdict(bundle(c, {pt(p) - pt(Pinf)}));
  EXPECT_TRUE(v.pullback_matches);
  EXPECT_EQ(v.kind, DescentVerdict::Kind::NotDefined);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->ell, 0);
  EXPECT_TRUE(v.agrees);
}

TEST(Descent, InvariantClassIsDefined) {
  auto c = curve(3, 1, 1, eisenstein_t_u());
  Place p = c->make_place(K(*c, "t"), K(*c, "u"));
  Divisor D = pt(p) + pt(c->galois_translate(p, 1)) + pt(c->galois_translate(p, 2)) - pt(Pinf, 3);
  auto v = descent_verdict(bundle(c, {D}));
  EXPECT_EQ(v.kind, DescentVerdict::Kind::DefinedOverF);
  ASSERT_EQ(v.certificate.size(), 1u);
  EXPECT_TRUE(v.certificate[0].is_t_free());
  EXPECT_TRUE(v.agrees);
}
