#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "belyi/rr.hpp"

namespace belyi {

/// E = O(D_1) + ... + O(D_r) on the curve.
struct SplitBundle {
  std::shared_ptr<const Curve> curve;
  std::vector<Divisor> D;

  int rank() const { return static_cast<int>(D.size()); }
  long degree() const;
  bool is_t_free() const;
  std::string str() const;
};

enum class BasePoint { Zero, One, Infinity };
std::string to_string(BasePoint y);
inline constexpr BasePoint kBasePoints[] = {BasePoint::Zero, BasePoint::One, BasePoint::Infinity};
std::vector<Place> places_over(const Curve& c, BasePoint y);

/// h0(f_*E (m)) = sum_i l(D_i + m F_inf).
long h0_twist(const SplitBundle& E, long m);

struct SplittingType {
  std::vector<long> m;                            // descending
  std::vector<std::pair<long, long>> profile;     // (m, h0(W(m))) over the scan window
};
SplittingType pushforward_splitting_type(const SplitBundle& E);

/// Jet-coordinate model of (f_*E)_y. Coordinate (p, k, i) is the coefficient
/// of t^k in the expansion of summand i at places[p], trivialized by
/// t^{-D_i(x)}; coordinates are ordered by place, then k, then i.
struct FiberModel {
  BasePoint y = BasePoint::Zero;
  std::vector<Place> places;
  int e = 1;  // multiplicity of every place over y
  int r = 1;  // rank of E
  std::vector<std::vector<long>> shift;  // shift[p][i] = D_i(places[p])

  size_t dim() const { return places.size() * static_cast<size_t>(e * r); }
  size_t index(size_t p, int k, int i) const {
    return (p * static_cast<size_t>(e) + static_cast<size_t>(k)) * static_cast<size_t>(r) + static_cast<size_t>(i);
  }
  /// Basis of V_x for x = places[p] as unit rows.
  KMatrix block(size_t p, const FieldElem& zero) const;
};
FiberModel fiber_decomposition(const SplitBundle& E, BasePoint y);

/// Fiber coordinates of f, a section of O(D_i) (x) f^*O(twist), placed in summand i.
std::vector<FieldElem> fiber_jets(const SplitBundle& E, const FiberModel& F, int i, const CurveFunction& f, long twist);

/// Chain E(x,0) > E(x,1) > ... > E(x,e) = 0 at one place with weights k/e.
struct Flag {
  Place place;
  std::vector<KMatrix> E;  // canonical row bases, k = 0..e
  std::vector<QQ> weights; // weight of E[k], k = 0..e-1
};
/// Flags at y in fiber coordinates: E(x,k) is spanned by jets of order >= k at x.
std::vector<Flag> parabolic_filtration(const SplitBundle& E, const FiberModel& F);

/// A global section of f_*E (x) O(-m): f_i in L(D_i - m F_inf).
struct SplittingSection {
  long m = 0;
  std::vector<CurveFunction> f;
};
/// Sections realizing O(m_1) + ... + O(m_{Nr}) = f_*E. seed = 0 takes basis
/// elements greedily; other seeds try random integer combinations first.
std::vector<SplittingSection> compute_splitting_maps(const SplitBundle& E, const SplittingType& T, std::uint64_t seed = 0);
/// Full rank of the sections on the fiber over a point away from the support.
bool sections_are_isomorphism(const SplitBundle& E, const std::vector<SplittingSection>& S);
/// Fiber matrix at y: column j holds the fiber coordinates of section j.
KMatrix fiber_matrix(const SplitBundle& E, const FiberModel& F, const std::vector<SplittingSection>& S);

struct ParabolicPoint {
  BasePoint y;
  FiberModel fiber;
  KMatrix Sy;               // fiber coordinates of the splitting frame
  std::vector<Flag> flags;  // rows in the splitting frame
};

struct ParabolicP1Bundle {
  SplitBundle source;
  std::vector<long> splitting;
  std::vector<SplittingSection> sections;
  std::vector<ParabolicPoint> points;  // y = 0, 1, infinity

  const ParabolicPoint& at(BasePoint y) const { return points[static_cast<size_t>(y)]; }
  /// Distinct weights at y in increasing order.
  std::vector<QQ> weights(BasePoint y) const;
};
ParabolicP1Bundle assemble_parabolic(const SplitBundle& E, std::uint64_t seed = 0);

/// Violated structural invariants (empty when W_* is a valid parabolic bundle).
std::vector<std::string> parabolic_violations(const ParabolicP1Bundle& W);

/// Every flag of W_*, in canonical form, has entries in F.
bool verify_prop1(const SplitBundle& E, std::uint64_t seed = 0);

/// Image of the fiber of f_*(E(-k x - sum_{z != x} m_z z)) in (f_*E)_y,
/// computed from global sections of a sufficiently positive twist.
KMatrix twisted_image(const SplitBundle& E, const FiberModel& F, size_t p, int k);

/// Smallest integer x0 >= 2 at which all given functions are regular and
/// which avoids the x-coordinates of the places in the given divisors.
long good_point(const Curve& c, const std::vector<Divisor>& divisors, const std::vector<CurveFunction>& functions);
/// f restricted to the fiber over x0, in the basis 1, y, ..., y^{N-1} of K[y]/(y^N - h(x0)).
std::vector<FieldElem> fiber_values(const CurveFunction& f, const FieldElem& x0);

std::string weight_str(const QQ& w);

}  // namespace belyi
