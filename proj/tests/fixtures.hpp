#pragma once

#include <memory>
#include <string>

#include "belyi/curve.hpp"

namespace fixtures {

inline std::shared_ptr<const belyi::FieldTower> tower(const std::string& minpoly) {
  return belyi::FieldTower::build(belyi::parse_qpoly(minpoly), {}, std::nullopt);
}

inline std::shared_ptr<const belyi::FieldTower> rationals() { return tower("x"); }
inline std::shared_ptr<const belyi::FieldTower> gaussian() { return tower("x^2+1"); }
inline std::shared_ptr<const belyi::FieldTower> eisenstein() { return tower("x^2+x+1"); }
inline std::shared_ptr<const belyi::FieldTower> cyclotomic5() { return tower("x^4+x^3+x^2+x+1"); }
inline std::shared_ptr<const belyi::FieldTower> cyclotomic8() { return tower("x^4+1"); }
inline std::shared_ptr<const belyi::FieldTower> eisenstein_t_u() {
  return belyi::FieldTower::build(belyi::parse_qpoly("x^2+x+1"), {"t"}, std::string("u^3 - t^2 + t"));
}

inline std::shared_ptr<const belyi::Curve> curve(int N, int a, int b, std::shared_ptr<const belyi::FieldTower> K) {
  return belyi::Curve::build(N, a, b, std::move(K));
}

/// The standard desk curves.
inline std::shared_ptr<const belyi::Curve> conic() { return curve(2, 1, 0, rationals()); }
inline std::shared_ptr<const belyi::Curve> cubic() { return curve(3, 1, 1, eisenstein()); }
inline std::shared_ptr<const belyi::Curve> quintic() { return curve(5, 1, 1, cyclotomic5()); }
inline std::shared_ptr<const belyi::Curve> quartic() { return curve(4, 2, 1, gaussian()); }

inline belyi::FieldElem K(const belyi::Curve& c, const std::string& s) { return belyi::parse_elem(c.field(), s); }

}  // namespace fixtures
