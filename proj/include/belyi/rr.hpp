#pragma once

#include <optional>
#include <string>
#include <vector>

#include "belyi/curve.hpp"
#include "belyi/linalg.hpp"

namespace belyi {

struct FunctionBasis {
  Divisor D;
  std::vector<CurveFunction> basis;
  size_t dim() const { return basis.size(); }
};

/// L(D) = { f : div f + D >= 0 } via the integral-basis ansatz.
class RRSpace {
 public:
  RRSpace(const Curve& c, const Divisor& D);

  const Divisor& divisor() const { return D_; }
  size_t dim() const { return basis_.size(); }
  const std::vector<CurveFunction>& basis() const { return basis_; }
  FunctionBasis as_basis() const { return FunctionBasis{D_, basis_}; }
  /// Coefficients of f in basis(), or nullopt when f is not in L(D).
  std::optional<std::vector<FieldElem>> coordinates(const CurveFunction& f) const;
  /// Number of ansatz unknowns and constraints (for reports).
  size_t unknowns() const { return unknowns_; }
  size_t constraints() const { return constraints_; }

 private:
  std::optional<std::vector<FieldElem>> ansatz_vector(const CurveFunction& f) const;
  CurveFunction from_ansatz(const std::vector<FieldElem>& v) const;

  const Curve* C_;
  Divisor D_;
  KPoly q_;
  std::vector<long> deg_;       // bound on deg p_j, -1 when p_j = 0
  std::vector<size_t> offset_;  // first unknown of p_j
  size_t unknowns_ = 0, constraints_ = 0;
  KMatrix rows_;                // basis in ansatz coordinates, RREF
  std::vector<size_t> pivots_;
  std::vector<CurveFunction> basis_;
};

FunctionBasis rr_space(const Curve& c, const Divisor& D);
long ell(const Curve& c, const Divisor& D);

/// f in L(D), checked by valuations at every possible pole.
bool in_space(const Curve& c, const CurveFunction& f, const Divisor& D);
/// div f == E exactly (membership in L(-E) plus degree accounting).
bool has_divisor(const Curve& c, const CurveFunction& f, const Divisor& E);

struct LinEquiv {
  bool equivalent = false;
  std::optional<CurveFunction> witness;  // div(witness) = D1 - D2
  long ell = 0;                          // l(D2 - D1)
};
LinEquiv lin_equiv(const Curve& c, const Divisor& D1, const Divisor& D2);

/// Hom(O(D1), O(D2)) = L(D2 - D1).
FunctionBasis hom_space(const Curve& c, const Divisor& D1, const Divisor& D2);

struct OracleVerdict {
  enum class Kind { Descends, Fails, Unknown };
  Kind kind = Kind::Unknown;
  Divisor representative;                // t-free divisor in the class (Descends)
  std::optional<CurveFunction> witness;  // div(witness) = D - representative
  std::string tau, u_tau;                // specialization used
  std::string field;                     // coefficient field of the comparison
  std::shared_ptr<const Curve> curve;    // curve the comparison ran on (owns the field)
  long ell = 0;                          // l(D(tau) - D) on the comparison curve
  std::string note;
};
std::string to_string(OracleVerdict::Kind k);

/// Line-bundle descent oracle by specialization of the transcendental.
OracleVerdict line_descent_oracle(const Curve& c, const Divisor& D, int max_tau = 64);

/// Deterministic enumeration of small F-integers (excluding 0 and 1).
std::vector<NFElem> small_integers(const NumberField* F, int count);

}  // namespace belyi
