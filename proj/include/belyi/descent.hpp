#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "belyi/pushpar.hpp"

namespace belyi {

/// Linear conditions on the polar part of a section at one place. A section
/// (h_k) of the ambient is written in the pulled-back frame; the coefficient
/// vector H_{-j} of t^{-j} must be killed by every row of functionals[j-1].
struct JetCondition {
  Place place;
  std::vector<KMatrix> functionals;  // j = 1..depth
  long depth() const { return static_cast<long>(functionals.size()); }
  size_t count() const;
};

/// Subsheaf of the ambient sum O(A_k) cut out by jet conditions. Near
/// infinity the frame vector e_k is x^{frame_twist[k]}.
struct ConstrainedBundle {
  std::shared_ptr<const Curve> curve;
  SplitBundle ambient;
  std::vector<long> frame_twist;
  std::vector<JetCondition> conditions;

  int rank() const { return ambient.rank(); }
  size_t condition_count() const;
  long degree() const { return ambient.degree() - static_cast<long>(condition_count()); }
};

/// Underlying bundle of the parabolic pullback of W_* along the x-map of Y.
/// Y may cover the curve of W (same a, b and N divisible by its N).
ConstrainedBundle parabolic_pullback(const ParabolicP1Bundle& W, std::shared_ptr<const Curve> Y);
/// Plain pullback of O(m_1) + ... + O(m_n) along the x-map.
ConstrainedBundle plain_pullback(std::shared_ptr<const Curve> Y, const std::vector<long>& m);

/// Hom(O(D), U) as a basis of section vectors.
std::vector<std::vector<CurveFunction>> hom_into(const ConstrainedBundle& U, const Divisor& D);

struct ClassMatch {
  bool success = false;
  std::string reason;
  std::vector<size_t> matched;                     // candidate indices, in matching order
  std::vector<Divisor> classes;                    // matched candidates, sorted
  std::vector<std::vector<CurveFunction>> maps;    // O(D) -> U for each matched index
  long degree = 0;                                 // deg U
};
/// Greedy split injection of candidate line bundles into U; an injection of
/// equal degree is an isomorphism.
ClassMatch class_decompose(const ConstrainedBundle& U, const std::vector<Divisor>& candidates, std::uint64_t seed = 0);

/// The Galois translates g^* D_i, g in Z/N, i = 1..r, in that order.
std::vector<Divisor> translate_classes(const SplitBundle& E);
bool verify_e18(const SplitBundle& E, std::uint64_t seed = 0);

/// Cyclic tower Y -> X -> P^1 with X: y^M = x^a (x-1)^b and gamma(x, y) = (x, y^{N/M}).
struct TowerSpec {
  std::shared_ptr<const Curve> Y, X;
  int M = 1;

  static TowerSpec build(std::shared_ptr<const Curve> Y, int M);
  int degree_gamma() const { return Y->N() / M; }
  /// g in G = Gal(Y/X) iff g is a multiple of M.
  bool in_G(int g) const { return g % M == 0; }
  /// gamma^* of a place and of a divisor of X.
  Divisor pullback(const Place& p) const;
  Divisor pullback(const Divisor& D) const;
  /// f_0 o gamma_0 = phi_0 on places of Y (x-values and ramification agree).
  bool check_composition() const;
};

struct Transversal {
  std::vector<int> S;
  int epsilon = 0;
};
Transversal invariants_transversal(const TowerSpec& T);

struct LabeledCandidates {
  std::vector<Divisor> classes;                 // on Y
  std::vector<std::pair<int, int>> labels;      // (g, i)
};
LabeledCandidates tower_candidates(const TowerSpec& T, const SplitBundle& E, const std::vector<int>& S);

bool verify_invariant_subbundle(const TowerSpec& T, const SplitBundle& E, std::uint64_t seed = 0);

/// Classes of the epsilon-component: for each i the source class D_i,
/// checked against a matching that uses every label exactly once.
std::vector<Divisor> pushdown_extract(const ClassMatch& m, const std::vector<std::pair<int, int>>& labels,
                                      const std::vector<Divisor>& sources, int epsilon);

/// End(O(D_1) + ... + O(D_r)) with basis E_ij * b, b in L(D_i - D_j).
class EndAlgebra {
 public:
  using Elem = std::vector<FieldElem>;
  struct BasisElem {
    int i, j;
    CurveFunction f;
  };

  explicit EndAlgebra(const SplitBundle& B);
  /// End(U) through a certified matching U = sum O(D).
  static EndAlgebra of(const ConstrainedBundle& U, const ClassMatch& m);

  size_t dim() const { return basis_.size(); }
  int rank() const { return B_.rank(); }
  const std::vector<BasisElem>& basis() const { return basis_; }
  Elem unit(size_t k) const;
  Elem identity() const;
  Elem multiply(const Elem& a, const Elem& b) const;
  FieldElem trace(const Elem& a) const;
  /// Closed under products, contains the identity, trace(1) = rank.
  bool check() const;
  std::string str(const Elem& a) const;

 private:
  SplitBundle B_;
  std::vector<BasisElem> basis_;
  std::vector<std::vector<Elem>> table_;  // table_[a][b] = basis_a * basis_b
};

/// Trace-zero endomorphisms form a nilpotent algebra.
bool indecomposable_test(const EndAlgebra& A);

struct DescentVerdict {
  enum class Kind { DefinedOverF, NotDefined, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<Divisor> certificate;          // t-free representatives (DefinedOverF)
  std::vector<OracleVerdict> summands;       // oracle on each reconstructed class
  std::optional<OracleVerdict> witness;      // first failing summand (NotDefined)
  bool pullback_matches = false;             // pullback matched the translate classes
  Kind direct = Kind::Unknown;               // oracle applied to each D_i directly
  bool agrees = false;
  std::string note;
};
std::string to_string(DescentVerdict::Kind k);

DescentVerdict descent_verdict(const SplitBundle& E, int max_tau = 64, std::uint64_t seed = 0);

}  // namespace belyi
