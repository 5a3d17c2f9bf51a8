#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "belyi/poly.hpp"
#include "belyi/qq.hpp"

namespace belyi {

using QPoly = Poly<QQ>;

/// F = Q[alpha]/(m(alpha)) for an irreducible monic m.
class NumberField {
 public:
  /// Validates irreducibility of `minpoly` over Q and rescales it to monic.
  static std::shared_ptr<const NumberField> make(const QPoly& minpoly, std::string name = "alpha");
  /// The rational numbers, as the degree-1 field.
  static std::shared_ptr<const NumberField> rationals(std::string name = "alpha");

  int degree() const { return degree_; }
  const QPoly& minpoly() const { return minpoly_; }
  const std::string& name() const { return name_; }
  /// alpha^k reduced to the power basis, for degree <= k <= 2*degree-2.
  const std::vector<mpq_class>& reduction(int k) const { return reduce_[static_cast<size_t>(k - degree_)]; }
  /// A prime p and a root of the minimal polynomial modulo p, used to map F
  /// to F_p for cheap coprimality certificates.
  long long split_prime() const { return prime_; }
  long long split_root() const { return root_; }

 private:
  NumberField(QPoly minpoly, std::string name);
  QPoly minpoly_;
  int degree_ = 1;
  std::string name_;
  std::vector<std::vector<mpq_class>> reduce_;
  long long prime_ = 0;
  long long root_ = 0;
};

/// Element of a number field in the power basis 1, alpha, ..., alpha^{d-1}.
class NFElem {
 public:
  NFElem() = default;
  NFElem(const NumberField* F, long n);
  NFElem(const NumberField* F, const QQ& q);
  NFElem(const NumberField* F, std::vector<mpq_class> coeffs);
  static NFElem generator(const NumberField* F);

  const NumberField* field() const { return F_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  QPoly as_qpoly() const;

  NFElem zero() const { return NFElem(F_, 0L); }
  NFElem one() const { return NFElem(F_, 1L); }
  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  QQ rational_part() const { return QQ(c_.empty() ? mpq_class(0) : c_[0]); }
  NFElem inverse() const;
  NFElem pow(long e) const;

  NFElem operator-() const;
  NFElem& operator+=(const NFElem& o);
  NFElem& operator-=(const NFElem& o);
  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
  friend bool operator==(const NFElem& a, const NFElem& b) { return a.c_ == b.c_; }
  friend int compare(const NFElem& a, const NFElem& b);

  /// Sum of "q*alpha^i" terms, highest power first; "0" for zero.
  std::string str() const;
  /// Number of nonzero power-basis terms (drives parenthesization).
  int term_count() const;

 private:
  const NumberField* F_ = nullptr;
  std::vector<mpq_class> c_;
};

using FPoly = Poly<NFElem>;

/// True when a and b are certified coprime by their images modulo the split
/// prime of F. A false answer is inconclusive.
bool certainly_coprime(const FPoly& a, const FPoly& b);

/// A primitive n-th root of unity in F, if F has one.
std::optional<NFElem> primitive_root_of_unity(const NumberField& F, int n);

/// Result of adjoining a root of an irreducible p in F[v] to F.
struct FieldExtension {
  std::shared_ptr<const NumberField> field;  // F' = Q(theta)
  NFElem alpha_image;                        // image of F's generator in F'
  NFElem root;                               // a root of p in F'
};

/// Builds F' = F[v]/(p) as a simple extension of Q by a primitive element.
/// Requires p irreducible over F (checked).
FieldExtension adjoin_root(const std::shared_ptr<const NumberField>& F, const FPoly& p,
                           const std::string& name = "alpha");

/// Maps an element of F into an extension via the generator image.
NFElem embed(const NFElem& x, const NumberField* target, const NFElem& alpha_image);

}  // namespace belyi
