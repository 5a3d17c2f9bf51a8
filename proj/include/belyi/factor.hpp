#pragma once

#include <optional>

#include "belyi/numberfield.hpp"

namespace belyi {

/// Largest degree accepted by the irreducibility tests.
inline constexpr int kMaxFactorDegree = 12;

/// Resultant of two polynomials over Q.
QQ resultant(const QPoly& a, const QPoly& b);

/// Irreducibility over Q. Uses factorization patterns modulo small primes and
/// falls back to Kronecker's trial-divisor search; rejects degree > 12.
bool is_irreducible_over_Q(const QPoly& f);

/// Norm N_{F/Q}(g(u - k*alpha)) as a polynomial in u.
QPoly shifted_norm(const FPoly& g, long k);

/// Irreducibility over F via Trager's shifted norm. Degree of the norm must
/// stay within kMaxFactorDegree.
bool is_irreducible_over(const FPoly& g);

/// A root of f modulo the prime p, if f has one there.
std::optional<long long> root_mod_p(const QPoly& f, long long p);

/// All roots in F of a nonzero polynomial over F, sorted and without
/// repetition. Found p-adically at a prime splitting F completely and
/// verified exactly; roots whose coordinates exceed ~2^2048 in height are
/// not found.
std::vector<NFElem> roots_in_field(const FPoly& f);

/// Newton interpolation through (x_i, y_i) over Q.
QPoly interpolate(const std::vector<QQ>& xs, const std::vector<QQ>& ys);

}  // namespace belyi
