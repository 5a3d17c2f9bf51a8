#pragma once

#include "belyi/field.hpp"
#include "belyi/matrix.hpp"

namespace belyi {

using KMatrix = Matrix<FieldElem>;

/// RREF over K (rows kept, zero rows last).
inline KMatrix rref(const KMatrix& m) { return m.rref(); }

/// True iff the canonical basis of the row space has only entries in F.
inline bool subspace_is_rational(const KMatrix& basis) {
  KMatrix r = basis.row_space();
  for (size_t i = 0; i < r.rows(); ++i)
    for (size_t j = 0; j < r.cols(); ++j)
      if (!r(i, j).is_algebraic()) return false;
  return true;
}

}  // namespace belyi
