#pragma once

#include "logfol/integer_matrix.hpp"

namespace logfol {

// LLL-reduces the rows of `basis` (which must be linearly independent) with
// exact rational Gram-Schmidt data. Returns the reduced basis; the change of
// basis is unimodular, so any subset of the output rows spans a saturated
// sublattice of the input lattice.
IntegerMatrix lll_reduce(const IntegerMatrix& basis, const Rational& delta = Rational(99, 100));

}  // namespace logfol
