#pragma once

#include <vector>

#include "tauforge/poly.hpp"

namespace tauforge {

using PolyMatrix = std::vector<std::vector<Poly>>;

// Determinant over the polynomial ring. Laplace expansion with memoized
// minors up to 6x6, fraction-free Bareiss elimination (exact divisions)
// above. Non-square or ragged input is a structural error; the empty matrix
// has determinant 1.
Poly det_poly(const PolyMatrix& m);

// Naive cofactor expansion, kept as an independent cross-check for tests.
Poly det_poly_cofactor(const PolyMatrix& m);

// Pfaffian of a skew-symmetric 2l x 2l matrix (skew-symmetry is checked).
// Pf of the empty matrix is 1. Pf^2 = det.
Poly pfaffian_poly(const PolyMatrix& m);

}  // namespace tauforge
