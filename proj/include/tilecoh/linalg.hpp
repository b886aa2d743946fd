#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tilecoh/matrix.hpp"

namespace tilecoh {

// Coefficients of det(tI - A), lowest degree first; the last entry is 1.
std::vector<Int> characteristic_polynomial(const IntMatrix& a);

// Basis of ker(A) over Q as primitive integer vectors. The basis is the
// reduced-echelon one (unit vector on each free column), so it is canonical.
std::vector<IntVector> rational_kernel(const IntMatrix& a);

size_t rank(const IntMatrix& a);

// Basis of ker(A - eigenvalue I) over Q, each vector primitive.
std::vector<IntVector> rational_eigenspace(const IntMatrix& a, const Int& eigenvalue);

// Positive primitive eigenvector for a known Perron-Frobenius eigenvalue.
// Throws NotPrimitiveSpectrum if the eigenspace is not one-dimensional or
// has no positive representative. With allow_zero_entries the vector only
// needs to be nonnegative (used on reducible blocks).
IntVector perron_frobenius_vector(const IntMatrix& a, const Int& pf_eigenvalue, bool allow_zero_entries = false);

// Some rational x with A x = b, if one exists.
std::optional<std::vector<mpq_class>> solve_rational(const IntMatrix& a, const IntVector& b);

}  // namespace tilecoh
