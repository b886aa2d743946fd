#pragma once

#include <optional>
#include <vector>

#include "tilecoh/matrix.hpp"

namespace tilecoh {

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
// all d_i > 0, followed by zeros.
struct SnfDecomposition {
    IntMatrix D, U, V;
    // Inverses of U and V, filled when requested.
    IntMatrix U_inv, V_inv;
    size_t rank = 0;

    std::vector<Int> invariant_factors() const;
};

struct SnfOptions {
    bool want_u = true;
    bool want_v = true;
    bool want_u_inv = false;
    bool want_v_inv = false;
};

SnfDecomposition smith_normal_form(const IntMatrix& a, const SnfOptions& opts = {});

// Saturated basis of {x in Z^cols : A x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

// Some integer x with A x = b, or nothing when no integer solution exists.
std::optional<IntVector> solve_linear_integer(const IntMatrix& a, const IntVector& b);

// Saturation (L tensor Q) intersect Z^n of the lattice spanned by the given
// vectors; the result is a basis of it.
std::vector<IntVector> saturate(const std::vector<IntVector>& vectors, size_t n);

}  // namespace tilecoh
