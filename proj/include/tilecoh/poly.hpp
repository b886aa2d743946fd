#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tilecoh/integer.hpp"

namespace tilecoh {

// Integer polynomial, coefficients lowest degree first, no trailing zeros
// (the zero polynomial is empty).
using IntPoly = std::vector<Int>;

IntPoly poly_normalize(IntPoly f);
int poly_degree(const IntPoly& f);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
Int poly_eval(const IntPoly& f, const Int& x);
Int poly_content(const IntPoly& f);
// Divides f by g over Z; false if g does not divide f exactly.
bool poly_divexact(const IntPoly& f, const IntPoly& g, IntPoly& q);
std::string poly_to_string(const IntPoly& f, const std::string& var = "t");

struct PolyFactor {
    IntPoly poly;  // primitive, positive leading coefficient
    unsigned multiplicity = 1;
};

struct PolyFactorization {
    Int unit = 1;  // signed content
    std::vector<PolyFactor> factors;
    // False when a squarefree part was too expensive to split completely; its
    // unsplit pieces are still listed (and flagged by this field).
    bool complete = true;
};

// Factorization over Z: squarefree decomposition, then Zassenhaus (modular
// factorization, Hensel lifting and factor recombination). Factors are sorted
// by degree, then coefficients.
PolyFactorization factor_polynomial(const IntPoly& f);

// Integer roots with multiplicity, sorted by decreasing value.
std::vector<std::pair<Int, unsigned>> integer_roots(const IntPoly& f);

}  // namespace tilecoh
