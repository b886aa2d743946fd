#pragma once

#include <map>
#include <memory>
#include <vector>

#include "tilecoh/complex.hpp"
#include "tilecoh/matrix.hpp"

namespace tilecoh {

// Cochain complex with delta^q = transpose of boundary^{q+1}, shrunk by
// cancelling unit coboundary entries. Each cancellation is a homotopy
// equivalence; project() and lift() apply the logged steps to move cochains
// between the original and the reduced complex.
class ReducedCochainComplex {
public:
    explicit ReducedCochainComplex(const CellComplexData& complex);

    int d = 0;
    // Surviving original cell ids per dimension, ascending.
    std::vector<std::vector<size_t>> kept;
    // delta[q]: kept[q+1] x kept[q].
    std::vector<IntMatrix> delta;
    std::vector<size_t> original_counts;
    size_t cancelled_pairs() const { return steps_.size(); }

    IntVector project(int q, const IntVector& cochain) const;
    IntVector lift(int q, const IntVector& reduced) const;

private:
    struct Step {
        int q;
        size_t a, b;
        Int u;
        std::vector<std::pair<size_t, Int>> row_b;
        std::vector<std::pair<size_t, Int>> col_a;
    };
    std::vector<Step> steps_;
};

// Finitely generated abelian group H^q, generators ordered torsion first
// (ascending invariant factors), then free.
struct FgAbGroup {
    int q = 0;
    size_t rank = 0;
    std::vector<Int> torsion;
    // Cocycle lifts of the generators in original cochain coordinates.
    std::vector<IntVector> generators;

    size_t size() const { return torsion.size() + rank; }
    // Order of generator i, or 0 for a free generator.
    Int order(size_t i) const { return i < torsion.size() ? torsion[i] : Int(0); }
    // Torsion coordinates reduced into [0, order).
    IntVector normalize(IntVector coords) const;
    std::string describe() const;
};

class CohomologyEngine {
public:
    explicit CohomologyEngine(const CellComplexData& complex);

    const CellComplexData& complex() const { return *complex_; }
    const ReducedCochainComplex& reduced() const { return reduced_; }
    const FgAbGroup& group(int q);
    // Coordinates of a cocycle's class; throws NotACocycle.
    IntVector project_cocycle(int q, const IntVector& cochain);
    bool is_cocycle(int q, const IntVector& cochain) const;
    IntVector coboundary(int q, const IntVector& cochain) const;

private:
    struct Data {
        FgAbGroup group;
        IntMatrix left_inverse;  // maps reduced cocycles to kernel-basis coordinates
        IntMatrix coord_rows;    // rows of U^{-1} for the generator indices
    };
    Data& data(int q);
    const CellComplexData* complex_;
    ReducedCochainComplex reduced_;
    std::map<int, std::unique_ptr<Data>> cache_;
};

FgAbGroup cochain_cohomology(const CellComplexData& complex, int q);

// Matrix of the endomorphism induced by the cochain map M_q^T, in generator
// coordinates (column j = image of generator j). Throws NotCochainMap.
IntMatrix induced_cohomology_map(CohomologyEngine& engine, const CellMap& map, int q);

}  // namespace tilecoh
