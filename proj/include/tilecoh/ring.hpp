#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "tilecoh/cohomology.hpp"
#include "tilecoh/limits.hpp"

namespace tilecoh {

// Cubical cup product of cochains of degrees p and q (sizes fixed by the
// complex). Quotient complexes compute it in the cover and pull back.
IntVector cup_cochain(const CellComplexData& complex, int p, const IntVector& alpha, int q, const IntVector& beta);

// table[i][j] = H^{p+q} coordinates of gen_i(H^p) cup gen_j(H^q).
std::vector<std::vector<IntVector>> cup_cohomology(CohomologyEngine& engine, int p, int q);

struct EigenBlock {
    std::string label;         // eigenvalue or irreducible factor
    std::optional<Int> value;  // integer eigenvalue when the block has one
    unsigned multiplicity = 0;
    bool generalized = false;  // basis spans a generalized eigenspace
    // Basis vectors in free-generator coordinates.
    std::vector<IntVector> basis;
};

// Rational eigen-decomposition of the free block of an induced map.
std::vector<EigenBlock> eigen_blocks(const IntMatrix& phi, size_t torsion_count);

struct BilinearForm {
    std::string target;  // label of the H^{p+q} eigen-generator
    std::optional<Int> target_value;
    std::vector<std::vector<mpq_class>> matrix;
    bool surjective = false;
};

struct BilinearFormsReport {
    int p = 0, q = 0;
    std::vector<std::string> labels_p, labels_q, labels_pq;
    std::vector<BilinearForm> forms;
    // Every nonzero entry pairs eigenvalues whose product is the target's.
    bool eigenvalue_compatible = true;
    nlohmann::json to_json() const;
};

BilinearFormsReport bilinear_forms_by_eigenvalue(CohomologyEngine& engine, const CellMap& map, int p, int q);

enum class ChernStatus { NotIntegral, NoObstructionFound };

struct ChernWitness {
    size_t generator = 0;   // index of the H^2 generator v
    // Set for eigenvector witnesses: the eigenvalue and the H^2 coordinates of v.
    std::optional<Int> eigenvalue;
    IntVector v;
    IntVector square;       // H^4 coordinates of v cup v
    bool divisible = false; // by 2 in the limit
    bool unique = true;
    std::vector<Int> stable_torsion_coordinates;
    std::string reason;
};

struct ChernVerdict {
    ChernStatus status = ChernStatus::NoObstructionFound;
    std::optional<ChernWitness> witness;
    // Per H^2 generator: square coordinates and 2-divisibility facts.
    std::vector<ChernWitness> checked;
    // Integral eigenvectors of the H^2 map (nonzero integer eigenvalues) whose
    // squares are obstructions.
    std::vector<ChernWitness> eigen_witnesses;
    nlohmann::json to_json() const;
};

ChernVerdict chern_integrality_check(CohomologyEngine& engine, const CellMap& map);
// Same check when the H^4 limit is already available.
ChernVerdict chern_integrality_check(CohomologyEngine& engine, const CellMap& map, const DirectLimitGroup& h4_limit);

}  // namespace tilecoh
