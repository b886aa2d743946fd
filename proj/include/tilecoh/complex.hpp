#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tilecoh/matrix.hpp"
#include "tilecoh/patches.hpp"
#include "tilecoh/substitution.hpp"

namespace tilecoh {

enum class ComplexModel { Dual, ApUncollared, Quotient };
std::string model_name(ComplexModel m);

// Face role of an axis in an AP prototile face.
enum FaceRole : int { FaceLow = 0, FaceHigh = 1, FaceSpanned = 2 };

struct Cell {
    // Dual model: the window (extent 2 = spanned axis, extent 1 = collapsed).
    // AP model: extents is empty, colors holds the representative prototile and
    // face holds its face roles. Quotient model: the orbit representative.
    Shape extents;
    std::vector<int> colors;
    std::vector<int> face;
    std::vector<int> spanned;
    size_t members = 1;
};

struct CellComplexData {
    ComplexModel model = ComplexModel::Dual;
    int d = 0;
    std::vector<std::vector<Cell>> cells;
    // boundary[q] maps q-chains to (q-1)-chains; boundary[0] has zero rows.
    std::vector<SparseMatrix> boundary;
    // faces[q][c][i] = (low face, high face) of cell c along its i-th spanned
    // axis, as (q-1)-cell indices. Empty for quotient complexes.
    std::vector<std::vector<std::vector<std::pair<size_t, size_t>>>> faces;
    // Quotient complexes keep their cover and, per dimension, the pullback of
    // cochains (cover cells x quotient cells).
    std::shared_ptr<const CellComplexData> cover;
    // AP model: cell index (within its dimension) of every (color, face code).
    std::vector<size_t> ap_class_of;
    std::vector<SparseMatrix> pullback;

    size_t count(int q) const { return cells.at(static_cast<size_t>(q)).size(); }
    std::vector<size_t> counts() const;
};

struct CellMap {
    // M[q][r][c]: signed count of q-cell r in the image of q-cell c.
    std::vector<SparseMatrix> M;
    int shift = 0;
};

// Dual complex on windows of shape {1,2}^d.
std::vector<Shape> dual_shapes(int d);
CellComplexData build_dual_complex(const SubstitutionRule& rule, const WindowLanguage& language);

struct ApOptions {
    bool assume_border = false;
};
// Shapes needed for the AP adjacency relation (extent 2 along a single axis).
std::set<Shape> ap_shapes(int d);
CellComplexData build_ap_uncollared(const SubstitutionRule& rule, const WindowLanguage& language,
                                    const ApOptions& opts = {});

// Substitution-induced cellular chain map. For the dual model the children of
// a cell are the windows at offsets shift..shift+lambda-1 on spanned axes and
// shift on collapsed axes.
CellMap induced_chain_map(const SubstitutionRule& rule, const CellComplexData& complex, int shift = 0);

struct CellInvolution {
    // perm[q][c] = image cell, sign[q][c] = +1 or -1.
    std::vector<std::vector<size_t>> perm;
    std::vector<std::vector<int>> sign;
    // Cells fixed setwise by a fold (not pointwise); they pull back with weight 2.
    std::vector<std::vector<bool>> folded;
};

CellInvolution identity_involution(const CellComplexData& complex);
// Involution of a dual complex induced by a color involution of the rule.
CellInvolution induced_cell_involution(const CellComplexData& complex, const WindowLanguage& language,
                                       const ColorInvolution& g);
CellInvolution parse_cell_involution(const nlohmann::json& doc, const CellComplexData& complex);

struct QuotientResult {
    CellComplexData complex;
    CellMap map;
};
QuotientResult quotient_by_involution(const CellComplexData& complex, const CellInvolution& inv, const CellMap& map);

struct ComplexDiagnostics {
    bool boundary_squared_zero = true;
    bool chain_map_ok = true;
    long euler_cells = 0;
    long euler_betti = 0;
    std::vector<size_t> betti;
    std::optional<std::string> first_violation;
    bool ok() const { return boundary_squared_zero && chain_map_ok && euler_cells == euler_betti; }
};
ComplexDiagnostics verify_complex(const CellComplexData& complex, const CellMap* map = nullptr);

// Throws ChainMapViolation when the identity fails for some q.
void assert_chain_map(const CellComplexData& complex, const CellMap& map);

// Cell descriptors, sparse boundaries and chain-map matrices.
nlohmann::json complex_to_json(const CellComplexData& complex, const CellMap* map = nullptr);
nlohmann::json sparse_to_json(const SparseMatrix& m);

}  // namespace tilecoh
