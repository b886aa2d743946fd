#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tilecoh/cohomology.hpp"
#include "tilecoh/poly.hpp"

namespace tilecoh {

// Element of the direct limit: the class of coords (base-group coordinates)
// at telescope stage `stage`.
struct LimitElement {
    size_t stage = 0;
    IntVector coords;
};

// Finitely generated abelian group given by generator orders (0 = free),
// with elements as integer coordinate vectors.
struct GroupPresentation {
    std::vector<Int> orders;
    size_t size() const { return orders.size(); }
    IntVector normalize(IntVector x) const;
    bool is_zero(const IntVector& x) const;
};

class DirectLimitGroup {
public:
    // phi: column j is the image of generator j.
    DirectLimitGroup(GroupPresentation base, IntMatrix phi);
    DirectLimitGroup(const FgAbGroup& base, IntMatrix phi);

    const GroupPresentation& base() const { return base_; }
    const IntMatrix& phi() const { return phi_; }
    // Eventual kernel N as a lattice basis (columns) containing the relations.
    const IntMatrix& eventual_kernel() const { return kernel_; }
    size_t stabilization_exponent() const { return stab_; }
    // Injective quotient G' = G / N with induced phi'.
    const GroupPresentation& reduced() const { return reduced_; }
    const IntMatrix& reduced_phi() const { return phi_red_; }
    // G -> G' coordinates and a section G' -> G.
    IntVector to_reduced(const IntVector& x) const;
    IntVector from_reduced(const IntVector& y) const;
    // Stable torsion T = torsion of G' (phi' restricted is an automorphism).
    std::vector<Int> stable_torsion() const;
    const IntMatrix& stable_torsion_map() const { return torsion_map_; }
    const IntMatrix& stable_torsion_inverse() const { return torsion_inverse_; }
    // Factored char-poly of phi on G tensor Q.
    const PolyFactorization& rational_factorization() const { return rational_; }
    const std::vector<Int>& rational_charpoly() const { return charpoly_; }

    nlohmann::json summary() const;

private:
    void compute();
    GroupPresentation base_;
    IntMatrix phi_;
    IntMatrix kernel_;
    size_t stab_ = 0;
    GroupPresentation reduced_;
    IntMatrix phi_red_, proj_, sect_;
    IntMatrix torsion_map_, torsion_inverse_;
    std::vector<Int> charpoly_;
    PolyFactorization rational_;
};

DirectLimitGroup direct_limit_summary(const FgAbGroup& group, const IntMatrix& phi);

bool limit_equal(const DirectLimitGroup& lim, const LimitElement& x, const LimitElement& y);

struct DivisibilityResult {
    bool divisible = false;
    std::optional<LimitElement> witness;
    // Steps k with phi^k(x) in n G' (when divisible).
    std::optional<size_t> steps;
    // False when the limit has n-torsion, so witnesses are not unique.
    bool unique = true;
};
DivisibilityResult divisible_by(const DirectLimitGroup& lim, const LimitElement& x, const Int& n);

struct ProbeLevel {
    Int modulus;
    bool divisible = false;
};
std::vector<ProbeLevel> divisibility_probe(const DirectLimitGroup& lim, const LimitElement& x, const Int& p, int depth);

struct DivisibilityCertificate {
    std::string kind;  // "invariant-subspace" or "prime-to-p-torsion"
    // Krylov relation phi^m x = -sum c_i phi^i x with p | c_i (kind invariant-subspace).
    std::vector<Int> relation;
    int verified_depth = 0;
    std::string explanation;
};
std::optional<DivisibilityCertificate> eigen_divisibility_certificate(const DirectLimitGroup& lim,
                                                                      const LimitElement& x, const Int& p,
                                                                      int verify_depth = 3);

}  // namespace tilecoh
