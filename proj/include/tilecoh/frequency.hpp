#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tilecoh/complex.hpp"

namespace tilecoh {

// (1/N) Z[1/lambda] with N coprime to lambda; S is the PF vector sum.
struct FrequencyModule {
    Int N, lambda, S;
    IntVector v;
    // Cells (within their dimension) that the vector is indexed by.
    std::vector<size_t> cells;
    std::string label;
    std::string render() const;
    nlohmann::json to_json() const;
};

// N = S with every prime factor of lambda removed.
Int strip_primes_of(const Int& s, const Int& lambda);

FrequencyModule frequency_module(const CellComplexData& complex, const CellMap& map, int lambda);

// One module per connected component of each spanned-axis block of M_q that
// has eigenvalue lambda^q; zero vector entries are allowed.
std::vector<FrequencyModule> frequency_module_per_dimension(const CellComplexData& complex, const CellMap& map,
                                                            int lambda, int q);

}  // namespace tilecoh
