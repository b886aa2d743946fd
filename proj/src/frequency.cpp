#include "tilecoh/frequency.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tilecoh/errors.hpp"
#include "tilecoh/linalg.hpp"

namespace tilecoh {

std::string FrequencyModule::render() const {
    // Z[1/lambda] depends only on the primes of lambda.
    Int rad = 1, rest = abs(lambda);
    for (Int p = 2; p * p <= rest; p += 1) {
        if (!fdiv_r(rest, p).is_zero()) continue;
        rad *= p;
        while (fdiv_r(rest, p).is_zero()) rest = divexact(rest, p);
    }
    if (rest > 1) rad *= rest;
    std::string base = "Z[1/" + rad.to_string() + "]";
    return N.is_one() ? base : "(1/" + N.to_string() + ")" + base;
}

nlohmann::json FrequencyModule::to_json() const {
    nlohmann::json vec = nlohmann::json::array();
    for (const auto& x : v) vec.push_back(x.fits_int64() ? nlohmann::json(x.to_int64()) : nlohmann::json(x.to_string()));
    nlohmann::json out{{"module", render()}, {"N", N.to_string()}, {"lambda", lambda.to_string()},
                       {"sum", S.to_string()}, {"vector", vec}};
    if (!label.empty()) out["block"] = label;
    return out;
}

Int strip_primes_of(const Int& s, const Int& lambda) {
    Int n = abs(s);
    Int g = gcd(n, lambda);
    while (!g.is_one()) {
        n = divexact(n, g);
        g = gcd(n, g);
    }
    return n;
}

namespace {

FrequencyModule module_from(const IntMatrix& m, const Int& eigen, int lambda, bool allow_zero) {
    FrequencyModule fm;
    fm.lambda = lambda;
    fm.v = perron_frobenius_vector(m, eigen, allow_zero);
    for (const auto& x : fm.v) fm.S += x;
    fm.N = strip_primes_of(fm.S, fm.lambda);
    return fm;
}

}  // namespace

FrequencyModule frequency_module(const CellComplexData& complex, const CellMap& map, int lambda) {
    const size_t d = static_cast<size_t>(complex.d);
    Int eigen = pow(Int(lambda), static_cast<unsigned>(d));
    FrequencyModule fm = module_from(map.M[d].to_dense(), eigen, lambda, false);
    fm.cells.resize(fm.v.size());
    std::iota(fm.cells.begin(), fm.cells.end(), size_t{0});
    return fm;
}

std::vector<FrequencyModule> frequency_module_per_dimension(const CellComplexData& complex, const CellMap& map,
                                                            int lambda, int q) {
    if (q < 0 || q > complex.d) throw RangeError("dimension out of range");
    const size_t uq = static_cast<size_t>(q);
    const auto& cells = complex.cells[uq];
    IntMatrix M = map.M[uq].to_dense();
    Int eigen = pow(Int(lambda), static_cast<unsigned>(q));
    std::map<std::vector<int>, std::vector<size_t>> blocks;
    for (size_t c = 0; c < cells.size(); ++c) blocks[cells[c].spanned].push_back(c);
    std::vector<FrequencyModule> out;
    for (const auto& [spanned, members] : blocks) {
        // Connected components of the block under the (undirected) map graph.
        std::map<size_t, size_t> local;
        for (size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
        std::vector<size_t> comp(members.size(), SIZE_MAX);
        size_t ncomp = 0;
        for (size_t s = 0; s < members.size(); ++s) {
            if (comp[s] != SIZE_MAX) continue;
            std::vector<size_t> stack{s};
            comp[s] = ncomp;
            while (!stack.empty()) {
                size_t i = stack.back();
                stack.pop_back();
                for (size_t j = 0; j < members.size(); ++j) {
                    if (comp[j] != SIZE_MAX) continue;
                    if (M(members[i], members[j]).is_zero() && M(members[j], members[i]).is_zero()) continue;
                    comp[j] = ncomp;
                    stack.push_back(j);
                }
            }
            ++ncomp;
        }
        for (size_t k = 0; k < ncomp; ++k) {
            std::vector<size_t> idx;
            for (size_t i = 0; i < members.size(); ++i)
                if (comp[i] == k) idx.push_back(members[i]);
            IntMatrix sub = M.submatrix(idx, idx);
            std::string label = "spanned {";
            for (size_t i = 0; i < spanned.size(); ++i) label += (i ? "," : "") + std::to_string(spanned[i]);
            label += "} component " + std::to_string(k);
            try {
                FrequencyModule fm = module_from(sub, eigen, lambda, true);
                fm.cells = idx;
                fm.label = label;
                out.push_back(std::move(fm));
            } catch (const NotPrimitiveSpectrum&) {
                // Components without a unique nonnegative lambda^q eigenvector carry no module.
            }
        }
    }
    return out;
}

}  // namespace tilecoh
