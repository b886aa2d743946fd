#pragma once

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tilecoh/linalg.hpp"
#include "tilecoh/matrix.hpp"
#include "tilecoh/poly.hpp"
#include "tilecoh/report.hpp"

#ifndef TILECOH_TEST_DATA_DIR
#define TILECOH_TEST_DATA_DIR "tests/data"
#endif

namespace testsupport {

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return nlohmann::json::parse(in);
}

inline tilecoh::IntMatrix matrix_from(const nlohmann::json& j) {
    tilecoh::IntMatrix m(j.size(), j.empty() ? 0 : j[0].size());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t k = 0; k < m.cols(); ++k) m(i, k) = j[i][k].get<long>();
    return m;
}

inline tilecoh::IntMatrix reference_matrix(const std::string& name) {
    static const nlohmann::json data = load_json(std::string(TILECOH_TEST_DATA_DIR) + "/reference_matrices.json");
    return matrix_from(data.at(name));
}

// Expand prod (t - r)^m into coefficients, lowest degree first.
inline tilecoh::IntPoly poly_from_roots(const std::vector<std::pair<long, unsigned>>& roots) {
    tilecoh::IntPoly f{tilecoh::Int(1)};
    for (auto [r, m] : roots)
        for (unsigned i = 0; i < m; ++i) f = tilecoh::poly_mul(f, {tilecoh::Int(-r), tilecoh::Int(1)});
    return f;
}

inline std::unique_ptr<tilecoh::Pipeline> pipeline(const std::string& rule, tilecoh::AnalysisOptions opts = {}) {
    return tilecoh::build_pipeline(tilecoh::builtin_rule(rule), opts);
}

inline tilecoh::AnalysisOptions ap_options(bool assume_border = false) {
    tilecoh::AnalysisOptions o;
    o.complex = "ap-uncollared";
    o.assume_border = assume_border;
    return o;
}

// Nonzero integer eigenvalues of the induced map on H^q, as a sorted multiset.
inline std::vector<long> limit_eigenvalues(tilecoh::Pipeline& p, int q) {
    auto phi = tilecoh::induced_cohomology_map(*p.engine, p.map, q);
    std::vector<long> out;
    for (auto [r, m] : tilecoh::integer_roots(tilecoh::characteristic_polynomial(phi)))
        if (!r.is_zero())
            for (unsigned i = 0; i < m; ++i) out.push_back(r.to_int64());
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<long> sorted(std::vector<long> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace testsupport
