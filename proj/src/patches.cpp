#include "tilecoh/patches.hpp"

#include <algorithm>

#include "tilecoh/errors.hpp"

namespace tilecoh {

const std::vector<std::vector<int>>& WindowLanguage::windows(const Shape& s) const {
    auto it = by_shape_.find(s);
    if (it == by_shape_.end()) {
        std::string txt;
        for (int e : s) txt += std::to_string(e);
        throw MissingShape("window language has no shape " + txt);
    }
    return it->second;
}

std::optional<size_t> WindowLanguage::index(const Shape& s, const std::vector<int>& colors) const {
    const auto& w = windows(s);
    auto it = std::lower_bound(w.begin(), w.end(), colors);
    if (it == w.end() || *it != colors) return std::nullopt;
    return static_cast<size_t>(it - w.begin());
}

std::vector<Shape> WindowLanguage::shapes() const {
    std::vector<Shape> out;
    for (const auto& kv : by_shape_) out.push_back(kv.first);
    return out;
}

std::vector<Window> WindowLanguage::all_windows() const {
    std::vector<Window> out;
    for (const auto& [s, ws] : by_shape_)
        for (const auto& w : ws) out.push_back(Window{s, w, out.size()});
    return out;
}

size_t WindowLanguage::global_offset(const Shape& s) const {
    size_t off = 0;
    for (const auto& [shape, ws] : by_shape_) {
        if (shape == s) return off;
        off += ws.size();
    }
    throw MissingShape("shape not in language");
}

void WindowLanguage::set_shape(const Shape& s, std::vector<std::vector<int>> sorted_windows) {
    by_shape_[s] = std::move(sorted_windows);
}

std::set<Shape> box_shapes(int d, int lo, int hi) {
    std::set<Shape> out;
    Shape s(static_cast<size_t>(d), lo);
    for (;;) {
        out.insert(s);
        size_t a = s.size();
        while (a-- > 0) {
            if (s[a] < hi) {
                ++s[a];
                break;
            }
            s[a] = lo;
        }
        if (a == SIZE_MAX) break;
    }
    return out;
}

namespace {

Shape parent_shape(const Shape& s) {
    Shape p = s;
    for (auto& e : p) e = std::min(e, 2);
    return p;
}

// Precomputed flat offsets of a shape's cells inside a patch of given extents.
std::vector<size_t> cell_offsets(const Shape& shape, const Shape& extents) {
    std::vector<size_t> delta(shape_volume(shape));
    for (size_t i = 0; i < delta.size(); ++i) delta[i] = flat_index(unflatten(i, shape), extents);
    return delta;
}

template <class F>
void for_each_offset(const Shape& shape, const Shape& extents, F&& f) {
    Shape range(shape.size());
    for (size_t a = 0; a < shape.size(); ++a) {
        range[a] = extents[a] - shape[a] + 1;
        if (range[a] <= 0) return;
    }
    const size_t n = shape_volume(range);
    for (size_t i = 0; i < n; ++i) f(flat_index(unflatten(i, range), extents));
}

// Adds every window of the given shape in the patch; returns how many were new.
size_t scan_patch(const LatticePatch& patch, const Shape& shape, std::set<std::vector<int>>& out,
                  std::vector<std::vector<int>>* fresh) {
    const auto delta = cell_offsets(shape, patch.extents);
    std::vector<int> w(delta.size());
    size_t added = 0;
    for_each_offset(shape, patch.extents, [&](size_t base) {
        for (size_t i = 0; i < delta.size(); ++i) w[i] = patch.colors[base + delta[i]];
        if (out.insert(w).second) {
            ++added;
            if (fresh) fresh->push_back(w);
        }
    });
    return added;
}

}  // namespace

WindowLanguage enumerate_legal_windows(const SubstitutionRule& rule, const std::set<Shape>& shapes,
                                       const EnumerationOptions& opts) {
    const int d = rule.d;
    std::set<Shape> all = shapes;
    for (const auto& s : shapes) {
        if (static_cast<int>(s.size()) != d) throw MissingShape("requested shape has wrong dimension");
        for (int e : s)
            if (e < 1 || e > 2 * rule.lambda) throw MissingShape("window extent outside [1, 2*lambda]");
        all.insert(parent_shape(s));
    }
    // Shapes grouped by the parent shape whose substitution reveals them.
    std::map<Shape, std::vector<Shape>> children;
    for (const auto& s : all) children[parent_shape(s)].push_back(s);

    int k0 = opts.seed_level;
    if (k0 <= 0) {
        k0 = 1;
        while (static_cast<long>(ipow(static_cast<size_t>(rule.lambda), static_cast<unsigned>(k0))) < 3) ++k0;
    }

    std::map<Shape, std::set<std::vector<int>>> found;
    std::map<Shape, std::vector<std::vector<int>>> frontier;
    for (const auto& s : all) {
        found[s];
        frontier[s];
    }
    for (int c = 0; c < rule.m; ++c) {
        LatticePatch p = substitute_patch(rule, single_tile_patch(d, c), static_cast<unsigned>(k0));
        for (const auto& s : all) scan_patch(p, s, found[s], &frontier[s]);
    }

    size_t passes = 0;
    int verification_left = opts.extra_passes;
    bool full = false;
    for (;;) {
        ++passes;
        std::map<Shape, std::vector<std::vector<int>>> next;
        size_t added = 0;
        for (const auto& [p, kids] : children) {
            const auto& source = full ? std::vector<std::vector<int>>(found[p].begin(), found[p].end()) : frontier[p];
            for (const auto& w : source) {
                LatticePatch img = substitute_patch(rule, LatticePatch{p, w}, 1);
                for (const auto& s : kids) added += scan_patch(img, s, found[s], &next[s]);
            }
        }
        frontier = std::move(next);
        if (added > 0) {
            full = false;
            continue;
        }
        // One stagnant pass reached; run full verification passes over every
        // stored window before accepting the fixed point.
        if (verification_left-- <= 0) break;
        full = true;
    }

    WindowLanguage lang;
    lang.d = d;
    lang.seed_level = k0;
    lang.passes = passes;
    for (const auto& [s, ws] : found) lang.set_shape(s, std::vector<std::vector<int>>(ws.begin(), ws.end()));
    return lang;
}

BorderProbeResult border_forcing_probe(const SubstitutionRule& rule, int max_level) {
    const int d = rule.d;
    const Shape collar(static_cast<size_t>(d), 3);
    WindowLanguage lang = enumerate_legal_windows(rule, {collar});
    const auto& collars = lang.windows(collar);
    const size_t center = shape_volume(collar) / 2;
    BorderProbeResult res;
    for (int k = 1; k <= max_level; ++k) {
        const int side = static_cast<int>(ipow(static_cast<size_t>(rule.lambda), static_cast<unsigned>(k)));
        const Shape ring(static_cast<size_t>(d), side + 2);
        const std::vector<int> offset(static_cast<size_t>(d), side - 1);
        std::map<int, std::pair<std::vector<int>, size_t>> seen;
        bool forced = true;
        for (size_t i = 0; i < collars.size() && forced; ++i) {
            LatticePatch img = substitute_patch(rule, LatticePatch{collar, collars[i]}, static_cast<unsigned>(k));
            std::vector<int> nbhd = extract_window(img, offset, ring);
            int c = collars[i][center];
            auto it = seen.find(c);
            if (it == seen.end()) {
                seen.emplace(c, std::make_pair(std::move(nbhd), i));
            } else if (it->second.first != nbhd) {
                forced = false;
                std::string a, b;
                for (int x : collars[it->second.second]) a += std::to_string(x) + ",";
                for (int x : collars[i]) b += std::to_string(x) + ",";
                a.pop_back();
                b.pop_back();
                res.witness = "level " + std::to_string(k) + ": color " + std::to_string(c) +
                              " has collars [" + a + "] and [" + b + "] whose supertiles have different surroundings";
            }
        }
        if (forced) {
            res.forced = true;
            res.level = k;
            res.witness.reset();
            return res;
        }
    }
    return res;
}

int centered_shift(int lambda) { return lambda / 2; }

SubstitutionRule derive_window_rule(const SubstitutionRule& rule, const WindowLanguage& language, int shift) {
    const Shape top(static_cast<size_t>(rule.d), 2);
    if (shift < 0) shift = centered_shift(rule.lambda);
    const auto& ws = language.windows(top);
    if (shift < 0 || shift > rule.lambda - 1) throw RangeError("window shift must lie in [0, lambda-1]");
    SubstitutionRule out;
    out.name = rule.name + "-windows";
    out.d = rule.d;
    out.lambda = rule.lambda;
    out.m = static_cast<int>(ws.size());
    out.table.resize(ws.size());
    const Shape block(static_cast<size_t>(rule.d), rule.lambda);
    const size_t bsize = rule.block_size();
    for (size_t w = 0; w < ws.size(); ++w) {
        LatticePatch img = substitute_patch(rule, LatticePatch{top, ws[w]}, 1);
        auto& row = out.table[w];
        row.resize(bsize);
        for (size_t q = 0; q < bsize; ++q) {
            auto off = unflatten(q, block);
            for (auto& o : off) o += shift;
            auto idx = language.index(top, extract_window(img, off, top));
            if (!idx) throw MissingShape("substituted window contains an unlisted 2^d window");
            row[q] = static_cast<int>(*idx);
        }
    }
    return out;
}

ColorInvolution induced_window_involution(const WindowLanguage& language, int d, const ColorInvolution& g) {
    const Shape top(static_cast<size_t>(d), 2);
    const auto& ws = language.windows(top);
    ColorInvolution out;
    out.perm.resize(ws.size());
    for (size_t w = 0; w < ws.size(); ++w) {
        std::vector<int> image = ws[w];
        for (auto& c : image) c = g.perm.at(static_cast<size_t>(c));
        auto idx = language.index(top, image);
        if (!idx) throw IncompatibleInvolution("involution image of a legal window is not legal");
        out.perm[w] = static_cast<int>(*idx);
    }
    return out;
}

}  // namespace tilecoh
