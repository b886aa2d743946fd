#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tilecoh/substitution.hpp"

namespace tilecoh {

struct Window {
    Shape extents;
    std::vector<int> colors;
    // Rank in the (extents, colors) lexicographic order over all stored windows.
    size_t id = 0;
};

// Legal box-shaped windows of a rule, grouped by shape. Within a shape the
// color arrays are sorted lexicographically; index() gives that rank.
class WindowLanguage {
public:
    int d = 0;
    int seed_level = 0;
    size_t passes = 0;

    bool has_shape(const Shape& s) const { return by_shape_.count(s) > 0; }
    const std::vector<std::vector<int>>& windows(const Shape& s) const;
    size_t count(const Shape& s) const { return windows(s).size(); }
    // Rank within the shape, or nothing if the window is not legal.
    std::optional<size_t> index(const Shape& s, const std::vector<int>& colors) const;
    std::vector<Shape> shapes() const;
    // All stored windows with global ids (shapes ascending, then colors).
    std::vector<Window> all_windows() const;
    // Offset of a shape's first window in the global id order.
    size_t global_offset(const Shape& s) const;

    void set_shape(const Shape& s, std::vector<std::vector<int>> sorted_windows);

private:
    std::map<Shape, std::vector<std::vector<int>>> by_shape_;
};

struct EnumerationOptions {
    // Seed level; 0 means the smallest k with lambda^k >= 3.
    int seed_level = 0;
    // Verification passes run after the first stagnant pass.
    int extra_passes = 1;
};

// Least fixed point of substitute-and-scan over the requested shapes (each
// extent at most 2 lambda). Parent shapes min(s, 2) are enumerated too.
WindowLanguage enumerate_legal_windows(const SubstitutionRule& rule, const std::set<Shape>& shapes,
                                       const EnumerationOptions& opts = {});

// All shapes in {lo..hi}^d.
std::set<Shape> box_shapes(int d, int lo, int hi);

struct BorderProbeResult {
    bool forced = false;
    std::optional<int> level;
    // A tile occurrence pair with differing 3^d surroundings at the last level probed.
    std::optional<std::string> witness;
};

// For k = 1..max_level: the level-k supertile of each color has a single
// one-tile-thick surrounding over all legal 3^d collars of that color.
BorderProbeResult border_forcing_probe(const SubstitutionRule& rule, int max_level);

// Induced rule on legal 2^d windows ("half-collared" tiles): the child at
// block position p of window W is the 2^d window at offset p + shift inside
// the substituted W. A negative shift selects the centered ceil((lambda-1)/2).
SubstitutionRule derive_window_rule(const SubstitutionRule& rule, const WindowLanguage& language, int shift = -1);
int centered_shift(int lambda);

// Color involution on the 2^d windows induced by a color involution g of the rule.
ColorInvolution induced_window_involution(const WindowLanguage& language, int d, const ColorInvolution& g);

}  // namespace tilecoh
