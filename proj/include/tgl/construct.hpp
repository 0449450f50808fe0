#pragma once

// The bit-reversal tanglegram family: complete trees of height i whose
// matching sends each leaf's binary word to its reversal, together with the
// integer-order layout and the closed form for its crossing number.

#include <cstdint>
#include <functional>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/tanglegram.hpp"
#include "tgl/tree.hpp"

namespace tgl {

// A fixed-width bit string read as an integer, most significant bit first.
struct BinaryWord {
    int width = 0;
    uint32_t value = 0;

    BinaryWord reversed() const {
        BinaryWord r{width, 0};
        for (int k = 0; k < width; ++k)
            if (value & (1u << (width - 1 - k))) r.value |= 1u << k;
        return r;
    }

    std::vector<int> bits() const {
        std::vector<int> out(width);
        for (int k = 0; k < width; ++k) out[k] = (value >> (width - 1 - k)) & 1;
        return out;
    }
};

inline uint32_t reverse_bits(uint32_t value, int width) { return BinaryWord{width, value}.reversed().value; }

// Levels are capped so 2^i leaves and C(2^i,2) pairs stay within 64-bit range.
inline constexpr int kMaxFamilyLevel = 24;

// Complete binary tree of the given height with leaves labeled 0..2^h-1 in
// stored in-order.
inline Tree complete_tree(int height) {
    std::function<Tree(int)> build = [&](int h) -> Tree {
        if (h == 0) return single_leaf();
        Tree sub = build(h - 1);
        return join_trees(sub, sub);
    };
    return build(height);
}

namespace detail {
inline void check_family_level(int i) {
    if (i < 0) throw std::invalid_argument("family level must be >= 0");
    if (i > kMaxFamilyLevel) throw size_limit_error("family level capped at 24");
}
} // namespace detail

// Size-2^i tanglegram on two complete trees whose matching is the i-bit
// reversal permutation.
inline Tanglegram t_family(int i) {
    detail::check_family_level(i);
    const int n = 1 << i;
    std::vector<int> sigma(n);
    for (int x = 0; x < n; ++x) sigma[x] = static_cast<int>(reverse_bits(static_cast<uint32_t>(x), i));
    return make_tanglegram(complete_tree(i), complete_tree(i), std::move(sigma));
}

// Layout of t_family(i) with both leaf columns in integer order; its position
// permutation is the bit-reversal permutation.
inline Layout d_star(int i) { return make_layout(t_family(i)); }

// Closed form for the crossing number of t_family(i):
//   C(2^i,2)/2 - i 2^{i-2},
// which is 0 for i in {0,1} and 2^{i-2} (2^i - 1 - i) for i >= 2. Satisfies
// w_i = 2 w_{i-1} + C(2^{i-1},2).
inline long long crt_formula(int i) {
    detail::check_family_level(i);
    if (i < 2) return 0;
    return (1LL << (i - 2)) * ((1LL << i) - 1 - i);
}

// The size-8 tanglegram with the largest possible crossing number (9). Both
// trees are complete of height 3; the matching fixes 0, 2, 5, 7 and maps
// 1->4, 4->3, 3->6, 6->1. The integer-order layout drawn here has exactly 9
// crossings and is optimal.
inline Layout fig4_layout() {
    std::vector<int> sigma = {0, 4, 2, 6, 3, 5, 1, 7};
    return make_layout(make_tanglegram(complete_tree(3), complete_tree(3), std::move(sigma)));
}

} // namespace tgl
