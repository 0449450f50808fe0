#pragma once

// Tanglegrams and their layouts: switch operations, crossing counts, the
// crossing-status decomposition a_{xu}, canonical forms, and the .tgl text
// format.
//
// Sign convention used throughout: chi(e,f) = +1 when the matching edges e
// and f cross in the layout and -1 when they do not. Under this convention
//   cr(D) = sum over pairs of (1 + chi)/2,
//   cr(D) = C(n,2)/2 + (1/2) sum_{x,u} alpha(x) beta(u) a_{xu},
// and at a single-switch-optimal layout every special row sum is negative.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/rng.hpp"
#include "tgl/tree.hpp"

namespace tgl {

// Two rooted binary trees with equally many leaves plus a matching between
// the leaf sets, stored as a permutation of labels. Orientation-free.
struct Tanglegram {
    Tree left;
    Tree right;
    std::vector<int> sigma; // left leaf label -> right leaf label

    int size() const { return left.n_leaves; }
};

inline Tanglegram make_tanglegram(Tree left, Tree right, std::vector<int> sigma) {
    if (left.n_leaves != right.n_leaves)
        throw parse_error("tanglegram sides must have the same number of leaves");
    if (static_cast<int>(sigma.size()) != left.n_leaves)
        throw parse_error("matching size does not match leaf count");
    std::vector<uint8_t> seen(sigma.size(), 0);
    for (int r : sigma) {
        if (r < 0 || r >= static_cast<int>(sigma.size()) || seen[r])
            throw parse_error("matching is not a bijection");
        seen[r] = 1;
    }
    return Tanglegram{std::move(left), std::move(right), std::move(sigma)};
}

// A drawing of a tanglegram: one orientation bit per internal vertex and
// side. Bit 0 draws the stored child order, bit 1 the swapped order.
struct Layout {
    Tanglegram tg;
    std::vector<uint8_t> orient_left;  // per vertex of tg.left
    std::vector<uint8_t> orient_right; // per vertex of tg.right
};

inline Layout make_layout(Tanglegram t) {
    Layout d;
    d.orient_left.assign(t.left.vertex_count(), 0);
    d.orient_right.assign(t.right.vertex_count(), 0);
    d.tg = std::move(t);
    return d;
}

// Leaf labels top to bottom under the given orientation bits.
inline std::vector<int> leaf_sequence(const Tree& t, const std::vector<uint8_t>& orient) {
    std::vector<int> seq;
    seq.reserve(t.n_leaves);
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (t.is_leaf(v)) {
            seq.push_back(t.leaf_label[v]);
            continue;
        }
        int b = orient[v] & 1;
        stack.push_back(t.child[v][1 - b]); // drawn second
        stack.push_back(t.child[v][b]);     // drawn first
    }
    return seq;
}

// label -> position in the top-to-bottom order.
inline std::vector<int> leaf_positions(const Tree& t, const std::vector<uint8_t>& orient) {
    std::vector<int> seq = leaf_sequence(t, orient);
    std::vector<int> pos(seq.size());
    for (size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = static_cast<int>(i);
    return pos;
}

// pi[i] = right-side position of the partner of the left leaf at position i.
// Crossings are exactly the inversions of pi.
inline std::vector<int> position_permutation(const Layout& d) {
    std::vector<int> lseq = leaf_sequence(d.tg.left, d.orient_left);
    std::vector<int> rpos = leaf_positions(d.tg.right, d.orient_right);
    std::vector<int> pi(lseq.size());
    for (size_t i = 0; i < lseq.size(); ++i) pi[i] = rpos[d.tg.sigma[lseq[i]]];
    return pi;
}

// Inversions via a binary indexed tree, O(n log n).
inline long long count_inversions(const std::vector<int>& pi) {
    const int n = static_cast<int>(pi.size());
    std::vector<int> fen(n + 1, 0);
    long long inv = 0;
    for (int i = n - 1; i >= 0; --i) {
        for (int j = pi[i]; j > 0; j -= j & -j) inv += fen[j]; // elements to the right and smaller
        for (int j = pi[i] + 1; j <= n; j += j & -j) ++fen[j];
    }
    return inv;
}

inline long long crossings(const Layout& d) { return count_inversions(position_permutation(d)); }

// Crossing status of matching edges e and f (named by left leaf label):
// +1 when they cross, -1 otherwise.
inline int chi(const Layout& d, int e, int f) {
    if (e == f) throw std::invalid_argument("chi: edges must be distinct");
    const int n = d.tg.size();
    if (e < 0 || e >= n || f < 0 || f >= n) throw std::invalid_argument("chi: unknown edge");
    std::vector<int> lpos = leaf_positions(d.tg.left, d.orient_left);
    std::vector<int> rpos = leaf_positions(d.tg.right, d.orient_right);
    bool left_before = lpos[e] < lpos[f];
    bool right_before = rpos[d.tg.sigma[e]] < rpos[d.tg.sigma[f]];
    return left_before == right_before ? -1 : 1;
}

// --- switches ------------------------------------------------------------

inline Layout switch_at(const Layout& d, Side side, int v) {
    const Tree& t = side == Side::left ? d.tg.left : d.tg.right;
    if (v < 0 || v >= t.vertex_count() || t.is_leaf(v))
        throw std::invalid_argument("switch_at: vertex must be internal");
    Layout out = d;
    auto& orient = side == Side::left ? out.orient_left : out.orient_right;
    orient[v] ^= 1;
    return out;
}

inline Layout flip_set(const Layout& d, Side side, const std::vector<int>& vs) {
    const Tree& t = side == Side::left ? d.tg.left : d.tg.right;
    Layout out = d;
    auto& orient = side == Side::left ? out.orient_left : out.orient_right;
    for (int v : vs) {
        if (v < 0 || v >= t.vertex_count() || t.is_leaf(v))
            throw std::invalid_argument("flip_set: vertex must be internal");
        orient[v] ^= 1;
    }
    return out;
}

// Switch at every internal vertex of one side; reverses that leaf sequence.
inline Layout flip_all(const Layout& d, Side side) {
    return flip_set(d, side, internal_vertices(side == Side::left ? d.tg.left : d.tg.right));
}

// alpha on internal vertices of the right tree, beta on the left tree:
// +1 keeps a vertex, -1 switches it (relative to some base layout).
struct SwitchVector {
    std::vector<int8_t> alpha; // per vertex of right tree
    std::vector<int8_t> beta;  // per vertex of left tree
};

namespace detail {
inline void check_switch_vector(const Tanglegram& t, const SwitchVector& s) {
    if (static_cast<int>(s.alpha.size()) != t.right.vertex_count() ||
        static_cast<int>(s.beta.size()) != t.left.vertex_count())
        throw std::invalid_argument("switch vector sized to the wrong trees");
    for (int v = 0; v < t.right.vertex_count(); ++v)
        if (!t.right.is_leaf(v) && s.alpha[v] != 1 && s.alpha[v] != -1)
            throw std::invalid_argument("switch vector incomplete on the right side");
    for (int v = 0; v < t.left.vertex_count(); ++v)
        if (!t.left.is_leaf(v) && s.beta[v] != 1 && s.beta[v] != -1)
            throw std::invalid_argument("switch vector incomplete on the left side");
}
} // namespace detail

inline Layout apply_switches(const Layout& base, const SwitchVector& s) {
    detail::check_switch_vector(base.tg, s);
    Layout out = base;
    for (int v = 0; v < base.tg.left.vertex_count(); ++v)
        if (!base.tg.left.is_leaf(v) && s.beta[v] == -1) out.orient_left[v] ^= 1;
    for (int v = 0; v < base.tg.right.vertex_count(); ++v)
        if (!base.tg.right.is_leaf(v) && s.alpha[v] == -1) out.orient_right[v] ^= 1;
    return out;
}

// --- decomposition --------------------------------------------------------

// a_{xu} = sum of chi over the unordered edge pairs whose right lca is x and
// left lca is u, taken in a fixed base layout. Every pair lands in exactly
// one cell, so the grand total is 2 cr(base) - C(n,2).
struct DecompositionMatrix {
    Layout base;
    int n = 0;
    int vl = 0, vr = 0;       // vertex counts of left/right tree
    std::vector<long long> a; // index x * vl + u

    long long at(int x, int u) const { return a[static_cast<size_t>(x) * vl + u]; }

    long long row_sum(int x) const {
        long long s = 0;
        for (int u = 0; u < vl; ++u) s += at(x, u);
        return s;
    }

    long long total_sum() const { return std::accumulate(a.begin(), a.end(), 0LL); }
};

namespace detail {
// lca of every leaf pair, filled one internal vertex at a time: pairs split
// across the two child subtrees meet exactly at that vertex.
inline std::vector<int> leaf_pair_lca(const Tree& t) {
    const int n = t.n_leaves;
    std::vector<int> table(static_cast<size_t>(n) * n, -1);
    std::function<std::vector<int>(int)> rec = [&](int v) -> std::vector<int> {
        if (t.is_leaf(v)) {
            table[static_cast<size_t>(t.leaf_label[v]) * n + t.leaf_label[v]] = v;
            return {t.leaf_label[v]};
        }
        std::vector<int> a = rec(t.child[v][0]);
        std::vector<int> b = rec(t.child[v][1]);
        for (int x : a)
            for (int y : b) {
                table[static_cast<size_t>(x) * n + y] = v;
                table[static_cast<size_t>(y) * n + x] = v;
            }
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    rec(t.root);
    return table;
}
} // namespace detail

inline DecompositionMatrix decomposition(const Layout& d0) {
    DecompositionMatrix m;
    m.base = d0;
    m.n = d0.tg.size();
    m.vl = d0.tg.left.vertex_count();
    m.vr = d0.tg.right.vertex_count();
    m.a.assign(static_cast<size_t>(m.vl) * m.vr, 0);
    if (m.n < 2) return m;
    std::vector<int> lca_l = detail::leaf_pair_lca(d0.tg.left);
    std::vector<int> lca_r = detail::leaf_pair_lca(d0.tg.right);
    std::vector<int> lpos = leaf_positions(d0.tg.left, d0.orient_left);
    std::vector<int> rpos = leaf_positions(d0.tg.right, d0.orient_right);
    const int n = m.n;
    for (int e = 0; e < n; ++e)
        for (int f = e + 1; f < n; ++f) {
            int u = lca_l[static_cast<size_t>(e) * n + f];
            int x = lca_r[static_cast<size_t>(d0.tg.sigma[e]) * n + d0.tg.sigma[f]];
            bool crossing = (lpos[e] < lpos[f]) != (rpos[d0.tg.sigma[e]] < rpos[d0.tg.sigma[f]]);
            m.a[static_cast<size_t>(x) * m.vl + u] += crossing ? 1 : -1;
        }
    return m;
}

// Crossings of the layout reached from m.base by switching every vertex with
// sign -1, evaluated algebraically from the decomposition.
inline long long cr_via_decomposition(const DecompositionMatrix& m, const SwitchVector& s) {
    detail::check_switch_vector(m.base.tg, s);
    long long sum = 0;
    for (int x = 0; x < m.vr; ++x) {
        if (m.base.tg.right.is_leaf(x)) continue;
        long long row = 0;
        for (int u = 0; u < m.vl; ++u) {
            if (m.base.tg.left.is_leaf(u)) continue;
            row += static_cast<long long>(s.beta[u]) * m.at(x, u);
        }
        sum += s.alpha[x] * row;
    }
    return (pair_count(m.n) + sum) / 2;
}

// --- random instances ------------------------------------------------------

// Deterministic in the seed: plane trees with Catalan-weighted splits, a
// uniform matching, and fair-coin orientation bits.
inline Layout random_instance(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_instance: n must be >= 1");
    SplitMix64 master(seed);
    SplitMix64 g_left = master.split();
    SplitMix64 g_right = master.split();
    SplitMix64 g_sigma = master.split();
    SplitMix64 g_orient = master.split();

    Tree left = random_plane_tree(n, g_left);
    Tree right = random_plane_tree(n, g_right);

    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(sigma[i], sigma[g_sigma.below(static_cast<uint64_t>(i) + 1)]);

    Layout d = make_layout(make_tanglegram(std::move(left), std::move(right), std::move(sigma)));
    for (int v = 0; v < d.tg.left.vertex_count(); ++v)
        if (!d.tg.left.is_leaf(v)) d.orient_left[v] = g_orient.coin() ? 1 : 0;
    for (int v = 0; v < d.tg.right.vertex_count(); ++v)
        if (!d.tg.right.is_leaf(v)) d.orient_right[v] = g_orient.coin() ? 1 : 0;
    return d;
}

// --- canonical form and isomorphism ----------------------------------------

// Canonical byte string: both shapes canonicalized, then the matching
// minimized lexicographically over both automorphism groups. Equal strings
// iff the tanglegrams are isomorphic. Intended for n <= 10.
inline std::string canonical_form(const Tanglegram& t) {
    CanonicalShape cl = canonical_shape(t.left);
    CanonicalShape cr = canonical_shape(t.right);
    const int n = t.size();
    std::vector<int> sp(n); // matching in canonical coordinates
    for (int old_l = 0; old_l < n; ++old_l) sp[cl.relabel[old_l]] = cr.relabel[t.sigma[old_l]];

    std::vector<std::vector<int>> aut_l = automorphisms(cl.tree);
    std::vector<std::vector<int>> aut_r = automorphisms(cr.tree);
    // invert the left permutations once; candidates are b . sp . a^{-1}
    std::vector<std::vector<int>> aut_l_inv;
    aut_l_inv.reserve(aut_l.size());
    for (const auto& a : aut_l) {
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) inv[a[i]] = i;
        aut_l_inv.push_back(std::move(inv));
    }

    std::vector<int> best = sp;
    for (const auto& ainv : aut_l_inv)
        for (const auto& b : aut_r) {
            bool smaller = false;
            for (int i = 0; i < n; ++i) {
                int v = b[sp[ainv[i]]];
                if (v != best[i]) {
                    smaller = v < best[i];
                    break;
                }
            }
            if (smaller)
                for (int i = 0; i < n; ++i) best[i] = b[sp[ainv[i]]];
        }

    std::string out = shape_string(cl.tree);
    out += '|';
    out += shape_string(cr.tree);
    out += '|';
    for (int i = 0; i < n; ++i) {
        if (i) out += ' ';
        out += std::to_string(best[i]);
    }
    return out;
}

inline bool is_isomorphic(const Tanglegram& a, const Tanglegram& b) {
    if (a.size() != b.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

// --- .tgl text format -------------------------------------------------------

// TGL 1
// n <size>
// L <tree expression, child order = drawn order>
// R <tree expression>
// M <l>-<r> pairs, left labels ascending
inline std::string to_tgl(const Layout& d) {
    std::string out = "TGL 1\n";
    out += "n " + std::to_string(d.tg.size()) + "\n";
    out += "L " + tree_expression(d.tg.left, &d.orient_left) + "\n";
    out += "R " + tree_expression(d.tg.right, &d.orient_right) + "\n";
    out += "M";
    for (int l = 0; l < d.tg.size(); ++l)
        out += " " + std::to_string(l) + "-" + std::to_string(d.tg.sigma[l]);
    out += "\n";
    return out;
}

inline Layout parse_tgl(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&](const char* what) -> std::string {
        if (!std::getline(in, line)) throw parse_error(std::string("tgl: missing ") + what);
        return line;
    };
    if (next_line("header") != "TGL 1") throw parse_error("tgl: expected 'TGL 1' header");
    std::string nline = next_line("size line");
    if (nline.size() < 3 || nline[0] != 'n' || nline[1] != ' ') throw parse_error("tgl: expected 'n <size>'");
    long n = 0;
    try {
        size_t used = 0;
        n = std::stol(nline.substr(2), &used);
        if (used != nline.size() - 2) throw parse_error("tgl: bad size");
    } catch (const std::exception&) {
        throw parse_error("tgl: bad size");
    }
    std::string lline = next_line("L line");
    if (lline.rfind("L ", 0) != 0) throw parse_error("tgl: expected 'L <tree>'");
    std::string rline = next_line("R line");
    if (rline.rfind("R ", 0) != 0) throw parse_error("tgl: expected 'R <tree>'");
    std::string mline = next_line("M line");
    if (mline.rfind("M", 0) != 0) throw parse_error("tgl: expected 'M <pairs>'");

    Tree left = parse_tree(std::string_view(lline).substr(2));
    Tree right = parse_tree(std::string_view(rline).substr(2));
    if (left.n_leaves != n || right.n_leaves != n)
        throw parse_error("tgl: size line does not match the trees");

    std::vector<int> sigma(static_cast<size_t>(n), -1);
    std::istringstream ms(mline.substr(1));
    std::string pair;
    int seen = 0;
    while (ms >> pair) {
        size_t dash = pair.find('-');
        if (dash == std::string::npos) throw parse_error("tgl: matching pair must be '<l>-<r>'");
        int l = 0, r = 0;
        try {
            l = std::stoi(pair.substr(0, dash));
            r = std::stoi(pair.substr(dash + 1));
        } catch (const std::exception&) {
            throw parse_error("tgl: bad matching pair '" + pair + "'");
        }
        if (l < 0 || l >= n || sigma[l] != -1) throw parse_error("tgl: matching is not a bijection");
        sigma[l] = r;
        ++seen;
    }
    if (seen != n) throw parse_error("tgl: matching must list every leaf once");
    return make_layout(make_tanglegram(std::move(left), std::move(right), std::move(sigma)));
}

} // namespace tgl
