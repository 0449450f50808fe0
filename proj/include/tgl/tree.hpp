#pragma once

// Rooted binary trees: parsing, shape enumeration, lca queries, and the
// special-vertex statistics (psi, h(n), realizers) used by the switching
// upper bound.

#include <algorithm>
#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/rng.hpp"

namespace tgl {

// Rooted binary tree with n leaves: every vertex has exactly two children or
// none; leaves carry the labels 0..n-1. The stored child order is only a
// default drawing orientation, never part of the tree's identity.
struct Tree {
    int n_leaves = 0;
    int root = -1;
    std::vector<std::array<int, 2>> child; // {-1,-1} at leaves
    std::vector<int> parent;               // -1 at root
    std::vector<int> depth;
    std::vector<int> leaf_label;           // -1 at internal vertices
    std::vector<int> leaf_vertex;          // label -> vertex id

    int vertex_count() const { return static_cast<int>(child.size()); }
    bool is_leaf(int v) const { return child[v][0] < 0; }
};

// Internal vertex ids in ascending order.
inline std::vector<int> internal_vertices(const Tree& t) {
    std::vector<int> out;
    out.reserve(t.n_leaves > 0 ? t.n_leaves - 1 : 0);
    for (int v = 0; v < t.vertex_count(); ++v)
        if (!t.is_leaf(v)) out.push_back(v);
    return out;
}

namespace detail {

// Fills parent/depth/leaf maps from child arrays and validates the leaf
// labels form exactly 0..n-1.
inline void finalize_tree(Tree& t) {
    const int V = t.vertex_count();
    t.parent.assign(V, -1);
    t.depth.assign(V, 0);
    int leaves = 0;
    std::vector<int> stack{t.root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (t.is_leaf(v)) {
            ++leaves;
            continue;
        }
        for (int c : t.child[v]) {
            t.parent[c] = v;
            t.depth[c] = t.depth[v] + 1;
            stack.push_back(c);
        }
    }
    t.n_leaves = leaves;
    t.leaf_vertex.assign(leaves, -1);
    for (int v = 0; v < V; ++v) {
        if (!t.is_leaf(v)) {
            if (t.leaf_label[v] != -1) throw parse_error("internal vertex with leaf label");
            continue;
        }
        int l = t.leaf_label[v];
        if (l < 0 || l >= leaves) throw parse_error("leaf labels must be 0..n-1, got " + std::to_string(l));
        if (t.leaf_vertex[l] != -1) throw parse_error("duplicate leaf label " + std::to_string(l));
        t.leaf_vertex[l] = v;
    }
}

} // namespace detail

// Single vertex that is both root and leaf (n = 1).
inline Tree single_leaf() {
    Tree t;
    t.root = 0;
    t.child.push_back({-1, -1});
    t.leaf_label.push_back(0);
    detail::finalize_tree(t);
    return t;
}

// New tree whose root has copies of a and b as children, in that order.
// Leaf labels of b are shifted by a.n_leaves, so labels stay 0..n-1 in the
// combined stored in-order.
inline Tree join_trees(const Tree& a, const Tree& b) {
    Tree t;
    const int va = a.vertex_count(), vb = b.vertex_count();
    t.child.resize(va + vb + 1);
    t.leaf_label.assign(va + vb + 1, -1);
    for (int v = 0; v < va; ++v) {
        t.child[v] = a.child[v];
        t.leaf_label[v] = a.leaf_label[v];
    }
    for (int v = 0; v < vb; ++v) {
        auto c = b.child[v];
        if (c[0] >= 0) c = {c[0] + va, c[1] + va};
        t.child[va + v] = c;
        t.leaf_label[va + v] = b.leaf_label[v] < 0 ? -1 : b.leaf_label[v] + a.n_leaves;
    }
    t.root = va + vb;
    t.child[t.root] = {a.root, b.root + va};
    detail::finalize_tree(t);
    return t;
}

// Parses a tree expression: leaf = decimal integer, internal = "(A,B)".
// Whitespace is ignored. The written child order is kept as the stored
// (default orientation) order. Iterative, so input depth cannot exhaust the
// call stack.
inline Tree parse_tree(std::string_view text) {
    Tree t;
    struct Frame {
        int first = -1;
        int second = -1;
        bool saw_comma = false;
    };
    std::vector<Frame> open;
    int result = -1;
    auto complete = [&](int node) {
        if (open.empty()) {
            if (result != -1) throw parse_error("trailing characters after tree expression");
            result = node;
            return;
        }
        Frame& f = open.back();
        if (!f.saw_comma) {
            if (f.first != -1)
                throw parse_error("expected ',' in tree expression (every internal vertex needs two children)");
            f.first = node;
        } else {
            if (f.second != -1) throw parse_error("expected ')' in tree expression");
            f.second = node;
        }
    };
    size_t pos = 0;
    while (pos < text.size()) {
        char c = text[pos];
        if (c == ' ' || c == '\t') {
            ++pos;
        } else if (c == '(') {
            if (result != -1) throw parse_error("trailing characters after tree expression");
            open.push_back({});
            ++pos;
        } else if (c >= '0' && c <= '9') {
            long value = 0;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                value = value * 10 + (text[pos] - '0');
                if (value > 1 << 30) throw parse_error("leaf label out of range");
                ++pos;
            }
            int v = t.vertex_count();
            t.child.push_back({-1, -1});
            t.leaf_label.push_back(static_cast<int>(value));
            complete(v);
        } else if (c == ',') {
            if (open.empty() || open.back().first == -1 || open.back().saw_comma)
                throw parse_error("unexpected ',' in tree expression");
            open.back().saw_comma = true;
            ++pos;
        } else if (c == ')') {
            if (open.empty()) throw parse_error("unexpected ')' in tree expression");
            Frame f = open.back();
            if (f.first != -1 && !f.saw_comma)
                throw parse_error("expected ',' in tree expression (every internal vertex needs two children)");
            if (f.second == -1) throw parse_error("unexpected ')' in tree expression");
            open.pop_back();
            int v = t.vertex_count();
            t.child.push_back({f.first, f.second});
            t.leaf_label.push_back(-1);
            ++pos;
            complete(v);
        } else {
            throw parse_error("expected leaf label or '(' in tree expression");
        }
    }
    if (!open.empty()) throw parse_error("unexpected end of tree expression");
    if (result == -1) throw parse_error("empty tree expression");
    t.root = result;
    detail::finalize_tree(t);
    return t;
}

// Label-free serialization of the subtree at v; leaves are "x". Used as the
// shape identity and as the canonical ordering key.
inline std::string shape_string(const Tree& t, int v) {
    if (t.is_leaf(v)) return "x";
    std::string a = shape_string(t, t.child[v][0]);
    std::string b = shape_string(t, t.child[v][1]);
    if (b < a) a.swap(b);
    return "(" + a + "," + b + ")";
}

inline std::string shape_string(const Tree& t) { return shape_string(t, t.root); }

// Labeled serialization. With an orientation, children are written in drawn
// order; without one, children are sorted so the output is canonical.
inline std::string tree_expression(const Tree& t, const std::vector<uint8_t>* orient = nullptr) {
    std::function<std::string(int)> rec = [&](int v) -> std::string {
        if (t.is_leaf(v)) return std::to_string(t.leaf_label[v]);
        int b = orient ? ((*orient)[v] & 1) : 0;
        std::string first = rec(t.child[v][b]);
        std::string second = rec(t.child[v][1 - b]);
        if (!orient && second < first) first.swap(second);
        return "(" + first + "," + second + ")";
    };
    return rec(t.root);
}

struct CanonicalShape {
    Tree tree;                // canonical arrangement, leaves relabeled 0..n-1 in order
    std::vector<int> relabel; // old leaf label -> canonical leaf label
};

// Canonical arrangement of a tree's shape: children sorted by shape string at
// every vertex, leaves relabeled by canonical in-order position.
inline CanonicalShape canonical_shape(const Tree& t) {
    // rec returns (shape string, canonical subtree, old labels in canonical order)
    struct Part {
        std::string shape;
        Tree tree;
        std::vector<int> old_labels;
    };
    std::function<Part(int)> rec = [&](int v) -> Part {
        if (t.is_leaf(v)) return {"x", single_leaf(), {t.leaf_label[v]}};
        Part a = rec(t.child[v][0]);
        Part b = rec(t.child[v][1]);
        if (b.shape < a.shape) std::swap(a, b);
        Part out;
        out.shape = "(" + a.shape + "," + b.shape + ")";
        out.tree = join_trees(a.tree, b.tree);
        out.old_labels = std::move(a.old_labels);
        out.old_labels.insert(out.old_labels.end(), b.old_labels.begin(), b.old_labels.end());
        return out;
    };
    Part p = rec(t.root);
    CanonicalShape cs;
    cs.tree = std::move(p.tree);
    cs.relabel.assign(t.n_leaves, -1);
    for (int i = 0; i < t.n_leaves; ++i) cs.relabel[p.old_labels[i]] = i;
    return cs;
}

// One representative per unordered tree shape with n leaves, in shape-string
// order. Counts follow the split recurrence
//   s(n) = sum_{k<n/2} s(k) s(n-k) + [n even] s(n/2)(s(n/2)+1)/2.
inline std::vector<Tree> enumerate_shapes(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_shapes: n must be >= 1");
    std::vector<std::vector<Tree>> by(n + 1);
    by[1] = {single_leaf()};
    for (int m = 2; m <= n; ++m) {
        std::vector<std::pair<std::string, Tree>> keyed;
        for (int k = 1; k <= m / 2; ++k) {
            for (size_t i = 0; i < by[k].size(); ++i) {
                size_t jstart = (k == m - k) ? i : 0;
                for (size_t j = jstart; j < by[m - k].size(); ++j) {
                    const Tree& a = by[k][i];
                    const Tree& b = by[m - k][j];
                    // put the lexicographically smaller shape first
                    Tree joined = shape_string(a) <= shape_string(b) ? join_trees(a, b) : join_trees(b, a);
                    keyed.emplace_back(shape_string(joined), std::move(joined));
                }
            }
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (auto& [key, tree] : keyed) by[m].push_back(std::move(tree));
    }
    return std::move(by[n]);
}

// Uniformly random plane binary tree with n leaves (subtree sizes split with
// Catalan weights), leaf labels 0..n-1 in stored in-order.
inline Tree random_plane_tree(int n, SplitMix64& g) {
    if (n < 1) throw std::invalid_argument("random_plane_tree: n must be >= 1");
    std::vector<long double> cat(static_cast<size_t>(n), 1.0L); // cat[k] = #plane trees with k+1 leaves
    for (int k = 0; k + 1 < n; ++k) cat[k + 1] = cat[k] * 2 * (2 * k + 1) / (k + 2);
    std::function<Tree(int)> build = [&](int m) -> Tree {
        if (m == 1) return single_leaf();
        long double r = static_cast<long double>(g.unit()) * cat[m - 1];
        long double acc = 0.0L;
        int k = 1;
        for (; k < m - 1; ++k) {
            acc += cat[k - 1] * cat[m - k - 1];
            if (r < acc) break;
        }
        Tree a = build(k);
        Tree b = build(m - k);
        return join_trees(a, b);
    };
    return build(n);
}

// Number of leaves below each vertex (1 at leaves).
inline std::vector<int> leaf_counts(const Tree& t) {
    std::vector<int> cnt(t.vertex_count(), 0);
    // children have higher post-order than parents in no particular id order,
    // so walk vertices by decreasing depth
    std::vector<int> order(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t.depth[a] > t.depth[b]; });
    for (int v : order) {
        if (t.is_leaf(v))
            cnt[v] = 1;
        else
            cnt[v] = cnt[t.child[v][0]] + cnt[t.child[v][1]];
    }
    return cnt;
}

inline int leaf_descendant_count(const Tree& t, int v) {
    if (v < 0 || v >= t.vertex_count()) throw std::invalid_argument("leaf_descendant_count: unknown vertex");
    return leaf_counts(t)[v];
}

// Least common ancestor of two leaves given by label.
inline int lca(const Tree& t, int a, int b) {
    if (a < 0 || a >= t.n_leaves || b < 0 || b >= t.n_leaves)
        throw std::invalid_argument("lca: unknown leaf label");
    int u = t.leaf_vertex[a], v = t.leaf_vertex[b];
    while (t.depth[u] > t.depth[v]) u = t.parent[u];
    while (t.depth[v] > t.depth[u]) v = t.parent[v];
    while (u != v) {
        u = t.parent[u];
        v = t.parent[v];
    }
    return u;
}

// psi statistics: an internal vertex is special when it has a leaf child and
// an even number of leaf descendants. psi is 0 on every other vertex.
struct SpecialVertexReport {
    std::vector<int> special;      // special vertex ids, ascending
    std::vector<uint8_t> psi;      // per vertex, 0 or 1
    int psi_total = 0;
};

inline SpecialVertexReport special_report(const Tree& t) {
    SpecialVertexReport r;
    r.psi.assign(t.vertex_count(), 0);
    std::vector<int> cnt = leaf_counts(t);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (t.is_leaf(v)) continue;
        bool leaf_child = t.is_leaf(t.child[v][0]) || t.is_leaf(t.child[v][1]);
        if (leaf_child && cnt[v] % 2 == 0) {
            r.psi[v] = 1;
            r.special.push_back(v);
        }
    }
    r.psi_total = static_cast<int>(r.special.size());
    return r;
}

// Closed form for the minimum psi total over all n-leaf shapes.
inline int h_formula(int n) {
    if (n < 1) throw std::invalid_argument("h_formula: n must be >= 1");
    return n == 1 ? 0 : n / 4 + 1;
}

struct HExactResult {
    int value;
    Tree realizer; // first minimizing shape in enumeration order
};

// Exhaustive minimum of psi over all shapes; practical for n <= ~14.
inline HExactResult h_exact(int n) {
    if (n < 1) throw std::invalid_argument("h_exact: n must be >= 1");
    HExactResult best{-1, {}};
    for (Tree& t : enumerate_shapes(n)) {
        int psi = special_report(t).psi_total;
        if (best.value < 0 || psi < best.value) {
            best.value = psi;
            best.realizer = std::move(t);
        }
    }
    return best;
}

// All leaf-label permutations induced by shape automorphisms. Intended for
// n <= 10; the group has size 2^k where k counts internal vertices whose
// child subtrees are isomorphic.
inline std::vector<std::vector<int>> automorphisms(const Tree& t) {
    std::vector<std::string> shape_of(t.vertex_count());
    std::function<void(int)> fill = [&](int v) {
        if (t.is_leaf(v)) {
            shape_of[v] = "x";
            return;
        }
        fill(t.child[v][0]);
        fill(t.child[v][1]);
        std::string a = shape_of[t.child[v][0]], b = shape_of[t.child[v][1]];
        if (b < a) a.swap(b);
        shape_of[v] = "(" + a + "," + b + ")";
    };
    fill(t.root);

    using Map = std::vector<std::pair<int, int>>; // (source label, target label)
    // all leaf bijections subtree(u) -> subtree(v); shapes of u and v match
    std::function<std::vector<Map>(int, int)> isos = [&](int u, int v) -> std::vector<Map> {
        if (t.is_leaf(u)) return {Map{{t.leaf_label[u], t.leaf_label[v]}}};
        std::vector<Map> out;
        auto emit = [&](int a, int b, int c, int d) {
            if (shape_of[a] != shape_of[c] || shape_of[b] != shape_of[d]) return;
            for (const Map& m0 : isos(a, c))
                for (const Map& m1 : isos(b, d)) {
                    Map m = m0;
                    m.insert(m.end(), m1.begin(), m1.end());
                    out.push_back(std::move(m));
                }
        };
        emit(t.child[u][0], t.child[u][1], t.child[v][0], t.child[v][1]);
        emit(t.child[u][0], t.child[u][1], t.child[v][1], t.child[v][0]);
        return out;
    };

    std::vector<std::vector<int>> perms;
    for (const Map& m : isos(t.root, t.root)) {
        std::vector<int> p(t.n_leaves);
        for (auto [src, dst] : m) p[src] = dst;
        perms.push_back(std::move(p));
    }
    return perms;
}

} // namespace tgl
