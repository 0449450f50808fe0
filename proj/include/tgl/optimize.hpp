#pragma once

// Exact crossing-number solvers, single-switch local search, and the
// flip-all / flip-special switching chain with its provable upper bound.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/tanglegram.hpp"
#include "tgl/tree.hpp"

namespace tgl {

enum class CrtMethod { exact, bruteforce, heuristic };

struct CrtResult {
    long long value = 0;
    Layout witness;
    CrtMethod method = CrtMethod::exact;
    uint64_t nodes_explored = 0;
};

namespace detail {

// Bottom-up merge schedule over one tree: each internal vertex owns the
// contiguous in-order range [lo,hi) split at mid between its two drawn
// children. Merging sorted partner positions while counting the pairs
// (p in first block, q in second block, p > q) yields, per vertex, the number
// of crossings among exactly the edge pairs whose lca on this side is that
// vertex.
struct MergePlan {
    std::vector<int> inorder_label; // in-order position -> leaf label
    struct Node {
        int lo, mid, hi, vertex;
    };
    std::vector<Node> order; // children before parents
};

inline MergePlan make_merge_plan(const Tree& t, const std::vector<uint8_t>* orient = nullptr) {
    MergePlan plan;
    plan.inorder_label.reserve(t.n_leaves);
    plan.order.reserve(t.n_leaves > 0 ? t.n_leaves - 1 : 0);
    std::function<std::pair<int, int>(int)> rec = [&](int v) -> std::pair<int, int> {
        if (t.is_leaf(v)) {
            int p = static_cast<int>(plan.inorder_label.size());
            plan.inorder_label.push_back(t.leaf_label[v]);
            return {p, p + 1};
        }
        int b = orient ? ((*orient)[v] & 1) : 0;
        auto [lo, mid] = rec(t.child[v][b]);
        auto [mid2, hi] = rec(t.child[v][1 - b]);
        (void)mid2;
        plan.order.push_back({lo, mid, hi, v});
        return {lo, hi};
    };
    rec(t.root);
    return plan;
}

// Runs the merge schedule on arr (partner positions by in-order slot) and
// reports (vertex, c, total pairs) per internal vertex, where c counts the
// crossing pairs with the first block drawn above the second.
template <class PerNode>
inline void merge_count(const MergePlan& plan, std::vector<int>& arr, std::vector<int>& tmp, PerNode&& per_node) {
    for (const auto& nd : plan.order) {
        long long c = 0;
        int i = nd.lo, j = nd.mid, k = nd.lo;
        while (i < nd.mid && j < nd.hi) {
            if (arr[i] <= arr[j]) {
                tmp[k++] = arr[i++];
            } else {
                c += nd.mid - i; // arr[j] is below yet left-of every remaining first-block entry
                tmp[k++] = arr[j++];
            }
        }
        while (i < nd.mid) tmp[k++] = arr[i++];
        while (j < nd.hi) tmp[k++] = arr[j++];
        std::copy(tmp.begin() + nd.lo, tmp.begin() + nd.hi, arr.begin() + nd.lo);
        per_node(nd.vertex, c, static_cast<long long>(nd.mid - nd.lo) * (nd.hi - nd.mid));
    }
}

// Reusable buffers for evaluating many left orientations of one tanglegram.
struct ExactSolver {
    const Tanglegram* t;
    MergePlan right_plan;            // stored right orientation
    std::vector<int> partner;        // right in-order slot -> left leaf label
    std::vector<int> left_internal;  // root first, then ascending ids
    std::vector<int> lpos;           // left label -> position, rebuilt per mask
    std::vector<uint8_t> left_bits;  // per left vertex, rebuilt per mask
    std::vector<int> arr, tmp, stack;

    explicit ExactSolver(const Tanglegram& tg) : t(&tg) {
        right_plan = make_merge_plan(tg.right);
        const int n = tg.size();
        std::vector<int> inv_sigma(n);
        for (int l = 0; l < n; ++l) inv_sigma[tg.sigma[l]] = l;
        partner.resize(n);
        for (int j = 0; j < n; ++j) partner[j] = inv_sigma[right_plan.inorder_label[j]];
        for (int v : internal_vertices(tg.left))
            if (v != tg.left.root) left_internal.push_back(v);
        if (n >= 2) left_internal.insert(left_internal.begin(), tg.left.root);
        lpos.resize(n);
        left_bits.assign(tg.left.vertex_count(), 0);
        arr.resize(n);
        tmp.resize(n);
        stack.reserve(tg.left.vertex_count());
    }

    int free_bits() const { return left_internal.empty() ? 0 : static_cast<int>(left_internal.size()) - 1; }

    void set_mask(uint64_t mask) {
        // bit k of the mask orients left_internal[k+1]; the root bit is pinned
        // to 0 (the vertical mirror of any layout has the same crossings).
        std::fill(left_bits.begin(), left_bits.end(), 0);
        for (int k = 0; k < free_bits(); ++k)
            left_bits[left_internal[k + 1]] = static_cast<uint8_t>((mask >> k) & 1);
    }

    void fill_positions() {
        const Tree& L = t->left;
        stack.clear();
        stack.push_back(L.root);
        int at = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (L.is_leaf(v)) {
                lpos[L.leaf_label[v]] = at++;
                continue;
            }
            int b = left_bits[v] & 1;
            stack.push_back(L.child[v][1 - b]);
            stack.push_back(L.child[v][b]);
        }
    }

    // Minimum crossings over all right orientations for the current left
    // orientation: per right vertex the two drawn orders give c or tot-c
    // crossings among the pairs meeting there, independently of every other
    // vertex (subtree leaf blocks are contiguous).
    long long eval(uint64_t mask, std::vector<uint8_t>* right_bits = nullptr) {
        set_mask(mask);
        fill_positions();
        const int n = t->size();
        for (int j = 0; j < n; ++j) arr[j] = lpos[partner[j]];
        long long total = 0;
        merge_count(right_plan, arr, tmp, [&](int v, long long c, long long tot) {
            total += std::min(c, tot - c);
            if (right_bits) (*right_bits)[v] = tot - c < c ? 1 : 0;
        });
        return total;
    }
};

} // namespace detail

// With the left side pinned, the optimal right orientation decomposes into an
// independent binary choice per internal vertex. Returns the minimum crossing
// count and the achieving right orientation bits.
inline std::pair<long long, std::vector<uint8_t>> best_right_given_left(const Tanglegram& t,
                                                                        const std::vector<uint8_t>& left_orient) {
    if (static_cast<int>(left_orient.size()) != t.left.vertex_count())
        throw std::invalid_argument("best_right_given_left: orientation sized to the wrong tree");
    detail::ExactSolver solver(t);
    solver.left_bits = left_orient;
    solver.fill_positions();
    const int n = t.size();
    for (int j = 0; j < n; ++j) solver.arr[j] = solver.lpos[solver.partner[j]];
    std::vector<uint8_t> right_bits(t.right.vertex_count(), 0);
    long long total = 0;
    detail::merge_count(solver.right_plan, solver.arr, solver.tmp, [&](int v, long long c, long long tot) {
        total += std::min(c, tot - c);
        right_bits[v] = tot - c < c ? 1 : 0;
    });
    return {total, std::move(right_bits)};
}

// Exact crossing number: enumerate left orientations (one mirror bit pinned)
// and solve the right side per orientation. Deterministic witness: the first
// optimal mask in increasing order, regardless of worker count.
inline CrtResult crt_exact(const Tanglegram& t, int jobs = 1) {
    if (t.size() > 24) throw size_limit_error("crt_exact: size capped at 24");
    CrtResult res;
    res.method = CrtMethod::exact;
    if (t.size() < 2) {
        res.witness = make_layout(t);
        res.nodes_explored = 1;
        return res;
    }

    detail::ExactSolver proto(t);
    const int bits = proto.free_bits();
    const uint64_t total_masks = 1ull << bits;
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<uint64_t>(total_masks, 64))));

    struct Best {
        long long value;
        uint64_t mask;
    };
    std::vector<Best> results(static_cast<size_t>(jobs));
    auto run_block = [&](int w, uint64_t lo, uint64_t hi) {
        detail::ExactSolver solver(t);
        Best best{-1, 0};
        for (uint64_t mask = lo; mask < hi; ++mask) {
            long long v = solver.eval(mask);
            if (best.value < 0 || v < best.value) best = {v, mask};
        }
        results[static_cast<size_t>(w)] = best;
    };
    if (jobs == 1) {
        run_block(0, 0, total_masks);
    } else {
        std::vector<std::thread> pool;
        uint64_t chunk = total_masks / jobs;
        for (int w = 0; w < jobs; ++w) {
            uint64_t lo = chunk * w;
            uint64_t hi = w + 1 == jobs ? total_masks : lo + chunk;
            pool.emplace_back(run_block, w, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    Best best = results[0];
    for (const Best& b : results)
        if (b.value >= 0 && (best.value < 0 || b.value < best.value || (b.value == best.value && b.mask < best.mask)))
            best = b;

    res.value = best.value;
    res.nodes_explored = total_masks;
    res.witness = make_layout(t);
    detail::ExactSolver solver(t);
    std::vector<uint8_t> right_bits(t.right.vertex_count(), 0);
    solver.eval(best.mask, &right_bits);
    res.witness.orient_left = solver.left_bits;
    res.witness.orient_right = std::move(right_bits);
    return res;
}

// Exhaustive reference: every orientation pair, crossings counted directly by
// the quadratic pair scan. Oracle for crt_exact; sizes up to 10.
inline CrtResult crt_bruteforce(const Tanglegram& t) {
    if (t.size() > 10) throw size_limit_error("crt_bruteforce: size capped at 10");
    CrtResult res;
    res.method = CrtMethod::bruteforce;
    Layout d = make_layout(t);
    const int n = t.size();
    std::vector<int> left_int = internal_vertices(t.left);
    std::vector<int> right_int = internal_vertices(t.right);
    long long best = -1;
    uint64_t best_l = 0, best_r = 0;
    std::vector<int> pi(n);
    for (uint64_t lm = 0; lm < (1ull << left_int.size()); ++lm) {
        for (size_t k = 0; k < left_int.size(); ++k) d.orient_left[left_int[k]] = (lm >> k) & 1;
        std::vector<int> lseq = leaf_sequence(t.left, d.orient_left);
        for (uint64_t rm = 0; rm < (1ull << right_int.size()); ++rm) {
            for (size_t k = 0; k < right_int.size(); ++k) d.orient_right[right_int[k]] = (rm >> k) & 1;
            std::vector<int> rpos = leaf_positions(t.right, d.orient_right);
            for (int i = 0; i < n; ++i) pi[i] = rpos[t.sigma[lseq[i]]];
            long long cr = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (pi[i] > pi[j]) ++cr;
            ++res.nodes_explored;
            if (best < 0 || cr < best) {
                best = cr;
                best_l = lm;
                best_r = rm;
            }
        }
    }
    res.value = best;
    for (size_t k = 0; k < left_int.size(); ++k) d.orient_left[left_int[k]] = (best_l >> k) & 1;
    for (size_t k = 0; k < right_int.size(); ++k) d.orient_right[right_int[k]] = (best_r >> k) & 1;
    res.witness = std::move(d);
    return res;
}

namespace detail {

// Crossing-count change for a single switch at each internal vertex of one
// side: switching v replaces its c crossings by tot - c, so the delta is
// tot - 2c. One merge pass computes every delta.
inline void switch_deltas(const Tree& t, const std::vector<uint8_t>& orient, const std::vector<int>& partner_pos,
                          std::vector<long long>& delta) {
    delta.assign(t.vertex_count(), 0);
    MergePlan plan = make_merge_plan(t, &orient);
    std::vector<int> arr(t.n_leaves), tmp(t.n_leaves);
    for (int j = 0; j < t.n_leaves; ++j) arr[j] = partner_pos[plan.inorder_label[j]];
    merge_count(plan, arr, tmp, [&](int v, long long c, long long tot) { delta[v] = tot - 2 * c; });
}

} // namespace detail

// Steepest-descent single-switch local search: repeatedly apply the switch
// with the largest decrease (ties: left side first, lowest vertex id) until
// no single switch improves the layout.
inline Layout local_search(Layout d) {
    const Tanglegram& t = d.tg;
    const int n = t.size();
    if (n < 2) return d;
    std::vector<int> inv_sigma(n);
    for (int l = 0; l < n; ++l) inv_sigma[t.sigma[l]] = l;
    std::vector<long long> dl, dr;
    std::vector<int> lpartner(n), rpartner(n);
    for (;;) {
        std::vector<int> lpos = leaf_positions(t.left, d.orient_left);
        std::vector<int> rpos = leaf_positions(t.right, d.orient_right);
        for (int l = 0; l < n; ++l) lpartner[l] = rpos[t.sigma[l]];
        for (int r = 0; r < n; ++r) rpartner[r] = lpos[inv_sigma[r]];
        detail::switch_deltas(t.left, d.orient_left, lpartner, dl);
        detail::switch_deltas(t.right, d.orient_right, rpartner, dr);
        long long best = 0;
        Side side = Side::left;
        int vertex = -1;
        for (int v = 0; v < t.left.vertex_count(); ++v)
            if (!t.left.is_leaf(v) && dl[v] < best) {
                best = dl[v];
                side = Side::left;
                vertex = v;
            }
        for (int v = 0; v < t.right.vertex_count(); ++v)
            if (!t.right.is_leaf(v) && dr[v] < best) {
                best = dr[v];
                side = Side::right;
                vertex = v;
            }
        if (vertex < 0) return d;
        auto& orient = side == Side::left ? d.orient_left : d.orient_right;
        orient[vertex] ^= 1;
    }
}

// Local search from random restarts; the first best end layout wins. The
// plain overload descends from the given layout only.
inline Layout local_search(const Layout& d, uint64_t seed, int restarts) {
    Layout best = local_search(d);
    long long best_cr = crossings(best);
    SplitMix64 g(seed);
    for (int r = 1; r < restarts; ++r) {
        Layout start = d;
        for (int v = 0; v < d.tg.left.vertex_count(); ++v)
            if (!d.tg.left.is_leaf(v)) start.orient_left[v] = g.coin() ? 1 : 0;
        for (int v = 0; v < d.tg.right.vertex_count(); ++v)
            if (!d.tg.right.is_leaf(v)) start.orient_right[v] = g.coin() ? 1 : 0;
        Layout cand = local_search(std::move(start));
        long long cr = crossings(cand);
        if (cr < best_cr) {
            best = std::move(cand);
            best_cr = cr;
        }
    }
    return best;
}

struct ChainReport {
    long long cr0 = 0; // locally optimal start
    long long cr1 = 0; // after switching every left internal vertex
    long long cr2 = 0; // after additionally switching the special right vertices
    int special_count = 0;
    // sum_u a_{xu} at D0 per special vertex (column sums for the mirrored chain)
    std::vector<long long> special_row_sums;
    long long best_value = 0;
    long long guarantee_bound = 0;   // floor((C(n,2) - |S|)/2), always satisfied
    bool stronger_bound_held = false; // best <= C(n,2)/2 - |S|, observed only
};

namespace detail {

inline std::pair<Layout, ChainReport> chain_one_side(const Layout& d0, bool mirror_sides) {
    // mirror_sides = false: flip all left internals, then the special right
    // vertices. true: the symmetric variant.
    const Tanglegram& t = d0.tg;
    const int n = t.size();
    const Tree& special_tree = mirror_sides ? t.left : t.right;
    SpecialVertexReport sp = special_report(special_tree);

    // a row (column) sum of the decomposition at d0 is minus the switch
    // delta: switching x changes the count by tot - 2c = -sum_u a_{xu}
    std::vector<int> inv_sigma(n);
    for (int l = 0; l < n; ++l) inv_sigma[t.sigma[l]] = l;
    std::vector<int> lpos = leaf_positions(t.left, d0.orient_left);
    std::vector<int> rpos = leaf_positions(t.right, d0.orient_right);
    std::vector<int> partner(n);
    std::vector<long long> delta;
    if (mirror_sides) {
        for (int l = 0; l < n; ++l) partner[l] = rpos[t.sigma[l]];
        switch_deltas(t.left, d0.orient_left, partner, delta);
    } else {
        for (int r = 0; r < n; ++r) partner[r] = lpos[inv_sigma[r]];
        switch_deltas(t.right, d0.orient_right, partner, delta);
    }

    ChainReport rep;
    rep.cr0 = crossings(d0);
    rep.special_count = static_cast<int>(sp.special.size());
    for (int x : sp.special) rep.special_row_sums.push_back(-delta[x]);

    Layout d1 = flip_all(d0, mirror_sides ? Side::right : Side::left);
    Layout d2 = flip_set(d1, mirror_sides ? Side::left : Side::right, sp.special);
    rep.cr1 = crossings(d1);
    rep.cr2 = crossings(d2);
    rep.best_value = std::min(rep.cr0, rep.cr2);
    rep.guarantee_bound = (pair_count(t.size()) - rep.special_count) / 2;
    rep.stronger_bound_held = 2 * rep.best_value <= pair_count(t.size()) - 2 * rep.special_count;
    return {rep.cr2 < rep.cr0 ? std::move(d2) : Layout(d0), rep};
}

} // namespace detail

// Switching chain: descend to a single-switch-local optimum D0, flip the
// whole left side (complementing the crossing count), then flip the special
// right vertices, whose row sums are negative odd at D0. The better of D0 and
// the final layout is guaranteed at most floor((C(n,2) - |S|)/2).
inline std::pair<Layout, ChainReport> switching_chain(const Tanglegram& t, bool both_sides = false) {
    if (t.size() < 2) throw std::invalid_argument("switching_chain: size must be >= 2");
    Layout d0 = local_search(make_layout(t));
    auto [best, rep] = detail::chain_one_side(d0, false);
    if (both_sides) {
        auto [best2, rep2] = detail::chain_one_side(d0, true);
        if (rep2.best_value < rep.best_value) return {std::move(best2), rep2};
    }
    return {std::move(best), rep};
}

} // namespace tgl
