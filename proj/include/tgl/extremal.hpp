#pragma once

// Exhaustive enumeration of tanglegrams up to isomorphism and the maximum
// crossing number at small sizes. Work is partitioned by ordered shape pair
// and merged in a fixed order, so reports are identical for any worker count.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "tgl/common.hpp"
#include "tgl/construct.hpp"
#include "tgl/optimize.hpp"
#include "tgl/tanglegram.hpp"
#include "tgl/tree.hpp"

namespace tgl {

namespace detail {

// sigma is kept iff it is the lexicographic minimum of its orbit under
// Aut(L) x Aut(R) acting by sigma -> b . sigma . a^{-1}. The scan rejects as
// soon as any image is smaller.
inline bool orbit_minimal(const std::vector<int>& sigma, const std::vector<std::vector<int>>& aut_l_inv,
                          const std::vector<std::vector<int>>& aut_r) {
    const int n = static_cast<int>(sigma.size());
    for (const auto& ainv : aut_l_inv)
        for (const auto& b : aut_r)
            for (int i = 0; i < n; ++i) {
                int v = b[sigma[ainv[i]]];
                if (v != sigma[i]) {
                    if (v < sigma[i]) return false;
                    break;
                }
            }
    return true;
}

inline std::vector<std::vector<int>> inverted(const std::vector<std::vector<int>>& perms) {
    std::vector<std::vector<int>> out;
    out.reserve(perms.size());
    for (const auto& p : perms) {
        std::vector<int> inv(p.size());
        for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
        out.push_back(std::move(inv));
    }
    return out;
}

} // namespace detail

// One representative per isomorphism class, streamed in a fixed order:
// ordered canonical shape pairs, then matchings lexicographically.
template <class Fn>
inline void for_each_tanglegram(int n, Fn&& fn) {
    if (n < 1) throw std::invalid_argument("for_each_tanglegram: n must be >= 1");
    if (n > 8) throw size_limit_error("tanglegram enumeration capped at size 8");
    std::vector<Tree> shapes = enumerate_shapes(n);
    std::vector<std::vector<std::vector<int>>> auts, auts_inv;
    for (const Tree& s : shapes) {
        auts.push_back(automorphisms(s));
        auts_inv.push_back(detail::inverted(auts.back()));
    }
    std::vector<int> sigma(n);
    for (size_t il = 0; il < shapes.size(); ++il)
        for (size_t ir = 0; ir < shapes.size(); ++ir) {
            std::iota(sigma.begin(), sigma.end(), 0);
            do {
                if (detail::orbit_minimal(sigma, auts_inv[il], auts[ir]))
                    fn(Tanglegram{shapes[il], shapes[ir], sigma});
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
}

inline std::vector<Tanglegram> enumerate_tanglegrams(int n) {
    std::vector<Tanglegram> out;
    for_each_tanglegram(n, [&](const Tanglegram& t) { out.push_back(t); });
    return out;
}

struct ExtremalReport {
    int n = 0;
    long long tanglegram_count = 0;
    long long max_value = 0;
    std::vector<std::string> witnesses; // canonical forms achieving max_value
    std::map<long long, long long> histogram;
    double wall_seconds = 0.0;
};

// Exact crossing number of every isomorphism class. Shape pairs are handed to
// workers through an atomic cursor; per-pair results are folded in pair order,
// so the report does not depend on the worker count.
inline ExtremalReport max_crt(int n, int jobs = 1) {
    if (n < 1) throw std::invalid_argument("max_crt: n must be >= 1");
    if (n > 8) throw size_limit_error("max_crt capped at size 8");
    auto t_start = std::chrono::steady_clock::now();

    std::vector<Tree> shapes = enumerate_shapes(n);
    std::vector<std::vector<std::vector<int>>> auts, auts_inv;
    for (const Tree& s : shapes) {
        auts.push_back(automorphisms(s));
        auts_inv.push_back(detail::inverted(auts.back()));
    }

    struct PairResult {
        long long count = 0;
        long long local_max = -1;
        std::vector<std::string> witnesses;
        std::map<long long, long long> hist;
    };
    const size_t pairs = shapes.size() * shapes.size();
    std::vector<PairResult> results(pairs);
    std::atomic<size_t> cursor{0};

    auto worker = [&] {
        std::vector<int> sigma(n);
        for (;;) {
            size_t unit = cursor.fetch_add(1);
            if (unit >= pairs) return;
            size_t il = unit / shapes.size(), ir = unit % shapes.size();
            PairResult& pr = results[unit];
            std::iota(sigma.begin(), sigma.end(), 0);
            do {
                if (!detail::orbit_minimal(sigma, auts_inv[il], auts[ir])) continue;
                Tanglegram t{shapes[il], shapes[ir], sigma};
                long long value = crt_exact(t).value;
                ++pr.count;
                ++pr.hist[value];
                if (value > pr.local_max) {
                    pr.local_max = value;
                    pr.witnesses.clear();
                }
                if (value == pr.local_max) pr.witnesses.push_back(canonical_form(t));
            } while (std::next_permutation(sigma.begin(), sigma.end()));
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ExtremalReport rep;
    rep.n = n;
    for (const PairResult& pr : results) {
        rep.tanglegram_count += pr.count;
        for (auto [v, c] : pr.hist) rep.histogram[v] += c;
        if (pr.local_max > rep.max_value) rep.max_value = pr.local_max;
    }
    for (const PairResult& pr : results)
        if (pr.local_max == rep.max_value)
            rep.witnesses.insert(rep.witnesses.end(), pr.witnesses.begin(), pr.witnesses.end());
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

struct BoundVerdicts {
    bool strict_upper = false;   // M_n < C(n,2)/2
    bool claimed_upper = false;  // M_n <= C(n,2)/2 - n/4  (observed, not proven here)
    bool family_lower_applies = false; // n is a power of two
    bool family_lower = false;   // M_n >= crt_formula(log2 n) = C(n,2)/2 - n log2(n)/4
};

inline BoundVerdicts bound_check(const ExtremalReport& r) {
    BoundVerdicts v;
    long long c2 = pair_count(r.n); // 2 * the half-pair bound
    v.strict_upper = 2 * r.max_value < c2;
    v.claimed_upper = 4 * r.max_value <= 2 * c2 - r.n;
    int i = 0;
    while ((1 << i) < r.n) ++i;
    v.family_lower_applies = (1 << i) == r.n;
    if (v.family_lower_applies) v.family_lower = r.max_value >= crt_formula(i);
    return v;
}

} // namespace tgl
