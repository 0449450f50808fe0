// Acceptance suite: end-to-end checks of the library's pinned values and
// statistical properties. Prints one pass/fail line per criterion; exits
// nonzero if any fails. Heavier criteria use worker threads where the
// libraries support deterministic parallelism.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "tgl/construct.hpp"
#include "tgl/extremal.hpp"
#include "tgl/lights.hpp"
#include "tgl/optimize.hpp"
#include "tgl/rng.hpp"
#include "tgl/tanglegram.hpp"
#include "tgl/tree.hpp"

using namespace tgl;

namespace {

int hw_jobs() { return std::max(1u, std::min(4u, std::thread::hardware_concurrency())); }

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += msg;
        }
    }

    void note(const std::string& msg) {
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
};

SwitchVector random_switch_vector(const Tanglegram& t, SplitMix64& g) {
    SwitchVector s;
    s.alpha.assign(t.right.vertex_count(), 0);
    s.beta.assign(t.left.vertex_count(), 0);
    for (int v = 0; v < t.right.vertex_count(); ++v)
        if (!t.right.is_leaf(v)) s.alpha[v] = static_cast<int8_t>(g.sign());
    for (int v = 0; v < t.left.vertex_count(); ++v)
        if (!t.left.is_leaf(v)) s.beta[v] = static_cast<int8_t>(g.sign());
    return s;
}

long long direct_pair_count(const Layout& d) {
    std::vector<int> pi = position_permutation(d);
    long long cr = 0;
    for (size_t i = 0; i < pi.size(); ++i)
        for (size_t j = i + 1; j < pi.size(); ++j)
            if (pi[i] > pi[j]) ++cr;
    return cr;
}

// --- criteria ---------------------------------------------------------------

Check family_formula() {
    Check c;
    const long long expected[5] = {0, 0, 1, 8, 44};
    for (int i = 0; i <= 4; ++i) {
        long long got = crt_exact(t_family(i), hw_jobs()).value;
        c.expect(got == expected[i],
                 "crt(T_" + std::to_string(i) + ") = " + std::to_string(got) + ", want " +
                     std::to_string(expected[i]));
        c.expect(crt_formula(i) == expected[i], "closed form mismatch at i=" + std::to_string(i));
    }
    return c;
}

Check fig4_witness() {
    Check c;
    Layout f = fig4_layout();
    c.expect(crossings(f) == 9, "drawn layout counts " + std::to_string(crossings(f)));
    long long exact = crt_exact(f.tg).value;
    c.expect(exact == 9, "crt_exact = " + std::to_string(exact));
    return c;
}

Check extremal_reproduction() {
    Check c;
    for (int n = 2; n <= 6; ++n) {
        ExtremalReport r = max_crt(n, hw_jobs());
        if (n == 4) c.expect(r.max_value == 1, "M_4 = " + std::to_string(r.max_value));
        c.note("M_" + std::to_string(n) + "=" + std::to_string(r.max_value) + " (" +
               std::to_string(r.tanglegram_count) + " classes)");
    }
    ExtremalReport r8 = max_crt(8, hw_jobs());
    c.expect(r8.max_value == 9, "M_8 = " + std::to_string(r8.max_value) + ", want 9");
    c.note("M_8=9 over " + std::to_string(r8.tanglegram_count) + " classes, " +
           std::to_string(r8.witnesses.size()) + " witness(es)");
    // the built-in size-8 instance attains 9, so its class must be a witness
    std::string fig4_form = canonical_form(fig4_layout().tg);
    bool found = false;
    for (const std::string& w : r8.witnesses) found = found || w == fig4_form;
    c.expect(found, "built-in extremal instance missing from the witness list");
    return c;
}

Check h_claim() {
    Check c;
    c.expect(h_exact(1).value == 0, "h(1) != 0");
    for (int n = 2; n <= 12; ++n) {
        int exact = h_exact(n).value;
        c.expect(exact == n / 4 + 1,
                 "h(" + std::to_string(n) + ") = " + std::to_string(exact) + ", want " +
                     std::to_string(n / 4 + 1));
    }
    return c;
}

Check decomposition_identity() {
    Check c;
    SplitMix64 g(20250801);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(g.below(31)); // 2..32
        Layout d = random_instance(n, g.next());
        DecompositionMatrix m = decomposition(d);
        SwitchVector s = random_switch_vector(d.tg, g);
        long long algebraic = cr_via_decomposition(m, s);
        long long direct = direct_pair_count(apply_switches(d, s));
        if (algebraic != direct) {
            c.expect(false, "mismatch at trial " + std::to_string(trial));
            break;
        }
    }
    return c;
}

Check flip_identity() {
    Check c;
    SplitMix64 g(20250802);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(g.below(64));
        Layout d = random_instance(n, g.next());
        if (crossings(flip_all(d, Side::left)) != pair_count(n) - crossings(d)) {
            c.expect(false, "violated at trial " + std::to_string(trial));
            break;
        }
    }
    return c;
}

Check random_layout_expectation() {
    Check c;
    Layout d = random_instance(16, 20250803);
    SplitMix64 g(20250804);
    const int trials = 10000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < trials; ++i) {
        SwitchVector s = random_switch_vector(d.tg, g);
        double cr = static_cast<double>(crossings(apply_switches(d, s)));
        sum += cr;
        sumsq += cr * cr;
    }
    double mean = sum / trials;
    double sd = std::sqrt((sumsq - sum * sum / trials) / (trials - 1));
    double se = sd / std::sqrt(static_cast<double>(trials));
    char buf[96];
    std::snprintf(buf, sizeof buf, "mean %.3f vs 60 (se %.3f)", mean, se);
    c.note(buf);
    c.expect(std::abs(mean - 60.0) <= 3 * se, "sample mean out of band");
    return c;
}

// criteria 8 and 9 share the same runs
struct ChainRuns {
    Check guarantee;
    Check special_rows;
};

ChainRuns chain_runs() {
    ChainRuns out;
    SplitMix64 g(20250805);
    int stronger_held = 0, total = 0;
    for (int n : {8, 16, 32, 64}) {
        long long bound = pair_count(n) / 2 - (n / 4 + 1 + 1) / 2;
        for (int trial = 0; trial < 250; ++trial) {
            Tanglegram t = random_instance(n, g.next()).tg;
            Layout d0 = local_search(make_layout(t));
            DecompositionMatrix m = decomposition(d0);
            for (int x : special_report(t.right).special) {
                long long row = m.row_sum(x);
                if (row >= 0 || row % 2 == 0) {
                    out.special_rows.expect(false, "row sum " + std::to_string(row) + " at n=" +
                                                       std::to_string(n) + " trial " + std::to_string(trial));
                    break;
                }
            }
            auto [best, rep] = switching_chain(t);
            ++total;
            if (2 * rep.best_value <= pair_count(n) - 2 * rep.special_count) ++stronger_held;
            if (rep.best_value > bound) {
                out.guarantee.expect(false, "value " + std::to_string(rep.best_value) + " above bound " +
                                                std::to_string(bound) + " at n=" + std::to_string(n));
                break;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "stronger bound held in %d/%d runs", stronger_held, total);
    out.guarantee.note(buf);
    return out;
}

Check oracle_equivalence() {
    Check c;
    for (int n = 2; n <= 5; ++n)
        for (const Tanglegram& t : enumerate_tanglegrams(n)) {
            long long exact = crt_exact(t).value;
            long long brute = crt_bruteforce(t).value;
            if (exact != brute) {
                c.expect(false, "class mismatch at n=" + std::to_string(n));
                return c;
            }
        }
    SplitMix64 g(20250806);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 6 + static_cast<int>(g.below(2));
        Tanglegram t = random_instance(n, g.next()).tg;
        if (crt_exact(t).value != crt_bruteforce(t).value) {
            c.expect(false, "random mismatch at trial " + std::to_string(trial));
            break;
        }
    }
    return c;
}

Check lower_bound_recursion() {
    Check c;
    long long values[5];
    for (int i = 0; i <= 4; ++i) values[i] = crt_exact(t_family(i), hw_jobs()).value;
    for (int i : {2, 3, 4})
        c.expect(values[i] >= 2 * values[i - 1] + pair_count(1LL << (i - 1)),
                 "recursion fails at i=" + std::to_string(i));
    return c;
}

Check gale_berlekamp() {
    Check c;
    SplitMix64 g(20250807);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(g.below(6));
        SignMatrix m = random_sign_matrix(n, g.next());
        long long exact = gb_exact(m).value;
        long long brute = 0;
        bool first = true;
        std::vector<int8_t> x(n), y(n);
        for (uint64_t xm = 0; xm < (1ull << n); ++xm) {
            for (int i = 0; i < n; ++i) x[i] = (xm >> i) & 1 ? 1 : -1;
            for (uint64_t ym = 0; ym < (1ull << n); ++ym) {
                for (int j = 0; j < n; ++j) y[j] = (ym >> j) & 1 ? 1 : -1;
                long long v = gb_value(m, x, y);
                if (first || v > brute) brute = v, first = false;
            }
        }
        if (exact != brute) {
            c.expect(false, "exact " + std::to_string(exact) + " vs brute " + std::to_string(brute));
            break;
        }
    }
    for (int n : {40, 60}) {
        SignMatrix m = random_sign_matrix(n, 0xABCD0000u + static_cast<unsigned>(n));
        SplitMix64 gm(15000045u + static_cast<unsigned>(n));
        const int trials = 500;
        long long sum = 0;
        for (int t = 0; t < trials; ++t) sum += gb_greedy(m, gm.split().state).value;
        double mean = static_cast<double>(sum) / trials;
        double scale = std::sqrt(2.0 / M_PI) * std::pow(static_cast<double>(n), 1.5);
        char buf[96];
        std::snprintf(buf, sizeof buf, "n=%d mean/scale %.3f", n, mean / scale);
        c.note(buf);
        c.expect(mean >= 0.6 * scale && mean <= 1.0 * scale,
                 "greedy mean out of [0.6,1.0] band at n=" + std::to_string(n));
    }
    return c;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1 && std::strcmp(argv[1], "--only") == 0 && argc > 2) only = std::atoi(argv[2]);

    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Check()> run;
    };

    ChainRuns chain;
    bool chain_done = false;
    auto ensure_chain = [&] {
        if (!chain_done) {
            chain = chain_runs();
            chain_done = true;
        }
    };

    std::vector<Criterion> criteria = {
        {1, "family-formula", 60, family_formula},
        {2, "fig4-witness", 1, fig4_witness},
        {3, "extremal-reproduction", 1800, extremal_reproduction},
        {4, "h-claim", 60, h_claim},
        {5, "decomposition-identity", 30, decomposition_identity},
        {6, "flip-identity", 30, flip_identity},
        {7, "random-layout-expectation", 10, random_layout_expectation},
        {8, "heuristic-guarantee", 120, [&] { ensure_chain(); return chain.guarantee; }},
        {9, "special-row-structure", 120, [&] { ensure_chain(); return chain.special_rows; }},
        {10, "oracle-equivalence", 300, oracle_equivalence},
        {11, "lower-bound-recursion", 60, lower_bound_recursion},
        {12, "gale-berlekamp", 120, gale_berlekamp},
    };

    int passed = 0, ran = 0;
    for (const Criterion& cr : criteria) {
        if (only && cr.id != only) continue;
        ++ran;
        auto t0 = std::chrono::steady_clock::now();
        Check c = cr.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // criteria 8/9 share one run; charge the time to the first of them
        bool in_time = secs <= cr.limit_seconds;
        bool ok = c.ok && in_time;
        std::printf("criterion %2d %-26s %s (%.2fs%s)%s%s\n", cr.id, cr.name, ok ? "PASS" : "FAIL", secs,
                    in_time ? "" : " OVER LIMIT", c.detail.empty() ? "" : " -- ", c.detail.c_str());
        std::fflush(stdout);
        if (ok) ++passed;
    }
    std::printf("ACCEPTANCE: %d/%d passed\n", passed, ran);
    return passed == ran ? 0 : 1;
}
