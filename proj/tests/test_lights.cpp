#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tgl/lights.hpp"
#include "tgl/optimize.hpp"
#include "tgl/rng.hpp"

using namespace tgl;

namespace {

// literal maximization over all 4^n sign-vector pairs
long long gb_bruteforce(const SignMatrix& m) {
    const int n = m.n;
    long long best = 0;
    bool first = true;
    std::vector<int8_t> x(n), y(n);
    for (uint64_t xm = 0; xm < (1ull << n); ++xm) {
        for (int i = 0; i < n; ++i) x[i] = (xm >> i) & 1 ? 1 : -1;
        for (uint64_t ym = 0; ym < (1ull << n); ++ym) {
            for (int j = 0; j < n; ++j) y[j] = (ym >> j) & 1 ? 1 : -1;
            long long v = gb_value(m, x, y);
            if (first || v > best) {
                best = v;
                first = false;
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("gb_exact on the pinned matrices") {
    SignMatrix ones = make_sign_matrix(3);
    CHECK(gb_exact(ones).value == 9);

    SignMatrix m2 = parse_sign_matrix("+1 -1\n-1 +1\n");
    GbResult r = gb_exact(m2);
    CHECK(r.value == 4);
    CHECK(gb_value(m2, r.x, r.y) == 4);
    CHECK(gb_bruteforce(m2) == 4);

    SignMatrix m1 = parse_sign_matrix("-1\n");
    CHECK(gb_exact(m1).value == 1);

    CHECK_THROWS_AS(gb_exact(make_sign_matrix(23)), size_limit_error);
}

TEST_CASE("gb_exact matches the 4^n brute force on random matrices") {
    SplitMix64 g(13);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(g.below(6));
        SignMatrix m = random_sign_matrix(n, g.next());
        GbResult r = gb_exact(m);
        CHECK(r.value == gb_bruteforce(m));
        CHECK(gb_value(m, r.x, r.y) == r.value);
    }
}

TEST_CASE("gb_exact is invariant under row and column negation") {
    SplitMix64 g(17);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + static_cast<int>(g.below(7));
        SignMatrix m = random_sign_matrix(n, g.next());
        long long base = gb_exact(m).value;

        SignMatrix rowneg = m;
        int i = static_cast<int>(g.below(n));
        for (int j = 0; j < n; ++j) rowneg.at(i, j) = static_cast<int8_t>(-rowneg.at(i, j));
        CHECK(gb_exact(rowneg).value == base);

        std::vector<int8_t> y(n);
        for (auto& v : y) v = static_cast<int8_t>(g.sign());
        CHECK(gb_exact(negate_columns(m, y)).value == base);

        // |total sum| is attainable with constant sign vectors
        long long total = 0;
        for (int8_t e : m.a) total += e;
        CHECK(base >= std::llabs(total));
    }

    SignMatrix m = random_sign_matrix(5, 5);
    CHECK(to_text(negate_columns(m, std::vector<int8_t>(5, 1))) == to_text(m));
}

TEST_CASE("gb_greedy basics and the majority rows are pointwise optimal") {
    SignMatrix ones = make_sign_matrix(4);
    GbResult r = gb_greedy(ones, 7);
    long long ysum = 0;
    for (int8_t v : r.y) ysum += v;
    CHECK(r.value == 4 * std::llabs(ysum));
    CHECK(r.value >= 0);

    SplitMix64 g(23);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(g.below(12));
        SignMatrix m = random_sign_matrix(n, g.next());
        GbResult greedy = gb_greedy(m, g.next());
        CHECK(greedy.value <= gb_exact(m).value);
        CHECK(gb_value(m, greedy.x, greedy.y) == greedy.value);
        // no single row flip improves the greedy solution for its y
        for (int i = 0; i < n; ++i) {
            std::vector<int8_t> x = greedy.x;
            x[i] = static_cast<int8_t>(-x[i]);
            CHECK(gb_value(m, x, greedy.y) <= greedy.value);
        }
    }
}

TEST_CASE("gb_greedy Monte-Carlo mean approaches sqrt(2/pi) n^{3/2}") {
    SignMatrix m = random_sign_matrix(30, 424242);
    SplitMix64 g(31);
    const int trials = 200;
    long long sum = 0;
    for (int t = 0; t < trials; ++t) sum += gb_greedy(m, g.split().state).value;
    double mean = static_cast<double>(sum) / trials;
    CHECK(mean >= 0.7 * std::sqrt(2.0 / M_PI) * std::pow(30.0, 1.5));
}

TEST_CASE("from_decomposition exports the integer game") {
    Layout d2 = parse_tgl("TGL 1\nn 2\nL (0,1)\nR (0,1)\nM 0-0 1-1\n");
    DecompositionExport e2 = from_decomposition(decomposition(d2));
    CHECK(e2.dim == 1);
    CHECK(e2.a.size() == 1);

    SplitMix64 g(37);
    for (int trial = 0; trial < 20; ++trial) {
        Layout d = random_instance(2 + static_cast<int>(g.below(15)), g.next());
        DecompositionExport e = from_decomposition(decomposition(d));
        CHECK(e.total_sum == 2 * crossings(d) - pair_count(d.tg.size()));
        for (auto [vertex, row] : e.special_row_sums) CHECK(row % 2 != 0);
        CHECK(e.zero_fraction >= 0.0);
        CHECK(e.zero_fraction <= 1.0);
        CHECK(static_cast<int>(e.a.size()) == e.dim * e.dim);
    }
}

TEST_CASE("sign matrix text io") {
    SignMatrix m = random_sign_matrix(4, 9);
    CHECK(to_text(parse_sign_matrix(to_text(m))) == to_text(m));
    CHECK_THROWS_AS(parse_sign_matrix("+1 -1 +1\n"), parse_error);
    CHECK_THROWS_AS(parse_sign_matrix("+1 0\n0 +1\n"), parse_error);
}
