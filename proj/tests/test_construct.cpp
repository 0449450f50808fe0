#include <catch2/catch_amalgamated.hpp>

#include "tgl/construct.hpp"
#include "tgl/optimize.hpp"
#include "tgl/tanglegram.hpp"

using namespace tgl;

TEST_CASE("binary words reverse and read as integers") {
    BinaryWord w{3, 0b001};
    CHECK(w.reversed().value == 0b100);
    CHECK(w.reversed().reversed().value == w.value);
    CHECK(reverse_bits(0b011, 3) == 0b110);
    CHECK(reverse_bits(0b101, 3) == 0b101);
    CHECK(BinaryWord{4, 0b1010}.bits() == std::vector<int>{1, 0, 1, 0});
}

TEST_CASE("t_family structure") {
    Tanglegram t0 = t_family(0);
    CHECK(t0.size() == 1);

    Tanglegram t3 = t_family(3);
    CHECK(t3.size() == 8);
    CHECK(t3.sigma[1] == 4);
    CHECK(t3.sigma[3] == 6);
    CHECK(t3.sigma[5] == 5);
    CHECK(shape_string(t3.left) == shape_string(complete_tree(3)));

    CHECK_THROWS_AS(t_family(25), size_limit_error);
    CHECK_THROWS_AS(t_family(-1), std::invalid_argument);
}

TEST_CASE("d_star layout crossing counts") {
    CHECK(crossings(d_star(1)) == 0);
    CHECK(crossings(d_star(3)) == 8);
    CHECK(crossings(d_star(4)) == 44);
    // integer order on both sides
    Layout d2 = d_star(2);
    CHECK(leaf_sequence(d2.tg.left, d2.orient_left) == std::vector<int>{0, 1, 2, 3});
    CHECK(leaf_sequence(d2.tg.right, d2.orient_right) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("crt_formula values and recursion") {
    CHECK(crt_formula(0) == 0);
    CHECK(crt_formula(1) == 0);
    CHECK(crt_formula(2) == 1);
    CHECK(crt_formula(3) == 8);

    for (int i = 1; i <= 20; ++i)
        CHECK(crt_formula(i) == 2 * crt_formula(i - 1) + pair_count(1LL << (i - 1)));

    // the drawn layout meets the closed form without optimization
    for (int i = 0; i <= 6; ++i) CHECK(crossings(d_star(i)) == crt_formula(i));
}

TEST_CASE("the bit-reversal family is optimal at its own layout") {
    for (int i = 0; i <= 4; ++i) CHECK(crt_exact(t_family(i)).value == crt_formula(i));
}

TEST_CASE("known extremal size-8 instance") {
    Layout f = fig4_layout();
    CHECK(crossings(f) == 9);
    CHECK(crt_exact(f.tg).value == 9);
    // strictly above the family value at the same size, so not isomorphic
    CHECK(crt_exact(t_family(3)).value == 8);
    CHECK_FALSE(is_isomorphic(f.tg, t_family(3)));
}

TEST_CASE("lower-bound recursion across consecutive levels") {
    for (int i : {2, 3}) {
        long long prev = crt_exact(t_family(i - 1)).value;
        CHECK(crt_exact(t_family(i)).value >= 2 * prev + pair_count(1LL << (i - 1)));
    }
}
