#include <random>

#include "doctest.h"
#include "lucas8/poly.hpp"

using namespace lucas8;

namespace {

QPoly bivar(std::initializer_list<std::tuple<int, int, long>> terms) {
    QPoly p(2);
    for (auto [i, j, c] : terms) p.add_term({i, j}, Rat(c));
    return p;
}

}  // namespace

TEST_CASE("perfect squares") {
    CHECK(*is_perfect_square(Int(441)) == 21);
    CHECK(*is_perfect_square(Int(0)) == 0);
    CHECK(*is_perfect_square(Int(384400)) == 620);
    CHECK_FALSE(is_perfect_square(Int(-4)).has_value());
    CHECK_FALSE(is_perfect_square(Int(2)).has_value());
}

TEST_CASE("perfect square property on random integers") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        Int m = Int(static_cast<unsigned long>(rng() % 1000000000UL)) * Int(static_cast<unsigned long>(rng() % 1000000UL)) + 1;
        CHECK(*is_perfect_square(m * m) == m);
        CHECK_FALSE(is_perfect_square(m * m + 1).has_value());
    }
}

TEST_CASE("resultant examples") {
    QPoly p = bivar({{2, 0, 2}});
    QPoly q = bivar({{2, 0, 1}, {1, 1, 1}, {0, 2, 2}});
    CHECK(resultant(p, q, 0) == bivar({{0, 4, 16}}));
    CHECK(resultant(bivar({{1, 0, 1}}), bivar({{0, 1, 1}}), 0) == bivar({{0, 1, 1}}));
    CHECK(resultant(bivar({{2, 0, 1}, {0, 1, -1}}), bivar({{1, 0, 1}, {0, 0, -1}}), 0) ==
          bivar({{0, 0, 1}, {0, 1, -1}}));
    CHECK_THROWS_AS(resultant(QPoly(2), p, 0), std::invalid_argument);
}

TEST_CASE("univariate resultant matches root product") {
    // Res(x^2 - 2, x - 3) = 3^2 - 2.
    CHECK(resultant(upoly({-2, 0, 1}), upoly({-3, 1}), 0).coeff({0, 0}) == 7);
}

TEST_CASE("resultant multiplicativity on random products") {
    std::mt19937 rng(5);
    auto rnd = [&](int deg) {
        QPoly p(2);
        for (int i = 0; i < deg; ++i)
            for (int j = 0; i + j <= deg; ++j) p.add_term({i, j}, Rat(static_cast<int>(rng() % 7) - 3));
        p.add_term({deg, 0}, Rat(1 + static_cast<int>(rng() % 3)));
        return p;
    };
    for (int t = 0; t < 12; ++t) {
        QPoly p = rnd(1 + static_cast<int>(rng() % 2));
        QPoly q = rnd(1 + static_cast<int>(rng() % 2));
        QPoly r = rnd(1 + static_cast<int>(rng() % 2));
        for (int v = 0; v < 2; ++v) {
            if (p.degree_in(v) < 0 || q.degree_in(v) < 0) continue;
            CHECK(resultant(p * q, r, v) == resultant(p, r, v) * resultant(q, r, v));
        }
    }
}

TEST_CASE("rational inverse property") {
    std::mt19937 rng(7);
    for (int i = 0; i < 300; ++i) {
        Rat a(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 999));
        a.canonicalize();
        if (a == 0) continue;
        CHECK(a * (1 / a) == 1);
    }
}

TEST_CASE("determinant and modular helpers") {
    CHECK(determinant({{Rat(2), Rat(1)}, {Rat(1), Rat(3)}}) == 5);
    CHECK(determinant({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}) == -1);
    CHECK(rat_mod(Rat(1, 2), Int(243)) == 122);
    CHECK(valuation(Rat(18, 5), 3) == 2);
}
