#include "doctest.h"
#include "lucas8/chabauty.hpp"

using namespace lucas8;

namespace {

const FieldId k2 = FieldId::K2;

struct Term {
    long c;
    int e1, e2;
};

PadicPoly scalar_poly(int k, const std::vector<Term>& terms, int nvars = 2) {
    PadicPoly p(FieldId::None, k, nvars);
    for (const auto& t : terms) p.add_term({t.e1, t.e2}, PadicQuartic::from_int(FieldId::None, k, t.c));
    return p;
}

QPoly qpoly(const std::vector<Term>& terms) {
    QPoly p(2);
    for (const auto& t : terms) p.add_term({t.e1, t.e2}, Rat(t.c));
    return p;
}

const DriverResult& e10_result() {
    static const DriverResult r = rank2_driver(curve_by_id("E10"));
    return r;
}

const CosetCase& e10_case(long k, int eps) {
    for (const auto& c : e10_result().cases)
        if (c.k == k && c.eps == eps) return c;
    throw std::logic_error("missing case");
}

}  // namespace

TEST_CASE("beta X + gamma as a series in z") {
    const auto& e = curve_by_id("E10");
    using P = Poly<FieldElement>;
    const FieldElement one = fe(k2, 1);
    auto s = beta_x_series_symbolic(e, 5);
    auto X = P::variable(0, 2, one), Y = P::variable(1, 2, one);
    auto c = [](const FieldElement& x) { return P::constant(x, 2); };
    const FieldElement f1 = fe(k2, 0, 1), f3 = fe(k2, 0, 0, 0, 1);
    const P x2 = X * X, x3 = x2 * X, y2 = Y * Y;
    const P one_p = c(one);
    std::vector<P> expected{
        f3 * (X - one_p) + f1 * (c(fe(k2, 6)) * X - c(fe(k2, 4))),
        f3 * (c(fe(k2, 2)) * Y) + f1 * (c(fe(k2, 12)) * Y),
        f3 * (c(fe(k2, 3)) * x2 - c(fe(k2, 4)) * X) + f1 * (c(fe(k2, 4)) - c(fe(k2, 16)) * X + c(fe(k2, 18)) * x2),
        f3 * (c(fe(k2, 4)) * Y * X - c(fe(k2, 4)) * Y) + f1 * (c(fe(k2, 24)) * Y * X - c(fe(k2, 16)) * Y),
        f3 * (c(fe(k2, 4)) * X - c(fe(k2, 2)) + y2 + c(fe(k2, 4)) * x3 - c(fe(k2, 12)) * x2) +
            f1 * (c(fe(k2, 24)) * x3 - c(fe(k2, 48)) * x2 + c(fe(k2, 32)) * X - c(fe(k2, 4)) + c(fe(k2, 6)) * y2),
    };
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK_MESSAGE(s[i] == reduce_by_curve(e, expected[i]), "z^" << i);

    // Numeric specialisation: constant term and linear term at a concrete base point.
    const CurvePoint p = combination(e, {0, 2}, 0);
    auto b = beta_x_series(e, p, 5);
    CHECK(b[0] == e.beta * p.X + e.gamma);
    CHECK(b[1] == Rat(2) * p.Y * e.beta);
    CHECK_THROWS_AS(beta_x_series(e, CurvePoint::at_infinity(), 5), std::invalid_argument);
}

TEST_CASE("inverse of beta X + gamma") {
    const auto& e = curve_by_id("E10");
    auto s = inverse_beta_x_series(e, 8);
    CHECK(s[0].is_zero());
    CHECK(s[1].is_zero());
    CHECK(s[2] == fe(k2, 0, Rat(2, 16), 0, Rat(1, 16)));
    CHECK(s[2] == e.beta.inv());
    CHECK(s[3].is_zero());
    CHECK(s[4] == fe(k2, 0, Rat(-1, 8)));
    CHECK(s[6] == fe(k2, 0, Rat(2, 32), 0, Rat(5, 32)));
    // (beta x(z) + gamma) * series = 1, with x(z) = z^-2 * x_laurent.
    auto pack = formal_series(e, 9);
    const FieldElement zero = fe(k2, 0), one = fe(k2, 1);
    Series<FieldElement> bx = series::scale(e.beta, pack.x_laurent);
    bx[2] = bx[2] + e.gamma;  // gamma * z^2 in the z^2-scaled series
    auto prod = series::shift(series::mul(bx, s, 9, zero), -2, 5, zero);
    CHECK(prod[0] == one);
    for (std::size_t i = 1; i < 5; ++i) CHECK(prod[i].is_zero());
}

TEST_CASE("theta components of the E10 cosets") {
    const auto& c4 = e10_case(4, 1);
    CHECK(c4.verdict == Verdict::ExcludedMod9);
    CHECK(c4.theta[1].with_precision(2) == scalar_poly(2, {{6, 0, 0}, {6, 1, 0}, {6, 0, 1}}));
    CHECK(c4.theta[3].with_precision(2) == scalar_poly(2, {{3, 1, 0}, {3, 0, 1}}));

    const auto& c2 = e10_case(2, 0);
    REQUIRE(c2.skolem.has_value());
    const auto& s2 = c2.skolem->system;
    CHECK(s2.F1.with_precision(2) ==
          scalar_poly(2, {{2, 1, 0}, {3, 3, 0}, {3, 2, 0}, {3, 1, 0}, {3, 0, 1}, {6, 0, 2}}));
    CHECK(s2.F2.with_precision(2) ==
          scalar_poly(2, {{1, 1, 0}, {1, 0, 1}, {6, 3, 0}, {3, 2, 0}, {6, 1, 1}, {3, 1, 0}, {3, 0, 3}}));

    const auto& c10 = e10_case(10, 0);
    REQUIRE(c10.skolem.has_value());
    const auto& s10 = c10.skolem->system;
    CHECK(s10.F1.with_precision(2) == scalar_poly(2, {{2, 1, 0}, {6, 1, 1}, {6, 0, 2}, {3, 3, 0}}));
    CHECK(s10.F2.with_precision(2) == scalar_poly(2, {{1, 1, 0}, {1, 0, 1}, {6, 1, 1}, {3, 0, 3}}));

    const auto& c0 = e10_case(0, 0);
    REQUIRE(c0.skolem.has_value());
    const auto& s0 = c0.skolem->system;
    CHECK(s0.F1.with_precision(2) == scalar_poly(2, {{2, 2, 0}, {3, 4, 0}, {6, 2, 0}, {3, 1, 1}}));
    CHECK(s0.F2.with_precision(2) == scalar_poly(2, {{1, 2, 0}, {1, 1, 1}, {2, 0, 2}, {3, 3, 1}, {3, 1, 3},
                                                     {3, 0, 2}, {3, 0, 4}}));
}

TEST_CASE("Fact-2 valuation floors hold on every computed theta") {
    for (const auto& c : e10_result().cases)
        for (int i = 1; i <= 3; ++i) CHECK_MESSAGE(c.theta[static_cast<std::size_t>(i)].satisfies_floor(), "k=" << c.k << " eps=" << c.eps);
    for (const char* id : {"E1", "E5"})
        for (const auto& c : rank1_driver(curve_by_id(id)).cases)
            for (int i = 1; i <= 3; ++i) CHECK(c.theta[static_cast<std::size_t>(i)].satisfies_floor());
}

TEST_CASE("Skolem criterion") {
    SUBCASE("linear lowest parts") {
        auto v = skolem_check(make_skolem_system(scalar_poly(5, {{6, 1, 0}, {9, 0, 2}}),
                                                 scalar_poly(5, {{3, 1, 0}, {3, 0, 1}})));
        CHECK(v.unique);
        CHECK(v.system.f01 == qpoly({{2, 1, 0}}));
        CHECK(*v.system.det_mod_p == 2);
        auto id = skolem_check(make_skolem_system(scalar_poly(3, {{1, 1, 0}}), scalar_poly(3, {{1, 0, 1}})));
        CHECK(id.unique);
        auto sing = skolem_check(make_skolem_system(scalar_poly(3, {{1, 1, 0}, {1, 0, 1}}),
                                                    scalar_poly(3, {{2, 1, 0}, {2, 0, 1}})));
        CHECK_FALSE(sing.unique);
    }
    SUBCASE("quadratic lowest parts") {
        auto v = skolem_check(make_skolem_system(scalar_poly(4, {{2, 2, 0}, {3, 1, 1}}),
                                                 scalar_poly(4, {{1, 2, 0}, {1, 1, 1}, {2, 0, 2}})));
        CHECK(v.unique);
        CHECK(v.system.H1 == qpoly({{2, 2, 0}}));
        CHECK(v.system.H2 == qpoly({{16, 0, 4}}));
    }
    SUBCASE("hypothesis violations name the monomial") {
        CHECK_THROWS_WITH(make_skolem_system(scalar_poly(3, {{1, 2, 0}, {3, 1, 0}}), scalar_poly(3, {{1, 0, 1}})),
                          doctest::Contains("x1"));
        CHECK_THROWS_WITH(make_skolem_system(scalar_poly(3, {{1, 1, 0}, {1, 0, 2}}), scalar_poly(3, {{1, 0, 1}})),
                          doctest::Contains("hypothesis (1)"));
        CHECK_THROWS_WITH(make_skolem_system(scalar_poly(3, {{1, 1, 0}, {9, 0, 0}}), scalar_poly(3, {{1, 0, 1}})),
                          doctest::Contains("monomial 1"));
    }
}

TEST_CASE("E10 Skolem cases and brute-force confirmation") {
    const auto& c2 = e10_case(2, 0);
    CHECK(c2.skolem->system.f01 == qpoly({{2, 1, 0}}));
    CHECK(c2.skolem->system.f02 == qpoly({{1, 1, 0}, {1, 0, 1}}));
    CHECK(*c2.skolem->system.det_mod_p == 2);
    const auto& c10 = e10_case(10, 0);
    CHECK(c10.solutions == std::vector<std::vector<long>>{{2, -1}});
    CHECK(c10.skolem->system.f01 == qpoly({{2, 1, 0}}));
    CHECK(c10.skolem->system.f02 == qpoly({{1, 1, 0}, {1, 0, 1}}));
    const auto& c0 = e10_case(0, 0);
    CHECK(c0.skolem->system.H1 == qpoly({{2, 2, 0}}));
    CHECK(c0.skolem->system.H2 == qpoly({{16, 0, 4}}));
    for (const CosetCase* c : {&c2, &c10, &c0}) {
        const auto& s = c->skolem->system;
        const int dmax = std::max(s.d1, s.d2);
        const int need = (3 + dmax - 1) / dmax;
        for (const auto& r : brute_force_roots(s, 3)) {
            int v = 3;
            for (int x : r)
                if (x != 0) v = std::min(v, valuation(Int(x), 3));
            CHECK(v >= need);
        }
    }
    CHECK(brute_force_roots(c2.skolem->system, 3).size() == 1);
}

TEST_CASE("Strassman bound") {
    CHECK(strassman_bound(scalar_poly(4, {{3, 0, 0}, {1, 1, 0}}, 1)) == 1);
    CHECK(strassman_bound(scalar_poly(5, {{3, 1, 0}, {9, 2, 0}, {27, 3, 0}}, 1)) == 1);
    CHECK(strassman_bound(scalar_poly(5, {{9, 2, 0}, {27, 1, 0}, {9, 4, 0}}, 1)) == 4);
    CHECK_THROWS_WITH(strassman_bound(scalar_poly(2, {{9, 1, 0}}, 1)), "precision insufficient");
}

TEST_CASE("reduction orders") {
    const auto& e = curve_by_id("E10");
    CHECK(reduction_order(e, e.generators[1]) == 24);
    CHECK(reduction_order(e, combination(e, {1, 8}, 0)) == 1);
    CHECK(reduction_order(e, torsion_point(e)) == 2);
}

TEST_CASE("rank-2 driver on E10") {
    const auto& e = curve_by_id("E10");
    const auto& r = e10_result();
    CHECK(r.complete);
    CHECK(r.cases.size() == 26);
    CHECK(r.basis_multipliers == std::vector<long>{8, 24});
    std::vector<CurvePoint> expected{combination(e, {0, 2}, 0), combination(e, {0, -2}, 0),
                                     combination(e, {2, 2}, 0), combination(e, {-2, -2}, 0)};
    CHECK(r.points.size() == expected.size());
    for (const auto& p : expected) CHECK(std::find(r.points.begin(), r.points.end(), p) != r.points.end());
    int mod3 = 0;
    for (const auto& c : r.cases) mod3 += c.verdict == Verdict::ExcludedMod3;
    CHECK(mod3 == 22);
}

TEST_CASE("rank-1 driver") {
    struct Expect {
        const char* id;
        long mult;  // multiple of the generator, 0 for no point
    };
    for (const Expect& x : {Expect{"E1", 1}, Expect{"E5", 2}, Expect{"E6", 0}, Expect{"E9", 0}, Expect{"E11", 0}}) {
        const auto& e = curve_by_id(x.id);
        auto r = rank1_driver(e);
        CHECK_MESSAGE(r.complete, x.id);
        if (x.mult == 0) {
            CHECK_MESSAGE(r.points.empty(), x.id);
        } else {
            CHECK_MESSAGE(r.points.size() == 2, x.id);
            CHECK(std::find(r.points.begin(), r.points.end(), scalar_mul(e, x.mult, e.generators[0])) != r.points.end());
            CHECK(std::find(r.points.begin(), r.points.end(), scalar_mul(e, -x.mult, e.generators[0])) != r.points.end());
        }
    }
}
