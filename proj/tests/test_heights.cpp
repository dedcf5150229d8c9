#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "lucas8/heights.hpp"

using namespace lucas8;

namespace {

using cd = std::complex<double>;

cd eval_d(const std::vector<Cplx>& c, cd z) {
    cd r = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        r = r * z + cd(static_cast<double>(c[i].re), static_cast<double>(c[i].im));
    return r;
}

double ratio_d(const EpsilonProblem& p, cd z) {
    const double m = std::max(std::abs(eval_d(p.f, z)), std::abs(eval_d(p.g, z)));
    return m / std::pow(std::max(1.0, std::abs(z)), 4);
}

// Brute-force minimum of the ratio on a dense grid (real: f >= 0 on a log-spaced half line).
double grid_min(const EpsilonProblem& p) {
    double best = 1;  // value at infinity
    if (p.kind == PlaceKind::Real) {
        for (int sgn : {-1, 1})
            for (int i = 0; i <= 200000; ++i) {
                const double x = sgn * std::pow(10.0, -4 + 8.0 * i / 200000);
                if (std::real(eval_d(p.f, x)) < 0) continue;
                best = std::min(best, ratio_d(p, x));
            }
        if (std::real(eval_d(p.f, 0.0)) >= 0) best = std::min(best, ratio_d(p, 0.0));
        return best;
    }
    const int nr = 600, na = 600;
    std::vector<double> v(static_cast<std::size_t>((nr + 1) * na));
    auto z_at = [&](int i, int j) { return std::polar(std::pow(10.0, -2 + 4.0 * i / nr), 2 * M_PI * j / na); };
    auto val = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i * na + (j + na) % na)]; };
    for (int i = 0; i <= nr; ++i)
        for (int j = 0; j < na; ++j) val(i, j) = ratio_d(p, z_at(i, j));
    std::vector<std::pair<double, cd>> seeds;
    for (int i = 1; i < nr; ++i)
        for (int j = 0; j < na; ++j) {
            bool local = true;
            for (int di = -1; di <= 1 && local; ++di)
                for (int dj = -1; dj <= 1; ++dj)
                    if ((di || dj) && val(i + di, j + dj) < val(i, j)) local = false;
            if (local) seeds.emplace_back(val(i, j), z_at(i, j));
        }
    std::sort(seeds.begin(), seeds.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (seeds.size() > 12) seeds.resize(12);
    // Zoom on each seed with shrinking square grids.
    for (auto [b0, at] : seeds) {
        double b1 = b0;
        for (double h = 0.02 * std::max(1.0, std::abs(at)); h > 1e-14; h *= 0.5) {
            for (bool moved = true; moved;) {
                moved = false;
                const cd c = at;
                for (int i = -20; i <= 20; ++i)
                    for (int j = -20; j <= 20; ++j) {
                        const cd z = c + cd(i * h / 20, j * h / 20);
                        const double w = ratio_d(p, z);
                        if (w < b1) b1 = w, at = z, moved = true;
                    }
            }
        }
        best = std::min(best, b1);
    }
    return best;
}

// h(x) = (1/4)(log a0 + sum log max(1, |sigma x|)) with a0 the leading coefficient of the
// primitive integer multiple of the characteristic polynomial.
double charpoly_height(const FieldElement& x) {
    const QPoly cp = charpoly(x);
    Int den = 1, g = 0;
    for (const auto& [m, c] : cp.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& [m, c] : cp.terms()) {
        const Rat v = c * den;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    const auto emb = embeddings_d(x);
    double s = std::log(Rat(den, g).get_d());
    for (const auto& z : emb) s += std::log(std::max(1.0, std::abs(z)));
    return s / 4;
}

}  // namespace

TEST_CASE("real place epsilon values") {
    PrecisionScope scope(50);
    const auto& e1 = curve_by_id("E1");
    const Real tol("1e-30");
    auto r1 = epsilon_archimedean(epsilon_problem(e1, 0, 50), tol);
    auto r2 = epsilon_archimedean(epsilon_problem(e1, 1, 50), tol);
    CHECK(abs(r1.epsilon - Real("1.24703203386508649515")) < Real("1e-19"));
    CHECK(abs(r2.epsilon - Real("125.17810579814161228611")) < Real("1e-17"));
    CHECK(r1.argmin_kind == "crossing");
    const auto& e10 = curve_by_id("E10");
    auto r3 = epsilon_archimedean(epsilon_problem(e10, 0, 50), tol);
    CHECK(abs(r3.epsilon - Real("4.32706953082711459453")) < Real("1e-18"));
}

TEST_CASE("complex place epsilon: the infimum is below every grid sample") {
    PrecisionScope scope(40);
    for (const char* id : {"E1", "E10"}) {
        const auto p = epsilon_problem(curve_by_id(id), 2, 40);
        const auto r = epsilon_archimedean(p, Real("1e-25"));
        const double inf = static_cast<double>(r.infimum);
        const double g = grid_min(p);
        CHECK_MESSAGE(inf <= g * (1 + 1e-12), id);
        CHECK_MESSAGE(g <= inf * (1 + 1e-5), id);
        CHECK(std::abs(ratio_d(p, cd(static_cast<double>(r.argmin.re), static_cast<double>(r.argmin.im))) - inf) <
              1e-12);
    }
    const auto r10 = epsilon_archimedean(epsilon_problem(curve_by_id("E10"), 2, 40), Real("1e-25"));
    CHECK(abs(r10.epsilon - Real("1.389552611108012960657952")) < Real("1e-20"));
}

TEST_CASE("real place epsilon agrees with a brute-force grid") {
    PrecisionScope scope(30);
    for (const char* id : {"E3", "E7", "E9", "E12"}) {
        for (int place : {0, 1}) {
            const auto p = epsilon_problem(curve_by_id(id), place, 30);
            const auto r = epsilon_archimedean(p, Real("1e-20"));
            const double inf = static_cast<double>(r.infimum);
            const double g = grid_min(p);
            CHECK_MESSAGE(inf <= g * (1 + 1e-12), id);
            CHECK_MESSAGE(g <= inf * (1 + 1e-3), id);
        }
    }
}

TEST_CASE("epsilon is invariant under a 10x finer seeding grid") {
    PrecisionScope scope(30);
    for (const char* id : {"E5", "E9"}) {
        const auto p = epsilon_problem(curve_by_id(id), 2, 30);
        const Real tol("1e-15");
        const auto coarse = epsilon_archimedean(p, tol, 24);
        const auto fine = epsilon_archimedean(p, tol, 240);
        CHECK_MESSAGE(abs(coarse.epsilon - fine.epsilon) < tol * fine.epsilon * 10, id);
    }
}

TEST_CASE("finite place epsilon") {
    const auto k2 = epsilon_nonarchimedean(curve_by_id("E10"));
    CHECK(k2.max_order == 10);
    CHECK(abs(k2.bound - pow(Real(2), Real(2.5))) < Real("1e-15"));
    REQUIRE(k2.witness.has_value());
    const auto k1 = epsilon_nonarchimedean(curve_by_id("E1"));
    CHECK(k1.bound == 1);
    CHECK(kodaira_mu_finite(curve_by_id("E9")) == Rat(1, 4));
    CHECK(kodaira_mu_finite(curve_by_id("E2")) == 0);
    CHECK(kodaira_mu_infinite(curve_by_id("E2")) == Rat(1, 3));
}

TEST_CASE("height difference bound") {
    const auto hb = height_diff_bound(curve_by_id("E10"));
    CHECK(abs(hb.C - Real("0.732195715015999")) < Real("1e-9"));
    // C = (1/4) sum mu n log eps, recomputed from the place records.
    Real s = 0;
    for (const auto& p : hb.places) {
        const int n = p.kind == PlaceKind::Finite ? 4 : p.local_degree;
        s += Real(p.mu.get_d()) * n * log(p.epsilon);
    }
    CHECK(abs(s / 4 - hb.C) < Real("1e-12"));
    CHECK(height_diff_bound_value(curve_by_id("E10")) == doctest::Approx(0.732195715015999).epsilon(1e-12));
}

TEST_CASE("naive height against the characteristic polynomial") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-9, 9), d(1, 12);
    for (FieldId f : {FieldId::K1, FieldId::K2}) {
        for (int it = 0; it < 40; ++it) {
            const FieldElement x = fe(f, Rat(c(rng), d(rng)), Rat(c(rng), d(rng)), Rat(c(rng), d(rng)), Rat(c(rng), d(rng)));
            if (x.is_zero()) continue;
            const double h = static_cast<double>(naive_height(x));
            const double ref = charpoly_height(x);
            CHECK(h == doctest::Approx(ref).epsilon(1e-10));
        }
    }
    CHECK(static_cast<double>(naive_height(fe(FieldId::K2, Rat(1, 2)))) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("projective height ignores common factors") {
    const FieldId k2 = FieldId::K2;
    const FieldElement x = fe(k2, 3, 1, 0, 2), w = fe(k2, 5);
    const Real h = naive_height(x / w);
    auto ints = [](const FieldElement& v) {
        std::array<Int, 4> r;
        for (std::size_t i = 0; i < 4; ++i) r[i] = v[i].get_num();
        return r;
    };
    for (const auto& k : {fe(k2, 2), fe(k2, 0, 1), fe(k2, 1, 1), fe(k2, 7, 2, 1, 1), fe(k2, 4, 0, 2)})
        CHECK(abs(projective_height(k2, ints(x * k), ints(w * k)) - h) < Real("1e-40"));
}

TEST_CASE("canonical height") {
    const auto& e9 = curve_by_id("E9");
    const auto ch = canonical_height(e9, e9.generators[0], 1e-6);
    CHECK(std::abs(static_cast<double>(ch.value) - 0.125726743336419) < 1e-6);
    CHECK(ch.tail < 1e-6);
    CHECK(ch.doublings <= kMaxDoublings);

    const auto& e1 = curve_by_id("E1");
    const double tol = 1e-5;
    const auto t = canonical_height(e1, torsion_point(e1), tol);
    CHECK(t.torsion);
    CHECK(std::abs(static_cast<double>(t.value)) <= tol);
    const double g = static_cast<double>(canonical_height(e1, e1.generators[0], tol).value);
    const double g2 = static_cast<double>(canonical_height(e1, scalar_mul(e1, 2, e1.generators[0]), tol).value);
    CHECK(std::abs(g2 - 4 * g) <= 5 * tol);
    const double gt =
        static_cast<double>(canonical_height(e1, add_points(e1, e1.generators[0], torsion_point(e1)), tol).value);
    CHECK(std::abs(gt - g) <= 2 * tol);
}

TEST_CASE("double_x matches the group law") {
    for (const char* id : {"E1", "E9"}) {
        const auto& e = curve_by_id(id);
        const auto p = e.generators[0];
        CHECK(*double_x(e, p.X) == add_points(e, p, p).X);
    }
    const auto& e1 = curve_by_id("E1");
    CHECK_FALSE(double_x(e1, torsion_point(e1).X).has_value());
}

TEST_CASE("h - 2 hhat stays below C on small combinations") {
    std::mt19937 rng(11);
    for (const char* id : {"E2", "E6", "E10"}) {
        const auto& e = curve_by_id(id);
        const double C = height_diff_bound_value(e);
        const double tol = 1e-6;
        std::vector<double> hg;
        for (const auto& g : e.generators) hg.push_back(static_cast<double>(canonical_height(e, g, tol).value));
        const double pair =
            e.rank == 2 ? static_cast<double>(height_pairing(e, e.generators[0], e.generators[1], tol)) : 0;
        std::uniform_int_distribution<int> k(-3, 3), b(0, 1);
        for (int it = 0; it < 60; ++it) {
            std::vector<long> coeffs;
            for (std::size_t i = 0; i < e.generators.size(); ++i) coeffs.push_back(k(rng));
            const auto r = combination(e, coeffs, b(rng));
            if (r.infinity) continue;
            double hh = hg[0] * coeffs[0] * coeffs[0];
            if (e.rank == 2) hh += hg[1] * coeffs[1] * coeffs[1] + pair * coeffs[0] * coeffs[1];
            const double h = static_cast<double>(naive_height(r));
            CHECK_MESSAGE(h - 2 * hh <= C + 1e-5, id);
        }
    }
}
