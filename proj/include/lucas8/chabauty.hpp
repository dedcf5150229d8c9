#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lucas8/curve.hpp"
#include "lucas8/padic.hpp"
#include "lucas8/series.hpp"

namespace lucas8 {

// Minimum 3-adic valuation over power-basis coordinates (large when zero).
int valuation3(const FieldElement& x);

// z = -X/Y mod 3^k for a point in the kernel of reduction mod 3.
PadicQuartic z_coordinate(const CurveInstance& e, const CurvePoint& p, int k);

FormalSeriesPack formal_series(const CurveInstance& e, int order = 7);

// Formal logarithm and exponential evaluated at t with v(t) >= 1; results mod 3^k.
PadicQuartic padic_log(const FormalSeriesPack& pack, const PadicQuartic& t, int k);
PadicQuartic padic_exp(const FormalSeriesPack& pack, const PadicQuartic& t, int k);

// Formal-group order needed so that log and exp are exact mod 3^k on v(t) >= 1.
int series_order_for(int k);

// z(n_1 Q_1 + ... + n_r Q_r) mod 3^k as a polynomial in n_1..n_r (r <= 2).
PadicPoly z_linear_combo(const FormalSeriesPack& pack, const std::vector<PadicQuartic>& z_values, int k);
PadicPoly z_linear_combo(const CurveInstance& e, const std::vector<CurvePoint>& basis, int k);

// beta X(P+R) + gamma in powers of z(R); `order` coefficients.
Series<FieldElement> beta_x_series(const CurveInstance& e, const CurvePoint& base, int order);
// Same with X0, Y0 left symbolic (variables 1 and 2 of each coefficient).
Series<Poly<FieldElement>> beta_x_series_symbolic(const CurveInstance& e, int order);
// Replaces Y0^2 by X0^3 + A X0^2 + B X0 until Y0 appears at most linearly.
Poly<FieldElement> reduce_by_curve(const CurveInstance& e, const Poly<FieldElement>& p);
// 1/(beta X(R) + gamma) in powers of z(R).
Series<FieldElement> inverse_beta_x_series(const CurveInstance& e, int order);

Series<PadicQuartic> reduce_series(const Series<FieldElement>& s, int k);
std::array<PadicPoly, 4> theta_components(const Series<PadicQuartic>& s, const PadicPoly& z_poly);

struct SkolemSystem {
    PadicPoly F1;
    PadicPoly F2;
    QPoly f01;
    QPoly f02;
    int d1 = 0;
    int d2 = 0;
    QPoly H1;
    QPoly H2;
    std::optional<Int> det_mod_p;
};

struct SkolemVerdict {
    bool unique = false;
    std::string detail;
    SkolemSystem system;
};

// Normalizes F_r by dividing out the minimal coefficient valuation of each.
SkolemSystem make_skolem_system(const PadicPoly& theta_a, const PadicPoly& theta_b);
SkolemVerdict skolem_check(SkolemSystem system, unsigned long p = 3);
// Roots (x1, x2) mod 3^m of F1 = F2 = 0 mod 3^m, by exhaustion.
std::vector<std::array<int, 2>> brute_force_roots(const SkolemSystem& s, int m);

// Largest index of a unit coefficient after dividing out the minimal valuation.
int strassman_bound(const PadicPoly& series);

// Order of the reduction of p in E(F_81); 1 when p is already in the kernel.
long reduction_order(const CurveInstance& e, const CurvePoint& p);

enum class Verdict { ExcludedMod3, ExcludedMod9, SkolemUnique, StrassmanBounded, SolutionFound, Inconclusive };
const char* to_string(Verdict v);

struct CosetCase {
    long k = 0;
    int eps = 0;
    bool r_only = false;
    Verdict verdict = Verdict::Inconclusive;
    int precision = 0;
    std::array<PadicPoly, 4> theta;
    std::vector<std::vector<long>> solutions;  // (n) or (n1, n2) coordinates of known roots
    std::string certificate;                     // human readable justification
    std::optional<SkolemVerdict> skolem;
    int bound = -1;
};

struct DriverResult {
    std::string curve_id;
    std::vector<CurvePoint> basis;  // Q_1 (and Q_2)
    std::vector<long> basis_multipliers;
    std::vector<CosetCase> cases;
    std::vector<CurvePoint> points;  // every point meeting the rationality condition
    bool complete = false;
};

DriverResult rank1_driver(const CurveInstance& e, int k = 5);
DriverResult rank2_driver(const CurveInstance& e, int k = 5);

}  // namespace lucas8
