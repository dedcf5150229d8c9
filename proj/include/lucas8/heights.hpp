#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lucas8/curve.hpp"
#include "lucas8/numeric.hpp"

namespace lucas8 {

enum class PlaceKind { Finite, Real, Complex };
enum class Provenance { Computed, TableData };

const char* to_string(PlaceKind k);
const char* to_string(Provenance p);

struct PlaceData {
    std::string label;  // "pi", "1+theta", "inf1", "inf2", "inf3"
    PlaceKind kind = PlaceKind::Real;
    int local_degree = 1;
    Rat mu;
    Provenance mu_provenance = Provenance::TableData;
    Real epsilon;
    bool epsilon_is_upper_bound = false;
    Provenance epsilon_provenance = Provenance::Computed;
    // Where the infimum is attained (archimedean) or the extremal residue (finite).
    Cplx argmin;
    std::string argmin_kind;
    std::optional<FieldElement> witness;
};

// f = 4X^3 + 4A X^2 + 4B X and g = (X^2 - B)^2 at one archimedean embedding.
struct EpsilonProblem {
    PlaceKind kind = PlaceKind::Real;
    int embedding = 0;
    std::vector<Cplx> f;  // low to high
    std::vector<Cplx> g;
    unsigned digits = 50;
};

struct EpsilonResult {
    Real epsilon;
    Real infimum;
    Cplx argmin;
    std::string argmin_kind;  // crossing, stationary, boundary, unit-circle, infinity
};

// place: 0 = inf1 (generator > 0), 1 = inf2, 2 = inf3 (complex).
EpsilonProblem epsilon_problem(const CurveInstance& e, int place, unsigned digits);

// Infimum of max(|f|,|g|)/max(1,|X|)^4 over the real region f >= 0 or over C.
// `grid` sets the seeding density for the complex place.
EpsilonResult epsilon_archimedean(const EpsilonProblem& p, const Real& tol, int grid = 96);

struct FiniteEpsilon {
    std::string label;
    Real bound;        // epsilon_pi <= bound
    int max_order = 0; // max over X mod pi^cap of min(ord f(X), ord g(X))
    int cap = 12;
    std::optional<FieldElement> witness;
};

// K2 curves: scan O/8O = O/pi^12 for the largest order of vanishing. K1 curves: 1.
FiniteEpsilon epsilon_nonarchimedean(const CurveInstance& e);

// Kodaira table data: mu at the prime above 2 and at infinity.
Rat kodaira_mu_finite(const CurveInstance& e);
Rat kodaira_mu_infinite(const CurveInstance& e);

struct HeightBound {
    std::string curve_id;
    std::vector<PlaceData> places;
    Real C;  // h(P) - 2 hhat(P) <= C
};

HeightBound height_diff_bound(const CurveInstance& e, unsigned digits = 50);
// Cached by curve id (double precision summary of height_diff_bound at 50 digits).
double height_diff_bound_value(const CurveInstance& e);

// h(x) = (1/4) sum_v n_v log max(1, |x|_v).
Real naive_height(const FieldElement& x, unsigned digits = 50);
Real naive_height(const CurvePoint& p, unsigned digits = 50);
// Height of the projective pair (U : W) with U, W in Z[a] given by power-basis coordinates.
Real projective_height(FieldId f, const std::array<Int, 4>& U, const std::array<Int, 4>& W, unsigned digits = 50);

struct CanonicalHeight {
    Real value;
    int doublings = 0;
    double tail = 0;  // C / (2 * 4^m)
    bool torsion = false;
};

inline constexpr int kMaxDoublings = 12;

// hhat(P) = lim h(2^m P) / (2 * 4^m), m chosen so that C / (2 * 4^m) < tol.
CanonicalHeight canonical_height(const CurveInstance& e, const CurvePoint& p, double tol = 1e-7,
                                 unsigned digits = 50);

// <P,Q> = hhat(P+Q) - hhat(P) - hhat(Q).
Real height_pairing(const CurveInstance& e, const CurvePoint& p, const CurvePoint& q, double tol = 1e-7);

// x(2P) from x(P) alone; nullopt when 2P is the point at infinity.
std::optional<FieldElement> double_x(const CurveInstance& e, const FieldElement& x);

}  // namespace lucas8
