#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lucas8/lucas.hpp"

namespace lucas8 {

// Point on y^2 = x^3 + 6x^2 + 5x + 1.
struct RationalCurvePoint {
    Rat x;
    Rat y;
    bool at_infinity = false;

    static RationalCurvePoint infinity() { return {Rat(0), Rat(0), true}; }
    friend bool operator==(const RationalCurvePoint& a, const RationalCurvePoint& b) {
        if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
        return a.x == b.x && a.y == b.y;
    }
};

bool on_u7_curve(const RationalCurvePoint& p);
RationalCurvePoint u7_add(const RationalCurvePoint& p, const RationalCurvePoint& q);
RationalCurvePoint u7_neg(const RationalCurvePoint& p);
RationalCurvePoint u7_mul(long k, const RationalCurvePoint& p);
RationalCurvePoint u7_generator();

struct FamilyParams {
    int delta = 1;
    Int a;
    Int b;
};

struct SmallNWitness {
    int n = 0;
    Int criterion_value;
    bool square = false;
    std::string family_tag;
    FamilyParams params;
    std::optional<RationalCurvePoint> curve_point;
};

Int square_criterion(int n, const LucasParams& params);
std::vector<LucasParams> u7_solutions(int k_max);

// Family tags: "4a" P=da^2, Q=(a^4-db^2)/2; "4b" P=2da^2, Q=2a^4-db^2;
// "5a".."5d" the four quartic forms; "6a".."6g" the seven P / P^2-Q splittings.
LucasParams family_generate(int n, const std::string& tag, const FamilyParams& params);
std::vector<std::string> family_tags(int n);

// Decide U_n(P,Q) = square for 2 <= n <= 7 and attach a matching family witness when one exists.
SmallNWitness classify_small(int n, const LucasParams& params);

}  // namespace lucas8
