#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lucas8/field.hpp"
#include "lucas8/lucas.hpp"

namespace lucas8 {

struct CurvePoint {
    FieldElement X;
    FieldElement Y;
    bool infinity = false;

    static CurvePoint at_infinity() { return {FieldElement(), FieldElement(), true}; }
    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.X == b.X && a.Y == b.Y;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
};

enum class SourceEq { Eq1, Eq2, Eq3, Eq4 };
const char* to_string(SourceEq e);

// Y^2 = X (X^2 + A X + B) over K1 or K2.
struct CurveInstance {
    std::string id;
    FieldId field = FieldId::None;
    FieldElement A;
    FieldElement B;
    std::string delta_name;
    FieldElement delta;
    int rank = 0;
    std::vector<std::string> generator_names;
    std::vector<CurvePoint> generators;
    FieldElement beta;
    FieldElement gamma;
    SourceEq eq = SourceEq::Eq1;
};

struct RankZeroTwist {
    SourceEq eq;
    std::string delta_name;
};

const std::vector<CurveInstance>& catalog();
const CurveInstance& curve_by_id(const std::string& id);
const std::vector<RankZeroTwist>& rank_zero_twists();

FieldElement discriminant(const CurveInstance& e);
bool on_curve(const CurveInstance& e, const CurvePoint& p);
CurvePoint torsion_point(const CurveInstance& e);
CurvePoint negate(const CurvePoint& p);
CurvePoint add_points(const CurveInstance& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint scalar_mul(const CurveInstance& e, long k, const CurvePoint& p);
// Sum of k_i * generator_i plus eps * T.
CurvePoint combination(const CurveInstance& e, const std::vector<long>& k, int eps);

std::optional<Rat> condition_value(const CurveInstance& e, const CurvePoint& p);

struct DescentSolution {
    SourceEq eq;
    Rat ratio;  // b / a^2
    Int a;
    Int b;
};

std::optional<DescentSolution> recover_ab(const CurveInstance& e, const CurvePoint& p);

struct PqResult {
    std::optional<LucasParams> params;
    std::optional<Int> c;
    std::string failure;  // empty on success
};

PqResult ab_to_pq(SourceEq eq, const Int& a, const Int& b);

}  // namespace lucas8
