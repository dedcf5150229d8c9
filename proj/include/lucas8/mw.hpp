#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lucas8/curve.hpp"
#include "lucas8/heights.hpp"

namespace lucas8 {

// X^d + s_1 c_1 X^(d-1) + ... + s_d c_d with |c_i| <= max_abs[i] and c_i = residue[i] mod modulus[i].
struct CandidateShape {
    std::string label;
    int degree = 0;
    std::vector<Rat> scale;
    std::vector<Rat> factor;  // |c_i| < factor_i * B^i
    std::vector<long> max_abs;
    std::vector<long> modulus;
    std::vector<long> residue;

    std::uint64_t count() const;
    // Coefficients low to high for the tuple c_1..c_d.
    std::vector<Rat> polynomial(const std::vector<long>& c) const;
};

// Largest integer strictly below v (v > 0).
long strict_floor(double v);

// Shapes for x(Q) in O_K and, over K1, x(Q) = u / (1+theta)^2 with u = 1 mod (1+theta).
std::vector<CandidateShape> candidate_shapes(const CurveInstance& e, double B);

// Calls `visit` for every tuple of every shape in lexicographic order.
void enumerate_candidates(const std::vector<CandidateShape>& shapes,
                          const std::function<void(std::size_t shape, const std::vector<long>& c)>& visit);

struct RootSearchStats {
    int precision_digits = 0;  // 0 = double precision sufficed
    bool prefiltered = false;  // rejected by a residue field with no root
};

// Roots in K of sum coeffs[i] X^i (coefficients in K, leading coefficient nonzero).
std::vector<FieldElement> roots_in_field(FieldId f, const std::vector<FieldElement>& coeffs,
                                         RootSearchStats* stats = nullptr);
std::vector<FieldElement> roots_in_field(FieldId f, const std::vector<Rat>& coeffs, RootSearchStats* stats = nullptr);

// Residue fields O/p with p odd and a simple root of the defining polynomial; used as a filter.
struct ResidueField {
    long p;
    long root;
};
const std::vector<ResidueField>& residue_fields(FieldId f);
// False when some residue field certifies that sum coeffs[i] X^i has no root in K.
bool passes_residue_filter(FieldId f, const std::vector<Rat>& coeffs);

// Point with X-coordinate x, when x^3 + A x^2 + B x is a square in K.
std::optional<CurvePoint> lift_x_to_point(const CurveInstance& e, const FieldElement& x);
// Square root in K, if any.
std::optional<FieldElement> field_sqrt(const FieldElement& r);

// All R with 2R = G.
std::vector<CurvePoint> halving_candidates(const CurveInstance& e, const CurvePoint& g);

struct Survivor {
    CurvePoint point;
    std::string expression;   // e.g. "-G1+T", "P1-P2"
    std::vector<long> coeffs; // multiples of the generators
    int torsion = 0;          // coefficient of T
    bool explained = false;
};

struct BoundChain {
    std::string label;
    Real hhat_bound;  // bound on hhat of the hypothetical point
    Real hcap;        // h(Q) <= hcap
    Real B;           // H(Q) < B
    std::optional<double> published_B;
    std::vector<CandidateShape> shapes;
    std::uint64_t polynomials = 0;
    std::uint64_t filtered = 0;  // polynomials that survived the residue filter
    std::uint64_t roots = 0;     // roots in K found
    std::vector<Survivor> survivors;
    std::vector<CurvePoint> torsion_found;
};

struct HalvingCheck {
    std::string expression;
    std::vector<CurvePoint> halves;
};

struct HeightCertificate {
    std::string curve_id;
    HeightBound bound;
    std::vector<Real> generator_heights;
    std::optional<Real> pairing;  // <P1, P2> for rank 2
    double height_tol = 1e-6;
    std::vector<HalvingCheck> halving;
    std::vector<BoundChain> chains;
    bool conclusion = false;
    std::string failure;  // empty when the conclusion holds
};

struct CertifyOptions {
    int workers = 1;
    double height_tol = 1e-6;
    unsigned digits = 50;
    // Use the published H caps instead of the derived ones (comparison runs).
    bool published_caps = false;
};

// Published caps H(Q) < B per chain, as table data.
std::vector<double> published_height_caps(const std::string& curve_id);

HeightCertificate certify_generators(const CurveInstance& e, const CertifyOptions& opt = {});

// Expression for k_1 G_1 + ... + eps T, e.g. "2P1-P2+T".
std::string combination_name(const CurveInstance& e, const std::vector<long>& k, int eps);

}  // namespace lucas8
