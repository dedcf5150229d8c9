#include "lucas8/curve.hpp"

#include <stdexcept>

namespace lucas8 {

const char* to_string(SourceEq e) {
    switch (e) {
        case SourceEq::Eq1: return "eq1";
        case SourceEq::Eq2: return "eq2";
        case SourceEq::Eq3: return "eq3";
        case SourceEq::Eq4: return "eq4";
    }
    return "?";
}

namespace {

CurvePoint pt(const FieldElement& x, const FieldElement& y) { return {x, y, false}; }

CurveInstance make(const std::string& id, FieldId f, FieldElement A, FieldElement B, std::string dname,
                   FieldElement delta, FieldElement beta, FieldElement gamma, SourceEq eq) {
    CurveInstance c;
    c.id = id;
    c.field = f;
    c.A = std::move(A);
    c.B = std::move(B);
    c.delta_name = std::move(dname);
    c.delta = std::move(delta);
    c.beta = std::move(beta);
    c.gamma = std::move(gamma);
    c.eq = eq;
    c.rank = 1;
    return c;
}

std::vector<CurveInstance> build_catalog() {
    const FieldId k1 = FieldId::K1, k2 = FieldId::K2;
    const Rat h(1, 2), q(1, 4);
    const auto eta1 = fe(k1, 0, 1), eta2 = fe(k1, 2, -3, 1, -1);
    const auto eps1 = fe(k2, 0, h, 0, q), eps2 = fe(k2, 2, 2, h, h);
    std::vector<CurveInstance> v;

    auto e1 = make("E1", k1, fe(k1, 0, -1, -1, 0), fe(k1, 1, 1, 0, 1), "1", fe(k1, 1), fe(k1, 3, -3, 1, -1),
                   fe(k1, 0, -1), SourceEq::Eq1);
    e1.generator_names = {"G1"};
    e1.generators = {pt(fe(k1, Rat(3, 2), 2, h), fe(k1, -2, -3, -h, Rat(-5, 2)))};
    v.push_back(e1);

    auto e2 = make("E2", k1, fe(k1, 0, -1, 1, 0), fe(k1, 1, -1, 0, -1), "eta2", eta2, fe(k1, 3, 3, 1, 1),
                   fe(k1, 0, -1), SourceEq::Eq1);
    e2.generator_names = {"G2"};
    e2.generators = {pt(fe(k1, h, 0, -h), fe(k1, h, -h))};
    v.push_back(e2);

    auto e3 = make("E3", k1, fe(k1, -1, -1, 0, 0), fe(k1, 0, 1, 1, -1), "eta1", eta1, fe(k1, -3, 7, -1, 3),
                   fe(k1, 0, -2, 0, -1), SourceEq::Eq2);
    e3.generator_names = {"G3"};
    e3.generators = {pt(fe(k1, h, 0, -h), fe(k1, 0, 0, h, h))};
    v.push_back(e3);

    auto e4 = make("E4", k1, fe(k1, -1, 1, 0, 0), fe(k1, 0, -1, 1, 1), "eta1*eta2", eta1 * eta2,
                   fe(k1, 3, 7, 1, 3), fe(k1, 0, -2, 0, -1), SourceEq::Eq2);
    e4.generator_names = {"G4"};
    e4.generators = {pt(fe(k1, h, 0, -h), fe(k1, 0, 0, h, -h))};
    v.push_back(e4);

    auto e5 = make("E5", k2, fe(k2, 0, -1), fe(k2, 1, 0, h), "1", fe(k2, 1), fe(k2, 4), fe(k2, 0, -2),
                   SourceEq::Eq3);
    e5.generator_names = {"G5"};
    e5.generators = {pt(fe(k2, 2, -2, h, -h), fe(k2, 5, -5, 1, -1))};
    v.push_back(e5);

    auto e6 = make("E6", k2, fe(k2, -1, 0, h), fe(k2, 1, 0, -h), "eps1", eps1, fe(k2, 0, 6, 0, 1), fe(k2, 0, -2),
                   SourceEq::Eq3);
    e6.generator_names = {"G6"};
    e6.generators = {pt(fe(k2, 1, 0, -h), fe(k2, 1, 0, -h))};
    v.push_back(e6);

    auto e7 = make("E7", k2, fe(k2, -2, -2, 0, -h), fe(k2, 13, 14, Rat(5, 2), 3), "eps2", eps2,
                   fe(k2, 8, -8, 2, -2), fe(k2, 0, -2), SourceEq::Eq3);
    e7.generator_names = {"G7"};
    e7.generators = {pt(fe(k2, 1, h, 0, q), fe(k2, -3, -3, -h, -h))};
    v.push_back(e7);

    auto e8 = make("E8", k2, fe(k2, -1, -1, -h, -h), fe(k2, 5, 6, Rat(3, 2), 1), "eps1*eps2", eps1 * eps2,
                   fe(k2, -12, 14, -2, 3), fe(k2, 0, -2), SourceEq::Eq3);
    e8.generator_names = {"G8"};
    e8.generators = {pt(fe(k2, 1, h, 0, q), fe(k2, -2, -2, 0, -h))};
    v.push_back(e8);

    auto e9 = make("E9", k2, fe(k2, 0, -2, 0, -h), fe(k2, 1, 0, h), "1", fe(k2, 1), fe(k2, 4), fe(k2, 0, -4, 0, -1),
                   SourceEq::Eq4);
    e9.generator_names = {"G9"};
    e9.generators = {pt(fe(k2, 1, h, 0, q), fe(k2, 0, -1))};
    v.push_back(e9);

    auto e10 = make("E10", k2, fe(k2, -1, 0, -h), fe(k2, 1, 0, -h), "eps1", eps1, fe(k2, 0, 6, 0, 1),
                    fe(k2, 0, -4, 0, -1), SourceEq::Eq4);
    e10.rank = 2;
    e10.generator_names = {"P1", "P2"};
    e10.generators = {pt(fe(k2, 1), fe(k2, 0, 0, h)), pt(fe(k2, 0, h, h, -q), fe(k2, 1, 0, Rat(-3, 2)))};
    v.push_back(e10);

    auto e11 = make("E11", k2, fe(k2, -4, -5, -1, -1), fe(k2, 13, 14, Rat(5, 2), 3), "eps2", eps2,
                    fe(k2, 8, -8, 2, -2), fe(k2, 0, -4, 0, -1), SourceEq::Eq4);
    e11.generator_names = {"G11"};
    e11.generators = {pt(fe(k2, 2, 2, h, h), fe(k2, -2, -2, -h, -h))};
    v.push_back(e11);

    auto e12 = make("E12", k2, fe(k2, -3, -3, -h, -h), fe(k2, 5, 6, Rat(3, 2), 1), "eps1*eps2", eps1 * eps2,
                    fe(k2, -12, 14, -2, 3), fe(k2, 0, -4, 0, -1), SourceEq::Eq4);
    e12.generator_names = {"G12"};
    e12.generators = {pt(fe(k2, 1, h, 0, q), fe(k2, -1, -1, -h, -h))};
    v.push_back(e12);
    return v;
}

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

bool odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

}  // namespace

const std::vector<CurveInstance>& catalog() {
    static const std::vector<CurveInstance> c = build_catalog();
    return c;
}

const CurveInstance& curve_by_id(const std::string& id) {
    for (const auto& c : catalog())
        if (c.id == id) return c;
    throw std::invalid_argument("unknown curve id " + id);
}

const std::vector<RankZeroTwist>& rank_zero_twists() {
    static const std::vector<RankZeroTwist> r{{SourceEq::Eq1, "eta1"},
                                              {SourceEq::Eq1, "eta1*eta2"},
                                              {SourceEq::Eq2, "1"},
                                              {SourceEq::Eq2, "eta2"}};
    return r;
}

FieldElement discriminant(const CurveInstance& e) {
    return Rat(16) * e.B * e.B * (e.A * e.A - Rat(4) * e.B);
}

bool on_curve(const CurveInstance& e, const CurvePoint& p) {
    if (p.infinity) return true;
    if (p.X.field() != e.field || p.Y.field() != e.field) throw std::invalid_argument("field mismatch");
    return p.Y * p.Y == p.X * (p.X * p.X + e.A * p.X + e.B);
}

CurvePoint torsion_point(const CurveInstance& e) { return pt(FieldElement(e.field, Rat(0)), FieldElement(e.field, Rat(0))); }

CurvePoint negate(const CurvePoint& p) {
    if (p.infinity) return p;
    return {p.X, -p.Y, false};
}

CurvePoint add_points(const CurveInstance& e, const CurvePoint& p, const CurvePoint& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    FieldElement lambda;
    if (p.X == q.X) {
        if (p.Y != q.Y || p.Y.is_zero()) return CurvePoint::at_infinity();
        lambda = (Rat(3) * p.X * p.X + Rat(2) * e.A * p.X + e.B) / (Rat(2) * p.Y);
    } else {
        lambda = (q.Y - p.Y) / (q.X - p.X);
    }
    FieldElement x3 = lambda * lambda - e.A - p.X - q.X;
    FieldElement y3 = lambda * (p.X - x3) - p.Y;
    return pt(x3, y3);
}

CurvePoint scalar_mul(const CurveInstance& e, long k, const CurvePoint& p) {
    CurvePoint base = k < 0 ? negate(p) : p;
    unsigned long m = static_cast<unsigned long>(k < 0 ? -k : k);
    CurvePoint acc = CurvePoint::at_infinity();
    while (m != 0) {
        if ((m & 1UL) != 0) acc = add_points(e, acc, base);
        m >>= 1U;
        if (m != 0) base = add_points(e, base, base);
    }
    return acc;
}

CurvePoint combination(const CurveInstance& e, const std::vector<long>& k, int eps) {
    CurvePoint acc = (eps % 2 != 0) ? torsion_point(e) : CurvePoint::at_infinity();
    for (std::size_t i = 0; i < k.size() && i < e.generators.size(); ++i)
        acc = add_points(e, acc, scalar_mul(e, k[i], e.generators[i]));
    return acc;
}

std::optional<Rat> condition_value(const CurveInstance& e, const CurvePoint& p) {
    if (p.infinity) return std::nullopt;
    FieldElement v = e.beta * p.X + e.gamma;
    if (!v.is_rational()) return std::nullopt;
    return v[0];
}

std::optional<DescentSolution> recover_ab(const CurveInstance& e, const CurvePoint& p) {
    auto r = condition_value(e, p);
    if (!r) return std::nullopt;
    auto a = is_perfect_square(r->get_den());
    if (!a) return std::nullopt;
    return DescentSolution{e.eq, *r, *a, r->get_num()};
}

PqResult ab_to_pq(SourceEq eq, const Int& a, const Int& b) {
    if (a == 0) throw std::invalid_argument("ab_to_pq: a = 0");
    PqResult res;
    if (b == 0) {
        res.failure = "b = 0 impossible";
        return res;
    }
    const Int a2 = a * a, a4 = a2 * a2, b2 = b * b;
    LucasParams pq;
    switch (eq) {
        case SourceEq::Eq1: pq = {a2, (a4 - b2) / 2}; break;
        case SourceEq::Eq2: pq = {a2, (a4 + b2) / 2}; break;
        case SourceEq::Eq3: pq = {4 * a2, 8 * a4 - b2}; break;
        case SourceEq::Eq4: pq = {4 * a2, 8 * a4 + b2}; break;
    }
    if (pq.Q == 0) {
        res.failure = "Q = 0";
        return res;
    }
    if (gcd_int(pq.P, pq.Q) != 1) {
        res.failure = "gcd(P,Q) != 1";
        return res;
    }
    const bool parity = (eq == SourceEq::Eq1 || eq == SourceEq::Eq2) ? (odd(a) && odd(b)) : odd(b);
    if (!parity) {
        res.failure = (eq == SourceEq::Eq1 || eq == SourceEq::Eq2) ? "a b odd" : "b odd";
        return res;
    }
    const Int a8 = a4 * a4, b4 = b2 * b2;
    Int rhs;
    switch (eq) {
        case SourceEq::Eq1: rhs = (-a8 + 2 * a4 * b2 + b4) / 2; break;
        case SourceEq::Eq2: rhs = -(-a8 - 2 * a4 * b2 + b4) / 2; break;
        case SourceEq::Eq3: rhs = -64 * a8 + 16 * a4 * b2 + b4; break;
        case SourceEq::Eq4: rhs = -64 * a8 - 16 * a4 * b2 + b4; break;
    }
    auto c = is_perfect_square(rhs);
    if (!c) {
        res.failure = "no integer c in source equation";
        return res;
    }
    res.params = pq;
    res.c = *c;
    return res;
}

}  // namespace lucas8
