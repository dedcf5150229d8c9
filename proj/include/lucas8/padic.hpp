#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lucas8/field.hpp"

namespace lucas8 {

const Int& pow3(int k);

// Element of Z_3[a]/3^k for the generator a of K1 or K2; FieldId::None gives plain Z/3^k.
class PadicQuartic {
public:
    PadicQuartic() = default;
    PadicQuartic(FieldId f, int k);
    PadicQuartic(FieldId f, int k, std::array<Int, 4> c);
    static PadicQuartic from_int(FieldId f, int k, const Int& v);
    // Requires coordinate denominators prime to 3.
    static PadicQuartic reduce(const FieldElement& x, int k);

    FieldId field() const { return field_; }
    int precision() const { return k_; }
    const std::array<Int, 4>& coords() const { return c_; }
    const Int& operator[](std::size_t i) const { return c_.at(i); }

    bool is_zero() const;
    // Minimum 3-adic valuation over coordinates; precision() when zero.
    int valuation() const;

    friend PadicQuartic operator+(const PadicQuartic& a, const PadicQuartic& b);
    friend PadicQuartic operator-(const PadicQuartic& a, const PadicQuartic& b);
    friend PadicQuartic operator-(const PadicQuartic& a);
    friend PadicQuartic operator*(const PadicQuartic& a, const PadicQuartic& b);
    friend PadicQuartic operator*(const Int& s, const PadicQuartic& a);
    friend bool operator==(const PadicQuartic& a, const PadicQuartic& b);
    friend bool operator!=(const PadicQuartic& a, const PadicQuartic& b) { return !(a == b); }

    // Inverse of a 3-adic unit.
    PadicQuartic inv() const;
    // Exact division by 3^e; the precision drops by e.
    PadicQuartic divide_p(int e) const;
    PadicQuartic with_precision(int k) const;
    // Coordinates in (-3^k/2, 3^k/2].
    std::array<Int, 4> centered() const;
    std::string str() const;

private:
    void normalize();
    FieldId field_ = FieldId::None;
    int k_ = 0;
    std::array<Int, 4> c_{};
};

inline bool is_zero(const PadicQuartic& x) { return x.is_zero(); }

// Truncated polynomial in 0, 1 or 2 integer variables with coefficients in Z_3[a]/3^k.
class PadicPoly {
public:
    using Mono = std::array<int, 2>;

    PadicPoly() = default;
    PadicPoly(FieldId f, int k, int nvars);
    static PadicPoly constant(const PadicQuartic& c, int nvars);
    static PadicPoly variable(FieldId f, int k, int i, int nvars);

    FieldId field() const { return field_; }
    int precision() const { return k_; }
    int nvars() const { return nvars_; }
    const std::map<Mono, PadicQuartic>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Mono& m, const PadicQuartic& c);
    PadicQuartic coeff(const Mono& m) const;
    int degree() const;
    int low_degree() const;
    int min_valuation() const;

    friend PadicPoly operator+(const PadicPoly& a, const PadicPoly& b);
    friend PadicPoly operator-(const PadicPoly& a, const PadicPoly& b);
    friend PadicPoly operator*(const PadicPoly& a, const PadicPoly& b);
    friend PadicPoly operator*(const PadicQuartic& s, const PadicPoly& a);
    friend bool operator==(const PadicPoly& a, const PadicPoly& b);

    PadicQuartic eval(const Int& n1, const Int& n2) const;
    PadicPoly divide_p(int e) const;
    PadicPoly with_precision(int k) const;
    // p(x1 + s1, x2 + s2).
    PadicPoly shift(const Int& s1, const Int& s2) const;
    // Splits by power-basis coordinate into four scalar polynomials.
    std::array<PadicPoly, 4> components() const;
    // Scalar polynomial (FieldId::None) with coefficients lifted to integers in [0, 3^k).
    QPoly to_qpoly() const;
    // Checks v(coefficient of degree d) >= floor(d/2) + 1 for every d >= 1.
    bool satisfies_floor() const;

    std::string str(const std::string& v1 = "n1", const std::string& v2 = "n2") const;

private:
    FieldId field_ = FieldId::None;
    int k_ = 0;
    int nvars_ = 0;
    std::map<Mono, PadicQuartic> terms_;
};

// Skolem/Fact-2 floor for p = 3.
inline int fact2_floor(int degree) { return degree / 2 + 1; }

// Irreducibility of the defining polynomial over F_3 by exhaustive search for
// roots and monic quadratic factors.
bool irreducible_mod3(FieldId f);

}  // namespace lucas8
