#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <vector>

#include "lucas8/exact.hpp"

namespace lucas8 {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision (decimal digits) for newly created Reals; restores on scope exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct Cplx {
    Real re;
    Real im;

    Cplx() : re(0), im(0) {}
    Cplx(const Real& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    Cplx(const Real& r, const Real& i) : re(r), im(i) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cplx conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm2()); }
};

Cplx csqrt(const Cplx& z);
Cplx cexp_i(const Real& t);
Real pi_real();

// All complex roots of sum c[i] x^i (leading coefficient nonzero), Aberth iteration.
std::vector<Cplx> poly_roots(const std::vector<Cplx>& c);
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c);

Cplx horner(const std::vector<Cplx>& c, const Cplx& x);

double to_double(const Real& r);
Real to_real(const Rat& q);
std::string to_string(const Real& r, int digits);

}  // namespace lucas8
