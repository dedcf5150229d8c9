#include "lucas8/numeric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lucas8 {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real pi_real() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Cplx csqrt(const Cplx& z) {
    Real r = z.abs();
    if (r == 0) return {};
    Real a = sqrt((r + abs(z.re)) / 2);
    if (z.re >= 0) return {a, z.im / (2 * a)};
    Real b = z.im < 0 ? Real(-a) : a;
    return {abs(z.im) / (2 * a), b};
}

Cplx cexp_i(const Real& t) { return {cos(t), sin(t)}; }

Cplx horner(const std::vector<Cplx>& c, const Cplx& x) {
    Cplx acc;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

template <class C, class R>
std::vector<C> aberth(std::vector<C> c, R eps, int max_iter) {
    while (c.size() > 1 && c.back() == C(0)) c.pop_back();
    const std::size_t n = c.size() - 1;
    if (n == 0) return {};
    std::vector<C> d(n);
    for (std::size_t i = 1; i <= n; ++i) d[i - 1] = c[i] * C(R(static_cast<double>(i)));
    auto ev = [](const std::vector<C>& p, const C& x) {
        C acc(0);
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    auto absval = [](const C& z) { return abs(z); };
    // Cauchy bound for the initial circle.
    R bound(0);
    for (std::size_t i = 0; i < n; ++i) {
        R q = absval(c[i] / c[n]);
        if (q > bound) bound = q;
    }
    bound += 1;
    std::vector<C> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = C(R(std::cos(ang)) * bound / 2, R(std::sin(ang)) * bound / 2);
    }
    for (int it = 0; it < max_iter; ++it) {
        R worst(0);
        for (std::size_t k = 0; k < n; ++k) {
            C pv = ev(c, z[k]);
            C dv = ev(d, z[k]);
            C ratio = (dv == C(0)) ? C(R(1)) : pv / dv;
            C s(0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s = s + C(R(1)) / (z[k] - z[j]);
            C w = ratio / (C(R(1)) - ratio * s);
            z[k] = z[k] - w;
            R m = absval(w) / (R(1) + absval(z[k]));
            if (m > worst) worst = m;
        }
        if (worst < eps) break;
    }
    return z;
}

// Adapter so Cplx works with the generic iteration.
struct CW {
    Cplx v;
    CW() = default;
    explicit CW(int x) : v(Real(x)) {}
    explicit CW(const Real& r) : v(r) {}
    CW(const Real& r, const Real& i) : v(r, i) {}
    CW(const Cplx& c) : v(c) {}  // NOLINT(google-explicit-constructor)
    friend CW operator+(const CW& a, const CW& b) { return CW(a.v + b.v); }
    friend CW operator-(const CW& a, const CW& b) { return CW(a.v - b.v); }
    friend CW operator*(const CW& a, const CW& b) { return CW(a.v * b.v); }
    friend CW operator/(const CW& a, const CW& b) { return CW(a.v / b.v); }
    friend bool operator==(const CW& a, const CW& b) { return a.v.re == b.v.re && a.v.im == b.v.im; }
    friend Real abs(const CW& a) { return a.v.abs(); }
};

}  // namespace

std::vector<Cplx> poly_roots(const std::vector<Cplx>& c) {
    std::vector<CW> cw(c.begin(), c.end());
    const Real eps = pow(Real(10), -static_cast<int>(Real::default_precision()) + 3);
    auto r = aberth<CW, Real>(cw, eps, 500);
    std::vector<Cplx> out;
    out.reserve(r.size());
    for (auto& x : r) out.push_back(x.v);
    return out;
}

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c) {
    return aberth<std::complex<double>, double>(c, 1e-15, 200);
}

double to_double(const Real& r) { return r.convert_to<double>(); }

Real to_real(const Rat& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

std::string to_string(const Real& r, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << r;
    return os.str();
}

}  // namespace lucas8
