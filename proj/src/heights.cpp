#include "lucas8/heights.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace lucas8 {

const char* to_string(PlaceKind k) {
    switch (k) {
        case PlaceKind::Finite: return "finite";
        case PlaceKind::Real: return "real";
        default: return "complex";
    }
}

const char* to_string(Provenance p) { return p == Provenance::Computed ? "computed" : "table"; }

namespace {

using RPoly = std::vector<Real>;

Real eval_real(const RPoly& c, const Real& x) {
    Real acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RPoly derivative(const RPoly& c) {
    RPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<long>(i));
    return d;
}

RPoly sub(RPoly a, const RPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Real(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

RPoly add(RPoly a, const RPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Real(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

RPoly times_x(const RPoly& a) {
    RPoly r(a.size() + 1, Real(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i + 1] = a[i];
    return r;
}

RPoly scaled(RPoly a, long s) {
    for (auto& v : a) v *= s;
    return a;
}

Real small_threshold(unsigned digits, int fraction) {
    return pow(Real(10), -static_cast<long>(digits) / fraction);
}

std::vector<Real> real_roots(RPoly c, unsigned digits) {
    const Real zero_tol = small_threshold(digits, 1) * 1000;
    Real scale = 0;
    for (const auto& v : c) scale = std::max(scale, Real(abs(v)));
    while (!c.empty() && abs(c.back()) <= zero_tol * (1 + scale)) c.pop_back();
    if (c.size() < 2) return {};
    std::vector<Cplx> cc(c.begin(), c.end());
    std::vector<Real> out;
    const Real im_tol = small_threshold(digits, 3);
    for (const auto& z : poly_roots(cc))
        if (abs(z.im) <= im_tol * (1 + abs(z.re))) out.push_back(z.re);
    return out;
}

Real phi_real(const RPoly& f, const RPoly& g, const Real& x) {
    Real m = max(Real(abs(eval_real(f, x))), Real(abs(eval_real(g, x))));
    Real ax = abs(x);
    if (ax > 1) m /= pow(ax, 4);
    return m;
}

EpsilonResult epsilon_real(const EpsilonProblem& p) {
    RPoly f, g;
    for (const auto& c : p.f) f.push_back(c.re);
    for (const auto& c : p.g) g.push_back(c.re);
    const RPoly df = derivative(f), dg = derivative(g);
    std::vector<std::pair<Real, std::string>> cand;
    auto push_roots = [&](const RPoly& q, const std::string& kind) {
        for (auto& r : real_roots(q, p.digits)) cand.emplace_back(r, kind);
    };
    push_roots(f, "boundary");
    push_roots(sub(f, g), "crossing");
    push_roots(add(f, g), "crossing");
    push_roots(df, "stationary");
    push_roots(dg, "stationary");
    push_roots(sub(times_x(df), scaled(f, 4)), "stationary");
    push_roots(sub(times_x(dg), scaled(g, 4)), "stationary");
    for (long v : {0L, 1L, -1L}) cand.emplace_back(Real(v), "breakpoint");

    const Real feas_tol = small_threshold(p.digits, 2);
    EpsilonResult best;
    best.infimum = -1;
    for (const auto& [x, kind] : cand) {
        Real fx = eval_real(f, x);
        if (fx < -feas_tol * (1 + pow(abs(x), 3))) continue;
        Real v = phi_real(f, g, x);
        if (best.infimum < 0 || v < best.infimum) {
            best.infimum = v;
            best.argmin = Cplx(x);
            best.argmin_kind = kind;
        }
    }
    // f has positive leading coefficient, so X -> +infinity is feasible with limit value 1.
    if (best.infimum < 0 || best.infimum > 1) {
        best.infimum = 1;
        best.argmin = Cplx();
        best.argmin_kind = "infinity";
    }
    best.epsilon = 1 / best.infimum;
    return best;
}

// Complex place.

template <class C>
C eval_c(const std::vector<C>& c, const C& z) {
    C acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Cplx eval_cplx(const std::vector<Cplx>& c, const Cplx& z) { return horner(c, z); }

std::vector<Cplx> cderiv(const std::vector<Cplx>& c) {
    std::vector<Cplx> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Cplx(Real(static_cast<long>(i))));
    return d;
}

Real psi(const std::vector<Cplx>& f, const std::vector<Cplx>& g, const Cplx& z) {
    Real m = max(eval_cplx(f, z).abs(), eval_cplx(g, z).abs());
    Real r = z.abs();
    if (r > 1) m /= pow(r, 4);
    return m;
}

double psi_d(const std::vector<std::complex<double>>& f, const std::vector<std::complex<double>>& g,
             std::complex<double> z) {
    double m = std::max(std::abs(eval_c(f, z)), std::abs(eval_c(g, z)));
    double r = std::abs(z);
    if (r > 1) m /= r * r * r * r;
    return m;
}

struct LagrangeSystem {
    const std::vector<Cplx>& f;
    const std::vector<Cplx>& g;
    std::vector<Cplx> df, dg;

    std::array<Real, 2> residual(const Cplx& z) const {
        Cplx fv = eval_cplx(f, z), gv = eval_cplx(g, z);
        Cplx lf = eval_cplx(df, z) / fv;
        Cplx lg = eval_cplx(dg, z) / gv;
        Cplx a = lf;
        if (z.abs() > 1) a = a - Cplx(Real(4)) / z;
        Cplx b = lf - lg;
        Cplx prod = a * b.conj();
        Real denom = a.abs() * b.abs();
        return {log(fv.abs()) - log(gv.abs()), denom > 0 ? Real(prod.im / denom) : Real(0)};
    }
};

// Newton on {|f| = |g|, grad objective parallel to grad(log|f/g|)}.
std::optional<Cplx> lagrange_newton(const LagrangeSystem& sys, Cplx z, unsigned digits) {
    const Real h = small_threshold(digits, 4);
    const Real stop = small_threshold(digits, 1) * Real(1e8);
    for (int it = 0; it < 80; ++it) {
        auto r = sys.residual(z);
        Real sc = max(Real(1), z.abs());
        Real hx = h * sc;
        auto rxp = sys.residual(z + Cplx(hx, Real(0)));
        auto rxm = sys.residual(z - Cplx(hx, Real(0)));
        auto ryp = sys.residual(z + Cplx(Real(0), hx));
        auto rym = sys.residual(z - Cplx(Real(0), hx));
        Real j00 = (rxp[0] - rxm[0]) / (2 * hx), j01 = (ryp[0] - rym[0]) / (2 * hx);
        Real j10 = (rxp[1] - rxm[1]) / (2 * hx), j11 = (ryp[1] - rym[1]) / (2 * hx);
        Real det = j00 * j11 - j01 * j10;
        if (det == 0) return std::nullopt;
        Real dx = (r[0] * j11 - r[1] * j01) / det;
        Real dy = (j00 * r[1] - j10 * r[0]) / det;
        Real res0 = abs(r[0]) + abs(r[1]);
        Real lam = 1;
        Cplx next;
        for (int k = 0; k < 40; ++k) {
            next = z - Cplx(lam * dx, lam * dy);
            auto rn = sys.residual(next);
            if (abs(rn[0]) + abs(rn[1]) < res0 || k == 39) break;
            lam /= 2;
        }
        Real step = sqrt(dx * dx + dy * dy) * lam;
        z = next;
        if (step < stop * sc) return z;
        if (z.abs() > Real(1e12)) return std::nullopt;
    }
    return std::nullopt;
}

Real golden_min(const std::vector<Cplx>& f, const std::vector<Cplx>& g, Real a, Real b, unsigned digits,
                Real& arg) {
    const Real gr = (sqrt(Real(5)) - 1) / 2;
    auto val = [&](const Real& t) { return psi(f, g, cexp_i(t)); };
    Real c = b - gr * (b - a), d = a + gr * (b - a);
    Real fc = val(c), fd = val(d);
    const int iters = static_cast<int>(static_cast<double>(digits) * 4.8) + 20;
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = val(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = val(d);
        }
    }
    arg = (a + b) / 2;
    return val(arg);
}

EpsilonResult epsilon_complex(const EpsilonProblem& p, const Real& tol, int grid) {
    const unsigned digits = p.digits;
    std::vector<std::complex<double>> fd, gd;
    for (const auto& c : p.f) fd.emplace_back(to_double(c.re), to_double(c.im));
    for (const auto& c : p.g) gd.emplace_back(to_double(c.re), to_double(c.im));

    EpsilonResult best;
    best.infimum = 1;
    best.argmin_kind = "infinity";
    auto offer = [&](const Real& v, const Cplx& z, const std::string& kind) {
        if (v < best.infimum) {
            best.infimum = v;
            best.argmin = z;
            best.argmin_kind = kind;
        }
    };

    // Unit circle.
    const Real two_pi = 2 * pi_real();
    const int nc = 8 * grid;
    std::vector<double> circ(static_cast<std::size_t>(nc));
    for (int i = 0; i < nc; ++i)
        circ[static_cast<std::size_t>(i)] =
            psi_d(fd, gd, std::polar(1.0, 2.0 * M_PI * i / nc));
    double circle_min = 1;
    for (int i = 0; i < nc; ++i) {
        const double v = circ[static_cast<std::size_t>(i)];
        circle_min = std::min(circle_min, v);
        if (v > circ[static_cast<std::size_t>((i + 1) % nc)] || v > circ[static_cast<std::size_t>((i + nc - 1) % nc)])
            continue;
        Real arg;
        Real a = two_pi * (i - 1) / nc, b = two_pi * (i + 1) / nc;
        Real v2 = golden_min(p.f, p.g, a, b, digits, arg);
        offer(v2, cexp_i(arg), "unit-circle");
    }

    // Polar grid seeding for crossing minima.
    const double babs = std::sqrt(std::abs(gd[0]));
    const double v0 = std::min({circle_min, 0.99, to_double(best.infimum)});
    const double rmax = std::max({4.0, 2.0 * std::sqrt(babs / (1.0 - std::sqrt(v0))), 4.0 * babs});
    const int nr = grid * 2, nt = grid * 4;
    const double rmin = 1e-3;
    std::vector<double> vals(static_cast<std::size_t>(nr * nt));
    auto zat = [&](int i, int j) {
        const double r = rmin * std::pow(rmax / rmin, static_cast<double>(i) / (nr - 1));
        return std::polar(r, 2.0 * M_PI * j / nt);
    };
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) vals[static_cast<std::size_t>(i * nt + j)] = psi_d(fd, gd, zat(i, j));
    std::vector<std::pair<double, std::complex<double>>> seeds;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            const double v = vals[static_cast<std::size_t>(i * nt + j)];
            bool local = true;
            for (int di = -1; di <= 1 && local; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di;
                    if (ii < 0 || ii >= nr) continue;
                    const int jj = (j + dj + nt) % nt;
                    if (vals[static_cast<std::size_t>(ii * nt + jj)] < v) {
                        local = false;
                        break;
                    }
                }
            if (local) seeds.emplace_back(v, zat(i, j));
        }
    std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (seeds.size() > 48) seeds.resize(48);

    LagrangeSystem sys{p.f, p.g, cderiv(p.f), cderiv(p.g)};
    Real unconverged = 2;
    for (const auto& [v, zd] : seeds) {
        Cplx z(Real(zd.real()), Real(zd.imag()));
        auto sol = lagrange_newton(sys, z, digits);
        if (sol) {
            offer(psi(p.f, p.g, *sol), *sol, "crossing");
        } else {
            unconverged = min(unconverged, psi(p.f, p.g, z));
        }
    }
    if (unconverged < best.infimum * (1 - tol))
        throw std::runtime_error("epsilon minimization did not converge");
    best.epsilon = 1 / best.infimum;
    return best;
}

// Integral representation x = N / d with N in Z[a] and a^4 = s a^2 + t.
struct ZA {
    std::array<Int, 4> c{};
};

struct Quartic {
    long s;
    long t;
};

Quartic quartic_of(FieldId f) {
    const auto& d = descriptor(f).defining;
    // a^4 = -d2 a^2 - d0 (d1 = d3 = 0 for both fields).
    return {-d[2].get_num().get_si(), -d[0].get_num().get_si()};
}

ZA za_mul(const ZA& a, const ZA& b, Quartic q) {
    std::array<Int, 7> t;
    for (std::size_t i = 0; i < 4; ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < 4; ++j) t[i + j] += a.c[i] * b.c[j];
    }
    for (std::size_t k = 6; k >= 4; --k) {
        if (t[k] == 0) continue;
        t[k - 2] += q.s * t[k];
        t[k - 4] += q.t * t[k];
        t[k] = 0;
    }
    return {{t[0], t[1], t[2], t[3]}};
}

ZA za_add(const ZA& a, const ZA& b) {
    ZA r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

ZA za_sub(const ZA& a, const ZA& b) {
    ZA r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

ZA za_scale(const ZA& a, const Int& k) {
    ZA r;
    for (std::size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] * k;
    return r;
}

bool za_zero(const ZA& a) { return a.c[0] == 0 && a.c[1] == 0 && a.c[2] == 0 && a.c[3] == 0; }

// Norm to Q through Q(a^2); `adj` receives an element with v * adj = norm.
Int za_norm(const ZA& v, Quartic q, ZA& adj) {
    // v = a + b alpha with a = c0 + c2 beta, b = c1 + c3 beta, beta = alpha^2, beta^2 = s beta + t.
    const Int &c0 = v.c[0], &c1 = v.c[1], &c2 = v.c[2], &c3 = v.c[3];
    Int a0 = c0 * c0 + c2 * c2 * q.t, a1 = 2 * c0 * c2 + c2 * c2 * q.s;
    Int p0 = c1 * c1 + c3 * c3 * q.t, p1 = 2 * c1 * c3 + c3 * c3 * q.s;
    // b^2 beta = p1 t + (p0 + p1 s) beta.
    Int u0 = a0 - p1 * q.t, u1 = a1 - (p0 + p1 * q.s);
    Int n = u0 * u0 + q.s * u0 * u1 - q.t * u1 * u1;
    // conj(u) = (u0 + u1 s) - u1 beta, conj1(v) = a - b alpha.
    ZA conj_v{{c0, -c1, c2, -c3}};
    ZA conj_u{{u0 + u1 * q.s, Int(0), -u1, Int(0)}};
    adj = za_mul(conj_v, conj_u, q);
    return n;
}

struct ScaledX {
    ZA N;
    Int d;
};

ScaledX scaled_from(const FieldElement& x) {
    Int d = 1;
    for (std::size_t i = 0; i < 4; ++i) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x[i].get_den_mpz_t());
    ScaledX r;
    r.d = d;
    for (std::size_t i = 0; i < 4; ++i) r.N.c[i] = x[i].get_num() * (d / x[i].get_den());
    return r;
}

struct CurveZ {
    Quartic q;
    Int L;
    ZA An, Bn;
};

CurveZ curve_z(const CurveInstance& e) {
    CurveZ cz{quartic_of(e.field), Int(1), {}, {}};
    for (std::size_t i = 0; i < 4; ++i) {
        mpz_lcm(cz.L.get_mpz_t(), cz.L.get_mpz_t(), e.A[i].get_den_mpz_t());
        mpz_lcm(cz.L.get_mpz_t(), cz.L.get_mpz_t(), e.B[i].get_den_mpz_t());
    }
    for (std::size_t i = 0; i < 4; ++i) {
        Rat a = e.A[i] * cz.L, b = e.B[i] * cz.L;
        cz.An.c[i] = a.get_num();
        cz.Bn.c[i] = b.get_num();
    }
    return cz;
}

// x = U / W with U, W in Z[a]; doubling is homogeneous of degree 4 in (U, W).
struct ProjX {
    ZA U;
    ZA W;
};

ProjX proj_from(const FieldElement& x) {
    auto s = scaled_from(x);
    ProjX p;
    p.U = s.N;
    p.W.c[0] = s.d;
    return p;
}

void remove_content(ProjX& p) {
    Int g = 0;
    for (const auto* z : {&p.U, &p.W})
        for (const auto& v : z->c) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
    if (g == 0) return;
    for (auto* z : {&p.U, &p.W})
        for (auto& v : z->c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

std::optional<ProjX> double_proj(const CurveZ& cz, const ProjX& x) {
    const Quartic q = cz.q;
    const ZA u2 = za_mul(x.U, x.U, q);
    const ZA w2 = za_mul(x.W, x.W, q);
    const ZA uw = za_mul(x.U, x.W, q);
    const ZA lu2 = za_scale(u2, cz.L);
    const ZA bw2 = za_mul(cz.Bn, w2, q);
    const ZA t0 = za_sub(lu2, bw2);
    ProjX r;
    r.U = za_mul(t0, t0, q);
    const ZA t1 = za_add(za_add(lu2, za_mul(cz.An, uw, q)), bw2);
    r.W = za_scale(za_mul(uw, t1, q), 4 * cz.L);
    if (za_zero(r.W)) return std::nullopt;
    remove_content(r);
    return r;
}

FieldElement from_proj(FieldId f, const ProjX& x, Quartic q) {
    ZA adj;
    Int nrm = za_norm(x.W, q, adj);
    ZA num = za_mul(x.U, adj, q);
    return FieldElement(f, {make_rat(num.c[0], nrm), make_rat(num.c[1], nrm), make_rat(num.c[2], nrm),
                            make_rat(num.c[3], nrm)});
}

Real real_of(const Int& n) {
    Real r;
    mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
    return r;
}

// Index in Z^4 of the lattice spanned by `vecs` and D Z^4 (Hermite normal form mod D).
Int lattice_index(const std::vector<std::array<Int, 4>>& vecs, const Int& D) {
    std::array<std::array<Int, 4>, 4> b{};
    std::array<bool, 4> have{};
    auto insert = [&](std::array<Int, 4> v, std::size_t from) {
        for (auto& x : v) x = mod_floor(x, D);
        for (std::size_t i = from; i < 4; ++i) {
            if (v[i] == 0) continue;
            if (!have[i]) {
                b[i] = v;
                have[i] = true;
                return;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[i][i].get_mpz_t(), v[i].get_mpz_t());
            const Int bi = b[i][i] / g, vi = v[i] / g;
            std::array<Int, 4> nb, nv;
            for (std::size_t k = 0; k < 4; ++k) {
                nb[k] = mod_floor(s * b[i][k] + t * v[k], D);
                nv[k] = mod_floor(bi * v[k] - vi * b[i][k], D);
            }
            nb[i] = g;
            b[i] = nb;
            v = nv;
        }
    };
    for (const auto& v : vecs) insert(v, 0);
    Int det = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!have[i]) {
            det *= D;
            continue;
        }
        // Merge the row with D e_i; the leftover multiple moves to later columns.
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[i][i].get_mpz_t(), D.get_mpz_t());
        std::array<Int, 4> rest;
        for (std::size_t k = 0; k < 4; ++k) rest[k] = (D / g) * b[i][k];
        for (std::size_t k = 0; k < 4; ++k) b[i][k] = mod_floor(s * b[i][k], D);
        b[i][i] = g;
        insert(rest, i + 1);
        det *= g;
    }
    return det;
}

// Norm of the ideal (U, W) of the maximal order.
Int ideal_norm(FieldId f, const ProjX& x, Quartic q) {
    ZA adj;
    const Int nu = abs(za_norm(x.U, q, adj));
    const Int nw = abs(za_norm(x.W, q, adj));
    Int D;
    mpz_gcd(D.get_mpz_t(), nu.get_mpz_t(), nw.get_mpz_t());
    if (D == 0) throw std::domain_error("ideal of zero elements");
    if (D == 1) return 1;
    const auto& desc = descriptor(f);
    std::vector<std::array<Int, 4>> vecs;
    for (const auto* z : {&x.U, &x.W}) {
        FieldElement r(f, {Rat(mod_floor(z->c[0], D)), Rat(mod_floor(z->c[1], D)), Rat(mod_floor(z->c[2], D)),
                           Rat(mod_floor(z->c[3], D))});
        for (const auto& w : desc.order_basis) {
            auto oc = order_coordinates(r * w);
            std::array<Int, 4> v;
            for (std::size_t i = 0; i < 4; ++i) {
                if (oc[i].get_den() != 1) throw std::logic_error("element outside the maximal order");
                v[i] = oc[i].get_num();
            }
            vecs.push_back(v);
        }
    }
    // D lies in (U, W), so D O is contained in the ideal; in order coordinates D O = D Z^4.
    return lattice_index(vecs, D);
}

std::size_t max_bits(const ProjX& x) {
    std::size_t bits = 1;
    for (const auto* z : {&x.U, &x.W})
        for (const auto& v : z->c) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    return bits;
}

// log max(|U|, |W|) at one embedding. Coefficients are truncated to `keep` leading bits, which
// perturbs the value by O(1) units of 2^shift; the window widens when the value is too small
// for that, or for the working precision.
Real log_max_at(FieldId f, const ProjX& x, std::size_t k, unsigned digits) {
    const std::size_t bits = max_bits(x);
    std::size_t keep = static_cast<std::size_t>(digits * 3.33) + 96;
    double extra = 0;
    for (;;) {
        const std::size_t shift = bits > keep ? bits - keep : 0;
        const double used = static_cast<double>(bits - shift) * 0.30103;
        const double prec = used + digits + 20 + extra;
        PrecisionScope scope(static_cast<unsigned>(prec));
        const auto roots = generator_embeddings(f);
        Cplx u, w;
        Int t;
        for (std::size_t i = 4; i-- > 0;) {
            mpz_fdiv_q_2exp(t.get_mpz_t(), x.U.c[i].get_mpz_t(), shift);
            u = u * roots[k] + Cplx(real_of(t));
            mpz_fdiv_q_2exp(t.get_mpz_t(), x.W.c[i].get_mpz_t(), shift);
            w = w * roots[k] + Cplx(real_of(t));
        }
        const Real m = max(u.abs(), w.abs());
        if (m == 0) {
            if (shift > 0) keep *= 2;
            else extra = 2 * extra + prec;
            continue;
        }
        const double lg = static_cast<double>(log10(m));
        if (shift > 0 && lg < digits + 6) {
            keep += static_cast<std::size_t>((digits + 6 - lg) * 3.33) + 64;
            continue;
        }
        if (used + digits + 10 - lg > prec) {
            extra += used + digits + 10 - lg - prec + 20;
            continue;
        }
        return log(m) + static_cast<double>(shift) * log(Real(2));
    }
}

// h = (1/4) (sum_arch n_v log max(|U|_v, |W|_v) - log N(U, W)).
Real naive_height_proj(FieldId f, const ProjX& x, unsigned digits) {
    const Int n = ideal_norm(f, x, quartic_of(f));
    PrecisionScope scope(digits + 10);
    Real sum = -log(real_of(n));
    for (std::size_t k = 0; k < 3; ++k) {
        const Real l = log_max_at(f, x, k, digits);
        sum += (k == 2 ? 2 : 1) * l;
    }
    Real out = sum / 4;
    PrecisionScope back(digits);
    return Real(out);
}

// Units u^k with u^k and u^-k both in Z[a], used to keep (U, W) balanced across the places.
struct UnitStep {
    ZA fwd;
    ZA inv;
    double log0;
    double log1;
};

std::optional<ZA> za_of(const FieldElement& x) {
    ZA r;
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i].get_den() != 1) return std::nullopt;
        r.c[i] = x[i].get_num();
    }
    return r;
}

const std::vector<UnitStep>& unit_steps(FieldId f) {
    static std::mutex mu;
    static std::map<FieldId, std::vector<UnitStep>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    std::vector<UnitStep> steps;
    for (const auto& [name, u] : descriptor(f).units) {
        for (long k = 1; k <= 64; ++k) {
            const FieldElement p = u.pow(k);
            auto fwd = za_of(p);
            auto inv = za_of(p.inv());
            if (!fwd || !inv) continue;
            const auto emb = embeddings_d(p);
            steps.push_back({*fwd, *inv, std::log(std::abs(emb[0])), std::log(std::abs(emb[1]))});
            break;
        }
    }
    if (steps.size() != 2) throw std::logic_error("unit powers in Z[a] not found");
    return cache.emplace(f, std::move(steps)).first->second;
}

ZA za_pow(ZA b, long e, Quartic q) {
    ZA r;
    r.c[0] = 1;
    while (e > 0) {
        if (e & 1) r = za_mul(r, b, q);
        e >>= 1;
        if (e) b = za_mul(b, b, q);
    }
    return r;
}

// Multiply U and W by a unit so that log max(|U|, |W|) is nearly equal at every place.
void balance(FieldId f, ProjX& x, Quartic q) {
    const auto& steps = unit_steps(f);
    double l[3];
    for (std::size_t k = 0; k < 3; ++k) l[k] = static_cast<double>(log_max_at(f, x, k, 15));
    const double mean = (l[0] + l[1] + 2 * l[2]) / 4;
    const double d0 = mean - l[0], d1 = mean - l[1];
    const double det = steps[0].log0 * steps[1].log1 - steps[1].log0 * steps[0].log1;
    const long a = std::lround((d0 * steps[1].log1 - d1 * steps[1].log0) / det);
    const long b = std::lround((steps[0].log0 * d1 - steps[0].log1 * d0) / det);
    ZA m;
    m.c[0] = 1;
    if (a != 0) m = za_mul(m, za_pow(a > 0 ? steps[0].fwd : steps[0].inv, std::labs(a), q), q);
    if (b != 0) m = za_mul(m, za_pow(b > 0 ? steps[1].fwd : steps[1].inv, std::labs(b), q), q);
    if (a == 0 && b == 0) return;
    x.U = za_mul(x.U, m, q);
    x.W = za_mul(x.W, m, q);
    remove_content(x);
}

struct BoundCache {
    std::mutex mu;
    std::map<std::string, double> values;
};

BoundCache& bound_cache() {
    static BoundCache c;
    return c;
}

}  // namespace

EpsilonProblem epsilon_problem(const CurveInstance& e, int place, unsigned digits) {
    if (place < 0 || place > 2) throw std::invalid_argument("archimedean place index must be 0, 1 or 2");
    PrecisionScope scope(digits);
    const auto ea = embeddings(e.A, digits);
    const auto eb = embeddings(e.B, digits);
    const auto k = static_cast<std::size_t>(place);
    Cplx a = ea[k], b = eb[k];
    EpsilonProblem p;
    p.kind = place == 2 ? PlaceKind::Complex : PlaceKind::Real;
    p.embedding = place;
    p.digits = digits;
    Cplx four(Real(4));
    p.f = {Cplx(), four * b, four * a, four};
    p.g = {b * b, Cplx(), Cplx(Real(-2)) * b, Cplx(), Cplx(Real(1))};
    return p;
}

EpsilonResult epsilon_archimedean(const EpsilonProblem& p, const Real& tol, int grid) {
    if (p.digits < 30) throw std::invalid_argument("epsilon needs at least 30 digits");
    PrecisionScope scope(p.digits);
    if (p.kind == PlaceKind::Real) return epsilon_real(p);
    if (p.kind == PlaceKind::Complex) return epsilon_complex(p, tol, grid);
    throw std::invalid_argument("archimedean epsilon needs a real or complex place");
}

namespace {

int ord2_norm(const FieldElement& x, int cap) {
    if (x.is_zero()) return cap;
    auto s = scaled_from(x);
    ZA adj;
    Int n = za_norm(s.N, quartic_of(x.field()), adj);
    // N(x) = N(N_int) / d^4.
    int v = valuation(n, 2) - 4 * valuation(s.d, 2);
    return std::min(v, cap);
}

}  // namespace

FiniteEpsilon epsilon_nonarchimedean(const CurveInstance& e) {
    FiniteEpsilon out;
    const auto& desc = descriptor(e.field);
    out.label = desc.prime_above_2.first;
    PrecisionScope scope(50);
    if (e.field == FieldId::K1) {
        out.bound = 1;
        out.max_order = 0;
        return out;
    }
    // 2 = unit * pi^4, so ord_pi(y) = v_2(N(y)) and O/pi^12 = O/8O.
    const int cap = out.cap;
    int best = -1;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            for (int c = 0; c < 8; ++c)
                for (int d = 0; d < 8; ++d) {
                    FieldElement x = Rat(a) * desc.order_basis[0] + Rat(b) * desc.order_basis[1] +
                                     Rat(c) * desc.order_basis[2] + Rat(d) * desc.order_basis[3];
                    FieldElement x2 = x * x;
                    FieldElement fx = Rat(4) * x * (x2 + e.A * x + e.B);
                    FieldElement h = x2 - e.B;
                    int of = ord2_norm(fx, cap);
                    int og = std::min(2 * ord2_norm(h, cap), cap);
                    int m = std::min(of, og);
                    if (m > best) {
                        best = m;
                        out.witness = x;
                    }
                }
    if (best >= cap) throw std::runtime_error("order of vanishing reaches the residue cap");
    out.max_order = best;
    out.bound = pow(Real(2), Real(best) / 4);
    return out;
}

Rat kodaira_mu_finite(const CurveInstance& e) { return e.field == FieldId::K2 ? Rat(1, 4) : Rat(0); }
Rat kodaira_mu_infinite(const CurveInstance&) { return Rat(1, 3); }

HeightBound height_diff_bound(const CurveInstance& e, unsigned digits) {
    PrecisionScope scope(digits);
    HeightBound hb;
    hb.curve_id = e.id;
    const Real tol = small_threshold(digits, 2);

    auto fin = epsilon_nonarchimedean(e);
    PlaceData pf;
    pf.label = fin.label;
    pf.kind = PlaceKind::Finite;
    pf.local_degree = 4;
    pf.mu = kodaira_mu_finite(e);
    pf.epsilon = fin.bound;
    pf.epsilon_is_upper_bound = e.field == FieldId::K2;
    pf.argmin_kind = e.field == FieldId::K2 ? "residue" : "trivial";
    pf.witness = fin.witness;
    hb.places.push_back(pf);

    const char* labels[3] = {"inf1", "inf2", "inf3"};
    for (int k = 0; k < 3; ++k) {
        auto prob = epsilon_problem(e, k, digits);
        auto r = epsilon_archimedean(prob, tol);
        PlaceData pd;
        pd.label = labels[k];
        pd.kind = prob.kind;
        pd.local_degree = k == 2 ? 2 : 1;
        pd.mu = kodaira_mu_infinite(e);
        pd.epsilon = r.epsilon;
        pd.argmin = r.argmin;
        pd.argmin_kind = r.argmin_kind;
        hb.places.push_back(pd);
    }
    Real sum = 0;
    for (const auto& pd : hb.places) {
        if (pd.mu == 0) continue;
        sum += to_real(pd.mu) * pd.local_degree * log(pd.epsilon);
    }
    hb.C = sum / 4;
    return hb;
}

double height_diff_bound_value(const CurveInstance& e) {
    auto& cache = bound_cache();
    {
        std::lock_guard<std::mutex> lock(cache.mu);
        auto it = cache.values.find(e.id);
        if (it != cache.values.end()) return it->second;
    }
    const double c = to_double(height_diff_bound(e, 50).C);
    std::lock_guard<std::mutex> lock(cache.mu);
    cache.values[e.id] = c;
    return c;
}

Real naive_height(const FieldElement& x, unsigned digits) {
    if (x.field() == FieldId::None) {
        if (!x.is_rational()) throw std::invalid_argument("untyped field element");
        PrecisionScope scope(digits);
        Rat q = x[0];
        Real num = log(real_of(abs(q.get_num()))), den = log(real_of(q.get_den()));
        if (q == 0) return 0;
        return max(num, den);
    }
    return naive_height_proj(x.field(), proj_from(x), digits);
}

Real projective_height(FieldId f, const std::array<Int, 4>& U, const std::array<Int, 4>& W, unsigned digits) {
    ProjX x;
    x.U.c = U;
    x.W.c = W;
    return naive_height_proj(f, x, digits);
}

Real naive_height(const CurvePoint& p, unsigned digits) {
    if (p.infinity) return Real(0);
    return naive_height(p.X, digits);
}

std::optional<FieldElement> double_x(const CurveInstance& e, const FieldElement& x) {
    const CurveZ cz = curve_z(e);
    auto r = double_proj(cz, proj_from(x));
    if (!r) return std::nullopt;
    return from_proj(e.field, *r, cz.q);
}

CanonicalHeight canonical_height(const CurveInstance& e, const CurvePoint& p, double tol, unsigned digits) {
    CanonicalHeight out;
    PrecisionScope scope(digits);
    if (p.infinity) {
        out.value = 0;
        out.torsion = true;
        return out;
    }
    const double C = height_diff_bound_value(e);
    int m = 0;
    while (C / (2.0 * std::pow(4.0, m)) >= tol) {
        ++m;
        if (m > kMaxDoublings) throw std::runtime_error("doubling count exceeds the guard");
    }
    const CurveZ cz = curve_z(e);
    ProjX x = proj_from(p.X);
    std::vector<FieldElement> seen{p.X};
    for (int i = 0; i < m; ++i) {
        auto nx = double_proj(cz, x);
        if (!nx) {
            out.value = 0;
            out.torsion = true;
            return out;
        }
        x = std::move(*nx);
        balance(e.field, x, cz.q);
        if (i < 6) {
            FieldElement fx = from_proj(e.field, x, cz.q);
            if (std::find(seen.begin(), seen.end(), fx) != seen.end()) {
                out.value = 0;
                out.torsion = true;
                return out;
            }
            seen.push_back(fx);
        }
    }
    Real h = naive_height_proj(e.field, x, digits);
    out.value = h / (2 * pow(Real(4), m));
    out.doublings = m;
    out.tail = C / (2.0 * std::pow(4.0, m));
    return out;
}

Real height_pairing(const CurveInstance& e, const CurvePoint& p, const CurvePoint& q, double tol) {
    const auto s = add_points(e, p, q);
    return canonical_height(e, s, tol).value - canonical_height(e, p, tol).value -
           canonical_height(e, q, tol).value;
}

}  // namespace lucas8
