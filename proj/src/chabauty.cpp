#include "lucas8/chabauty.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace lucas8 {

int valuation3(const FieldElement& x) {
    int v = INT_MAX / 2;
    for (std::size_t i = 0; i < 4; ++i)
        if (x[i] != 0) v = std::min(v, valuation(x[i], 3));
    return v;
}

PadicQuartic z_coordinate(const CurveInstance& e, const CurvePoint& p, int k) {
    if (p.infinity) return PadicQuartic(e.field, k);
    if (valuation3(p.X) > -2) throw std::domain_error("not in kernel of reduction");
    return PadicQuartic::reduce(-(p.X / p.Y), k);
}

FormalSeriesPack formal_series(const CurveInstance& e, int order) { return derive_formal_series(e.A, e.B, order); }

int series_order_for(int k) { return 2 * k + 2; }

namespace {

// tau = t/3 lifted to precision k.
PadicQuartic scaled_argument(const PadicQuartic& t, int k) {
    if (t.precision() < k) throw std::invalid_argument("argument precision below target");
    if (t.valuation() < 1) throw std::domain_error("series argument must have valuation >= 1");
    PadicQuartic tau = t.with_precision(k).divide_p(1);
    return PadicQuartic(t.field(), k, tau.coords());
}

template <class V>
V eval_scaled(const Series<FieldElement>& coeffs, const V& tau, const V& zero, int k) {
    V acc = zero;
    V pw = tau;
    for (std::size_t n = 1; n < coeffs.size(); ++n) {
        if (!coeffs[n].is_zero()) {
            FieldElement c = Rat(ipow(3, n)) * coeffs[n];
            if (valuation3(c) < k) acc = acc + PadicQuartic::reduce(c, k) * pw;
        }
        pw = pw * tau;
    }
    return acc;
}

void require_order(const FormalSeriesPack& pack, int k) {
    if (pack.order < series_order_for(k))
        throw std::invalid_argument("formal series order " + std::to_string(pack.order) + " too small for 3^" +
                                    std::to_string(k));
}

}  // namespace

PadicQuartic padic_log(const FormalSeriesPack& pack, const PadicQuartic& t, int k) {
    require_order(pack, k);
    PadicQuartic tau = scaled_argument(t, k);
    return eval_scaled(pack.log, tau, PadicQuartic(pack.field, k), k);
}

PadicQuartic padic_exp(const FormalSeriesPack& pack, const PadicQuartic& t, int k) {
    require_order(pack, k);
    PadicQuartic tau = scaled_argument(t, k);
    return eval_scaled(pack.exp, tau, PadicQuartic(pack.field, k), k);
}

PadicPoly z_linear_combo(const FormalSeriesPack& pack, const std::vector<PadicQuartic>& z_values, int k) {
    require_order(pack, k + 1);
    const int nv = static_cast<int>(z_values.size());
    if (nv < 1 || nv > 2) throw std::invalid_argument("z_linear_combo supports one or two points");
    PadicPoly u(pack.field, k, nv);
    for (int i = 0; i < nv; ++i) {
        PadicQuartic l = padic_log(pack, z_values[static_cast<std::size_t>(i)], k + 1).divide_p(1);
        u = u + l * PadicPoly::variable(FieldId::None, k, i, nv);
    }
    // z = exp(3u) = sum e_n 3^n u^n
    PadicPoly zero(pack.field, k, nv);
    PadicPoly acc = zero;
    PadicPoly pw = u;
    for (std::size_t n = 1; n < pack.exp.size(); ++n) {
        if (!pack.exp[n].is_zero()) {
            FieldElement c = Rat(ipow(3, n)) * pack.exp[n];
            if (valuation3(c) < k) acc = acc + PadicQuartic::reduce(c, k) * pw;
        }
        pw = pw * u;
        if (pw.is_zero()) break;
    }
    return acc;
}

PadicPoly z_linear_combo(const CurveInstance& e, const std::vector<CurvePoint>& basis, int k) {
    FormalSeriesPack pack = formal_series(e, series_order_for(k + 1));
    std::vector<PadicQuartic> zs;
    for (const auto& q : basis) zs.push_back(z_coordinate(e, q, k + 1));
    return z_linear_combo(pack, zs, k);
}

Series<FieldElement> beta_x_series(const CurveInstance& e, const CurvePoint& base, int order) {
    if (base.infinity) throw std::invalid_argument("base point must be finite");
    const FieldElement zero(e.field, Rat(0)), one(e.field, Rat(1));
    return series::beta_x(e.A, e.B, e.beta, e.gamma, base.X, base.Y, static_cast<std::size_t>(order), zero, one);
}

Series<Poly<FieldElement>> beta_x_series_symbolic(const CurveInstance& e, int order) {
    using P = Poly<FieldElement>;
    const FieldElement one(e.field, Rat(1));
    auto c = [](const FieldElement& x) { return P::constant(x, 2); };
    P zero(2);
    P X0 = P::variable(0, 2, one), Y0 = P::variable(1, 2, one);
    auto s = series::beta_x(c(e.A), c(e.B), c(e.beta), c(e.gamma), X0, Y0, static_cast<std::size_t>(order), zero,
                            c(one));
    for (auto& t : s) t = reduce_by_curve(e, t);
    return s;
}

Poly<FieldElement> reduce_by_curve(const CurveInstance& e, const Poly<FieldElement>& p) {
    using P = Poly<FieldElement>;
    const FieldElement one(e.field, Rat(1));
    P X0 = P::variable(0, 2, one);
    P cubic = X0 * X0 * X0 + e.A * (X0 * X0) + e.B * X0;
    P cur = p;
    for (;;) {
        P next(2);
        bool changed = false;
        for (const auto& [m, c] : cur.terms()) {
            if (m[1] < 2) {
                next.add_term(m, c);
                continue;
            }
            changed = true;
            P mono(2);
            mono.add_term({m[0], m[1] - 2}, c);
            next = next + mono * cubic;
        }
        cur = next;
        if (!changed) return cur;
    }
}

Series<FieldElement> inverse_beta_x_series(const CurveInstance& e, int order) {
    if (e.beta.is_zero()) throw std::invalid_argument("beta = 0");
    const FieldElement zero(e.field, Rat(0)), one(e.field, Rat(1));
    return series::inverse_beta_x(e.A, e.B, e.beta.inv(), e.gamma, static_cast<std::size_t>(order), zero, one);
}

Series<PadicQuartic> reduce_series(const Series<FieldElement>& s, int k) {
    Series<PadicQuartic> r;
    r.reserve(s.size());
    for (const auto& c : s) r.push_back(PadicQuartic::reduce(c, k));
    return r;
}

std::array<PadicPoly, 4> theta_components(const Series<PadicQuartic>& s, const PadicPoly& z_poly) {
    if (z_poly.min_valuation() < 1) throw std::domain_error("z polynomial must vanish mod 3");
    const int k = z_poly.precision();
    if (static_cast<int>(s.size()) < k) throw std::invalid_argument("series too short for the precision");
    PadicPoly acc(z_poly.field(), k, z_poly.nvars());
    PadicPoly pw = PadicPoly::constant(PadicQuartic::from_int(z_poly.field(), k, 1), z_poly.nvars());
    for (std::size_t j = 0; j < s.size(); ++j) {
        acc = acc + s[j].with_precision(k) * pw;
        pw = pw * z_poly;
        if (pw.is_zero()) break;
    }
    return acc.components();
}

namespace {

std::string monomial_name(const PadicPoly::Mono& m) {
    if (m[0] == 0 && m[1] == 0) return "1";
    std::string s;
    if (m[0] > 0) s += "x1" + (m[0] > 1 ? "^" + std::to_string(m[0]) : std::string());
    if (m[1] > 0) s += (s.empty() ? "" : "*") + ("x2" + (m[1] > 1 ? "^" + std::to_string(m[1]) : std::string()));
    return s;
}

QPoly mod3_part(const PadicPoly& F, int& degree) {
    QPoly f(2);
    degree = -1;
    for (const auto& [m, c] : F.terms()) {
        Int r = mod_floor(c[0], 3);
        if (r == 0) continue;
        int d = m[0] + m[1];
        if (degree >= 0 && d != degree)
            throw std::runtime_error("hypothesis (1) violated: reduction mod p not homogeneous at monomial " +
                                     monomial_name(m));
        degree = d;
        f.add_term(m, Rat(r));
    }
    if (degree < 1) throw std::runtime_error("hypothesis (1) violated: reduction mod p has degree < 1");
    for (const auto& [m, c] : F.terms())
        if (m[0] + m[1] < degree)
            throw std::runtime_error("hypothesis (2) violated: monomial " + monomial_name(m) + " below degree " +
                                     std::to_string(degree));
    return f;
}

PadicPoly normalize(const PadicPoly& theta) {
    if (theta.is_zero()) throw std::runtime_error("component vanishes to working precision");
    int v = theta.min_valuation();
    if (v >= theta.precision()) throw std::runtime_error("precision insufficient");
    return theta.divide_p(v);
}

Int eval_mod(const QPoly& h, long x, long p) {
    Int acc = 0;
    for (const auto& [m, c] : h.terms()) acc += rat_mod(c, p) * ipow(x, static_cast<unsigned long>(m[0] + m[1]));
    return mod_floor(acc, p);
}

QPoly reduce_mod(const QPoly& h, long p) {
    QPoly r(h.nvars());
    for (const auto& [m, c] : h.terms()) r.add_term(m, Rat(rat_mod(c, p)));
    return r;
}

bool univariate_in(const QPoly& f, int var) {
    for (const auto& [m, c] : f.terms())
        if (m.at(static_cast<std::size_t>(1 - var)) != 0) return false;
    return true;
}

}  // namespace

SkolemSystem make_skolem_system(const PadicPoly& theta_a, const PadicPoly& theta_b) {
    SkolemSystem s;
    s.F1 = normalize(theta_a);
    s.F2 = normalize(theta_b);
    if (s.F1.nvars() != 2 || s.F2.nvars() != 2) throw std::invalid_argument("Skolem system needs two variables");
    s.f01 = mod3_part(s.F1, s.d1);
    s.f02 = mod3_part(s.F2, s.d2);
    return s;
}

SkolemVerdict skolem_check(SkolemSystem system, unsigned long p) {
    SkolemVerdict v;
    const long pl = static_cast<long>(p);
    std::ostringstream os;
    if (system.d1 == 1 && system.d2 == 1) {
        Rat a11 = system.f01.coeff({1, 0}), a12 = system.f01.coeff({0, 1});
        Rat a21 = system.f02.coeff({1, 0}), a22 = system.f02.coeff({0, 1});
        Int det = rat_mod(a11 * a22 - a12 * a21, pl);
        system.det_mod_p = det;
        v.unique = det != 0;
        os << "det = " << det << " mod " << p;
    } else {
        auto eliminant = [&](int var) {
            if (univariate_in(system.f01, var)) return system.f01;
            if (univariate_in(system.f02, var)) return system.f02;
            return resultant(system.f01, system.f02, 1 - var);
        };
        system.H1 = eliminant(0);
        system.H2 = eliminant(1);
        bool ok = !reduce_mod(system.H1, pl).is_zero() && !reduce_mod(system.H2, pl).is_zero();
        for (long x = 1; ok && x < pl; ++x)
            if (eval_mod(system.H1, x, pl) == 0 || eval_mod(system.H2, x, pl) == 0) ok = false;
        v.unique = ok;
        os << "H1 = " << to_string(system.H1) << ", H2 = " << to_string(system.H2) << " mod " << p;
    }
    os << (v.unique ? "; only the zero solution" : "; inconclusive");
    v.detail = os.str();
    v.system = std::move(system);
    return v;
}

std::vector<std::array<int, 2>> brute_force_roots(const SkolemSystem& s, int m) {
    PadicPoly F1 = s.F1.with_precision(m), F2 = s.F2.with_precision(m);
    const long q = pow3(m).get_si();
    std::vector<std::array<int, 2>> roots;
    for (long a = 0; a < q; ++a)
        for (long b = 0; b < q; ++b)
            if (F1.eval(a, b).is_zero() && F2.eval(a, b).is_zero())
                roots.push_back({static_cast<int>(a), static_cast<int>(b)});
    return roots;
}

int strassman_bound(const PadicPoly& series) {
    if (series.nvars() > 1) throw std::invalid_argument("Strassman bound needs one variable");
    if (series.is_zero()) throw std::runtime_error("precision insufficient");
    int v = series.min_valuation();
    if (v >= series.precision()) throw std::runtime_error("precision insufficient");
    int n = -1;
    for (const auto& [m, c] : series.terms())
        if (c.valuation() == v) n = std::max(n, m[0]);
    // A discarded tail term has valuation >= precision > v, so the index is certified.
    return n;
}

long reduction_order(const CurveInstance& e, const CurvePoint& p) {
    if (p.infinity || valuation3(p.X) < 0) return 1;
    const int k = 1;
    struct RP {
        PadicQuartic X, Y;
        bool inf;
    };
    const PadicQuartic A = PadicQuartic::reduce(e.A, k), B = PadicQuartic::reduce(e.B, k);
    auto add = [&](const RP& a, const RP& b) -> RP {
        if (a.inf) return b;
        if (b.inf) return a;
        PadicQuartic lam;
        if (a.X == b.X) {
            if (a.Y != b.Y || a.Y.is_zero()) return {a.X, a.Y, true};
            PadicQuartic num = Int(3) * (a.X * a.X) + Int(2) * (A * a.X) + B;
            lam = num * (Int(2) * a.Y).inv();
        } else {
            lam = (b.Y - a.Y) * (b.X - a.X).inv();
        }
        PadicQuartic x3 = lam * lam - A - a.X - b.X;
        PadicQuartic y3 = lam * (a.X - x3) - a.Y;
        return {x3, y3, false};
    };
    RP base{PadicQuartic::reduce(p.X, k), PadicQuartic::reduce(p.Y, k), false};
    RP acc = base;
    for (long m = 1; m <= 200; ++m) {
        if (acc.inf) return m;
        acc = add(acc, base);
    }
    throw std::runtime_error("reduction order exceeds the Hasse bound");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ExcludedMod3: return "excluded-mod-3";
        case Verdict::ExcludedMod9: return "excluded-mod-9";
        case Verdict::SkolemUnique: return "skolem-unique";
        case Verdict::StrassmanBounded: return "strassman-bounded";
        case Verdict::SolutionFound: return "solution-found";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

// Theta components 1..3 (the irrational coordinates).
std::vector<const PadicPoly*> irrational(const CosetCase& c) { return {&c.theta[1], &c.theta[2], &c.theta[3]}; }

bool try_exclusion(CosetCase& c) {
    for (const PadicPoly* t : irrational(c))
        if (!t->satisfies_floor()) return false;
    for (int i = 1; i <= 3; ++i) {
        Int c0 = mod_floor(c.theta[static_cast<std::size_t>(i)].coeff({0, 0})[0], 3);
        if (c0 != 0) {
            c.verdict = Verdict::ExcludedMod3;
            c.certificate = "theta" + std::to_string(i) + " = " + to_string(c0) + " mod 3";
            return true;
        }
    }
    const int nv = c.theta[1].nvars();
    std::ostringstream os;
    const int n2max = nv == 2 ? 3 : 1;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < n2max; ++b) {
            int witness = 0;
            for (int i = 1; i <= 3 && witness == 0; ++i) {
                PadicQuartic val = c.theta[static_cast<std::size_t>(i)].with_precision(2).eval(a, b);
                if (!val.is_zero()) witness = i;
            }
            if (witness == 0) return false;
            os << (os.tellp() > 0 ? "; " : "") << "n=(" << a << (nv == 2 ? "," + std::to_string(b) : "")
               << "): theta" << witness << " != 0 mod 9";
        }
    c.verdict = Verdict::ExcludedMod9;
    c.certificate = os.str();
    return true;
}

bool all_vanish(const CosetCase& c, long n1, long n2) {
    for (const PadicPoly* t : irrational(c))
        if (!t->eval(n1, n2).is_zero()) return false;
    return true;
}

void add_unique(std::vector<CurvePoint>& pts, const CurvePoint& p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
}

// Base point k*G + eps*T, checked to lie outside the kernel of reduction.
CurvePoint coset_base(const CurveInstance& e, const CurvePoint& g, long k, int eps) {
    CurvePoint p = scalar_mul(e, k, g);
    if (eps != 0) p = add_points(e, p, torsion_point(e));
    if (!p.infinity && valuation3(p.X) < 0) throw std::runtime_error("coset base point lies in the formal group");
    return p;
}

std::array<PadicPoly, 4> coset_theta(const CurveInstance& e, const CurvePoint& base, bool r_only,
                                     const PadicPoly& zpoly, int k) {
    Series<FieldElement> s = r_only ? inverse_beta_x_series(e, k) : beta_x_series(e, base, k);
    return theta_components(reduce_series(s, k), zpoly);
}

CosetCase rank1_case(const CurveInstance& e, const CurvePoint& g, long m0, long k, int eps, const PadicPoly& zpoly,
                     int prec) {
    CosetCase c;
    c.k = k;
    c.eps = eps;
    c.r_only = (k == 0 && eps == 0);
    c.precision = prec;
    CurvePoint base = c.r_only ? CurvePoint::at_infinity() : coset_base(e, g, k, eps);
    c.theta = coset_theta(e, base, c.r_only, zpoly, prec);
    if (try_exclusion(c)) return c;

    int known = 0;
    for (long n = -3; n <= 3; ++n) {
        if (!all_vanish(c, n, 0)) continue;
        if (c.r_only && n == 0) {
            known += 2;  // R = O: double root from the z^2 leading term
            continue;
        }
        CurvePoint p = scalar_mul(e, k + n * m0, g);
        if (eps != 0) p = add_points(e, p, torsion_point(e));
        if (condition_value(e, p)) {
            c.solutions.push_back({n});
            ++known;
        }
    }
    int best = INT_MAX;
    std::ostringstream os;
    for (int i = 1; i <= 3; ++i) {
        const PadicPoly& t = c.theta[static_cast<std::size_t>(i)];
        try {
            int b = strassman_bound(t);
            os << "theta" << i << ": bound " << b << "; ";
            best = std::min(best, b);
        } catch (const std::runtime_error&) {
            os << "theta" << i << ": precision insufficient; ";
        }
    }
    c.bound = best == INT_MAX ? -1 : best;
    os << "known roots " << known;
    c.certificate = os.str();
    if (best == known)
        c.verdict = c.solutions.empty() ? Verdict::StrassmanBounded : Verdict::SolutionFound;
    else if (best != INT_MAX && best < known)
        throw std::logic_error("Strassman bound below the number of known roots");
    else
        c.verdict = Verdict::Inconclusive;
    return c;
}

std::vector<long> pair_order(bool r_only) {
    // (a, b) index pairs into theta, preferred pair first.
    return r_only ? std::vector<long>{3, 1, 3, 2, 1, 2} : std::vector<long>{3, 2, 3, 1, 1, 2};
}

CosetCase rank2_case(const CurveInstance& e, const std::vector<CurvePoint>& basis, long k, int eps,
                     const PadicPoly& zpoly, int prec) {
    const CurvePoint& p2 = e.generators.at(1);
    CosetCase c;
    c.k = k;
    c.eps = eps;
    c.r_only = (k == 0 && eps == 0);
    c.precision = prec;
    CurvePoint base = c.r_only ? CurvePoint::at_infinity() : coset_base(e, p2, k, eps);
    c.theta = coset_theta(e, base, c.r_only, zpoly, prec);
    if (try_exclusion(c)) return c;

    std::vector<std::array<long, 2>> roots;
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b) {
            if (!all_vanish(c, a, b)) continue;
            if (c.r_only && a == 0 && b == 0) {
                roots.push_back({0, 0});
                continue;
            }
            CurvePoint p = add_points(e, base, add_points(e, scalar_mul(e, a, basis[0]), scalar_mul(e, b, basis[1])));
            if (condition_value(e, p)) {
                roots.push_back({a, b});
                c.solutions.push_back({a, b});
            }
        }
    if (roots.size() != 1) {
        c.verdict = Verdict::Inconclusive;
        c.certificate = std::to_string(roots.size()) + " known roots in the search box";
        return c;
    }
    const auto r = roots.front();
    auto order = pair_order(c.r_only);
    std::ostringstream os;
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
        PadicPoly ta = c.theta[static_cast<std::size_t>(order[i])].shift(r[0], r[1]);
        PadicPoly tb = c.theta[static_cast<std::size_t>(order[i + 1])].shift(r[0], r[1]);
        try {
            SkolemVerdict sv = skolem_check(make_skolem_system(ta, tb));
            os << "(theta" << order[i] << ", theta" << order[i + 1] << ") shifted by (" << r[0] << "," << r[1]
               << "): " << sv.detail;
            if (sv.unique) {
                c.skolem = sv;
                c.verdict = c.solutions.empty() ? Verdict::SkolemUnique : Verdict::SolutionFound;
                c.certificate = os.str();
                return c;
            }
            os << "; ";
        } catch (const std::runtime_error& err) {
            os << "(theta" << order[i] << ", theta" << order[i + 1] << "): " << err.what() << "; ";
        }
    }
    c.verdict = Verdict::Inconclusive;
    c.certificate = os.str();
    return c;
}

constexpr int kMaxPrecision = 11;

}  // namespace

DriverResult rank1_driver(const CurveInstance& e, int k) {
    if (e.rank != 1) throw std::invalid_argument("rank1_driver needs a rank-1 curve");
    if (!irreducible_mod3(e.field)) throw std::logic_error("defining polynomial reducible mod 3");
    const CurvePoint& g = e.generators.at(0);
    DriverResult res;
    res.curve_id = e.id;
    const long m0 = reduction_order(e, g);
    res.basis = {scalar_mul(e, m0, g)};
    res.basis_multipliers = {m0};
    std::map<int, PadicPoly> zpolys;
    auto zpoly = [&](int prec) -> const PadicPoly& {
        auto it = zpolys.find(prec);
        if (it == zpolys.end()) it = zpolys.emplace(prec, z_linear_combo(e, res.basis, prec)).first;
        return it->second;
    };
    res.complete = true;
    for (int eps = 0; eps <= 1; ++eps)
        for (long kk = 0; kk <= m0 / 2; ++kk) {
            CosetCase c;
            for (int prec = k; prec <= kMaxPrecision; prec += 2) {
                c = rank1_case(e, g, m0, kk, eps, zpoly(prec), prec);
                if (c.verdict != Verdict::Inconclusive) break;
            }
            if (c.verdict == Verdict::Inconclusive) res.complete = false;
            for (const auto& sol : c.solutions) {
                CurvePoint p = scalar_mul(e, kk + sol[0] * m0, g);
                if (eps != 0) p = add_points(e, p, torsion_point(e));
                add_unique(res.points, p);
                add_unique(res.points, negate(p));
            }
            res.cases.push_back(std::move(c));
        }
    return res;
}

DriverResult rank2_driver(const CurveInstance& e, int k) {
    if (e.rank != 2) throw std::invalid_argument("rank2_driver needs a rank-2 curve");
    if (!irreducible_mod3(e.field)) throw std::logic_error("defining polynomial reducible mod 3");
    const CurvePoint& p1 = e.generators.at(0);
    const CurvePoint& p2 = e.generators.at(1);
    DriverResult res;
    res.curve_id = e.id;
    const long m2 = reduction_order(e, p2);
    long j = -1;
    CurvePoint acc = p1;
    for (long t = 0; t < m2; ++t) {
        if (reduction_order(e, acc) == 1) {
            j = t;
            break;
        }
        acc = add_points(e, acc, p2);
    }
    if (j < 0) throw std::runtime_error("reduction of P1 is not a multiple of the reduction of P2");
    res.basis = {acc, scalar_mul(e, m2, p2)};
    res.basis_multipliers = {j, m2};
    std::map<int, PadicPoly> zpolys;
    auto zpoly = [&](int prec) -> const PadicPoly& {
        auto it = zpolys.find(prec);
        if (it == zpolys.end()) it = zpolys.emplace(prec, z_linear_combo(e, res.basis, prec)).first;
        return it->second;
    };
    res.complete = true;
    for (int eps = 0; eps <= 1; ++eps)
        for (long kk = 0; kk <= m2 / 2; ++kk) {
            CosetCase c;
            for (int prec = k; prec <= kMaxPrecision; prec += 2) {
                c = rank2_case(e, res.basis, kk, eps, zpoly(prec), prec);
                if (c.verdict != Verdict::Inconclusive) break;
            }
            if (c.verdict == Verdict::Inconclusive) res.complete = false;
            for (const auto& sol : c.solutions) {
                CurvePoint p = scalar_mul(e, kk, p2);
                if (eps != 0) p = add_points(e, p, torsion_point(e));
                p = add_points(e, p, add_points(e, scalar_mul(e, sol[0], res.basis[0]), scalar_mul(e, sol[1], res.basis[1])));
                add_unique(res.points, p);
                add_unique(res.points, negate(p));
            }
            res.cases.push_back(std::move(c));
        }
    return res;
}

}  // namespace lucas8
