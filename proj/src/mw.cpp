#include "lucas8/mw.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace lucas8 {

namespace {

using cd = std::complex<double>;
using KPoly = std::vector<FieldElement>;  // low to high

// ---- polynomials over K or Q ----

bool is_nil(const FieldElement& x) { return x.is_zero(); }
bool is_nil(const Rat& x) { return x == 0; }
FieldElement inverse(const FieldElement& x) { return x.inv(); }
Rat inverse(const Rat& x) { return 1 / x; }
FieldElement zero_like(const FieldElement& x) { return FieldElement(x.field(), Rat(0)); }
Rat zero_like(const Rat&) { return Rat(0); }

template <class T>
void trim(std::vector<T>& p) {
    while (!p.empty() && is_nil(p.back())) p.pop_back();
}

template <class T>
std::vector<T> derivative(const std::vector<T>& p) {
    std::vector<T> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rat(static_cast<long>(i)) * p[i]);
    trim(d);
    return d;
}

// Remainder and quotient of a by b (b nonzero).
template <class T>
std::vector<T> divmod(std::vector<T> a, const std::vector<T>& b, std::vector<T>* quot) {
    trim(a);
    const T lead_inv = inverse(b.back());
    std::vector<T> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, zero_like(b.back()));
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const T c = a.back() * lead_inv;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        a.pop_back();
        trim(a);
    }
    if (quot) *quot = q;
    return a;
}

template <class T>
std::vector<T> monic(std::vector<T> p) {
    const T inv = inverse(p.back());
    for (auto& c : p) c = c * inv;
    return p;
}

template <class T>
std::vector<T> poly_gcd(std::vector<T> a, std::vector<T> b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        std::vector<T> r = divmod(a, b, static_cast<std::vector<T>*>(nullptr));
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

template <class T>
std::vector<T> squarefree_part(const std::vector<T>& p) {
    const std::vector<T> d = derivative(p);
    if (d.empty()) return monic(p);
    const std::vector<T> g = poly_gcd(p, d);
    if (g.size() <= 1) return monic(p);
    std::vector<T> q;
    divmod(p, g, &q);
    return monic(q);
}

FieldElement eval(const KPoly& p, const FieldElement& x) {
    FieldElement r(x.field(), Rat(0));
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

bool all_rational(const KPoly& p, long max_den) {
    for (const auto& c : p) {
        if (!c.is_rational()) return false;
        if (c[0].get_den() > max_den) return false;
    }
    return true;
}

// ---- residue fields ----

std::optional<long> reduce_mod(const FieldElement& x, const ResidueField& r) {
    long acc = 0, pw = 1;
    for (std::size_t i = 0; i < 4; ++i) {
        const Rat& c = x[i];
        if (c != 0) {
            if (mpz_divisible_ui_p(c.get_den_mpz_t(), static_cast<unsigned long>(r.p))) return std::nullopt;
            const long v = rat_mod(c, Int(r.p)).get_si();
            acc = (acc + v * pw) % r.p;
        }
        pw = pw * r.root % r.p;
    }
    return acc;
}

bool has_root_mod(const std::vector<long>& c, long p) {
    for (long x = 0; x < p; ++x) {
        long v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
        if (v == 0) return true;
    }
    return false;
}

// ---- numeric reconstruction ----

// Best rational approximation with denominator <= maxden (continued fractions).
Rat best_approx(const Rat& v, const Int& maxden) {
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rat x = v;
    for (int it = 0; it < 400; ++it) {
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
        const Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > maxden) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const Rat frac = x - Rat(a);
        if (frac == 0) break;
        x = 1 / frac;
    }
    return make_rat(p1, q1);
}


// Best approximation in double arithmetic; false when no fraction with den <= maxden is within tol.
bool approx_double(double v, long maxden, double tol, long& num, long& den) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(x);
        if (std::abs(a) > 1e15) break;
        const long ai = static_cast<long>(a);
        const long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > maxden) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = x - a;
        if (frac < 1e-300) break;
        x = 1 / frac;
    }
    if (q1 == 0) return false;
    num = p1;
    den = q1;
    return std::abs(v - static_cast<double>(p1) / static_cast<double>(q1)) <= tol;
}

template <class C>
struct Ops;

template <>
struct Ops<cd> {
    static double re(const cd& z) { return z.real(); }
    static double im(const cd& z) { return z.imag(); }
    static double mag(const cd& z) { return std::abs(z); }
    static cd conj(const cd& z) { return std::conj(z); }
    static cd real_of(const cd& z) { return cd(z.real(), 0); }
    static std::array<cd, 4> gens(FieldId f) { return generator_embeddings_d(f); }
    static std::array<cd, 4> emb(const FieldElement& x, unsigned) { return embeddings_d(x); }
};

template <>
struct Ops<Cplx> {
    static double re(const Cplx& z) { return z.re.convert_to<double>(); }
    static double im(const Cplx& z) { return z.im.convert_to<double>(); }
    static double mag(const Cplx& z) { return z.abs().convert_to<double>(); }
    static Cplx conj(const Cplx& z) { return z.conj(); }
    static Cplx real_of(const Cplx& z) { return Cplx(z.re); }
    static std::array<Cplx, 4> gens(FieldId f) { return generator_embeddings(f); }
    static std::array<Cplx, 4> emb(const FieldElement& x, unsigned d) { return embeddings(x, d); }
};

template <class C>
std::array<std::array<C, 4>, 4> vandermonde_inverse(FieldId f) {
    const auto a = Ops<C>::gens(f);
    std::array<std::array<C, 8>, 4> m;
    for (std::size_t k = 0; k < 4; ++k) {
        C pw(1);
        for (std::size_t j = 0; j < 4; ++j) {
            m[k][j] = pw;
            pw = pw * a[k];
            m[k][4 + j] = C(k == j ? 1 : 0);
        }
    }
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (Ops<C>::mag(m[r][col]) > Ops<C>::mag(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        const C inv = C(1) / m[col][col];
        for (auto& v : m[col]) v = v * inv;
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col) continue;
            const C factor = m[r][col];
            for (std::size_t j = 0; j < 8; ++j) m[r][j] = m[r][j] - factor * m[col][j];
        }
    }
    std::array<std::array<C, 4>, 4> inv;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) inv[i][j] = m[i][4 + j];
    return inv;
}

const std::array<std::array<cd, 4>, 4>& vinv_d(FieldId f) {
    static const auto k1 = vandermonde_inverse<cd>(FieldId::K1);
    static const auto k2 = vandermonde_inverse<cd>(FieldId::K2);
    return f == FieldId::K1 ? k1 : k2;
}

struct NumericOutcome {
    std::vector<FieldElement> roots;
    bool ambiguous = false;
};

void add_root(NumericOutcome& out, const KPoly& p, const FieldElement& x) {
    if (std::find(out.roots.begin(), out.roots.end(), x) != out.roots.end()) return;
    if (eval(p, x).is_zero()) out.roots.push_back(x);
}

// Embedding vectors (s_0 real, s_1 real, s_2, conj s_2) built from roots at each place.
template <class C>
std::vector<std::array<C, 4>> matchings(const std::array<std::vector<C>, 3>& rts) {
    std::vector<std::array<C, 4>> out;
    for (const auto& r0 : rts[0]) {
        if (std::abs(Ops<C>::im(r0)) > 1e-6 * std::max(1.0, Ops<C>::mag(r0))) continue;
        for (const auto& r1 : rts[1]) {
            if (std::abs(Ops<C>::im(r1)) > 1e-6 * std::max(1.0, Ops<C>::mag(r1))) continue;
            for (const auto& r2 : rts[2])
                out.push_back({Ops<C>::real_of(r0), Ops<C>::real_of(r1), r2, Ops<C>::conj(r2)});
        }
    }
    return out;
}

NumericOutcome numeric_roots_d(FieldId f, const KPoly& p) {
    constexpr long kMaxDen = 4096;
    NumericOutcome out;
    std::array<std::vector<cd>, 3> rts;
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<cd> c;
        for (const auto& coeff : p) c.push_back(embeddings_d(coeff)[k]);
        rts[k] = poly_roots(c);
    }
    const auto& vinv = vinv_d(f);
    for (const auto& s : matchings(rts)) {
        std::array<Rat, 4> coords;
        bool ok = true;
        int near = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            cd v(0);
            for (std::size_t k = 0; k < 4; ++k) v += vinv[j][k] * s[k];
            const double scale = std::max(1.0, std::abs(v));
            if (std::abs(v.imag()) > 1e-6 * scale) {
                ok = false;
                break;
            }
            long num = 0, den = 1;
            if (approx_double(v.real(), kMaxDen, 1e-8 * scale, num, den)) {
                coords[j] = make_rat(Int(num), Int(den));
                ++near;
            } else {
                ok = false;
                if (approx_double(v.real(), 64, 1e-6 * scale, num, den)) ++near;
                else break;
            }
        }
        if (ok) add_root(out, p, FieldElement(f, coords));
        else if (near == 4) out.ambiguous = true;
    }
    return out;
}

NumericOutcome numeric_roots_mp(FieldId f, const KPoly& p, unsigned digits) {
    PrecisionScope scope(digits + 10);
    NumericOutcome out;
    std::array<std::vector<Cplx>, 3> rts;
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<Cplx> c;
        for (const auto& coeff : p) c.push_back(embeddings(coeff, digits + 10)[k]);
        rts[k] = poly_roots(c);
    }
    const auto vinv = vandermonde_inverse<Cplx>(f);
    Int maxden;
    mpz_ui_pow_ui(maxden.get_mpz_t(), 10, digits / 3);
    const Real tol = pow(Real(10), -static_cast<int>(2 * digits / 3));
    for (const auto& s : matchings(rts)) {
        std::array<Rat, 4> coords;
        bool ok = true;
        for (std::size_t j = 0; j < 4 && ok; ++j) {
            Cplx v;
            for (std::size_t k = 0; k < 4; ++k) v = v + vinv[j][k] * s[k];
            const Real scale = max(Real(1), v.abs());
            if (abs(v.im) > tol * scale * Real(1e6)) {
                ok = false;
                break;
            }
            Rat exact;
            mpfr_get_q(exact.get_mpq_t(), v.re.backend().data());
            const Rat q = best_approx(exact, maxden);
            Real err;
            const Rat diff = exact - q;
            mpfr_set_q(err.backend().data(), diff.get_mpq_t(), MPFR_RNDN);
            if (abs(err) > tol * scale) {
                ok = false;
                if (abs(err) < tol * scale * Real(1e4)) out.ambiguous = true;
            }
            coords[j] = q;
        }
        if (ok) add_root(out, p, FieldElement(f, coords));
    }
    return out;
}

std::vector<long> odd_primes(long limit) {
    std::vector<long> out;
    for (long n = 3; n <= limit; n += 2) {
        bool prime = true;
        for (long d = 3; d * d <= n; d += 2)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(n);
    }
    return out;
}

const std::vector<long>& filter_primes(FieldId f) {
    static std::mutex mu;
    static std::map<FieldId, std::vector<long>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    std::vector<long> ps;
    for (const auto& r : residue_fields(f))
        if (ps.empty() || ps.back() != r.p) ps.push_back(r.p);
    return cache.emplace(f, ps).first->second;
}

bool prefilter(FieldId f, const KPoly& p) {
    for (const auto& rf : residue_fields(f)) {
        std::vector<long> c;
        bool usable = true;
        for (const auto& coeff : p) {
            const auto v = reduce_mod(coeff, rf);
            if (!v) {
                usable = false;
                break;
            }
            c.push_back(*v);
        }
        if (!usable || c.back() == 0) continue;
        if (!has_root_mod(c, rf.p)) return false;
    }
    return true;
}

std::string term(long k, const std::string& name, bool first) {
    std::string s;
    if (k < 0) s = "-";
    else if (!first) s = "+";
    if (std::abs(k) != 1) s += std::to_string(std::abs(k));
    return s + name;
}

struct Known {
    CurvePoint point;
    std::vector<long> k;
    int eps;
};

std::vector<Known> known_points(const CurveInstance& e) {
    const long span = e.rank == 1 ? 8 : 4;
    std::vector<Known> out;
    std::vector<long> k(e.generators.size(), -span);
    while (true) {
        for (int eps = 0; eps <= 1; ++eps) out.push_back({combination(e, k, eps), k, eps});
        std::size_t i = k.size();
        while (i > 0 && k[i - 1] == span) k[--i] = -span;
        if (i == 0) break;
        ++k[i - 1];
    }
    return out;
}

bool lex_less(const Survivor& a, const Survivor& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.torsion < b.torsion;
}

struct TupleHit {
    std::size_t shape;
    std::vector<long> c;
    std::vector<FieldElement> roots;
};

// Values of coordinate i of a shape: |c| <= max_abs, c = residue mod modulus.
std::vector<long> coordinate_values(const CandidateShape& s, std::size_t i) {
    std::vector<long> v;
    for (long c = -s.max_abs[i]; c <= s.max_abs[i]; ++c) {
        const long m = s.modulus[i];
        if (((c % m) + m) % m == s.residue[i] % m) v.push_back(c);
    }
    return v;
}

// passes_residue_filter specialised to one shape, in machine integers.
class ShapeFilter {
public:
    ShapeFilter(FieldId f, const CandidateShape& s) : degree_(static_cast<std::size_t>(s.degree)) {
        for (long p : filter_primes(f)) {
            std::vector<long> sc;
            for (const auto& q : s.scale) sc.push_back(rat_mod(q, Int(p)).get_si());
            primes_.push_back(p);
            scale_.push_back(std::move(sc));
        }
    }

    bool passes(const std::vector<long>& c) const {
        std::vector<long> poly(degree_ + 1);
        for (std::size_t k = 0; k < primes_.size(); ++k) {
            const long p = primes_[k];
            poly[degree_] = 1;
            for (std::size_t i = 0; i < c.size(); ++i)
                poly[degree_ - 1 - i] = ((c[i] % p + p) % p) * scale_[k][i] % p;
            if (!has_root_mod(poly, p)) return false;
        }
        return true;
    }

private:
    std::size_t degree_;
    std::vector<long> primes_;
    std::vector<std::vector<long>> scale_;
};

void run_chain(const CurveInstance& e, BoundChain& chain, int workers) {
    struct Slice {
        std::uint64_t polys = 0, filtered = 0;
        std::vector<TupleHit> hits;
    };
    std::vector<std::vector<std::vector<long>>> values;
    std::vector<std::uint64_t> sizes;
    std::uint64_t total = 0;
    for (const auto& s : chain.shapes) {
        std::vector<std::vector<long>> vs;
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < s.max_abs.size(); ++i) {
            vs.push_back(coordinate_values(s, i));
            n *= vs.back().size();
        }
        values.push_back(vs);
        sizes.push_back(n);
        total += n;
    }
    std::vector<ShapeFilter> filters;
    for (const auto& s : chain.shapes) filters.emplace_back(e.field, s);
    workers = std::max(1, workers);
    std::vector<Slice> slices(static_cast<std::size_t>(workers));
    auto work = [&](std::size_t w) {
        Slice& sl = slices[w];
        const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
        std::uint64_t base = 0;
        for (std::size_t si = 0; si < chain.shapes.size(); ++si) {
            const std::uint64_t a = std::max(lo, base), b = std::min(hi, base + sizes[si]);
            for (std::uint64_t idx = a; idx < b; ++idx) {
                std::uint64_t r = idx - base;
                std::vector<long> c(values[si].size());
                for (std::size_t i = c.size(); i-- > 0;) {
                    c[i] = values[si][i][r % values[si][i].size()];
                    r /= values[si][i].size();
                }
                ++sl.polys;
                if (!filters[si].passes(c)) continue;
                ++sl.filtered;
                const auto poly = chain.shapes[si].polynomial(c);
                auto roots = roots_in_field(e.field, poly);
                if (!roots.empty()) sl.hits.push_back({si, c, std::move(roots)});
            }
            base += sizes[si];
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> th;
        for (std::size_t w = 0; w < slices.size(); ++w) th.emplace_back(work, w);
        for (auto& t : th) t.join();
    }

    std::vector<FieldElement> xs;
    for (const auto& sl : slices) {
        chain.polynomials += sl.polys;
        chain.filtered += sl.filtered;
        for (const auto& h : sl.hits)
            for (const auto& x : h.roots)
                if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    chain.roots = xs.size();

    const auto known = known_points(e);
    for (const auto& x : xs) {
        const auto pt = lift_x_to_point(e, x);
        if (!pt) continue;
        if (pt->Y.is_zero()) {
            chain.torsion_found.push_back(*pt);
            continue;
        }
        for (const auto& q : {*pt, negate(*pt)}) {
            Survivor s;
            s.point = q;
            auto it = std::find_if(known.begin(), known.end(), [&](const Known& kn) { return kn.point == q; });
            if (it != known.end()) {
                s.coeffs = it->k;
                s.torsion = it->eps;
                s.explained = true;
                s.expression = combination_name(e, it->k, it->eps);
            } else {
                s.expression = "(" + q.X.str() + ", " + q.Y.str() + ")";
            }
            chain.survivors.push_back(s);
        }
    }
    std::stable_sort(chain.survivors.begin(), chain.survivors.end(), lex_less);
}

}  // namespace

std::uint64_t CandidateShape::count() const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < max_abs.size(); ++i) n *= coordinate_values(*this, i).size();
    return n;
}

std::vector<Rat> CandidateShape::polynomial(const std::vector<long>& c) const {
    std::vector<Rat> p(static_cast<std::size_t>(degree) + 1);
    p[static_cast<std::size_t>(degree)] = 1;
    for (std::size_t i = 0; i < c.size(); ++i) p[static_cast<std::size_t>(degree) - 1 - i] = scale[i] * c[i];
    return p;
}

long strict_floor(double v) { return static_cast<long>(std::ceil(v)) - 1; }

std::vector<CandidateShape> candidate_shapes(const CurveInstance& e, double B) {
    auto make = [&](std::string label, std::vector<Rat> scale, std::vector<Rat> factor, std::vector<long> modulus,
                    std::vector<long> residue) {
        CandidateShape s;
        s.label = std::move(label);
        s.degree = static_cast<int>(scale.size());
        s.scale = std::move(scale);
        s.factor = std::move(factor);
        s.modulus = std::move(modulus);
        s.residue = std::move(residue);
        for (std::size_t i = 0; i < s.factor.size(); ++i)
            s.max_abs.push_back(strict_floor(s.factor[i].get_d() * std::pow(B, static_cast<double>(i + 1))));
        return s;
    };
    std::vector<CandidateShape> out;
    out.push_back(make("quartic", {4, 2, 4, 1}, {1, 3, 1, 1}, {1, 1, 1, 1}, {0, 0, 0, 0}));
    out.push_back(make("quadratic", {2, 1}, {1, 1}, {1, 1}, {0, 0}));
    out.push_back(make("linear", {1}, {1}, {1}, {0}));
    if (e.field == FieldId::K1) {
        out.push_back(make("quartic/(1+theta)^2", {4, 1, 2, Rat(1, 4)}, {1, 6, 2, 4}, {1, 2, 1, 2}, {0, 1, 0, 1}));
        out.push_back(make("quadratic/(1+theta)^2", {2, Rat(1, 4)}, {1, 4}, {1, 4}, {0, 3}));
    }
    return out;
}

void enumerate_candidates(const std::vector<CandidateShape>& shapes,
                          const std::function<void(std::size_t, const std::vector<long>&)>& visit) {
    for (std::size_t si = 0; si < shapes.size(); ++si) {
        std::vector<std::vector<long>> vs;
        for (std::size_t i = 0; i < shapes[si].max_abs.size(); ++i) vs.push_back(coordinate_values(shapes[si], i));
        if (std::any_of(vs.begin(), vs.end(), [](const auto& v) { return v.empty(); })) continue;
        std::vector<std::size_t> idx(vs.size(), 0);
        std::vector<long> c(vs.size());
        while (true) {
            for (std::size_t i = 0; i < vs.size(); ++i) c[i] = vs[i][idx[i]];
            visit(si, c);
            std::size_t i = vs.size();
            while (i > 0 && idx[i - 1] + 1 == vs[i - 1].size()) idx[--i] = 0;
            if (i == 0) break;
            ++idx[i - 1];
        }
    }
}

const std::vector<ResidueField>& residue_fields(FieldId f) {
    static std::mutex mu;
    static std::map<FieldId, std::vector<ResidueField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
    const auto& def = descriptor(f).defining;
    std::vector<ResidueField> out;
    for (long p : odd_primes(400)) {
        std::vector<long> c, d;
        for (const auto& q : def) c.push_back(rat_mod(q, Int(p)).get_si());
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<long>(i) * c[i] % p);
        for (long r = 0; r < p; ++r) {
            long v = 0, dv = 0;
            for (std::size_t i = c.size(); i-- > 0;) v = (v * r + c[i]) % p;
            for (std::size_t i = d.size(); i-- > 0;) dv = (dv * r + d[i]) % p;
            if (v == 0 && dv != 0) out.push_back({p, r});
        }
        if (out.size() >= 24) break;
    }
    return cache.emplace(f, out).first->second;
}

bool passes_residue_filter(FieldId f, const std::vector<Rat>& coeffs) {
    for (long p : filter_primes(f)) {
        std::vector<long> c;
        bool usable = true;
        for (const auto& q : coeffs) {
            if (mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p))) {
                usable = false;
                break;
            }
            c.push_back(rat_mod(q, Int(p)).get_si());
        }
        if (!usable || c.back() == 0) continue;
        if (!has_root_mod(c, p)) return false;
    }
    return true;
}

namespace {

// p squarefree, monic, degree >= 2.
std::vector<FieldElement> numeric_search(FieldId f, const KPoly& p, RootSearchStats* stats) {
    const std::size_t degree = p.size() - 1;
    NumericOutcome out = numeric_roots_d(f, p);
    if (out.roots.size() == degree) return out.roots;
    if (all_rational(p, 64) && !out.ambiguous) return out.roots;
    for (unsigned digits : {30u, 60u}) {
        if (stats) stats->precision_digits = static_cast<int>(digits);
        const NumericOutcome mp = numeric_roots_mp(f, p, digits);
        for (const auto& x : mp.roots) add_root(out, p, x);
        if (out.roots.size() == degree) break;
    }
    return out.roots;
}

}  // namespace

std::vector<FieldElement> roots_in_field(FieldId f, const std::vector<FieldElement>& coeffs, RootSearchStats* stats) {
    KPoly p = coeffs;
    trim(p);
    if (stats) *stats = {};
    if (p.size() < 2) return {};
    if (p.size() == 2) return {-(p[0] / p[1])};
    if (!prefilter(f, p)) {
        if (stats) stats->prefiltered = true;
        return {};
    }
    p = squarefree_part(p);
    if (p.size() == 2) return {-p[0]};
    return numeric_search(f, p, stats);
}

std::vector<FieldElement> roots_in_field(FieldId f, const std::vector<Rat>& coeffs, RootSearchStats* stats) {
    std::vector<Rat> q = coeffs;
    trim(q);
    if (stats) *stats = {};
    if (q.size() < 2) return {};
    if (q.size() == 2) return {FieldElement(f, -(q[0] / q[1]))};
    if (!passes_residue_filter(f, q)) {
        if (stats) stats->prefiltered = true;
        return {};
    }
    q = squarefree_part(q);
    if (q.size() == 2) return {FieldElement(f, -q[0])};
    KPoly p;
    for (const auto& c : q) p.emplace_back(f, c);
    return numeric_search(f, p, stats);
}

std::optional<FieldElement> field_sqrt(const FieldElement& r) {
    if (r.is_zero()) return r;
    const FieldId f = r.field();
    const auto emb = embeddings_d(r);
    if (emb[0].real() < 0 && std::abs(emb[0].real()) > 1e-9 * std::max(1.0, std::abs(emb[0]))) return std::nullopt;
    if (emb[1].real() < 0 && std::abs(emb[1].real()) > 1e-9 * std::max(1.0, std::abs(emb[1]))) return std::nullopt;
    const auto roots = roots_in_field(f, KPoly{-r, FieldElement(f, Rat(0)), FieldElement(f, Rat(1))});
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

std::optional<CurvePoint> lift_x_to_point(const CurveInstance& e, const FieldElement& x) {
    const FieldElement r = x * (x * x + e.A * x + e.B);
    const auto y = field_sqrt(r);
    if (!y) return std::nullopt;
    CurvePoint p{x, *y, false};
    if (!on_curve(e, p)) return std::nullopt;
    return p;
}

std::vector<CurvePoint> halving_candidates(const CurveInstance& e, const CurvePoint& g) {
    if (g.infinity) throw std::invalid_argument("halving_candidates: point at infinity");
    const FieldId f = e.field;
    const FieldElement& x0 = g.X;
    // (x^2 - B)^2 - 4 x0 x (x^2 + A x + B) = 0
    const KPoly quartic{e.B * e.B, -(Rat(4) * e.B * x0), -(Rat(2) * e.B + Rat(4) * e.A * x0), -(Rat(4) * x0),
                        FieldElement(f, Rat(1))};
    std::vector<CurvePoint> out;
    for (const auto& x : roots_in_field(f, quartic)) {
        const auto r = lift_x_to_point(e, x);
        if (!r) continue;
        for (const auto& q : {*r, negate(*r)})
            if (add_points(e, q, q) == g && std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    return out;
}

std::string combination_name(const CurveInstance& e, const std::vector<long>& k, int eps) {
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i] != 0) s += term(k[i], e.generator_names.at(i), s.empty());
    if (eps) s += s.empty() ? "T" : "+T";
    return s.empty() ? "O" : s;
}

std::vector<double> published_height_caps(const std::string& id) {
    static const std::map<std::string, std::vector<double>> caps{
        {"E1", {1.84815}}, {"E2", {1.70523}}, {"E3", {2.82175}}, {"E4", {2.82175}},
        {"E5", {1.83892}}, {"E6", {2.51872}}, {"E7", {2.99081}}, {"E8", {3.21491}},
        {"E9", {1.74871}}, {"E10", {2.12383, 2.23048}}, {"E11", {3.16847}}, {"E12", {3.43753}},
    };
    auto it = caps.find(id);
    return it == caps.end() ? std::vector<double>{} : it->second;
}

HeightCertificate certify_generators(const CurveInstance& e, const CertifyOptions& opt) {
    if (e.rank < 1 || e.generators.empty()) throw std::invalid_argument("certify_generators: no generators for " + e.id);
    HeightCertificate cert;
    cert.curve_id = e.id;
    cert.height_tol = opt.height_tol;
    cert.bound = height_diff_bound(e, opt.digits);
    for (const auto& g : e.generators) cert.generator_heights.push_back(canonical_height(e, g, opt.height_tol).value);
    const Real tol(opt.height_tol);
    const CurvePoint T = torsion_point(e);

    // 2-saturation: no odd class of the subgroup spanned by the generators and T is a double.
    std::vector<std::pair<std::vector<long>, int>> classes;
    if (e.rank == 1) {
        classes = {{{1}, 0}, {{1}, 1}};
    } else {
        for (int mask = 1; mask < 8; ++mask)
            classes.push_back({{mask & 1, (mask >> 1) & 1}, (mask >> 2) & 1});
    }
    for (const auto& [k, eps] : classes) {
        HalvingCheck h;
        h.expression = combination_name(e, k, eps);
        h.halves = halving_candidates(e, combination(e, k, eps));
        cert.halving.push_back(std::move(h));
    }

    std::vector<std::pair<std::string, Real>> bounds;
    const Real h1 = cert.generator_heights[0];
    if (e.rank == 1) {
        bounds.push_back({e.generator_names[0] + "=mQ, m>=3", (h1 + tol) / 9});
    } else {
        const Real h2 = cert.generator_heights[1];
        cert.pairing = height_pairing(e, e.generators[0], e.generators[1], opt.height_tol);
        bounds.push_back({e.generator_names[0] + "=mQ, m>=3", (h1 + tol) / 9});
        bounds.push_back({"second generator", (h1 + tol) / 4 + (abs(*cert.pairing) + 3 * tol) / 6 + (h2 + tol) / 9});
    }
    const auto published = published_height_caps(e.id);
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        BoundChain chain;
        chain.label = bounds[i].first;
        chain.hhat_bound = bounds[i].second;
        chain.hcap = cert.bound.C + 2 * chain.hhat_bound;
        chain.B = exp(chain.hcap);
        if (i < published.size()) chain.published_B = published[i];
        const double B = opt.published_caps && chain.published_B ? *chain.published_B : chain.B.convert_to<double>();
        chain.shapes = candidate_shapes(e, B);
        run_chain(e, chain, opt.workers);
        cert.chains.push_back(std::move(chain));
    }

    for (const auto& h : cert.halving)
        if (!h.halves.empty() && cert.failure.empty())
            cert.failure = "certification failed: " + h.expression + " is divisible by 2";
    for (const auto& chain : cert.chains)
        for (const auto& s : chain.survivors)
            if (!s.explained && cert.failure.empty())
                cert.failure = "certification failed: unexplained point " + s.expression;
    cert.conclusion = cert.failure.empty();
    return cert;
}

}  // namespace lucas8
