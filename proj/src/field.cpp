#include "lucas8/field.hpp"

#include <sstream>
#include <stdexcept>

namespace lucas8 {

namespace {

FieldId merge(FieldId a, FieldId b) {
    if (a == FieldId::None) return b;
    if (b == FieldId::None || a == b) return a;
    throw std::invalid_argument("field mismatch");
}

const std::array<Rat, 5>& defining(FieldId f) {
    static const std::array<Rat, 5> k1{Rat(-1), Rat(0), Rat(2), Rat(0), Rat(1)};
    static const std::array<Rat, 5> k2{Rat(-4), Rat(0), Rat(4), Rat(0), Rat(1)};
    if (f == FieldId::K1) return k1;
    if (f == FieldId::K2) return k2;
    throw std::invalid_argument("operation needs a concrete field");
}

}  // namespace

const char* to_string(FieldId id) {
    switch (id) {
        case FieldId::K1: return "K1";
        case FieldId::K2: return "K2";
        default: return "none";
    }
}

FieldId field_from_string(const std::string& s) {
    if (s == "K1") return FieldId::K1;
    if (s == "K2") return FieldId::K2;
    throw std::invalid_argument("unknown field " + s);
}

FieldElement::FieldElement(FieldId f, std::array<Rat, 4> c) : field_(f), c_(std::move(c)) {
    for (auto& x : c_) x.canonicalize();
}
FieldElement::FieldElement(FieldId f, const Rat& r) : field_(f), c_{r, Rat(0), Rat(0), Rat(0)} {
    c_[0].canonicalize();
}

FieldElement FieldElement::generator(FieldId f) { return FieldElement(f, {Rat(0), Rat(1), Rat(0), Rat(0)}); }

FieldElement fe(FieldId f, const Rat& c0, const Rat& c1, const Rat& c2, const Rat& c3) {
    return FieldElement(f, {c0, c1, c2, c3});
}

bool FieldElement::is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
bool FieldElement::is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    FieldElement r;
    r.field_ = merge(a.field_, b.field_);
    for (std::size_t i = 0; i < 4; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    FieldElement r;
    r.field_ = merge(a.field_, b.field_);
    for (std::size_t i = 0; i < 4; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

FieldElement operator-(const FieldElement& a) {
    FieldElement r = a;
    for (auto& v : r.c_) v = -v;
    return r;
}

FieldElement operator*(const Rat& s, const FieldElement& a) {
    FieldElement r = a;
    for (auto& v : r.c_) v *= s;
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const FieldId f = merge(a.field_, b.field_);
    if (f == FieldId::None) {
        // Both are untyped; only the constant coordinate can be meaningful.
        if (!a.is_rational() || !b.is_rational()) throw std::invalid_argument("untyped field element");
        return FieldElement(FieldId::None, a.c_[0] * b.c_[0]);
    }
    std::array<Rat, 7> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < 4; ++j) t[i + j] += a.c_[i] * b.c_[j];
    }
    const auto& d = defining(f);
    for (std::size_t k = 6; k >= 4; --k) {
        if (t[k] == 0) continue;
        Rat top = t[k];
        t[k] = 0;
        for (std::size_t i = 0; i < 4; ++i) t[k - 4 + i] -= top * d[i];
    }
    return FieldElement(f, {t[0], t[1], t[2], t[3]});
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.field_ != FieldId::None && b.field_ != FieldId::None && a.field_ != b.field_) return false;
    return a.c_ == b.c_;
}

std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (field_ == FieldId::None) return FieldElement(FieldId::None, Rat(1) / c_[0]);
    // Columns are x * a^j.
    std::vector<std::vector<Rat>> m(4, std::vector<Rat>(4));
    FieldElement basis = FieldElement(field_, Rat(1));
    const FieldElement alpha = generator(field_);
    for (std::size_t j = 0; j < 4; ++j) {
        FieldElement col = *this * basis;
        for (std::size_t i = 0; i < 4; ++i) m[i][j] = col.c_[i];
        basis = basis * alpha;
    }
    auto z = solve_rational(m, {Rat(1), Rat(0), Rat(0), Rat(0)});
    return FieldElement(field_, {z[0], z[1], z[2], z[3]});
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FieldElement base = *this;
    FieldElement acc(field_, Rat(1));
    while (e > 0) {
        if ((e & 1L) != 0) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::string FieldElement::str() const {
    const std::string g = field_ == FieldId::K1 ? "t" : (field_ == FieldId::K2 ? "f" : "a");
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < 4; ++i) {
        if (c_[i] == 0) continue;
        Rat v = c_[i];
        if (!first) os << (sgn(v) < 0 ? " - " : " + ");
        else if (sgn(v) < 0) os << "-";
        first = false;
        Rat av = abs(v);
        if (i == 0 || av != 1) os << to_string(av);
        if (i > 0) {
            if (av != 1) os << "*";
            os << g;
            if (i > 1) os << "^" << i;
        }
    }
    return first ? "0" : os.str();
}

const FieldDescriptor& descriptor(FieldId id) {
    static const FieldDescriptor k1 = [] {
        const FieldId f = FieldId::K1;
        FieldDescriptor d{f, "K1", "theta", defining(f), {}, {}, {}, 0.6435942529055826};
        d.order_basis = {fe(f, 1), fe(f, 0, 1), fe(f, 0, 0, 1), fe(f, 0, 0, 0, 1)};
        d.units = {{"eta1", fe(f, 0, 1)}, {"eta2", fe(f, 2, -3, 1, -1)}};
        d.prime_above_2 = {"1+theta", fe(f, 1, 1)};
        return d;
    }();
    static const FieldDescriptor k2 = [] {
        const FieldId f = FieldId::K2;
        FieldDescriptor d{f, "K2", "phi", defining(f), {}, {}, {}, 0.9101797211244547};
        d.order_basis = {fe(f, 1), fe(f, 0, 1), fe(f, 0, 0, Rat(1, 2)), fe(f, 0, Rat(1, 2), 0, Rat(1, 4))};
        d.units = {{"eps1", fe(f, 0, Rat(1, 2), 0, Rat(1, 4))}, {"eps2", fe(f, 2, 2, Rat(1, 2), Rat(1, 2))}};
        d.prime_above_2 = {"pi", fe(f, 1, Rat(3, 2), 0, Rat(1, 4))};
        return d;
    }();
    if (id == FieldId::K1) return k1;
    if (id == FieldId::K2) return k2;
    throw std::invalid_argument("no descriptor for untyped field");
}

Rat norm(const FieldElement& x) {
    const auto& d = defining(x.field());
    QPoly f = upoly({d[0], d[1], d[2], d[3], d[4]});
    QPoly c = upoly({x[0], x[1], x[2], x[3]});
    if (c.is_zero()) return Rat(0);
    return resultant(f, c, 0).coeff({0, 0});
}

Rat trace(const FieldElement& x) {
    // Power sums of the roots: p0=4, p1=0, p2=-2*d2, p3=0.
    const auto& d = defining(x.field());
    return 4 * x[0] + x[2] * (-2 * d[2]);
}

QPoly charpoly(const FieldElement& x) {
    // Res_y(f(y), X - c(y)) with X the first variable, y the second.
    const auto& d = defining(x.field());
    QPoly f(2), g(2);
    for (int i = 0; i <= 4; ++i) f.add_term({0, i}, d[static_cast<std::size_t>(i)]);
    g.add_term({1, 0}, Rat(1));
    for (int i = 0; i < 4; ++i) g.add_term({0, i}, -x[static_cast<std::size_t>(i)]);
    return resultant(f, g, 1);
}

std::array<Rat, 4> order_coordinates(const FieldElement& x) {
    const auto& d = descriptor(x.field());
    std::vector<std::vector<Rat>> m(4, std::vector<Rat>(4));
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) m[i][j] = d.order_basis[j][i];
    auto z = solve_rational(m, {x[0], x[1], x[2], x[3]});
    return {z[0], z[1], z[2], z[3]};
}

bool in_maximal_order(const FieldElement& x) {
    for (const Rat& v : order_coordinates(x))
        if (v.get_den() != 1) return false;
    return true;
}

std::array<Cplx, 4> generator_embeddings(FieldId f) {
    const Real two(2);
    if (f == FieldId::K1) {
        Real t = sqrt(sqrt(two) - 1);
        return {Cplx(t), Cplx(-t), Cplx(Real(0), 1 / t), Cplx(Real(0), -1 / t)};
    }
    if (f == FieldId::K2) {
        Real p = sqrt(2 * sqrt(two) - 2);
        return {Cplx(p), Cplx(-p), Cplx(Real(0), 2 / p), Cplx(Real(0), -2 / p)};
    }
    throw std::invalid_argument("embeddings need a concrete field");
}

std::array<Cplx, 4> embeddings(const FieldElement& x, unsigned digits) {
    PrecisionScope scope(digits + 10);
    const auto roots = generator_embeddings(x.field());
    std::vector<Cplx> c;
    for (std::size_t i = 0; i < 4; ++i) c.emplace_back(to_real(x[i]));
    std::array<Cplx, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = horner(c, roots[k]);
    return out;
}

std::array<std::complex<double>, 4> generator_embeddings_d(FieldId f) {
    if (f == FieldId::K1) {
        const double t = std::sqrt(std::sqrt(2.0) - 1.0);
        return {t, -t, std::complex<double>(0, 1 / t), std::complex<double>(0, -1 / t)};
    }
    const double p = std::sqrt(2.0 * std::sqrt(2.0) - 2.0);
    return {p, -p, std::complex<double>(0, 2 / p), std::complex<double>(0, -2 / p)};
}

std::array<std::complex<double>, 4> embeddings_d(const FieldElement& x) {
    const auto roots = generator_embeddings_d(x.field());
    std::array<std::complex<double>, 4> out;
    for (std::size_t k = 0; k < 4; ++k) {
        std::complex<double> acc = 0;
        for (std::size_t i = 4; i-- > 0;) acc = acc * roots[k] + x[i].get_d();
        out[k] = acc;
    }
    return out;
}

}  // namespace lucas8
