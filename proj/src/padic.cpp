#include "lucas8/padic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lucas8 {

const Int& pow3(int k) {
    static std::vector<Int> cache{Int(1)};
    if (k < 0) throw std::invalid_argument("negative precision");
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * 3);
    return cache[static_cast<std::size_t>(k)];
}

namespace {

FieldId merge(FieldId a, FieldId b) {
    if (a == FieldId::None) return b;
    if (b == FieldId::None || a == b) return a;
    throw std::invalid_argument("p-adic field mismatch");
}

// a^4 = r0 + r1 a + r2 a^2 + r3 a^3 as integers.
std::array<Int, 4> quartic_reduction(FieldId f) {
    const auto& d = descriptor(f).defining;
    std::array<Int, 4> r;
    for (std::size_t i = 0; i < 4; ++i) {
        Rat c = -d[i];
        if (c.get_den() != 1) throw std::logic_error("non-integral defining polynomial");
        r[i] = c.get_num();
    }
    return r;
}

}  // namespace

PadicQuartic::PadicQuartic(FieldId f, int k) : field_(f), k_(k) {}

PadicQuartic::PadicQuartic(FieldId f, int k, std::array<Int, 4> c) : field_(f), k_(k), c_(std::move(c)) {
    normalize();
}

PadicQuartic PadicQuartic::from_int(FieldId f, int k, const Int& v) {
    return PadicQuartic(f, k, {v, 0, 0, 0});
}

PadicQuartic PadicQuartic::reduce(const FieldElement& x, int k) {
    std::array<Int, 4> c;
    const Int& m = pow3(k);
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i].get_den() % 3 == 0) throw std::domain_error("element is not 3-integral: " + x.str());
        c[i] = rat_mod(x[i], m);
    }
    return PadicQuartic(x.field(), k, c);
}

void PadicQuartic::normalize() {
    const Int& m = pow3(k_);
    if (field_ == FieldId::None)
        for (std::size_t i = 1; i < 4; ++i)
            if (c_[i] != 0) throw std::invalid_argument("scalar p-adic with non-scalar coordinates");
    for (auto& x : c_) x = mod_floor(x, m);
}

bool PadicQuartic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

int PadicQuartic::valuation() const {
    int v = k_;
    for (const auto& x : c_)
        if (x != 0) v = std::min(v, lucas8::valuation(x, 3));
    return v;
}

PadicQuartic operator+(const PadicQuartic& a, const PadicQuartic& b) {
    std::array<Int, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = a.c_[i] + b.c_[i];
    return PadicQuartic(merge(a.field_, b.field_), std::min(a.k_, b.k_), c);
}

PadicQuartic operator-(const PadicQuartic& a, const PadicQuartic& b) {
    std::array<Int, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = a.c_[i] - b.c_[i];
    return PadicQuartic(merge(a.field_, b.field_), std::min(a.k_, b.k_), c);
}

PadicQuartic operator-(const PadicQuartic& a) {
    std::array<Int, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = -a.c_[i];
    return PadicQuartic(a.field_, a.k_, c);
}

PadicQuartic operator*(const PadicQuartic& a, const PadicQuartic& b) {
    FieldId f = merge(a.field_, b.field_);
    int k = std::min(a.k_, b.k_);
    if (a.field_ == FieldId::None) return a.c_[0] * PadicQuartic(f, k, b.c_);
    if (b.field_ == FieldId::None) return b.c_[0] * PadicQuartic(f, k, a.c_);
    std::array<Int, 7> prod;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    static const std::array<Int, 4> r1 = quartic_reduction(FieldId::K1);
    static const std::array<Int, 4> r2 = quartic_reduction(FieldId::K2);
    const auto& r = (f == FieldId::K1) ? r1 : r2;
    for (std::size_t d = 6; d >= 4; --d) {
        if (prod[d] == 0) continue;
        for (std::size_t i = 0; i < 4; ++i) prod[d - 4 + i] += prod[d] * r[i];
        prod[d] = 0;
    }
    return PadicQuartic(f, k, {prod[0], prod[1], prod[2], prod[3]});
}

PadicQuartic operator*(const Int& s, const PadicQuartic& a) {
    std::array<Int, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = s * a.c_[i];
    return PadicQuartic(a.field_, a.k_, c);
}

bool operator==(const PadicQuartic& a, const PadicQuartic& b) {
    int k = std::min(a.k_, b.k_);
    const Int& m = pow3(k);
    for (std::size_t i = 0; i < 4; ++i)
        if (mod_floor(a.c_[i] - b.c_[i], m) != 0) return false;
    return true;
}

PadicQuartic PadicQuartic::inv() const {
    const Int& m = pow3(k_);
    if (field_ == FieldId::None) {
        if (c_[0] % 3 == 0) throw std::domain_error("inverse of a non-unit");
        return from_int(field_, k_, mod_div(1, c_[0], m));
    }
    // Multiplication matrix columns are x * a^j; solve M y = e0 mod 3^k.
    std::array<std::array<Int, 5>, 4> aug;
    PadicQuartic basis(field_, k_, {1, 0, 0, 0});
    PadicQuartic gen(field_, k_, {0, 1, 0, 0});
    for (std::size_t j = 0; j < 4; ++j) {
        PadicQuartic col = *this * basis;
        for (std::size_t i = 0; i < 4; ++i) aug[i][j] = col.c_[i];
        basis = basis * gen;
    }
    for (std::size_t i = 0; i < 4; ++i) aug[i][4] = (i == 0) ? 1 : 0;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        while (piv < 4 && aug[piv][col] % 3 == 0) ++piv;
        if (piv == 4) throw std::domain_error("inverse of a non-unit: " + str());
        std::swap(aug[piv], aug[col]);
        Int iv = mod_div(1, aug[col][col], m);
        for (auto& x : aug[col]) x = mod_floor(x * iv, m);
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col || aug[r][col] == 0) continue;
            Int f = aug[r][col];
            for (std::size_t c = 0; c < 5; ++c) aug[r][c] = mod_floor(aug[r][c] - f * aug[col][c], m);
        }
    }
    return PadicQuartic(field_, k_, {aug[0][4], aug[1][4], aug[2][4], aug[3][4]});
}

PadicQuartic PadicQuartic::divide_p(int e) const {
    if (e == 0) return *this;
    if (e > k_) throw std::invalid_argument("division exceeds precision");
    const Int& d = pow3(e);
    std::array<Int, 4> c;
    for (std::size_t i = 0; i < 4; ++i) {
        if (c_[i] % d != 0) throw std::domain_error("inexact division by a power of 3");
        c[i] = c_[i] / d;
    }
    return PadicQuartic(field_, k_ - e, c);
}

PadicQuartic PadicQuartic::with_precision(int k) const {
    if (k > k_) throw std::invalid_argument("cannot raise precision");
    return PadicQuartic(field_, k, c_);
}

std::array<Int, 4> PadicQuartic::centered() const {
    const Int& m = pow3(k_);
    std::array<Int, 4> r = c_;
    for (auto& x : r)
        if (2 * x > m) x -= m;
    return r;
}

std::string PadicQuartic::str() const {
    auto c = centered();
    if (field_ == FieldId::None) return to_string(c[0]);
    const std::string g = descriptor(field_).generator_name;
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < 4; ++i) {
        if (c[i] == 0) continue;
        if (!first) os << (c[i] < 0 ? " - " : " + ");
        else if (c[i] < 0) os << "-";
        Int a = abs(c[i]);
        if (i == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << g;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

PadicPoly::PadicPoly(FieldId f, int k, int nvars) : field_(f), k_(k), nvars_(nvars) {
    if (nvars < 0 || nvars > 2) throw std::invalid_argument("PadicPoly supports up to 2 variables");
}

PadicPoly PadicPoly::constant(const PadicQuartic& c, int nvars) {
    PadicPoly p(c.field(), c.precision(), nvars);
    p.add_term({0, 0}, c);
    return p;
}

PadicPoly PadicPoly::variable(FieldId f, int k, int i, int nvars) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    PadicPoly p(f, k, nvars);
    Mono m{0, 0};
    m.at(static_cast<std::size_t>(i)) = 1;
    p.add_term(m, PadicQuartic::from_int(f, k, 1));
    return p;
}

void PadicPoly::add_term(const Mono& m, const PadicQuartic& c) {
    if ((nvars_ < 2 && m[1] != 0) || (nvars_ < 1 && m[0] != 0))
        throw std::invalid_argument("monomial uses a missing variable");
    field_ = merge(field_, c.field());
    PadicQuartic cc = c.precision() > k_ ? c.with_precision(k_) : c;
    if (cc.precision() < k_) throw std::invalid_argument("coefficient precision below polynomial precision");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!cc.is_zero()) terms_.emplace(m, cc);
        return;
    }
    it->second = it->second + cc;
    if (it->second.is_zero()) terms_.erase(it);
}

PadicQuartic PadicPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? PadicQuartic(field_, k_) : it->second;
}

int PadicPoly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1]);
    return d;
}

int PadicPoly::low_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = (d < 0) ? m[0] + m[1] : std::min(d, m[0] + m[1]);
    return d;
}

int PadicPoly::min_valuation() const {
    int v = k_;
    for (const auto& [m, c] : terms_) v = std::min(v, c.valuation());
    return v;
}

PadicPoly operator+(const PadicPoly& a, const PadicPoly& b) {
    PadicPoly r(merge(a.field_, b.field_), std::min(a.k_, b.k_), std::max(a.nvars_, b.nvars_));
    for (const auto& [m, c] : a.terms_) r.add_term(m, c);
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

PadicPoly operator-(const PadicPoly& a, const PadicPoly& b) {
    PadicPoly r(merge(a.field_, b.field_), std::min(a.k_, b.k_), std::max(a.nvars_, b.nvars_));
    for (const auto& [m, c] : a.terms_) r.add_term(m, c);
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
}

PadicPoly operator*(const PadicPoly& a, const PadicPoly& b) {
    PadicPoly r(merge(a.field_, b.field_), std::min(a.k_, b.k_), std::max(a.nvars_, b.nvars_));
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term({ma[0] + mb[0], ma[1] + mb[1]}, ca * cb);
    return r;
}

PadicPoly operator*(const PadicQuartic& s, const PadicPoly& a) {
    PadicPoly r(merge(a.field_, s.field()), std::min(a.k_, s.precision()), a.nvars_);
    for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
    return r;
}

bool operator==(const PadicPoly& a, const PadicPoly& b) { return (a - b).is_zero(); }

PadicQuartic PadicPoly::eval(const Int& n1, const Int& n2) const {
    const Int& mod = pow3(k_);
    PadicQuartic acc(field_, k_);
    for (const auto& [m, c] : terms_) {
        Int t = 1;
        for (int i = 0; i < m[0]; ++i) t = mod_floor(t * n1, mod);
        for (int i = 0; i < m[1]; ++i) t = mod_floor(t * n2, mod);
        acc = acc + t * c;
    }
    return acc;
}

PadicPoly PadicPoly::divide_p(int e) const {
    PadicPoly r(field_, k_ - e, nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.divide_p(e));
    return r;
}

PadicPoly PadicPoly::with_precision(int k) const {
    PadicPoly r(field_, k, nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, c.with_precision(k));
    return r;
}

PadicPoly PadicPoly::shift(const Int& s1, const Int& s2) const {
    PadicPoly r(field_, k_, nvars_);
    auto one = PadicQuartic::from_int(FieldId::None, k_, 1);
    PadicPoly y1 = nvars_ >= 1 ? variable(FieldId::None, k_, 0, nvars_) + constant(s1 * one, nvars_)
                               : constant(one, 0);
    PadicPoly y2 = nvars_ >= 2 ? variable(FieldId::None, k_, 1, nvars_) + constant(s2 * one, nvars_)
                               : constant(one, nvars_);
    for (const auto& [m, c] : terms_) {
        PadicPoly t = constant(c, nvars_);
        for (int i = 0; i < m[0]; ++i) t = t * y1;
        for (int i = 0; i < m[1]; ++i) t = t * y2;
        r = r + t;
    }
    return r;
}

std::array<PadicPoly, 4> PadicPoly::components() const {
    std::array<PadicPoly, 4> out;
    for (auto& p : out) p = PadicPoly(FieldId::None, k_, nvars_);
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < 4; ++i)
            out[i].add_term(m, PadicQuartic::from_int(FieldId::None, k_, c[i]));
    return out;
}

QPoly PadicPoly::to_qpoly() const {
    if (field_ != FieldId::None) throw std::logic_error("to_qpoly needs a scalar polynomial");
    QPoly r(std::max(1, nvars_));
    for (const auto& [m, c] : terms_) r.add_term(m, Rat(c[0]));
    return r;
}

bool PadicPoly::satisfies_floor() const {
    for (const auto& [m, c] : terms_) {
        int d = m[0] + m[1];
        if (d >= 1 && c.valuation() < fact2_floor(d)) return false;
    }
    return true;
}

std::string PadicPoly::str(const std::string& v1, const std::string& v2) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (m[0] > 0) os << "*" << v1 << (m[0] > 1 ? "^" + std::to_string(m[0]) : "");
        if (m[1] > 0) os << "*" << v2 << (m[1] > 1 ? "^" + std::to_string(m[1]) : "");
    }
    os << " + O(3^" << k_ << ")";
    return os.str();
}

bool irreducible_mod3(FieldId f) {
    const auto& d = descriptor(f).defining;
    std::array<int, 5> c;
    for (std::size_t i = 0; i < 5; ++i) c[i] = static_cast<int>(mod_floor(rat_mod(d[i], 3), 3).get_si());
    auto eval = [&](int x) {
        int acc = 0;
        for (int i = 4; i >= 0; --i) acc = (acc * x + c[static_cast<std::size_t>(i)]) % 3;
        return acc;
    };
    for (int x = 0; x < 3; ++x)
        if (eval(x) == 0) return false;
    // Divide by each monic quadratic x^2 + b x + e and test for zero remainder.
    for (int b = 0; b < 3; ++b)
        for (int e = 0; e < 3; ++e) {
            std::array<int, 5> r = c;
            for (int deg = 4; deg >= 2; --deg) {
                int q = r[static_cast<std::size_t>(deg)];
                r[static_cast<std::size_t>(deg)] = 0;
                r[static_cast<std::size_t>(deg - 1)] = ((r[static_cast<std::size_t>(deg - 1)] - q * b) % 3 + 3) % 3;
                r[static_cast<std::size_t>(deg - 2)] = ((r[static_cast<std::size_t>(deg - 2)] - q * e) % 3 + 3) % 3;
            }
            if (r[0] == 0 && r[1] == 0) return false;
        }
    return true;
}

}  // namespace lucas8
