#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lucas8/exact.hpp"

namespace lucas8 {

inline bool is_zero(const Rat& q) { return q == 0; }
inline bool is_zero(const Int& n) { return n == 0; }

namespace detail {
template <class C>
bool coeff_is_zero(const C& c) {
    using lucas8::is_zero;
    return is_zero(c);
}
}  // namespace detail

// Sparse polynomial in one or two variables; zero coefficients are never stored.
template <class C>
class Poly {
public:
    using Mono = std::array<int, 2>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {
        if (nvars < 1 || nvars > 2) throw std::invalid_argument("Poly supports 1 or 2 variables");
    }

    static Poly constant(const C& c, int nvars) {
        Poly p(nvars);
        p.add_term({0, 0}, c);
        return p;
    }
    static Poly variable(int i, int nvars, const C& one) {
        Poly p(nvars);
        Mono m{0, 0};
        m.at(static_cast<std::size_t>(i)) = 1;
        p.add_term(m, one);
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Mono, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Mono& m, const C& c) {
        if (nvars_ == 1 && m[1] != 0) throw std::invalid_argument("second exponent in univariate poly");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!detail::coeff_is_zero(c)) terms_.emplace(m, c);
            return;
        }
        it->second = it->second + c;
        if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }

    C coeff(const Mono& m, const C& zero = C()) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero : it->second;
    }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1]);
        return d;
    }
    int degree_in(int v) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.at(static_cast<std::size_t>(v)));
        return d;
    }
    int low_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = (d < 0) ? m[0] + m[1] : std::min(d, m[0] + m[1]);
        return d;
    }

    // Terms of total degree exactly d.
    Poly homogeneous_part(int d) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_)
            if (m[0] + m[1] == d) r.terms_.emplace(m, c);
        return r;
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r = a;
        r.nvars_ = std::max(a.nvars_, b.nvars_);
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(std::max(a.nvars_, b.nvars_));
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term({ma[0] + mb[0], ma[1] + mb[1]}, ca * cb);
        return r;
    }
    friend Poly operator*(const C& s, const Poly& a) {
        Poly r(a.nvars_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ib = b.terms_.begin();
        for (const auto& [m, c] : a.terms_) {
            if (m != ib->first || !detail::coeff_is_zero(c - ib->second)) return false;
            ++ib;
        }
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int e, const C& one) const {
        Poly r = constant(one, nvars_);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    template <class F>
    auto map_coeffs(F f) const {
        using D = decltype(f(std::declval<C>()));
        Poly<D> r(nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    template <class V>
    V eval(const V& x1, const V& x2, const V& one) const {
        V acc = one - one;
        for (const auto& [m, c] : terms_) {
            V t = one * c;
            for (int i = 0; i < m[0]; ++i) t = t * x1;
            for (int i = 0; i < m[1]; ++i) t = t * x2;
            acc = acc + t;
        }
        return acc;
    }

private:
    int nvars_ = 1;
    std::map<Mono, C> terms_;
};

using QPoly = Poly<Rat>;

Rat determinant(std::vector<std::vector<Rat>> m);

// Sylvester resultant eliminating variable `eliminate` (0 or 1).
QPoly resultant(const QPoly& p, const QPoly& q, int eliminate);

// Univariate polynomial from coefficient list c0 + c1 x + ...
QPoly upoly(const std::vector<Rat>& coeffs);

std::string to_string(const QPoly& p, const std::string& v1 = "x1", const std::string& v2 = "x2");

}  // namespace lucas8
