#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lucas8/field.hpp"
#include "lucas8/poly.hpp"

namespace lucas8 {

// Truncated power series over a commutative ring R; entry i is the coefficient of z^i.
template <class R>
using Series = std::vector<R>;

namespace series {

template <class R>
Series<R> zeros(std::size_t n, const R& zero) {
    return Series<R>(n, zero);
}

template <class R>
Series<R> add(const Series<R>& a, const Series<R>& b) {
    Series<R> r = a.size() >= b.size() ? a : b;
    const Series<R>& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <class R>
Series<R> sub(const Series<R>& a, const Series<R>& b, const R& zero) {
    Series<R> r(std::max(a.size(), b.size()), zero);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

template <class R>
Series<R> scale(const R& s, const Series<R>& a) {
    Series<R> r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(s * c);
    return r;
}

template <class R>
Series<R> mul(const Series<R>& a, const Series<R>& b, std::size_t n, const R& zero) {
    Series<R> r(n, zero);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Multiplication by z^k (k may be negative when the low coefficients vanish).
template <class R>
Series<R> shift(const Series<R>& a, long k, std::size_t n, const R& zero) {
    Series<R> r(n, zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        long j = static_cast<long>(i) + k;
        if (j >= 0 && static_cast<std::size_t>(j) < n) r[static_cast<std::size_t>(j)] = a[i];
    }
    return r;
}

// Inverse of a series whose constant term is one.
template <class R>
Series<R> inv_unit(const Series<R>& a, std::size_t n, const R& zero, const R& one) {
    Series<R> b(n, zero);
    if (n == 0) return b;
    b[0] = one;
    for (std::size_t k = 1; k < n; ++k) {
        R acc = zero;
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) acc = acc + a[i] * b[k - i];
        b[k] = zero - acc;
    }
    return b;
}

// f(g(z)) with g(0) = 0.
template <class R>
Series<R> compose(const Series<R>& f, const Series<R>& g, std::size_t n, const R& zero, const R& one) {
    Series<R> r(n, zero);
    Series<R> pw(n, zero);
    if (n > 0) pw[0] = one;
    for (std::size_t i = 0; i < f.size() && i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) r[j] = r[j] + f[i] * pw[j];
        pw = mul(pw, g, n, zero);
    }
    return r;
}

// s = w / z^3 where w = z^3 + A z^2 w + B z w^2.
template <class R>
Series<R> formal_s(const R& A, const R& B, std::size_t n, const R& zero, const R& one) {
    Series<R> s(n, zero);
    if (n > 0) s[0] = one;
    for (std::size_t it = 0; it <= n / 2 + 1; ++it) {
        Series<R> next(n, zero);
        next[0] = one;
        Series<R> t1 = shift(scale(A, s), 2, n, zero);
        Series<R> t2 = shift(scale(B, mul(s, s, n, zero)), 4, n, zero);
        for (std::size_t i = 0; i < n; ++i) next[i] = next[i] + t1[i] + t2[i];
        s = next;
    }
    return s;
}

// beta*X(P+R) + gamma as a series in z = z(R), P = (X0, Y0) finite; n coefficients.
template <class R>
Series<R> beta_x(const R& A, const R& B, const R& beta, const R& gamma, const R& X0, const R& Y0,
                 std::size_t n, const R& zero, const R& one) {
    const std::size_t m = n + 2;
    Series<R> s = formal_s(A, B, m, zero, one);
    Series<R> u = inv_unit(s, m, zero, one);
    Series<R> num = shift(scale(Y0, s), 3, m, zero);
    for (auto& c : num) c = zero - c;
    num[0] = num[0] - one;
    Series<R> den = shift(scale(X0, s), 2, m, zero);
    for (auto& c : den) c = zero - c;
    den[0] = den[0] + one;
    Series<R> q = mul(num, inv_unit(den, m, zero, one), m, zero);
    Series<R> big = sub(mul(q, q, m, zero), u, zero);
    Series<R> x = shift(big, -2, n, zero);
    x[0] = x[0] - A - X0;
    Series<R> r = scale(beta, x);
    r[0] = r[0] + gamma;
    return r;
}

// 1/(beta*x(z) + gamma) = z^2 s / (beta + gamma z^2 s); beta_inv is 1/beta.
template <class R>
Series<R> inverse_beta_x(const R& A, const R& B, const R& beta_inv, const R& gamma, std::size_t n,
                         const R& zero, const R& one) {
    Series<R> s = formal_s(A, B, n, zero, one);
    Series<R> den = shift(scale(beta_inv * gamma, s), 2, n, zero);
    den[0] = den[0] + one;
    Series<R> r = mul(shift(s, 2, n, zero), inv_unit(den, n, zero, one), n, zero);
    return scale(beta_inv, r);
}

}  // namespace series

// Formal group data of Y^2 = X^3 + A X^2 + B X at z = -X/Y with exact coefficients.
struct FormalSeriesPack {
    FieldId field = FieldId::None;
    FieldElement A;
    FieldElement B;
    int order = 0;                     // series known modulo t^order
    Series<FieldElement> s;            // w/z^3
    Series<FieldElement> x_laurent;    // coefficient i multiplies z^(i-2)
    Series<FieldElement> y_laurent;    // coefficient i multiplies z^(i-3)
    Series<FieldElement> omega;        // invariant differential / dz
    Series<FieldElement> log;
    Series<FieldElement> exp;
};

FormalSeriesPack derive_formal_series(const FieldElement& A, const FieldElement& B, int order);

// exp(log z1 + log z2) truncated to total degree < order.
Poly<FieldElement> formal_addition_law(const FormalSeriesPack& pack, int order);

}  // namespace lucas8
