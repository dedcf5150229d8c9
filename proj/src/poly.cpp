#include "lucas8/poly.hpp"

#include <sstream>

namespace lucas8 {

Rat determinant(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    if (n == 0) return Rat(1);
    Rat sign = 1;
    Rat prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return Rat(0);
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

// Coefficients of p in the eliminated variable, as polynomials in the other one,
// specialised at other = t.
std::vector<Rat> specialise(const QPoly& p, int elim, int deg, const Rat& t) {
    std::vector<Rat> c(static_cast<std::size_t>(deg) + 1, Rat(0));
    const int other = 1 - elim;
    for (const auto& [m, coef] : p.terms()) {
        Rat v = coef * rpow(t, m.at(static_cast<std::size_t>(other)));
        c[static_cast<std::size_t>(m.at(static_cast<std::size_t>(elim)))] += v;
    }
    return c;
}

Rat sylvester_det(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    const int m = static_cast<int>(a.size()) - 1;
    const int n = static_cast<int>(b.size()) - 1;
    const int sz = m + n;
    std::vector<std::vector<Rat>> s(static_cast<std::size_t>(sz), std::vector<Rat>(static_cast<std::size_t>(sz), Rat(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = a[static_cast<std::size_t>(m - i)];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[n + r][r + i] = b[static_cast<std::size_t>(n - i)];
    return determinant(std::move(s));
}

}  // namespace

QPoly resultant(const QPoly& p, const QPoly& q, int eliminate) {
    if (p.is_zero() || q.is_zero()) throw std::invalid_argument("undefined resultant");
    if (eliminate < 0 || eliminate > 1) throw std::invalid_argument("bad variable index");
    const int nv = std::max(p.nvars(), q.nvars());
    const int m = std::max(0, p.degree_in(eliminate));
    const int n = std::max(0, q.degree_in(eliminate));
    if (nv == 1 || (eliminate == 1 && nv == 1)) {
        QPoly r(nv);
        r.add_term({0, 0}, sylvester_det(specialise(p, eliminate, m, 0), specialise(q, eliminate, n, 0)));
        return r;
    }
    const int other = 1 - eliminate;
    const int bound = n * std::max(0, p.degree_in(other)) + m * std::max(0, q.degree_in(other));
    std::vector<Rat> xs, ys;
    for (int i = 0; i <= bound; ++i) {
        Rat t(i);
        xs.push_back(t);
        ys.push_back(sylvester_det(specialise(p, eliminate, m, t), specialise(q, eliminate, n, t)));
    }
    // Newton interpolation.
    std::vector<Rat> dd = ys;
    for (std::size_t j = 1; j < xs.size(); ++j)
        for (std::size_t i = xs.size() - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<Rat> coef(1, dd.back());
    for (std::size_t k = xs.size() - 1; k-- > 0;) {
        std::vector<Rat> nc(coef.size() + 1, Rat(0));
        for (std::size_t i = 0; i < coef.size(); ++i) {
            nc[i + 1] += coef[i];
            nc[i] -= coef[i] * xs[k];
        }
        nc[0] += dd[k];
        coef = std::move(nc);
    }
    QPoly r(2);
    for (std::size_t i = 0; i < coef.size(); ++i) {
        QPoly::Mono mono{0, 0};
        mono.at(static_cast<std::size_t>(other)) = static_cast<int>(i);
        r.add_term(mono, coef[i]);
    }
    return r;
}

QPoly upoly(const std::vector<Rat>& coeffs) {
    QPoly p(1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term({static_cast<int>(i), 0}, coeffs[i]);
    return p;
}

std::string to_string(const QPoly& p, const std::string& v1, const std::string& v2) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (!first) os << (sgn(a) < 0 ? " - " : " + ");
        else if (sgn(a) < 0) os << "-";
        first = false;
        Rat aa = abs(a);
        bool unit = (aa == 1) && (m[0] + m[1] > 0);
        if (!unit) os << to_string(aa);
        auto put = [&](const std::string& v, int e, bool& need_mul) {
            if (e == 0) return;
            if (need_mul) os << "*";
            os << v;
            if (e > 1) os << "^" << e;
            need_mul = true;
        };
        bool need = !unit;
        put(v1, m[0], need);
        put(v2, m[1], need);
    }
    return os.str();
}

}  // namespace lucas8
