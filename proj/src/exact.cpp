#include "lucas8/exact.hpp"

#include <stdexcept>

namespace lucas8 {

std::optional<Int> is_perfect_square(const Int& n) {
    if (sgn(n) < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    return isqrt(n);
}

Int isqrt(const Int& n) {
    if (sgn(n) < 0) throw std::domain_error("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

int valuation(const Int& n, unsigned long p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    Int m = abs(n);
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
    }
    return e;
}

int valuation(const Rat& q, unsigned long p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rat rpow(const Rat& b, long e) {
    if (e < 0) {
        if (b == 0) throw std::domain_error("zero to negative power");
        Rat inv = 1 / b;
        return rpow(inv, -e);
    }
    Rat r(ipow(b.get_num(), e), ipow(b.get_den(), e));
    r.canonicalize();
    return r;
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_div(const Int& a, const Int& b, const Int& m) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("denominator not invertible modulo " + m.get_str());
    return mod_floor(a * inv, m);
}

Int rat_mod(const Rat& q, const Int& m) { return mod_div(q.get_num(), q.get_den(), m); }

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace lucas8
