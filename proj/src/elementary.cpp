#include "lucas8/elementary.hpp"

#include <stdexcept>

namespace lucas8 {

namespace {

const Rat kA2 = 6, kA4 = 5, kA6 = 1;

bool odd(const Int& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

[[noreturn]] void side_condition(const std::string& what) {
    throw std::invalid_argument("side condition violated: " + what);
}

Int exact_half(const Int& v, const std::string& what) {
    if (odd(v)) side_condition(what);
    return v / 2;
}

}  // namespace

bool on_u7_curve(const RationalCurvePoint& p) {
    if (p.at_infinity) return true;
    return p.y * p.y == p.x * p.x * p.x + kA2 * p.x * p.x + kA4 * p.x + kA6;
}

RationalCurvePoint u7_neg(const RationalCurvePoint& p) {
    if (p.at_infinity) return p;
    return {p.x, -p.y, false};
}

RationalCurvePoint u7_add(const RationalCurvePoint& p, const RationalCurvePoint& q) {
    if (p.at_infinity) return q;
    if (q.at_infinity) return p;
    Rat lambda;
    if (p.x == q.x) {
        if (p.y != q.y || p.y == 0) return RationalCurvePoint::infinity();
        lambda = (3 * p.x * p.x + 2 * kA2 * p.x + kA4) / (2 * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda - kA2 - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    return {x3, y3, false};
}

RationalCurvePoint u7_mul(long k, const RationalCurvePoint& p) {
    RationalCurvePoint base = k < 0 ? u7_neg(p) : p;
    unsigned long m = static_cast<unsigned long>(k < 0 ? -k : k);
    RationalCurvePoint acc = RationalCurvePoint::infinity();
    while (m != 0) {
        if (m & 1UL) acc = u7_add(acc, base);
        base = u7_add(base, base);
        m >>= 1U;
    }
    return acc;
}

RationalCurvePoint u7_generator() { return {Rat(-1), Rat(1), false}; }

Int square_criterion(int n, const LucasParams& pq) {
    const Int& P = pq.P;
    const Int& Q = pq.Q;
    const Int P2 = P * P;
    switch (n) {
        case 2: return P;
        case 3: return P2 - Q;
        case 4: return P * (P2 - 2 * Q);
        case 5: return P2 * P2 - 3 * P2 * Q + Q * Q;
        case 6: return P * (P2 - Q) * (P2 - 3 * Q);
        case 7: return P2 * P2 * P2 - 5 * P2 * P2 * Q + 6 * P2 * Q * Q - Q * Q * Q;
        default: throw std::invalid_argument("square_criterion: n must be in 2..7");
    }
}

std::vector<LucasParams> u7_solutions(int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be positive");
    std::vector<LucasParams> out;
    const RationalCurvePoint g = u7_generator();
    RationalCurvePoint cur = RationalCurvePoint::infinity();
    for (int k = 1; k <= k_max; ++k) {
        cur = u7_add(cur, g);
        if (cur.at_infinity) continue;
        auto w = is_perfect_square(cur.x.get_den());
        if (!w) continue;
        LucasParams pq{*w, -cur.x.get_num()};
        if (pq.Q == 0 || gcd_int(pq.P, pq.Q) != 1) continue;
        bool seen = false;
        for (const auto& e : out) seen = seen || (e == pq);
        if (!seen) out.push_back(pq);
    }
    return out;
}

std::vector<std::string> family_tags(int n) {
    switch (n) {
        case 4: return {"4a", "4b"};
        case 5: return {"5a", "5b", "5c", "5d"};
        case 6: return {"6a", "6b", "6c", "6d", "6e", "6f", "6g"};
        default: throw std::invalid_argument("families exist for n = 4, 5, 6 only");
    }
}

namespace {

struct SixCase {
    int p_scale;
    int diff_scale;
};

SixCase six_case(const std::string& tag) {
    if (tag == "6a") return {1, 1};
    if (tag == "6b") return {1, -2};
    if (tag == "6c") return {-1, 2};
    if (tag == "6d") return {3, 1};
    if (tag == "6e") return {3, -1};
    if (tag == "6f") return {3, 2};
    if (tag == "6g") return {3, -2};
    throw std::invalid_argument("unknown family tag " + tag);
}

// The residual quantity that must be a square for the U_6 splitting.
Int six_residual(const SixCase& c, const Int& a4, const Int& b2) {
    if (c.p_scale == 1 && c.diff_scale == 1) return -2 * a4 + 3 * b2;
    if (c.p_scale == 1) return a4 + 3 * b2;
    if (c.p_scale == -1) return a4 - 3 * b2;
    return b2 - (6 / c.diff_scale) * a4;
}

}  // namespace

LucasParams family_generate(int n, const std::string& tag, const FamilyParams& fp) {
    const Int& a = fp.a;
    const Int& b = fp.b;
    const Int a2 = a * a, b2 = b * b, a4 = a2 * a2;
    LucasParams out;
    if (n == 4) {
        if (fp.delta != 1 && fp.delta != -1) side_condition("delta = +-1");
        if (tag == "4a") {
            out = {fp.delta * a2, exact_half(a4 - fp.delta * b2, "a^4 - delta b^2 even")};
        } else if (tag == "4b") {
            out = {2 * fp.delta * a2, 2 * a4 - fp.delta * b2};
        } else {
            throw std::invalid_argument("unknown family tag " + tag);
        }
    } else if (n == 5) {
        const Int plus = 5 * a4 + 6 * a2 * b2 + b2 * b2;
        const Int minus = -5 * a4 + 6 * a2 * b2 - b2 * b2;
        if (tag == "5a") out = {2 * a * b, plus};
        else if (tag == "5b") out = {2 * a * b, minus};
        else if (tag == "5c") out = {a * b, plus / 4};
        else if (tag == "5d") out = {a * b, minus / 4};
        else throw std::invalid_argument("unknown family tag " + tag);
        if ((tag == "5c" || tag == "5d") && (!odd(a) || !odd(b))) side_condition("a, b both odd");
    } else if (n == 6) {
        const SixCase c = six_case(tag);
        out.P = c.p_scale * a2;
        out.Q = out.P * out.P - c.diff_scale * b2;
    } else {
        throw std::invalid_argument("family_generate: n must be 4, 5 or 6");
    }
    if (out.P == 0 || out.Q == 0) side_condition("P Q nonzero");
    if (gcd_int(out.P, out.Q) != 1) side_condition("gcd(P,Q) = 1");
    if (tag == "4a" && !(odd(a) && odd(b))) side_condition("a b odd");
    if (tag == "4b" && !odd(b)) side_condition("b odd");
    if ((tag == "5a" || tag == "5b") && odd(a) == odd(b)) side_condition("a, b of opposite parity");
    if (n == 6) {
        const SixCase c = six_case(tag);
        if (!is_perfect_square(six_residual(c, a4, b2))) side_condition("residual conic is a square");
    }
    return out;
}

namespace {

std::optional<Int> exact_sqrt_quotient(const Int& num, long den) {
    if (den == 0 || num % den != 0) return std::nullopt;
    return is_perfect_square(num / den);
}

std::vector<Int> positive_divisors(const Int& n) {
    std::vector<Int> d;
    Int m = abs(n);
    if (m == 0 || mpz_sizeinbase(m.get_mpz_t(), 2) > 40) return d;
    for (Int i = 1; i * i <= m; ++i) {
        if (m % i == 0) {
            d.push_back(i);
            if (i * i != m) d.push_back(m / i);
        }
    }
    return d;
}

bool try_family(SmallNWitness& w, int n, const std::string& tag, const FamilyParams& fp,
                const LucasParams& target) {
    try {
        if (family_generate(n, tag, fp) == target) {
            w.family_tag = tag;
            w.params = fp;
            return true;
        }
    } catch (const std::invalid_argument&) {
    }
    return false;
}

}  // namespace

SmallNWitness classify_small(int n, const LucasParams& pq) {
    SmallNWitness w;
    w.n = n;
    w.criterion_value = square_criterion(n, pq);
    auto root = is_perfect_square(w.criterion_value);
    w.square = root.has_value();
    if (!w.square) return w;
    const Int& P = pq.P;
    const Int& Q = pq.Q;
    if (n == 2) {
        w.family_tag = "2";
        w.params.a = *root;
    } else if (n == 3) {
        w.family_tag = "3";
        w.params.a = *root;
    } else if (n == 4) {
        for (int d : {1, -1}) {
            if (auto a = exact_sqrt_quotient(P, d))
                if (auto b = exact_sqrt_quotient(P * P - 2 * Q, d))
                    if (try_family(w, 4, "4a", {d, *a, *b}, pq)) return w;
            if (auto a = exact_sqrt_quotient(P, 2 * d))
                if (auto b = exact_sqrt_quotient(P * P - 2 * Q, 2 * d))
                    if (try_family(w, 4, "4b", {d, *a, *b}, pq)) return w;
        }
    } else if (n == 5) {
        for (const Int& a : positive_divisors(P)) {
            for (const std::string tag : {"5a", "5b", "5c", "5d"}) {
                const Int prod = (tag == "5a" || tag == "5b") ? P / 2 : P;
                if ((tag == "5a" || tag == "5b") && P % 2 != 0) continue;
                if (prod % a != 0) continue;
                if (try_family(w, 5, tag, {1, a, prod / a}, pq)) return w;
            }
        }
    } else if (n == 6) {
        for (const auto& tag : family_tags(6)) {
            const SixCase c = six_case(tag);
            auto a = exact_sqrt_quotient(P, c.p_scale);
            auto b = exact_sqrt_quotient(P * P - Q, c.diff_scale);
            if (a && b && try_family(w, 6, tag, {1, *a, *b}, pq)) return w;
        }
    } else if (n == 7 && P != 0) {
        w.family_tag = "curve";
        const Rat P2(P * P);
        RationalCurvePoint pt{Rat(-Q) / P2, Rat(*root) / (P2 * P), false};
        pt.x.canonicalize();
        pt.y.canonicalize();
        w.curve_point = pt;
    }
    return w;
}

}  // namespace lucas8
