#include "lucas8/series.hpp"

namespace lucas8 {

FormalSeriesPack derive_formal_series(const FieldElement& A, const FieldElement& B, int order) {
    if (order < 2) throw std::invalid_argument("formal series order must be at least 2");
    const FieldId f = A.field() != FieldId::None ? A.field() : B.field();
    const FieldElement zero(f, Rat(0)), one(f, Rat(1));
    const auto n = static_cast<std::size_t>(order);

    FormalSeriesPack pack;
    pack.field = f;
    pack.A = A;
    pack.B = B;
    pack.order = order;
    pack.s = series::formal_s(A, B, n + 1, zero, one);
    Series<FieldElement> u = series::inv_unit(pack.s, n + 1, zero, one);
    pack.x_laurent = u;
    pack.y_laurent = series::scale(FieldElement(f, Rat(-1)), u);

    // omega = 1 - z u' / (2u)
    Series<FieldElement> zu(n, zero);
    for (std::size_t i = 0; i < n; ++i) zu[i] = Rat(static_cast<long>(i)) * u[i];
    Series<FieldElement> q = series::mul(zu, series::inv_unit(u, n, zero, one), n, zero);
    pack.omega.assign(n, zero);
    for (std::size_t i = 0; i < n; ++i) pack.omega[i] = zero - Rat(1, 2) * q[i];
    pack.omega[0] = pack.omega[0] + one;

    pack.log.assign(n, zero);
    for (std::size_t i = 1; i < n; ++i) pack.log[i] = Rat(1, static_cast<long>(i)) * pack.omega[i - 1];

    pack.exp.assign(n, zero);
    pack.exp[1] = one;
    for (std::size_t d = 2; d < n; ++d) {
        Series<FieldElement> l = series::compose(pack.log, pack.exp, n, zero, one);
        pack.exp[d] = pack.exp[d] - l[d];
    }
    return pack;
}

Poly<FieldElement> formal_addition_law(const FormalSeriesPack& pack, int order) {
    using P = Poly<FieldElement>;
    const FieldElement one(pack.field, Rat(1));
    auto truncate = [order](const P& p) {
        P r(2);
        for (const auto& [m, c] : p.terms())
            if (m[0] + m[1] < order) r.add_term(m, c);
        return r;
    };
    P sum(2);
    for (std::size_t i = 1; i < pack.log.size() && static_cast<int>(i) < order; ++i) {
        sum.add_term({static_cast<int>(i), 0}, pack.log[i]);
        sum.add_term({0, static_cast<int>(i)}, pack.log[i]);
    }
    P result(2);
    P pw = P::constant(one, 2);
    for (std::size_t i = 1; i < pack.exp.size() && static_cast<int>(i) < order; ++i) {
        pw = truncate(pw * sum);
        result = result + pack.exp[i] * pw;
    }
    return result;
}

}  // namespace lucas8
