#include "lucas8/lucas.hpp"

#include <stdexcept>

namespace lucas8 {

const char* to_string(Degeneracy d) {
    switch (d) {
        case Degeneracy::NonDegenerate: return "NonDegenerate";
        case Degeneracy::PeriodThree: return "PeriodThree";
        case Degeneracy::OddSquareIndex: return "OddSquareIndex";
        case Degeneracy::SquareIndex: return "SquareIndex";
    }
    return "?";
}

std::vector<Int> lucas_terms(const LucasParams& params, int n_max) {
    if (n_max < 0) throw std::invalid_argument("negative index");
    std::vector<Int> u;
    u.reserve(static_cast<std::size_t>(n_max) + 1);
    u.emplace_back(0);
    if (n_max >= 1) u.emplace_back(1);
    for (int n = 2; n <= n_max; ++n) u.push_back(params.P * u[n - 1] - params.Q * u[n - 2]);
    return u;
}

Int lucas_term(const LucasParams& params, int n) { return lucas_terms(params, n).back(); }

Degeneracy degeneracy_class(const LucasParams& params) {
    if (params.Q != 1) return Degeneracy::NonDegenerate;
    if (params.P == 1 || params.P == -1) return Degeneracy::PeriodThree;
    if (params.P == -2) return Degeneracy::OddSquareIndex;
    if (params.P == 2) return Degeneracy::SquareIndex;
    return Degeneracy::NonDegenerate;
}

std::vector<SquareHit> scan_square_terms(const LucasParams& params, int n_max) {
    std::vector<SquareHit> hits;
    const auto u = lucas_terms(params, n_max);
    for (int n = 0; n <= n_max; ++n) {
        if (auto r = is_perfect_square(u[n])) hits.push_back({n, u[n], *r});
    }
    return hits;
}

}  // namespace lucas8
