#pragma once

#include <vector>

#include "lucas8/exact.hpp"

namespace lucas8 {

struct LucasParams {
    Int P;
    Int Q;
    friend bool operator==(const LucasParams& a, const LucasParams& b) { return a.P == b.P && a.Q == b.Q; }
    friend bool operator<(const LucasParams& a, const LucasParams& b) {
        return a.P != b.P ? a.P < b.P : a.Q < b.Q;
    }
};

struct SquareHit {
    int n;
    Int value;
    Int root;
};

enum class Degeneracy { NonDegenerate, PeriodThree, OddSquareIndex, SquareIndex };

const char* to_string(Degeneracy d);

Int lucas_term(const LucasParams& params, int n);
// U_0..U_n inclusive.
std::vector<Int> lucas_terms(const LucasParams& params, int n_max);
Degeneracy degeneracy_class(const LucasParams& params);
std::vector<SquareHit> scan_square_terms(const LucasParams& params, int n_max);

}  // namespace lucas8
