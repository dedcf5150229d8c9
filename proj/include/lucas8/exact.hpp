#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace lucas8 {

using Int = mpz_class;
using Rat = mpq_class;

// Exact square root of n if n is a perfect square.
std::optional<Int> is_perfect_square(const Int& n);

Int isqrt(const Int& n);

// Largest e with p^e | n; n != 0.
int valuation(const Int& n, unsigned long p);
// v_p of a nonzero rational.
int valuation(const Rat& q, unsigned long p);

Int ipow(const Int& b, unsigned long e);
Rat rpow(const Rat& b, long e);

Int mod_floor(const Int& a, const Int& m);
// a/b mod m for b coprime to m.
Int mod_div(const Int& a, const Int& b, const Int& m);
// Reduce a rational with denominator coprime to m.
Int rat_mod(const Rat& q, const Int& m);

Rat make_rat(const Int& num, const Int& den);
std::string to_string(const Int& n);
std::string to_string(const Rat& q);

}  // namespace lucas8
