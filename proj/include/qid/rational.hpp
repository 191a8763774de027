#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qid {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator as long as every constructed value is canonicalized,
// which make_rational and parse_rational guarantee.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "p/q" and "-p/q"; rejects decimals and zero denominators.
Rational parse_rational(std::string_view text);

// "p" when the denominator is one, otherwise "p/q".
std::string to_string(const Rational& r);

// r^e for any integer e; r must be nonzero when e < 0.
Rational pow(const Rational& r, int e);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

} // namespace qid
