#pragma once

#include <random>

#include "qid/series.hpp"

namespace qid::test {

inline Rational R(long p, long q = 1) { return make_rational(p, q); }

inline Rational random_rational(std::mt19937_64& rng, int range = 9) {
    const long num = static_cast<long>(rng() % (2 * range + 1)) - range;
    const long den = static_cast<long>(rng() % range) + 1;
    return make_rational(num, den);
}

inline Rational random_nonzero(std::mt19937_64& rng, int range = 9) {
    Rational r;
    do {
        r = random_rational(rng, range);
    } while (is_zero(r));
    return r;
}

// Sparse random series with `terms` monomials inside the box.
inline Series random_series(std::mt19937_64& rng, const Box& box, int terms) {
    Series p(box);
    for (int i = 0; i < terms; ++i) {
        Exponents e{};
        for (std::size_t j = 0; j < box.size(); ++j) {
            const int span = box.hi[j] - box.lo[j] + 1;
            e[j] = box.lo[j] + static_cast<int>(rng() % static_cast<unsigned>(span));
        }
        p.add_term(e, random_rational(rng));
    }
    return p;
}

inline Exponents ex(std::initializer_list<int> xs) {
    Exponents e{};
    std::size_t i = 0;
    for (int x : xs) {
        e[i++] = x;
    }
    return e;
}

} // namespace qid::test
