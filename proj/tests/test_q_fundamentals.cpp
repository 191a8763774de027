#include "doctest.h"

#include "qid/errors.hpp"
#include "qid/q_fundamentals.hpp"
#include "test_util.hpp"

using namespace qid;
using qid::test::ex;
using qid::test::R;

namespace {

int binom2(int k) { return k * (k - 1) / 2; }

} // namespace

TEST_CASE("context validation") {
    CHECK_THROWS(QContext(R(0), 4));
    CHECK_THROWS(QContext(R(1), 4));
    CHECK_THROWS(QContext(R(-3, 2), 4));
    CHECK_NOTHROW(QContext(R(-1, 3), 4));
}

TEST_CASE("finite q-Pochhammer examples") {
    const QContext ctx3(R(1, 3), 6);
    CHECK(q_pochhammer(ctx3, R(1, 2), 0) == 1);
    CHECK(q_pochhammer(ctx3, R(1, 2), 3) == R(85, 216));

    const QContext ctx2(R(1, 2), 6);
    const Box b = Box::power({Var::y, Var::t}, 6);
    const Series yt = Series::variable(b, Var::y) * Series::variable(b, Var::t);
    const Series one = Series::constant(b, 1);
    CHECK(q_pochhammer(ctx2, yt, 2) == one - yt * R(3, 2) + yt * yt * R(1, 2));
    CHECK(q_pochhammer(ctx2, yt, 0) == one);
}

TEST_CASE("q-numbers, factorials, binomials") {
    const QContext ctx(R(1, 2), 6);
    CHECK(q_number(ctx, 0) == 0);
    CHECK(q_number(ctx, 1) == 1);
    CHECK(q_number(ctx, 3) == R(7, 4));
    CHECK(q_factorial(ctx, 0) == 1);
    CHECK(q_factorial(ctx, 1) == 1);
    CHECK(q_factorial(ctx, 3) == R(21, 8));
    CHECK(q_binomial(ctx, 5, 0) == 1);
    CHECK(q_binomial(ctx, 5, 5) == 1);
    CHECK(q_binomial(ctx, 4, 2) == R(35, 16));
    CHECK(q_binomial(ctx, 4, 2) == q_factorial(ctx, 4) / (q_factorial(ctx, 2) * q_factorial(ctx, 2)));
    CHECK(q_binomial(ctx, 4, 5) == 0);
    CHECK(q_binomial(ctx, 4, -1) == 0);
}

TEST_CASE("Euler expansions of the infinite product") {
    for (const Rational q : {R(1, 2), R(1, 3), R(-1, 3)}) {
        const QContext ctx(q, 10);
        const Box b = Box::power({Var::t}, 10);
        const Series t = Series::variable(b, Var::t);
        const Series inv = q_pochhammer_inf(ctx, t, true);
        const Series prod = q_pochhammer_inf(ctx, t, false);
        CHECK(inv * prod == Series::constant(b, 1));
        for (int k = 0; k <= 10; ++k) {
            CHECK(coefficient(inv, ex({k})) == 1 / ctx.qq(k));
        }
        // Functional equation (t;q)_inf = (1 - t)(qt;q)_inf.
        const Series shifted = substitute_scaled(prod, Var::t, q);
        CHECK(prod == (Series::constant(b, 1) - t) * shifted);
        CHECK(coefficient(prod, ex({1})) == -1 / (1 - q));
    }
    const QContext ctx(R(1, 2), 4);
    CHECK_THROWS_AS(q_pochhammer_inf(ctx, Series::constant(Box::power({Var::t}, 4), R(1, 2)), true),
                    ConstantArgument);
}

TEST_CASE("Series reciprocal of finite q-Pochhammer") {
    const QContext ctx(R(1, 3), 8);
    const Box b = Box::laurent({Var::t}, 16);
    const Box cmp = Box::power({Var::t}, 8);
    const Series t = Series::variable(b, Var::t);
    for (int n = 0; n <= 4; ++n) {
        const Series pos = q_pochhammer_reciprocal(ctx, t * R(2), n) * q_pochhammer(ctx, t * R(2), n);
        CHECK(restrict_to(pos, cmp) == Series::constant(cmp, 1));
        const Series neg_u = pow(t, -1) * R(3);
        const Series neg = q_pochhammer_reciprocal(ctx, neg_u, n) * q_pochhammer(ctx, neg_u, n);
        CHECK(restrict_to(neg, Box::power({Var::t}, 4)) == Series::constant(Box::power({Var::t}, 4), 1));
    }
    CHECK_THROWS_AS(q_pochhammer_reciprocal(ctx, R(9), 3), PoleInLowerParameter);
}

TEST_CASE("Pochhammer splitting and reflection") {
    std::mt19937_64 rng(5);
    for (const Rational q : {R(1, 2), R(-2, 5), R(3, 7)}) {
        const QContext ctx(q, 8);
        for (int trial = 0; trial < 6; ++trial) {
            const Rational a = test::random_nonzero(rng);
            for (int n = 0; n <= 16; n += 3) {
                for (int m = 0; m <= 16; m += 4) {
                    CHECK(q_pochhammer(ctx, a, n + m) == q_pochhammer(ctx, a, n) * q_pochhammer(ctx, a * ctx.q_pow(n), m));
                }
            }
            for (int n = 0; n <= 12; ++n) {
                const Rational rhs = q_pochhammer(ctx, q / a, n) * pow(Rational(-a), n) * ctx.q_pow(-n - binom2(n));
                CHECK(q_pochhammer(ctx, a * ctx.q_pow(-n), n) == rhs);
            }
        }
    }
}

TEST_CASE("q-binomial symmetry, Pascal rules, alternate form") {
    for (const Rational q : {R(1, 2), R(-1, 3), R(2, 5)}) {
        const QContext ctx(q, 8);
        for (int n = 0; n <= 20; ++n) {
            for (int k = 0; k <= n; ++k) {
                CHECK(q_binomial(ctx, n, k) == q_binomial(ctx, n, n - k));
                if (n >= 1) {
                    CHECK(q_binomial(ctx, n, k) ==
                          q_binomial(ctx, n - 1, k - 1) + ctx.q_pow(k) * q_binomial(ctx, n - 1, k));
                    CHECK(q_binomial(ctx, n, k) ==
                          ctx.q_pow(n - k) * q_binomial(ctx, n - 1, k - 1) + q_binomial(ctx, n - 1, k));
                }
                if (n <= 16) {
                    Rational alt = q_pochhammer(ctx, ctx.q_pow(-n), k) / ctx.qq(k) * ctx.q_pow(n * k - binom2(k));
                    if (k % 2) {
                        alt = -alt;
                    }
                    CHECK(q_binomial(ctx, n, k) == alt);
                }
            }
        }
    }
}

TEST_CASE("basic hypergeometric series") {
    const QContext ctx(R(1, 2), 6);
    const Box b = Box::power({Var::t}, 6);
    auto c = [&](const Rational& v) { return Series::constant(b, v); };
    const Rational a = R(1, 3);
    const Rational cc = R(1, 5);
    {
        const std::vector<Series> up{c(R(2)), c(a)};
        const std::vector<Series> lo{c(cc)};
        const Series v = phi_rs(ctx, up, lo, c(cc * ctx.q() / a));
        CHECK(v == c(R(1, 2)));
    }
    {
        const std::vector<Series> up{c(R(1)), c(a)};
        const std::vector<Series> lo{c(cc)};
        CHECK(phi_rs(ctx, up, lo, c(R(5))) == c(R(1)));
    }
    {
        // 1phi0[a; -; q; t] = (at)_inf/(t)_inf
        const Series t = Series::variable(b, Var::t);
        const std::vector<Series> up{c(a)};
        const Series lhs = phi_rs(ctx, up, {}, t);
        const Series rhs = q_pochhammer_inf(ctx, t * a, false) * q_pochhammer_inf(ctx, t, true);
        CHECK(lhs == rhs);
    }
    {
        // Terminating: q^{-n} upper gives n + 1 nonzero summands.
        for (int n = 0; n <= 8; ++n) {
            const std::vector<Series> up{c(ctx.q_pow(-n)), c(R(2, 7))};
            const std::vector<Series> lo{c(R(-3, 4))};
            const auto terms = phi_rs_terms(ctx, up, lo, c(R(5, 3)));
            int nonzero = 0;
            for (const auto& term : terms) {
                nonzero += term.is_zero() ? 0 : 1;
            }
            CHECK(nonzero == n + 1);
        }
    }
    {
        const std::vector<Series> up{c(R(2, 7))};
        CHECK_THROWS_AS(phi_rs(ctx, up, {}, c(R(1, 3))), NonterminatingConstantArgument);
        const std::vector<Series> up2{c(ctx.q_pow(-3))};
        const std::vector<Series> lo2{c(ctx.q_pow(-1))};
        CHECK_THROWS_AS(phi_rs(ctx, up2, lo2, c(R(1))), PoleInLowerParameter);
    }
}
