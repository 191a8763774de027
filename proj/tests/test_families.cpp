#include "doctest.h"

#include "qid/errors.hpp"
#include "qid/families.hpp"
#include "qid/operators.hpp"
#include "test_util.hpp"

using namespace qid;
using qid::test::ex;
using qid::test::R;

namespace {

FamilySpec random_family(std::mt19937_64& rng, const QContext& ctx, int r) {
    FamilySpec fam;
    for (int i = 0; i <= r; ++i) {
        fam.a.push_back(test::random_rational(rng));
    }
    for (int j = 0; j < r; ++j) {
        Rational b;
        do {
            b = test::random_rational(rng);
        } while (ctx.negative_power_index(b));
        fam.b.push_back(b);
    }
    return fam;
}

Rational product_ratio(const FamilySpec& fam) {
    Rational r = 1;
    for (const auto& a : fam.a) {
        r *= 1 - a;
    }
    for (const auto& b : fam.b) {
        r /= 1 - b;
    }
    return r;
}

} // namespace

TEST_CASE("Cauchy polynomials") {
    const QContext ctx(R(1, 2), 6);
    const Box b = Box::power({Var::x, Var::y}, 6);
    const Series x = Series::variable(b, Var::x);
    const Series y = Series::variable(b, Var::y);
    CHECK(cauchy_p(ctx, 0, x, y) == Series::constant(b, 1));
    CHECK(cauchy_p(ctx, 1, x, y) == x - y);
    CHECK(cauchy_p(ctx, 2, x, y) == x * x - x * y * R(3, 2) + y * y * R(1, 2));
}

TEST_CASE("low-degree family values") {
    std::mt19937_64 rng(31);
    const QContext ctx(R(1, 3), 6);
    const Box b = Box::power({Var::x, Var::y}, 6);
    const Series x = Series::variable(b, Var::x);
    const Series y = Series::variable(b, Var::y);
    for (int r = 0; r <= 2; ++r) {
        const FamilySpec fam = random_family(rng, ctx, r);
        CHECK(phi_family(ctx, fam, 0, x, y) == Series::constant(b, 1));
        CHECK(psi_family(ctx, fam, 0, x, y) == Series::constant(b, 1));
        CHECK(phi_family(ctx, fam, 1, x, y) == y + x * product_ratio(fam));
        CHECK(psi_family(ctx, fam, 1, x, y) == y - x * product_ratio(fam));
        CHECK(psi_family_unsigned(ctx, fam, 1, x, y) == y + x * product_ratio(fam));
    }
    // r = 0, a1 = 0, q = 1/2, n = 2 by a brute-force three-term sum.
    const QContext half(R(1, 2), 6);
    const FamilySpec zero{{R(0)}, {}};
    const Rational q = half.q();
    const Series expect = y * y - x * y * ((1 + q) * pow(q, 1 - 2)) + x * x * pow(q, 3 - 4);
    CHECK(psi_family(half, zero, 2, x, y) == expect);
}

TEST_CASE("operator forms agree with the direct sums") {
    std::mt19937_64 rng(37);
    const Box b = Box::power({Var::x, Var::y}, 8);
    const Series x = Series::variable(b, Var::x);
    const Series y = Series::variable(b, Var::y);
    for (const Rational q : {R(1, 2), R(-1, 3)}) {
        const QContext ctx(q, 8);
        for (int r = 0; r <= 2; ++r) {
            for (int trial = 0; trial < 4; ++trial) {
                const FamilySpec fam = random_family(rng, ctx, r);
                for (int n = 0; n <= 8; n += 2) {
                    CHECK(phi_family_via_operator(ctx, fam, n, x, y) == phi_family(ctx, fam, n, x, y));
                    CHECK(psi_family_via_operator(ctx, fam, n, x, y) == psi_family(ctx, fam, n, x, y));
                }
            }
        }
    }
}

TEST_CASE("unsigned psi disagrees with the operator form") {
    const QContext ctx(R(1, 2), 4);
    const Box b = Box::power({Var::x, Var::y}, 4);
    const Series x = Series::variable(b, Var::x);
    const Series y = Series::variable(b, Var::y);
    const FamilySpec fam{{R(1, 3)}, {}};
    CHECK(psi_family_via_operator(ctx, fam, 1, x, y) != psi_family_unsigned(ctx, fam, 1, x, y));
}

TEST_CASE("operator form with rational x and y") {
    const QContext ctx(R(2, 5), 4);
    const Box b = Box::power({Var::t}, 4);
    const Series x = Series::constant(b, R(3, 4));
    const Series y = Series::constant(b, R(-2, 3));
    const FamilySpec fam{{R(1, 3), R(2)}, {R(-5)}};
    for (int n = 0; n <= 5; ++n) {
        CHECK(phi_family_via_operator(ctx, fam, n, x, y) == phi_family(ctx, fam, n, x, y));
        CHECK(psi_family_via_operator(ctx, fam, n, x, y) == psi_family(ctx, fam, n, x, y));
    }
}

TEST_CASE("homogeneity") {
    std::mt19937_64 rng(41);
    const QContext ctx(R(1, 3), 12);
    const Box b = Box::power({Var::x, Var::y, Var::t}, 12);
    const Series x = Series::variable(b, Var::x);
    const Series y = Series::variable(b, Var::y);
    const Series lam = Series::variable(b, Var::t);
    const FamilySpec fam = random_family(rng, ctx, 1);
    for (int n = 0; n <= 5; ++n) {
        CHECK(phi_family(ctx, fam, n, lam * x, lam * y) == pow(lam, n) * phi_family(ctx, fam, n, x, y));
        CHECK(psi_family(ctx, fam, n, lam * x, lam * y) == pow(lam, n) * psi_family(ctx, fam, n, x, y));
    }
}

TEST_CASE("cancelling parameters collapse to the trivial family") {
    std::mt19937_64 rng(43);
    const QContext ctx(R(1, 2), 6);
    const Box b = Box::power({Var::x, Var::y}, 6);
    const Series x = Series::variable(b, Var::x);
    const Series y = Series::variable(b, Var::y);
    const FamilySpec base{{R(0)}, {}};
    for (int r = 1; r <= 2; ++r) {
        FamilySpec fam = random_family(rng, ctx, r);
        for (int j = 0; j < r; ++j) {
            fam.a[static_cast<std::size_t>(j)] = fam.b[static_cast<std::size_t>(j)];
        }
        fam.a.back() = 0;
        for (int n = 0; n <= 6; ++n) {
            CHECK(phi_family(ctx, fam, n, x, y) == phi_family(ctx, base, n, x, y));
            CHECK(psi_family(ctx, fam, n, x, y) == psi_family(ctx, base, n, x, y));
        }
    }
}

TEST_CASE("Hahn polynomials") {
    std::mt19937_64 rng(47);
    const QContext ctx(R(1, 3), 8);
    const Box b = Box::power({Var::x}, 8);
    const Series x = Series::variable(b, Var::x);
    const Series one = Series::constant(b, 1);
    for (int trial = 0; trial < 5; ++trial) {
        const Rational a = test::random_nonzero(rng);
        CHECK(hahn_phi(ctx, a, 0, x) == one);
        CHECK(hahn_psi(ctx, a, 1, x) == one + x * (1 - a));
        for (int n = 0; n <= 8; ++n) {
            CHECK(hahn_phi(ctx, a, n, x) == phi_family(ctx, FamilySpec{{a}, {}}, n, x, one));
            // Coefficientwise: q^{k(k-n)}(a q^{1-k})_k = (-1)^k q^{C(k+1,2)-nk} (1/a)_k (a x)^k.
            CHECK(hahn_psi(ctx, a, n, x) == psi_family(ctx, FamilySpec{{1 / a}, {}}, n, x * a, one));
        }
    }
}

TEST_CASE("family validation") {
    const QContext ctx(R(1, 2), 6);
    const FamilySpec short_a{{R(1)}, {R(2)}};
    const FamilySpec pole{{R(1), R(3)}, {R(4)}};
    CHECK_THROWS(short_a.validate(ctx));
    CHECK_THROWS_AS(pole.validate(ctx), PoleInLowerParameter);
}
