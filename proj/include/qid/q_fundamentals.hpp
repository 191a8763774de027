#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qid/rational.hpp"
#include "qid/series.hpp"

namespace qid {

// The base q together with the truncation order used by one verification run.
// Immutable after construction; the power tables are filled eagerly.
class QContext {
public:
    static constexpr int kDefaultCap = 64;

    // Requires 0 < |q| < 1 and order >= 0.
    QContext(Rational q, int order, int cap = kDefaultCap);

    const Rational& q() const { return q_; }
    int order() const { return order_; }
    int cap() const { return cap_; }

    // q^e for any integer e.
    Rational q_pow(int e) const;
    // (q;q)_k.
    Rational qq(int k) const;
    // n with u == q^{-n} and 0 <= n <= cap, if any.
    std::optional<int> negative_power_index(const Rational& u) const;

private:
    Rational q_;
    int order_;
    int cap_;
    int table_limit_;
    std::vector<Rational> pos_pow_;  // q^0 .. q^limit
    std::vector<Rational> neg_pow_;  // q^0 .. q^-limit
    std::vector<Rational> qq_;       // (q;q)_0 .. (q;q)_limit
};

// (u;q)_n for a rational u.
Rational q_pochhammer(const QContext& ctx, const Rational& u, int n);
// (u_1, ..., u_m; q)_n.
Rational q_pochhammer(const QContext& ctx, std::span<const Rational> us, int n);
// (u;q)_n = prod_{k<n} (1 - u q^k) for a series-valued u, truncated to u's box.
Series q_pochhammer(const QContext& ctx, const Series& u, int n);

// 1/(u;q)_n. Throws PoleInLowerParameter when (u;q)_n = 0.
Rational q_pochhammer_reciprocal(const QContext& ctx, const Rational& u, int n);
// 1/(u;q)_n for a constant or monomial u. A monomial with positive degree
// uses the Euler expansions; one with negative degree is first rewritten as
// (u;q)_n = (-u)^n q^{C(n,2)} (q^{1-n}/u;q)_n.
Series q_pochhammer_reciprocal(const QContext& ctx, const Series& u, int n);

// (u;q)_infinity (inverted = false) or 1/(u;q)_infinity (inverted = true),
// defined through the Euler expansions. u must have no constant term and no
// negative exponents. The zero series gives 1; any other constant raises
// ConstantArgument.
Series q_pochhammer_inf(const QContext& ctx, const Series& u, bool inverted);

// 1/(1 - v) for v without constant term and without negative exponents.
Series geometric_series(const Series& v);

Rational q_number(const QContext& ctx, int n);
Rational q_factorial(const QContext& ctx, int n);
// Gaussian binomial; zero for k < 0 or k > n.
Rational q_binomial(const QContext& ctx, int n, int k);

// Summands of r_Phi_s[upper; lower; q; z]; all arguments share z's box.
// The sum runs to n when an upper parameter equals q^{-n}, otherwise until
// the summands' total degree leaves the box.
std::vector<Series> phi_rs_terms(const QContext& ctx, std::span<const Series> upper, std::span<const Series> lower,
                                 const Series& z);
Series phi_rs(const QContext& ctx, std::span<const Series> upper, std::span<const Series> lower, const Series& z);

} // namespace qid
