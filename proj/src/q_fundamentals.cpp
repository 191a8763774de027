#include "qid/q_fundamentals.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qid/errors.hpp"

namespace qid {

namespace {

int binom2(int k) { return k * (k - 1) / 2; }

// Upper bound on the number of summands of a nonterminating series.
constexpr int kMaxSummands = 4096;

enum class Valuation { constant, positive, negative, mixed };

// Direction of a monomial: every exponent >= 0 with positive degree, every
// exponent <= 0 with negative degree, or neither.
Valuation monomial_valuation(const Series& u) {
    if (u.constant_value()) {
        return Valuation::constant;
    }
    if (!u.is_monomial()) {
        return Valuation::mixed;
    }
    const auto& e = u.terms().begin()->first;
    bool any_pos = false;
    bool any_neg = false;
    for (std::size_t i = 0; i < u.box().size(); ++i) {
        any_pos |= e[i] > 0;
        any_neg |= e[i] < 0;
    }
    if (any_pos && !any_neg) {
        return Valuation::positive;
    }
    if (any_neg && !any_pos) {
        return Valuation::negative;
    }
    return Valuation::mixed;
}

bool has_negative_exponent(const Series& p) {
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            if (e[i] < 0) {
                return true;
            }
        }
    }
    return false;
}

int max_abs_exponent(const Series& p) {
    int m = 0;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            m = std::max(m, std::abs(e[i]));
        }
    }
    return m;
}

Box widened(const Box& box, int by) {
    Box b = box;
    for (std::size_t i = 0; i < b.size(); ++i) {
        b.lo[i] -= by;
        b.hi[i] += by;
    }
    return b;
}

} // namespace

// ---------------------------------------------------------------------------
// QContext

QContext::QContext(Rational q, int order, int cap) : q_(std::move(q)), order_(order), cap_(cap) {
    q_.canonicalize();
    if (is_zero(q_) || abs(q_) >= 1) {
        throw std::invalid_argument("q must satisfy 0 < |q| < 1, got " + to_string(q_));
    }
    if (order_ < 0) {
        throw std::invalid_argument("truncation order must be nonnegative");
    }
    table_limit_ = std::max(256, 4 * cap_);
    pos_pow_.reserve(table_limit_ + 1);
    neg_pow_.reserve(table_limit_ + 1);
    qq_.reserve(table_limit_ + 1);
    pos_pow_.emplace_back(1);
    neg_pow_.emplace_back(1);
    qq_.emplace_back(1);
    const Rational qinv = 1 / q_;
    for (int k = 1; k <= table_limit_; ++k) {
        pos_pow_.push_back(pos_pow_.back() * q_);
        neg_pow_.push_back(neg_pow_.back() * qinv);
        qq_.push_back(qq_.back() * (1 - pos_pow_.back()));
    }
}

Rational QContext::q_pow(int e) const {
    if (e >= 0 && e <= table_limit_) {
        return pos_pow_[static_cast<std::size_t>(e)];
    }
    if (e < 0 && -e <= table_limit_) {
        return neg_pow_[static_cast<std::size_t>(-e)];
    }
    return pow(q_, e);
}

Rational QContext::qq(int k) const {
    if (k < 0) {
        throw std::invalid_argument("(q;q)_k with negative k");
    }
    if (k <= table_limit_) {
        return qq_[static_cast<std::size_t>(k)];
    }
    Rational r = qq_.back();
    for (int j = table_limit_ + 1; j <= k; ++j) {
        r *= 1 - q_pow(j);
    }
    return r;
}

std::optional<int> QContext::negative_power_index(const Rational& u) const {
    for (int n = 0; n <= cap_; ++n) {
        if (neg_pow_[static_cast<std::size_t>(n)] == u) {
            return n;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite and infinite q-shifted factorials

Rational q_pochhammer(const QContext& ctx, const Rational& u, int n) {
    Rational r = 1;
    for (int k = 0; k < n; ++k) {
        r *= 1 - u * ctx.q_pow(k);
    }
    return r;
}

Rational q_pochhammer(const QContext& ctx, std::span<const Rational> us, int n) {
    Rational r = 1;
    for (const auto& u : us) {
        r *= q_pochhammer(ctx, u, n);
    }
    return r;
}

Series q_pochhammer(const QContext& ctx, const Series& u, int n) {
    if (const auto c = u.constant_value()) {
        return Series::constant(u.box(), q_pochhammer(ctx, *c, n));
    }
    const Series one = Series::constant(u.box(), 1);
    Series r = one;
    for (int k = 0; k < n; ++k) {
        r = r * (one - u * ctx.q_pow(k));
    }
    return r;
}

Rational q_pochhammer_reciprocal(const QContext& ctx, const Rational& u, int n) {
    const Rational p = q_pochhammer(ctx, u, n);
    if (is_zero(p)) {
        throw PoleInLowerParameter("(" + to_string(u) + ";q)_" + std::to_string(n) + " vanishes");
    }
    return 1 / p;
}

Series q_pochhammer_reciprocal(const QContext& ctx, const Series& u, int n) {
    switch (monomial_valuation(u)) {
    case Valuation::constant:
        return Series::constant(u.box(), q_pochhammer_reciprocal(ctx, *u.constant_value(), n));
    case Valuation::positive:
        return q_pochhammer_inf(ctx, u * ctx.q_pow(n), false) * q_pochhammer_inf(ctx, u, true);
    case Valuation::negative: {
        const Series inv = pow(u, -1);
        const Series prefix = pow(-u, -n) * ctx.q_pow(-binom2(n));
        return prefix * q_pochhammer_reciprocal(ctx, inv * ctx.q_pow(1 - n), n);
    }
    case Valuation::mixed:
        break;
    }
    throw std::invalid_argument("1/(u;q)_n needs a constant or a one-signed monomial u");
}

Series q_pochhammer_inf(const QContext& ctx, const Series& u, bool inverted) {
    if (u.is_zero()) {
        return Series::constant(u.box(), 1);
    }
    if (u.constant_value()) {
        throw ConstantArgument("(u;q)_infinity of a constant is not a formal series");
    }
    if (has_negative_exponent(u) || u.min_total_degree() < 1) {
        throw std::invalid_argument("(u;q)_infinity needs u without constant term or negative exponents");
    }
    Series sum = Series::constant(u.box(), 1);
    Series power = sum;
    for (int k = 1;; ++k) {
        power = power * u;
        if (power.is_zero()) {
            break;
        }
        Rational c = 1 / ctx.qq(k);
        if (!inverted) {
            c *= ctx.q_pow(binom2(k));
            if (k % 2 == 1) {
                c = -c;
            }
        }
        sum = sum + power * c;
    }
    return sum;
}

Series geometric_series(const Series& v) {
    if (has_negative_exponent(v) || (!v.is_zero() && v.min_total_degree() < 1)) {
        throw std::invalid_argument("geometric_series needs v without constant term or negative exponents");
    }
    Series sum = Series::constant(v.box(), 1);
    Series power = sum;
    while (true) {
        power = power * v;
        if (power.is_zero()) {
            return sum;
        }
        sum = sum + power;
    }
}

// ---------------------------------------------------------------------------
// q-numbers

Rational q_number(const QContext& ctx, int n) { return (1 - ctx.q_pow(n)) / (1 - ctx.q()); }

Rational q_factorial(const QContext& ctx, int n) {
    Rational r = 1;
    for (int k = 1; k <= n; ++k) {
        r *= q_number(ctx, k);
    }
    return r;
}

Rational q_binomial(const QContext& ctx, int n, int k) {
    if (k < 0 || k > n || n < 0) {
        return 0;
    }
    return ctx.qq(n) / (ctx.qq(k) * ctx.qq(n - k));
}

// ---------------------------------------------------------------------------
// Basic hypergeometric series

std::vector<Series> phi_rs_terms(const QContext& ctx, std::span<const Series> upper, std::span<const Series> lower,
                                 const Series& z) {
    const Box& box = z.box();
    for (const auto& p : upper) {
        if (!p.box().same_vars(box)) {
            throw SeriesError("phi_rs: upper parameter over different variables");
        }
    }
    for (const auto& p : lower) {
        if (!p.box().same_vars(box)) {
            throw SeriesError("phi_rs: lower parameter over different variables");
        }
    }
    const int r = static_cast<int>(upper.size());
    const int s = static_cast<int>(lower.size());
    const int sign_power = 1 + s - r;

    // Summation bound.
    std::optional<int> limit;
    for (const auto& p : upper) {
        if (const auto c = p.constant_value()) {
            if (const auto n = ctx.negative_power_index(*c)) {
                limit = limit ? std::min(*limit, *n) : *n;
            }
        }
    }

    // Per-index pieces. Constant lower parameters go into the scalar,
    // positive monomials into the running reciprocal, negative monomials into
    // the finite Laurent part together with z and the upper factors.
    std::vector<Rational> const_lower;
    std::vector<Series> pos_lower;
    std::vector<Series> neg_lower;
    for (const auto& p : lower) {
        switch (monomial_valuation(p)) {
        case Valuation::constant:
            const_lower.push_back(*p.constant_value());
            break;
        case Valuation::positive:
            pos_lower.push_back(p);
            break;
        case Valuation::negative:
            neg_lower.push_back(p);
            break;
        case Valuation::mixed:
            throw std::invalid_argument("phi_rs: lower parameter must be a constant or a one-signed monomial");
        }
    }

    if (!limit) {
        int delta = z.is_zero() ? 0 : z.min_total_degree();
        for (const auto& p : upper) {
            if (!p.constant_value()) {
                delta += std::min(0, p.min_total_degree());
            }
        }
        for (const auto& p : neg_lower) {
            delta -= p.min_total_degree();
        }
        if (z.is_zero()) {
            limit = 0;
        } else if (delta <= 0) {
            throw NonterminatingConstantArgument("phi_rs: series neither terminates nor truncates by degree");
        } else {
            limit = std::max(0, box.max_total_degree()) / delta;
        }
        if (*limit > kMaxSummands) {
            throw NonterminatingConstantArgument("phi_rs: summation bound exceeds the engine cap");
        }
    }

    // Finite part is carried in a widened box so that Laurent factors never
    // lose terms before the reciprocal series is applied.
    int step_span = max_abs_exponent(z);
    for (const auto& p : upper) {
        step_span += max_abs_exponent(p);
    }
    for (const auto& p : neg_lower) {
        step_span += max_abs_exponent(p);
    }
    const Box wide = widened(box, *limit * step_span + 1);
    auto to_wide = [&](const Series& p) { return restrict_to(p, wide); };
    const Series one_wide = Series::constant(wide, 1);
    const Series z_wide = restrict_to(z, wide);
    std::vector<Series> upper_wide;
    for (const auto& p : upper) {
        upper_wide.push_back(to_wide(p));
    }
    std::vector<Series> neg_inv_wide;
    for (const auto& p : neg_lower) {
        neg_inv_wide.push_back(pow(to_wide(p), -1));
    }

    std::vector<Series> terms;
    terms.reserve(static_cast<std::size_t>(*limit) + 1);
    Rational scalar = 1;
    Series finite = one_wide;
    Series recip = Series::constant(box, 1);
    for (int k = 0;; ++k) {
        terms.push_back(restrict_to(finite, box) * recip * scalar);
        if (k == *limit) {
            break;
        }
        // Advance every piece from index k to k + 1.
        const Rational qk = ctx.q_pow(k);
        Rational sign_factor = -ctx.q_pow(k);  // ratio of (-1)^n q^{C(n,2)} between n = k+1 and n = k
        scalar *= pow(sign_factor, sign_power);
        scalar /= 1 - ctx.q_pow(k + 1);
        for (const auto& c : const_lower) {
            const Rational f = 1 - c * qk;
            if (is_zero(f)) {
                throw PoleInLowerParameter("phi_rs: lower parameter " + to_string(c) + " equals q^-" +
                                           std::to_string(k));
            }
            scalar /= f;
        }
        Series step = z_wide;
        for (const auto& u : upper_wide) {
            if (const auto c = u.constant_value()) {
                scalar *= 1 - *c * qk;
            } else {
                step = step * (one_wide - u * qk);
            }
        }
        for (const auto& inv : neg_inv_wide) {
            // 1/(1 - u q^k) = (-u q^k)^{-1} / (1 - q^{-k}/u)
            step = step * inv * Rational(-ctx.q_pow(-k));
            recip = recip * geometric_series(restrict_to(inv, box) * ctx.q_pow(-k));
        }
        for (const auto& u : pos_lower) {
            recip = recip * geometric_series(u * qk);
        }
        finite = finite * step;
        if (is_zero(scalar) || finite.is_zero()) {
            break;
        }
    }
    return terms;
}

Series phi_rs(const QContext& ctx, std::span<const Series> upper, std::span<const Series> lower, const Series& z) {
    Series sum(z.box());
    for (const auto& t : phi_rs_terms(ctx, upper, lower, z)) {
        sum = sum + t;
    }
    return sum;
}

} // namespace qid
