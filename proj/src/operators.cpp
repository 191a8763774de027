#include "qid/operators.hpp"

#include <string>

#include "qid/errors.hpp"

namespace qid {

namespace {

Series lower_in(const QContext& ctx, const Series& p, Var v, bool inverse) {
    const Box& box = p.box();
    const std::size_t i = box.require_index(v);
    Series out(box);
    for (const auto& [e, c] : p.terms()) {
        const int n = e[i];
        if (n == 0) {
            continue;
        }
        Exponents f = e;
        f[i] = n - 1;
        if (f[i] < box.lo[i]) {
            throw SeriesError("q-derivative underflows the lower bound of " + std::string(var_name(v)));
        }
        Rational k = c * q_number(ctx, n);
        if (inverse) {
            k *= ctx.q_pow(1 - n);
        }
        out.add_term(f, k);
    }
    return out;
}

} // namespace

Series apply_dq(const QContext& ctx, const Series& p, Var v) { return lower_in(ctx, p, v, false); }

Series apply_dq_inv(const QContext& ctx, const Series& p, Var v) { return lower_in(ctx, p, v, true); }

Series apply_dq_power(const QContext& ctx, const Series& p, Var v, int k, Direction dir) {
    Series r = p;
    for (int j = 0; j < k && !r.is_zero(); ++j) {
        r = dir == Direction::forward ? apply_dq(ctx, r, v) : apply_dq_inv(ctx, r, v);
    }
    return r;
}

Series dq_difference_quotient(const QContext& ctx, const Series& p, Var v) {
    const Series diff = p - substitute_scaled(p, v, ctx.q());
    const std::size_t i = p.box().require_index(v);
    Series out(p.box());
    for (const auto& [e, c] : diff.terms()) {
        Exponents f = e;
        f[i] -= 1;
        if (f[i] < p.box().lo[i]) {
            throw SeriesError("difference quotient underflows the lower bound");
        }
        out.add_term(f, c / (1 - ctx.q()));
    }
    return out;
}

Series apply_homogeneous_operator(const QContext& ctx, const OperatorSpec& spec, const Series& p) {
    const Box& box = p.box();
    const std::size_t i = box.require_index(spec.acted);
    if (!spec.scale.box().same_vars(box)) {
        throw SeriesError("operator scale lives over different variables");
    }
    for (const auto& [e, c] : spec.scale.terms()) {
        if (e[i] != 0) {
            throw std::invalid_argument("operator scale involves the acted variable");
        }
    }
    spec.family.validate(ctx);
    const Direction dir = spec.kind == OperatorKind::T ? Direction::forward : Direction::backward;
    const int top = p.is_zero() ? 0 : p.degree_range(spec.acted).second;
    const int cap = ctx.order() + std::max(0, top) + 1;

    Series sum = p;
    Series iterate = p;
    for (int k = 1;; ++k) {
        iterate = restrict_to(spec.scale * (dir == Direction::forward ? apply_dq(ctx, iterate, spec.acted)
                                                                       : apply_dq_inv(ctx, iterate, spec.acted)),
                              box);
        if (iterate.is_zero()) {
            break;
        }
        if (k > cap) {
            throw SeriesError("homogeneous operator did not terminate; check the truncation bounds");
        }
        sum = sum + iterate * (family_ratio(ctx, spec.family, k) / ctx.qq(k));
    }
    return sum;
}

} // namespace qid
