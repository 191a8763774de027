#include "qid/families.hpp"

#include <stdexcept>
#include <string>

#include "qid/errors.hpp"
#include "qid/operators.hpp"

namespace qid {

void FamilySpec::validate(const QContext& ctx) const {
    if (a.size() != b.size() + 1) {
        throw std::invalid_argument("family needs r+1 upper and r lower parameters");
    }
    for (const auto& bj : b) {
        if (ctx.negative_power_index(bj)) {
            throw PoleInLowerParameter("lower family parameter " + to_string(bj) + " is a pole");
        }
    }
}

Rational family_ratio(const QContext& ctx, const FamilySpec& fam, int k) {
    const Rational num = q_pochhammer(ctx, std::span<const Rational>(fam.a), k);
    const Rational den = q_pochhammer(ctx, std::span<const Rational>(fam.b), k);
    if (is_zero(den)) {
        throw PoleInLowerParameter("(b;q)_" + std::to_string(k) + " vanishes");
    }
    return num / den;
}

Series cauchy_p(const QContext& ctx, int n, const Series& x, const Series& y) {
    Series r = Series::constant(x.box(), 1);
    for (int k = 0; k < n; ++k) {
        r = r * (x - y * ctx.q_pow(k));
    }
    return r;
}

namespace {

enum class Kind { phi, psi, psi_unsigned };

int binom2(int k) { return k * (k - 1) / 2; }

Series family_sum(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y, Kind kind) {
    if (n < 0) {
        throw std::invalid_argument("family degree must be nonnegative");
    }
    if (fam.a.size() != fam.b.size() + 1) {
        throw std::invalid_argument("family needs r+1 upper and r lower parameters");
    }
    Series sum(x.box());
    for (int k = 0; k <= n; ++k) {
        Rational c = q_binomial(ctx, n, k) * family_ratio(ctx, fam, k);
        if (kind != Kind::phi) {
            c *= ctx.q_pow(binom2(k + 1) - n * k);
            if (kind == Kind::psi && k % 2 == 1) {
                c = -c;
            }
        }
        if (is_zero(c)) {
            continue;
        }
        sum = sum + pow(x, k) * pow(y, n - k) * c;
    }
    return sum;
}

Series via_operator(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y, bool psi) {
    const Box& box = x.box();
    const bool y_is_var = box.index_of(Var::y) && y == Series::variable(box, Var::y);
    Box work = box;
    if (!box.index_of(Var::y)) {
        // Acted variable is a scratch y appended to the box.
        work.vars.push_back(Var::y);
        work.lo.push_back(0);
        work.hi.push_back(n);
    } else if (!y_is_var) {
        throw std::invalid_argument("y must be the formal y when the box already carries y");
    }
    const std::size_t iy = *work.index_of(Var::y);
    work.hi[iy] = std::max(work.hi[iy], n);
    auto lift = [&](const Series& p) {
        Series out(work);
        for (const auto& [e, c] : p.terms()) {
            Exponents f{};
            for (std::size_t j = 0; j < box.size(); ++j) {
                f[*work.index_of(box.vars[j])] = e[j];
            }
            out.add_term(f, c);
        }
        return out;
    };
    const Series xl = lift(x);
    OperatorSpec spec{fam, xl * (psi ? Rational(ctx.q() - 1) : Rational(1 - ctx.q())),
                      psi ? OperatorKind::E : OperatorKind::T, Var::y};
    const Series yn = pow(Series::variable(work, Var::y), n);
    const Series applied = apply_homogeneous_operator(ctx, spec, yn);
    if (y_is_var) {
        return restrict_to(applied, box);
    }
    // Replace the scratch y by the supplied value, then drop it.
    const Series value = lift(y);
    Series out(box);
    const Series substituted = substitute(applied, Var::y, value);
    for (const auto& [e, c] : substituted.terms()) {
        if (e[iy] != 0) {
            throw SeriesError("scratch variable survived substitution");
        }
        Exponents f{};
        for (std::size_t j = 0; j < box.size(); ++j) {
            f[j] = e[*work.index_of(box.vars[j])];
        }
        out.add_term(f, c);
    }
    return out;
}

} // namespace

Series phi_family(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y) {
    return family_sum(ctx, fam, n, x, y, Kind::phi);
}

Series psi_family(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y) {
    return family_sum(ctx, fam, n, x, y, Kind::psi);
}

Series psi_family_unsigned(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y) {
    return family_sum(ctx, fam, n, x, y, Kind::psi_unsigned);
}

Series phi_family_via_operator(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y) {
    return via_operator(ctx, fam, n, x, y, false);
}

Series psi_family_via_operator(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y) {
    return via_operator(ctx, fam, n, x, y, true);
}

Series hahn_phi(const QContext& ctx, const Rational& a, int n, const Series& x) {
    Series sum(x.box());
    for (int k = 0; k <= n; ++k) {
        sum = sum + pow(x, k) * (q_binomial(ctx, n, k) * q_pochhammer(ctx, a, k));
    }
    return sum;
}

Series hahn_psi(const QContext& ctx, const Rational& a, int n, const Series& x) {
    Series sum(x.box());
    for (int k = 0; k <= n; ++k) {
        const Rational c = q_binomial(ctx, n, k) * ctx.q_pow(k * (k - n)) * q_pochhammer(ctx, a * ctx.q_pow(1 - k), k);
        sum = sum + pow(x, k) * c;
    }
    return sum;
}

} // namespace qid
