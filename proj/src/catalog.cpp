#include "qid/catalog.hpp"

#include <random>
#include <stdexcept>

#include "qid/errors.hpp"
#include "qid/operators.hpp"

namespace qid {

namespace {

using Sides = std::vector<Series>;

int binom2(int k) { return k * (k - 1) / 2; }

Rational sign(int k) { return k % 2 ? Rational(-1) : Rational(1); }

Series cst(const Box& b, const Rational& c) { return Series::constant(b, c); }
Series var(const Box& b, Var v) { return Series::variable(b, v); }

Series inf(const QContext& ctx, const Series& u) { return q_pochhammer_inf(ctx, u, false); }
Series inf_inv(const QContext& ctx, const Series& u) { return q_pochhammer_inf(ctx, u, true); }

Rational one_minus_q_inv(const QContext& ctx) { return 1 / (1 - ctx.q()); }

int hi_of(const Box& b, Var v) { return b.hi[b.require_index(v)]; }

std::vector<Series> consts(const Box& b, const std::vector<Rational>& values) {
    std::vector<Series> out;
    for (const auto& v : values) {
        out.push_back(cst(b, v));
    }
    return out;
}

std::vector<Series> with(std::vector<Series> xs, const Series& extra) {
    xs.push_back(extra);
    return xs;
}

// (a)_k / ((q)_k (b)_k)
Rational op_coeff(const QContext& ctx, const FamilySpec& fam, int k) { return family_ratio(ctx, fam, k) / ctx.qq(k); }

// Rational values of the families at rational x, y.
std::vector<Rational> phi_values(const QContext& ctx, const FamilySpec& fam, int count, const Rational& x,
                                 const Rational& y) {
    const Box none;
    std::vector<Rational> out;
    for (int n = 0; n <= count; ++n) {
        out.push_back(phi_family(ctx, fam, n, cst(none, x), cst(none, y)).constant_value().value_or(0));
    }
    return out;
}

std::vector<Rational> psi_values(const QContext& ctx, const FamilySpec& fam, int count, const Rational& x,
                                 const Rational& y, bool signed_form = true) {
    const Box none;
    std::vector<Rational> out;
    for (int n = 0; n <= count; ++n) {
        const Series v = signed_form ? psi_family(ctx, fam, n, cst(none, x), cst(none, y))
                                     : psi_family_unsigned(ctx, fam, n, cst(none, x), cst(none, y));
        out.push_back(v.constant_value().value_or(0));
    }
    return out;
}

// sum_n c_n t^n over a one-variable box.
Series univariate(const Box& box, const std::vector<Rational>& c) {
    Series out(box);
    for (std::size_t n = 0; n < c.size(); ++n) {
        Exponents e{};
        e[0] = static_cast<int>(n);
        out.add_term(e, c[n]);
    }
    return out;
}

Box box_with(const Box& b, Var v, int lo, int hi) { return b.with_bounds(v, lo, hi); }


// ---------------------------------------------------------------------------
// Shared right-hand sides, parameterized so that the specialization checks
// can feed formal or numeric values. Every box passed in must contain `a`.

Sides malm_rhs(int which, const QContext& ctx, const Box& box, const Rational& s, int k) {
    const Series a = var(box, Var::a);
    const Rational base = s * one_minus_q_inv(ctx);
    switch (which) {
    case 1:
        return {inf_inv(ctx, a * s) * pow(base, k)};
    case 2:
        return {inf_inv(ctx, a * (s * ctx.q_pow(-k))) * (ctx.q_pow(-binom2(k)) * pow(base, k))};
    case 3:
        return {inf(ctx, a * (s * ctx.q_pow(k))) * (sign(k) * ctx.q_pow(binom2(k)) * pow(base, k))};
    default:
        return {inf(ctx, a * s) * pow(Rational(-base), k)};
    }
}

// (w/(1-q))^n (s/w;q)_n/(as;q)_n (as)_inf/(aw;q)_inf; w a nonzero constant or a
// formal monomial (then the box needs w-bounds down to -n).
Series damm_fwd_rhs(const QContext& ctx, const Box& box, const Series& s, const Series& w, int n) {
    const Series a = var(box, Var::a);
    const Series pre = pow(w * one_minus_q_inv(ctx), n) * q_pochhammer(ctx, s * pow(w, -1), n);
    return pre * q_pochhammer_reciprocal(ctx, a * s, n) * inf(ctx, a * s) * inf_inv(ctx, a * w);
}

// (-q/((1-q)a))^n (s/w;q)_n/(q/(aw);q)_n (as)_inf/(aw;q)_inf. The box needs
// a-bounds [-n, N + n].
Series damm_bwd_rhs(const QContext& ctx, const Box& box, const Series& s, const Series& w, int n) {
    const Series a = var(box, Var::a);
    const Series pre = pow(pow(a, -1) * (-ctx.q() * one_minus_q_inv(ctx)), n) * q_pochhammer(ctx, s * pow(w, -1), n);
    const Series recip = q_pochhammer_reciprocal(ctx, pow(a * w, -1) * ctx.q(), n);
    return (pre * recip) * inf(ctx, a * s) * inf_inv(ctx, a * w);
}

// (t/(1-q))^n (as)_inf/(at,aw)_inf 3phi1[q^-n, s/w, at; as; q; w q^n/t].
Series zition_fwd_rhs(const QContext& ctx, const Box& box, const Series& s, const Rational& t, const Series& w,
                      int n) {
    const Series a = var(box, Var::a);
    const std::vector<Series> up{cst(box, ctx.q_pow(-n)), s * pow(w, -1), a * t};
    const std::vector<Series> lo{a * s};
    const Series phi = phi_rs(ctx, up, lo, w * (ctx.q_pow(n) / t));
    return phi * pow(t * one_minus_q_inv(ctx), n) * inf(ctx, a * s) * inf_inv(ctx, a * t) * inf_inv(ctx, a * w);
}

// (-t/(1-q))^n (at,as)_inf/(aw)_inf 3phi2[q^-n, q/(at), s/w; q/(aw), 0; q; q].
// The box needs a lower a-bound of at most -1.
Series zition_bwd_rhs(const QContext& ctx, const Box& box, const Series& s, const Rational& t, const Series& w,
                      int n) {
    const Series a = var(box, Var::a);
    const std::vector<Series> up{cst(box, ctx.q_pow(-n)), pow(a, -1) * (ctx.q() / t), s * pow(w, -1)};
    const std::vector<Series> lo{pow(a * w, -1) * ctx.q(), cst(box, 0)};
    const Series phi = phi_rs(ctx, up, lo, cst(box, ctx.q()));
    return phi * pow(Rational(-t * one_minus_q_inv(ctx)), n) * inf(ctx, a * t) * inf(ctx, a * s) *
           inf_inv(ctx, a * w);
}

Series rogers2_psi_rhs(const QContext& ctx, const Box& box, const ParamSet& p) {
    const Rational& x = p.at("x");
    const Rational& y = p.at("y");
    const Box work = box_with(box, Var::s, -1, hi_of(box, Var::s));
    const Series t = var(work, Var::t);
    const Series s = var(work, Var::s);
    const auto up = with(consts(work, p.fam.a), t * pow(s, -1));
    const auto lo = with(consts(work, p.fam.b), pow(s, -1) * (ctx.q() / y));
    const Series phi = restrict_to(phi_rs(ctx, up, lo, cst(work, x * ctx.q() / y)), box);
    return phi * inf(ctx, var(box, Var::t) * y) * inf_inv(ctx, var(box, Var::s) * y);
}

Series sa_psi_rhs(const QContext& ctx, const Box& box, const ParamSet& p) {
    const Rational& x = p.at("x");
    const Rational& y = p.at("y");
    const Rational& lambda = p.at("lambda");
    const Box work = box_with(box, Var::t, -1, hi_of(box, Var::t));
    const Series t = var(work, Var::t);
    const auto up = with(consts(work, p.fam.a), cst(work, lambda));
    const auto lo = with(consts(work, p.fam.b), pow(t, -1) * (ctx.q() / y));
    const Series phi = restrict_to(phi_rs(ctx, up, lo, cst(work, x * ctx.q() / y)), box);
    const Series tb = var(box, Var::t);
    return phi * inf(ctx, tb * (lambda * y)) * inf_inv(ctx, tb * y);
}

// ---------------------------------------------------------------------------
// Operator identities over (a, x): the operator scale is c x with c a rational
// parameter, so that the x-degree bounds the operator order.

Series operator_lhs(const QContext& ctx, const ParamSet& p, const Box& box, OperatorKind kind, const Rational& scale,
                    const std::function<Series(const Box&)>& input) {
    const Box in = box_with(box, Var::a, 0, hi_of(box, Var::a) + hi_of(box, Var::x));
    const OperatorSpec spec{p.fam, var(in, Var::x) * scale, kind, Var::a};
    return restrict_to(apply_homogeneous_operator(ctx, spec, input(in)), box);
}

// sum_n (a)_n/((q)_n (b)_n) (c x t/(1-q))^n * inner(n), with the caller's sign
// folded into `factor`.
Series operator_rhs_sum(const QContext& ctx, const ParamSet& p, const Box& work, const Rational& factor,
                        const std::function<Series(int)>& inner) {
    const Series x = var(work, Var::x);
    Series sum(work);
    for (int n = 0; n <= hi_of(work, Var::x); ++n) {
        sum = sum + inner(n) * pow(x * factor, n) * op_coeff(ctx, p.fam, n);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Constraints

Constraint nonzero(const std::string& name) {
    return {name + " != 0", [name](const ParamSet& p, const QContext&) { return !is_zero(p.at(name)); }};
}

Constraint not_pole(const std::string& name) {
    return {name + " not in q^-m", [name](const ParamSet& p, const QContext& ctx) {
                return !ctx.negative_power_index(p.at(name));
            }};
}

Constraint family_poles() {
    return {"b_j not in q^-m", [](const ParamSet& p, const QContext& ctx) {
                for (const auto& b : p.fam.b) {
                    if (ctx.negative_power_index(b)) {
                        return false;
                    }
                }
                return true;
            }};
}

// ---------------------------------------------------------------------------

struct Spec {
    std::string id;
    std::string eq;
    std::vector<Var> vars;
    std::vector<std::string> scalars;
    bool family = false;
    int n_max = -1;
    std::vector<Constraint> constraints;
    std::string note;
    Builder lhs;
    Builder rhs;
};

Identity make(Spec s) {
    Identity id;
    id.id = std::move(s.id);
    id.paper_eq = std::move(s.eq);
    id.vars = std::move(s.vars);
    id.fixed_caps.assign(id.vars.size(), 0);
    id.scalars = std::move(s.scalars);
    id.uses_family = s.family;
    id.n_max = s.n_max;
    id.constraints = std::move(s.constraints);
    if (id.uses_family) {
        id.constraints.push_back(family_poles());
    }
    id.domain_note = std::move(s.note);
    id.lhs = std::move(s.lhs);
    id.rhs = std::move(s.rhs);
    return id;
}

std::vector<Identity> build_catalog() {
    std::vector<Identity> cat;

    // -- Jackson derivatives of the infinite products --------------------------
    for (int which = 1; which <= 4; ++which) {
        const bool inverted = which <= 2;
        const Direction dir = which % 2 ? Direction::forward : Direction::backward;
        cat.push_back(make({
            "MALM.id" + std::to_string(which),
            "Eq. (\"id" + std::to_string(which) + "\")",
            {Var::a},
            {"s"},
            false,
            6,
            {},
            "",
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Box in = box_with(box, Var::a, 0, hi_of(box, Var::a) + p.n);
                const Series as = var(in, Var::a) * p.at("s");
                const Series f = inverted ? inf_inv(ctx, as) : inf(ctx, as);
                return {restrict_to(apply_dq_power(ctx, f, Var::a, p.n, dir), box)};
            },
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return malm_rhs(which, ctx, box, p.at("s"), p.n);
            },
        }));
    }

    // -- Leibniz rules --------------------------------------------------------
    for (const Direction dir : {Direction::forward, Direction::backward}) {
        const bool fwd = dir == Direction::forward;
        auto factors = [](const ParamSet& p, const Box& box) {
            std::mt19937_64 rng(p.seed);
            const int deg = hi_of(box, Var::y) / 2;
            std::pair<Series, Series> fg{Series(box), Series(box)};
            for (Series* s : {&fg.first, &fg.second}) {
                for (int e = 0; e <= deg; ++e) {
                    const long num = static_cast<long>(rng() % 19) - 9;
                    const long den = static_cast<long>(rng() % 9) + 1;
                    Exponents ex{};
                    ex[0] = e;
                    s->add_term(ex, make_rational(num, den));
                }
            }
            return fg;
        };
        Identity id = make({
            fwd ? "LEIBNIZ.fwd" : "LEIBNIZ.bwd",
            fwd ? "Eq. (\"Lieb\")" : "Eq. (\"Lieb1\")",
            {Var::y},
            {},
            false,
            6,
            {},
            "",
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const auto [f, g] = factors(p, box);
                return {apply_dq_power(ctx, f * g, Var::y, p.n, dir)};
            },
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const auto [f, g] = factors(p, box);
                Series sum(box);
                for (int k = 0; k <= p.n; ++k) {
                    const Rational c = q_binomial(ctx, p.n, k) * (fwd ? ctx.q_pow(k * (k - p.n)) : Rational(1));
                    const Series shifted = substitute_scaled(g, Var::y, ctx.q_pow(fwd ? k : -k));
                    sum = sum + apply_dq_power(ctx, f, Var::y, k, dir) *
                                    apply_dq_power(ctx, shifted, Var::y, p.n - k, dir) * c;
                }
                return {sum};
            },
        });
        id.uses_seed = true;
        cat.push_back(std::move(id));
    }

    // -- Derivatives of the product ratio -------------------------------------
    cat.push_back(make({
        "DAMM.fwd",
        "Eq. (\"aberll\")",
        {Var::a},
        {"s", "omega"},
        false,
        6,
        {nonzero("omega")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Box in = box_with(box, Var::a, 0, hi_of(box, Var::a) + p.n);
            const Series a = var(in, Var::a);
            const Series f = inf(ctx, a * p.at("s")) * inf_inv(ctx, a * p.at("omega"));
            return {restrict_to(apply_dq_power(ctx, f, Var::a, p.n, Direction::forward), box)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {damm_fwd_rhs(ctx, box, cst(box, p.at("s")), cst(box, p.at("omega")), p.n)};
        },
    }));
    cat.push_back(make({
        "DAMM.bwd",
        "Eq. (\"abell\")",
        {Var::a},
        {"s", "omega"},
        false,
        6,
        {nonzero("omega")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Box in = box_with(box, Var::a, 0, hi_of(box, Var::a) + p.n);
            const Series a = var(in, Var::a);
            const Series f = inf(ctx, a * p.at("s")) * inf_inv(ctx, a * p.at("omega"));
            return {restrict_to(apply_dq_power(ctx, f, Var::a, p.n, Direction::backward), box)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::a);
            const Box work = box_with(box, Var::a, -p.n, hi + p.n);
            return {restrict_to(damm_bwd_rhs(ctx, work, cst(work, p.at("s")), cst(work, p.at("omega")), p.n), box)};
        },
    }));

    // -- q-Chu-Vandermonde ----------------------------------------------------
    for (const bool second : {false, true}) {
        cat.push_back(make({
            second ? "CHU.2" : "CHU.1",
            second ? "Eq. (\"qchuv\")" : "Eq. (\"chuv\")",
            {},
            {"a", "c"},
            false,
            20,
            {nonzero("a"), not_pole("c")},
            "",
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Rational& a = p.at("a");
                const Rational& c = p.at("c");
                const std::vector<Series> up{cst(box, ctx.q_pow(-p.n)), cst(box, a)};
                const std::vector<Series> lo{cst(box, c)};
                const Rational z = second ? ctx.q() : c * ctx.q_pow(p.n) / a;
                return {phi_rs(ctx, up, lo, cst(box, z))};
            },
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Rational& a = p.at("a");
                const Rational& c = p.at("c");
                Rational v = q_pochhammer(ctx, c / a, p.n) / q_pochhammer(ctx, c, p.n);
                if (second) {
                    v *= pow(a, p.n);
                }
                return {cst(box, v)};
            },
        }));
    }

    // -- Derivatives of three-factor products ---------------------------------
    cat.push_back(make({
        "ZITION.fwd",
        "Eq. (\"oker1\")",
        {Var::a},
        {"s", "t", "omega"},
        false,
        6,
        {nonzero("t"), nonzero("omega")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Box in = box_with(box, Var::a, 0, hi_of(box, Var::a) + p.n);
            const Series a = var(in, Var::a);
            const Series f =
                inf(ctx, a * p.at("s")) * inf_inv(ctx, a * p.at("t")) * inf_inv(ctx, a * p.at("omega"));
            return {restrict_to(apply_dq_power(ctx, f, Var::a, p.n, Direction::forward), box)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {zition_fwd_rhs(ctx, box, cst(box, p.at("s")), p.at("t"), cst(box, p.at("omega")), p.n)};
        },
    }));
    cat.push_back(make({
        "ZITION.bwd",
        "Eq. (\"oker\")",
        {Var::a},
        {"s", "t", "omega"},
        false,
        6,
        {nonzero("t"), nonzero("omega")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Box in = box_with(box, Var::a, 0, hi_of(box, Var::a) + p.n);
            const Series a = var(in, Var::a);
            const Series f = inf(ctx, a * p.at("s")) * inf(ctx, a * p.at("t")) * inf_inv(ctx, a * p.at("omega"));
            return {restrict_to(apply_dq_power(ctx, f, Var::a, p.n, Direction::backward), box)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Box work = box_with(box, Var::a, -1, hi_of(box, Var::a));
            return {restrict_to(
                zition_bwd_rhs(ctx, work, cst(work, p.at("s")), p.at("t"), cst(work, p.at("omega")), p.n), box)};
        },
    }));

    // -- Euler and Cauchy -----------------------------------------------------
    cat.push_back(make({
        "EULER.binom",
        "Eq. (\"putt\")",
        {Var::t},
        {"a"},
        false,
        -1,
        {},
        "|z|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const std::vector<Series> up{cst(box, p.at("a"))};
            return {phi_rs(ctx, up, {}, var(box, Var::t))};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Series t = var(box, Var::t);
            return {inf(ctx, t * p.at("a")) * inf_inv(ctx, t)};
        },
    }));
    // The infinite products here come from their functional equations
    // f(t) = f(qt)/(1 - t) and f(t) = (1 - t) f(qt), solved degree by degree.
    cat.push_back(make({
        "EULER.exp",
        "Eq. (\"q-expo-alpha\")",
        {Var::t},
        {},
        false,
        -1,
        {},
        "|z|<1",
        [](const ParamSet&, const QContext& ctx, const Box& box) -> Sides {
            std::vector<Rational> c;
            for (int k = 0; k <= hi_of(box, Var::t); ++k) {
                c.push_back(1 / ctx.qq(k));
            }
            return {univariate(box, c)};
        },
        [](const ParamSet&, const QContext& ctx, const Box& box) -> Sides {
            // (1 - t) f(t) = f(qt): c_n - c_{n-1} = q^n c_n.
            std::vector<Rational> c{Rational(1)};
            for (int k = 1; k <= hi_of(box, Var::t); ++k) {
                c.push_back(c.back() / (1 - ctx.q_pow(k)));
            }
            return {univariate(box, c)};
        },
    }));
    cat.push_back(make({
        "EULER.inv",
        "Eq. (\"q-Expo-alpha\")",
        {Var::t},
        {},
        false,
        -1,
        {},
        "",
        [](const ParamSet&, const QContext& ctx, const Box& box) -> Sides {
            std::vector<Rational> c;
            for (int k = 0; k <= hi_of(box, Var::t); ++k) {
                c.push_back(sign(k) * ctx.q_pow(binom2(k)) / ctx.qq(k));
            }
            return {univariate(box, c)};
        },
        [](const ParamSet&, const QContext& ctx, const Box& box) -> Sides {
            // f(t) = (1 - t) f(qt): c_n = q^n c_n - q^{n-1} c_{n-1}.
            std::vector<Rational> c{Rational(1)};
            for (int k = 1; k <= hi_of(box, Var::t); ++k) {
                c.push_back(-ctx.q_pow(k - 1) * c.back() / (1 - ctx.q_pow(k)));
            }
            return {univariate(box, c)};
        },
    }));
    cat.push_back(make({
        "CAUCHY.gen",
        "Eq. (\"gener\")",
        {Var::t},
        {"x", "y"},
        false,
        -1,
        {},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            std::vector<Rational> c;
            const Box none;
            for (int n = 0; n <= hi_of(box, Var::t); ++n) {
                const Series pn = cauchy_p(ctx, n, cst(none, p.at("x")), cst(none, p.at("y")));
                c.push_back(pn.constant_value().value_or(0) / ctx.qq(n));
            }
            return {univariate(box, c)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Series t = var(box, Var::t);
            return {inf(ctx, t * p.at("y")) * inf_inv(ctx, t * p.at("x"))};
        },
    }));
    cat.push_back(make({
        "CAUCHY.SA",
        "Eq. (\"Srivas\")",
        {Var::t},
        {"x", "y", "lambda"},
        false,
        -1,
        {nonzero("x")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            std::vector<Rational> c;
            const Box none;
            for (int n = 0; n <= hi_of(box, Var::t); ++n) {
                const Series pn = cauchy_p(ctx, n, cst(none, p.at("x")), cst(none, p.at("y")));
                c.push_back(pn.constant_value().value_or(0) * q_pochhammer(ctx, p.at("lambda"), n) / ctx.qq(n));
            }
            return {univariate(box, c)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const std::vector<Series> up{cst(box, p.at("lambda")), cst(box, p.at("y") / p.at("x"))};
            const std::vector<Series> lo{cst(box, 0)};
            return {phi_rs(ctx, up, lo, var(box, Var::t) * p.at("x"))};
        },
    }));

    // -- Homogeneous operators on product ratios ------------------------------
    cat.push_back(make({
        "PREI.T",
        "Eq. (\"MaA\")",
        {Var::a, Var::x},
        {"c", "s", "t", "omega"},
        true,
        -1,
        {nonzero("t"), nonzero("omega")},
        "max{|a omega|,|a t|}<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {operator_lhs(ctx, p, box, OperatorKind::T, p.at("c"), [&](const Box& in) {
                const Series a = var(in, Var::a);
                return inf(ctx, a * p.at("s")) * inf_inv(ctx, a * p.at("omega")) * inf_inv(ctx, a * p.at("t"));
            })};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &s = p.at("s"), &t = p.at("t"), &w = p.at("omega");
            const Series a = var(box, Var::a);
            const Series sum = operator_rhs_sum(ctx, p, box, p.at("c") * t * one_minus_q_inv(ctx), [&](int n) {
                const std::vector<Series> up{cst(box, ctx.q_pow(-n)), cst(box, s / w), a * t};
                const std::vector<Series> lo{a * s};
                return phi_rs(ctx, up, lo, cst(box, w * ctx.q_pow(n) / t));
            });
            return {sum * inf(ctx, a * s) * inf_inv(ctx, a * w) * inf_inv(ctx, a * t)};
        },
    }));
    cat.push_back(make({
        "PREI.E",
        "Eq. (\"MaA1\")",
        {Var::a, Var::x},
        {"c", "s", "t", "omega"},
        true,
        -1,
        {nonzero("t"), nonzero("omega")},
        "|a omega|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {operator_lhs(ctx, p, box, OperatorKind::E, p.at("c"), [&](const Box& in) {
                const Series a = var(in, Var::a);
                return inf(ctx, a * p.at("t")) * inf(ctx, a * p.at("s")) * inf_inv(ctx, a * p.at("omega"));
            })};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &s = p.at("s"), &t = p.at("t"), &w = p.at("omega");
            const Box work = box_with(box, Var::a, -1, hi_of(box, Var::a));
            const Series aw = var(work, Var::a);
            const Series sum =
                operator_rhs_sum(ctx, p, work, -p.at("c") * t * one_minus_q_inv(ctx), [&](int n) {
                    const std::vector<Series> up{cst(work, ctx.q_pow(-n)), pow(aw, -1) * (ctx.q() / t),
                                                 cst(work, s / w)};
                    const std::vector<Series> lo{pow(aw, -1) * (ctx.q() / w), cst(work, 0)};
                    return phi_rs(ctx, up, lo, cst(work, ctx.q()));
                });
            const Series a = var(box, Var::a);
            return {restrict_to(sum, box) * inf(ctx, a * t) * inf(ctx, a * s) * inf_inv(ctx, a * w)};
        },
    }));

    // -- Operator representation ----------------------------------------------
    {
        Identity phi = make({
            "PROP.phi",
            "Eq. (\"Propo12\")",
            {Var::x, Var::y},
            {},
            true,
            8,
            {},
            "",
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return {phi_family_via_operator(ctx, p.fam, p.n, var(box, Var::x), var(box, Var::y))};
            },
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return {phi_family(ctx, p.fam, p.n, var(box, Var::x), var(box, Var::y))};
            },
        });
        cat.push_back(std::move(phi));
        Identity psi = make({
            "PROP.psi",
            "Eq. (\"Propo12\")",
            {Var::x, Var::y},
            {},
            true,
            8,
            {},
            "",
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return {psi_family_via_operator(ctx, p.fam, p.n, var(box, Var::x), var(box, Var::y))};
            },
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return {psi_family(ctx, p.fam, p.n, var(box, Var::x), var(box, Var::y))};
            },
        });
        psi.erratum = Erratum{
            "psi summed without the (-1)^k sign",
            {},
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return {psi_family_unsigned(ctx, p.fam, p.n, var(box, Var::x), var(box, Var::y))};
            },
        };
        cat.push_back(std::move(psi));
    }

    // -- Generating functions -------------------------------------------------
    cat.push_back(make({
        "GEN.phi",
        "Eq. (\"gen\")",
        {Var::t},
        {"x", "y"},
        true,
        -1,
        {},
        "max{|xt|,|yt|}<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::t);
            auto v = phi_values(ctx, p.fam, hi, p.at("x"), p.at("y"));
            for (int n = 0; n <= hi; ++n) {
                v[static_cast<std::size_t>(n)] /= ctx.qq(n);
            }
            return {univariate(box, v)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Series t = var(box, Var::t);
            return {inf_inv(ctx, t * p.at("y")) *
                    phi_rs(ctx, consts(box, p.fam.a), consts(box, p.fam.b), t * p.at("x"))};
        },
    }));
    {
        auto gen_psi_lhs = [](bool signed_form) {
            return [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const int hi = hi_of(box, Var::t);
                auto v = psi_values(ctx, p.fam, hi, p.at("x"), p.at("y"), signed_form);
                for (int n = 0; n <= hi; ++n) {
                    v[static_cast<std::size_t>(n)] *= sign(n) * ctx.q_pow(binom2(n)) / ctx.qq(n);
                }
                return {univariate(box, v)};
            };
        };
        Identity id = make({
            "GEN.psi",
            "Eq. (\"gen1\")",
            {Var::t},
            {"x", "y"},
            true,
            -1,
            {},
            "|xt|<1",
            gen_psi_lhs(true),
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Series t = var(box, Var::t);
                return {inf(ctx, t * p.at("y")) *
                        phi_rs(ctx, consts(box, p.fam.a), consts(box, p.fam.b), t * p.at("x"))};
            },
        });
        id.erratum = Erratum{"psi summed without the (-1)^k sign", gen_psi_lhs(false), {}};
        cat.push_back(std::move(id));
    }

    // -- Operators on single products -----------------------------------------
    {
        auto lem21_rhs = [](bool extra_zero) {
            return [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Series a = var(box, Var::a);
                const Series z = var(box, Var::x) * (p.at("c") * p.at("s") * one_minus_q_inv(ctx));
                auto lo = consts(box, p.fam.b);
                if (extra_zero) {
                    lo.push_back(cst(box, 0));
                }
                return {inf_inv(ctx, a * p.at("s")) * phi_rs(ctx, consts(box, p.fam.a), lo, z)};
            };
        };
        Identity id = make({
            "LEM21.T",
            "Eq. (\"Ma2\")",
            {Var::a, Var::x},
            {"c", "s"},
            true,
            -1,
            {},
            "max{|as|,|cs/(1-q)|}<1",
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                return {operator_lhs(ctx, p, box, OperatorKind::T, p.at("c"), [&](const Box& in) {
                    return inf_inv(ctx, var(in, Var::a) * p.at("s"));
                })};
            },
            lem21_rhs(false),
        });
        id.erratum = Erratum{"r+1 phi r+1 with an extra lower parameter 0", {}, lem21_rhs(true)};
        cat.push_back(std::move(id));
    }
    cat.push_back(make({
        "LEM21.E",
        "Eq. (\"Ma5\")",
        {Var::a, Var::x},
        {"c", "s"},
        true,
        -1,
        {},
        "|cs/(1-q)|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {operator_lhs(ctx, p, box, OperatorKind::E, -p.at("c"),
                                 [&](const Box& in) { return inf(ctx, var(in, Var::a) * p.at("s")); })};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Series a = var(box, Var::a);
            const Series z = var(box, Var::x) * (p.at("c") * p.at("s") * one_minus_q_inv(ctx));
            return {inf(ctx, a * p.at("s")) * phi_rs(ctx, consts(box, p.fam.a), consts(box, p.fam.b), z)};
        },
    }));

    // -- Rogers type formulas ---------------------------------------------------
    cat.push_back(make({
        "ROGERS.phi",
        "Eq. (\"exgen\")",
        {Var::t, Var::s},
        {"x", "y"},
        true,
        -1,
        {},
        "max{|yt|,|ys|}<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int ht = hi_of(box, Var::t), hs = hi_of(box, Var::s);
            const auto v = phi_values(ctx, p.fam, ht + hs, p.at("x"), p.at("y"));
            Series out(box);
            for (int n = 0; n <= ht; ++n) {
                for (int m = 0; m <= hs; ++m) {
                    out.add_term(Exponents{n, m}, v[static_cast<std::size_t>(n + m)] / (ctx.qq(n) * ctx.qq(m)));
                }
            }
            return {out};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &x = p.at("x"), &y = p.at("y");
            const int ht = hi_of(box, Var::t);
            const Box work = box_with(box, Var::t, -(ht + hi_of(box, Var::s)), ht + hi_of(box, Var::s));
            const Series t = var(work, Var::t);
            const Series s = var(work, Var::s);
            Series sum(box);
            // The argument s/t lets terms with n up to cap_t + cap_s reach the box.
            for (int n = 0; n <= ht + hi_of(box, Var::s); ++n) {
                const std::vector<Series> up{cst(work, ctx.q_pow(-n)), t * y};
                const Series phi = phi_rs(ctx, up, {}, s * pow(t, -1) * ctx.q_pow(n));
                sum = sum + restrict_to(phi * pow(t * x, n), box) * op_coeff(ctx, p.fam, n);
            }
            return {sum * inf_inv(ctx, var(box, Var::t) * y) * inf_inv(ctx, var(box, Var::s) * y)};
        },
    }));
    {
        auto rhs = [](bool with_qq) {
            return [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Rational &x = p.at("x"), &y = p.at("y");
                const int ht = hi_of(box, Var::t);
                const Box work = box_with(box, Var::t, -(ht + hi_of(box, Var::s)), ht + hi_of(box, Var::s));
                const Series t = var(work, Var::t);
                const Series s = var(work, Var::s);
                Series sum(box);
                for (int n = 0; n <= ht + hi_of(box, Var::s); ++n) {
                    const std::vector<Series> up{cst(work, ctx.q_pow(-n)), pow(t, -1) * (ctx.q() / y)};
                    const std::vector<Series> lo{cst(work, 0)};
                    const Series phi = phi_rs(ctx, up, lo, s * y);
                    const Rational c = with_qq ? op_coeff(ctx, p.fam, n) : family_ratio(ctx, p.fam, n);
                    sum = sum + restrict_to(phi * pow(t * x, n), box) * c;
                }
                return {sum * inf(ctx, var(box, Var::t) * y) * inf(ctx, var(box, Var::s) * y)};
            };
        };
        Identity id = make({
            "ROGERS.psi",
            "Eq. (\"exgen1\")",
            {Var::t, Var::s},
            {"x", "y"},
            true,
            -1,
            {nonzero("y")},
            "",
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const int ht = hi_of(box, Var::t), hs = hi_of(box, Var::s);
                const auto v = psi_values(ctx, p.fam, ht + hs, p.at("x"), p.at("y"));
                Series out(box);
                for (int n = 0; n <= ht; ++n) {
                    for (int m = 0; m <= hs; ++m) {
                        const Rational w = sign(n + m) * ctx.q_pow(binom2(n) + binom2(m)) / (ctx.qq(n) * ctx.qq(m));
                        out.add_term(Exponents{n, m}, v[static_cast<std::size_t>(n + m)] * w);
                    }
                }
                return {out};
            },
            rhs(true),
        });
        id.erratum = Erratum{"outer sum without 1/(q;q)_n", {}, rhs(false)};
        cat.push_back(std::move(id));
    }
    cat.push_back(make({
        "LEM31.T",
        "Eq. (\"Ma2A\")",
        {Var::a, Var::x},
        {"c", "t", "omega"},
        true,
        -1,
        {nonzero("t")},
        "max{|a omega|,|a t|}<1; prefactor (as;q)_inf taken at s = 0",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {operator_lhs(ctx, p, box, OperatorKind::T, p.at("c"), [&](const Box& in) {
                const Series a = var(in, Var::a);
                return inf_inv(ctx, a * p.at("omega")) * inf_inv(ctx, a * p.at("t"));
            })};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &t = p.at("t"), &w = p.at("omega");
            const Series a = var(box, Var::a);
            const Series sum = operator_rhs_sum(ctx, p, box, p.at("c") * t * one_minus_q_inv(ctx), [&](int n) {
                const std::vector<Series> up{cst(box, ctx.q_pow(-n)), a * t};
                return phi_rs(ctx, up, {}, cst(box, w * ctx.q_pow(n) / t));
            });
            return {sum * inf_inv(ctx, a * w) * inf_inv(ctx, a * t)};
        },
    }));
    cat.push_back(make({
        "LEM31.E",
        "Eq. (\"Maz5\")",
        {Var::a, Var::x},
        {"c", "s", "t"},
        true,
        -1,
        {nonzero("t")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {operator_lhs(ctx, p, box, OperatorKind::E, -p.at("c"), [&](const Box& in) {
                const Series a = var(in, Var::a);
                return inf(ctx, a * p.at("t")) * inf(ctx, a * p.at("s"));
            })};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &s = p.at("s"), &t = p.at("t");
            const Box work = box_with(box, Var::a, -1, hi_of(box, Var::a));
            const Series aw = var(work, Var::a);
            const Series sum = operator_rhs_sum(ctx, p, work, p.at("c") * t * one_minus_q_inv(ctx), [&](int n) {
                const std::vector<Series> up{cst(work, ctx.q_pow(-n)), pow(aw, -1) * (ctx.q() / t)};
                const std::vector<Series> lo{cst(work, 0)};
                return phi_rs(ctx, up, lo, aw * s);
            });
            const Series a = var(box, Var::a);
            return {restrict_to(sum, box) * inf(ctx, a * t) * inf(ctx, a * s)};
        },
    }));
    cat.push_back(make({
        "ROGERS2.psi",
        "Eq. (\"ggen1\")",
        {Var::t, Var::s},
        {"x", "y"},
        true,
        -1,
        {nonzero("y")},
        "|ys|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int ht = hi_of(box, Var::t), hs = hi_of(box, Var::s);
            const auto v = psi_values(ctx, p.fam, ht + hs, p.at("x"), p.at("y"));
            Series out(box);
            for (int n = 0; n <= ht; ++n) {
                for (int m = 0; m <= hs; ++m) {
                    const Rational w = sign(n) * ctx.q_pow(binom2(n)) / (ctx.qq(n) * ctx.qq(m));
                    out.add_term(Exponents{n, m}, v[static_cast<std::size_t>(n + m)] * w);
                }
            }
            return {out};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides { return {rogers2_psi_rhs(ctx, box, p)}; },
    }));
    {
        Identity id = make({
            "EXTROGERS.psi",
            "Eq. (\"gextend\")",
            {Var::t, Var::s, Var::w},
            {"x", "y"},
            true,
            -1,
            {nonzero("y")},
            "|y omega|<1",
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const int ht = hi_of(box, Var::t), hs = hi_of(box, Var::s), hw = hi_of(box, Var::w);
                const auto v = psi_values(ctx, p.fam, ht + hs + hw, p.at("x"), p.at("y"));
                Series out(box);
                for (int n = 0; n <= ht; ++n) {
                    for (int m = 0; m <= hs; ++m) {
                        const Rational nm = sign(n + m) * ctx.q_pow(binom2(n) + binom2(m)) / (ctx.qq(n) * ctx.qq(m));
                        for (int k = 0; k <= hw; ++k) {
                            out.add_term(Exponents{n, m, k}, v[static_cast<std::size_t>(n + m + k)] * nm / ctx.qq(k));
                        }
                    }
                }
                return {out};
            },
            [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Rational &x = p.at("x"), &y = p.at("y");
                const int ht = hi_of(box, Var::t);
                const int top = ht + hi_of(box, Var::s) + hi_of(box, Var::w);
                Box work = box_with(box, Var::t, -top, top);
                work = box_with(work, Var::w, -1, hi_of(box, Var::w));
                const Series t = var(work, Var::t);
                const Series s = var(work, Var::s);
                const Series w = var(work, Var::w);
                Series sum(box);
                for (int j = 0; j <= top; ++j) {
                    const std::vector<Series> up{cst(work, ctx.q_pow(-j)), pow(t, -1) * (ctx.q() / y), s * pow(w, -1)};
                    const std::vector<Series> lo{pow(w, -1) * (ctx.q() / y), cst(work, 0)};
                    const Series phi = phi_rs(ctx, up, lo, cst(work, ctx.q()));
                    sum = sum + restrict_to(phi * pow(t * x, j), box) * op_coeff(ctx, p.fam, j);
                }
                return {sum * inf(ctx, var(box, Var::t) * y) * inf(ctx, var(box, Var::s) * y) *
                        inf_inv(ctx, var(box, Var::w) * y)};
            },
        });
        id.fixed_caps = {8, 8, 8};
        cat.push_back(std::move(id));
    }

    // -- Srivastava-Agarwal type ----------------------------------------------
    cat.push_back(make({
        "SA.lemma",
        "Eq. (\"c1sums\")",
        {Var::t},
        {"x", "lambda", "alpha"},
        false,
        -1,
        {},
        "max{|t|,|xt|}<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            std::vector<Rational> c;
            const Box none;
            for (int n = 0; n <= hi_of(box, Var::t); ++n) {
                const Rational h = hahn_phi(ctx, p.at("alpha"), n, cst(none, p.at("x"))).constant_value().value_or(0);
                c.push_back(q_pochhammer(ctx, p.at("lambda"), n) * h / ctx.qq(n));
            }
            return {univariate(box, c)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational& lambda = p.at("lambda");
            const Series t = var(box, Var::t);
            const std::vector<Series> up{cst(box, lambda), cst(box, p.at("alpha"))};
            const std::vector<Series> lo{t * lambda};
            return {inf(ctx, t * lambda) * inf_inv(ctx, t) * phi_rs(ctx, up, lo, t * p.at("x"))};
        },
    }));
    cat.push_back(make({
        "SA.phi",
        "Eq. (\"TAZA21\")",
        {Var::t},
        {"x", "y", "lambda"},
        true,
        -1,
        {},
        "|yt|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::t);
            auto v = phi_values(ctx, p.fam, hi, p.at("x"), p.at("y"));
            for (int n = 0; n <= hi; ++n) {
                v[static_cast<std::size_t>(n)] *= q_pochhammer(ctx, p.at("lambda"), n) / ctx.qq(n);
            }
            return {univariate(box, v)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &lambda = p.at("lambda"), &y = p.at("y");
            const Series t = var(box, Var::t);
            const auto up = with(consts(box, p.fam.a), cst(box, lambda));
            const auto lo = with(consts(box, p.fam.b), t * (lambda * y));
            return {inf(ctx, t * (lambda * y)) * inf_inv(ctx, t * y) * phi_rs(ctx, up, lo, t * p.at("x"))};
        },
    }));
    cat.push_back(make({
        "SA.psi",
        "Eq. (\"A21\")",
        {Var::t},
        {"x", "y", "lambda"},
        true,
        -1,
        {nonzero("y")},
        "|yt|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::t);
            auto v = psi_values(ctx, p.fam, hi, p.at("x"), p.at("y"));
            for (int n = 0; n <= hi; ++n) {
                v[static_cast<std::size_t>(n)] *= q_pochhammer(ctx, p.at("lambda"), n) / ctx.qq(n);
            }
            return {univariate(box, v)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides { return {sa_psi_rhs(ctx, box, p)}; },
    }));
    cat.push_back(make({
        "SA.bilin.phi",
        "Eq. (\"TAZAa1\")",
        {Var::t},
        {"x", "y", "alpha", "mu"},
        true,
        -1,
        {},
        "max{|yt|,|mu yt|}<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::t);
            auto v = phi_values(ctx, p.fam, hi, p.at("x"), p.at("y"));
            const Box none;
            for (int n = 0; n <= hi; ++n) {
                const Rational h = hahn_phi(ctx, p.at("alpha"), n, cst(none, p.at("mu"))).constant_value().value_or(0);
                v[static_cast<std::size_t>(n)] *= h / ctx.qq(n);
            }
            return {univariate(box, v)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &x = p.at("x"), &y = p.at("y"), &alpha = p.at("alpha"), &mu = p.at("mu");
            const Series t = var(box, Var::t);
            Series sum(box);
            for (int j = 0; j <= hi_of(box, Var::t); ++j) {
                const std::vector<Series> up{cst(box, ctx.q_pow(-j)), cst(box, alpha), t * y};
                const std::vector<Series> lo{t * (alpha * mu * y)};
                const Series phi = phi_rs(ctx, up, lo, cst(box, mu * ctx.q_pow(j)));
                sum = sum + phi * pow(t * x, j) * op_coeff(ctx, p.fam, j);
            }
            return {sum * inf(ctx, t * (alpha * mu * y)) * inf_inv(ctx, t * (mu * y)) * inf_inv(ctx, t * y)};
        },
    }));
    cat.push_back(make({
        "SA.bilin.psi",
        "Eq. (\"ls\")",
        {Var::t},
        {"x", "y", "alpha", "mu"},
        true,
        -1,
        {nonzero("y"), nonzero("alpha"), nonzero("mu")},
        "|alpha mu yt|<1",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::t);
            auto v = psi_values(ctx, p.fam, hi, p.at("x"), p.at("y"));
            const Box none;
            for (int n = 0; n <= hi; ++n) {
                const Rational h = hahn_psi(ctx, p.at("alpha"), n, cst(none, p.at("mu"))).constant_value().value_or(0);
                v[static_cast<std::size_t>(n)] *= h * sign(n) * ctx.q_pow(binom2(n)) / ctx.qq(n);
            }
            return {univariate(box, v)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const Rational &x = p.at("x"), &y = p.at("y"), &alpha = p.at("alpha"), &mu = p.at("mu");
            const Box work = box_with(box, Var::t, -1, hi_of(box, Var::t));
            const Series tw = var(work, Var::t);
            Series sum(box);
            for (int j = 0; j <= hi_of(box, Var::t); ++j) {
                const std::vector<Series> up{cst(work, ctx.q_pow(-j)), pow(tw, -1) * (ctx.q() / y), cst(work, 1 / alpha)};
                const std::vector<Series> lo{pow(tw, -1) * (ctx.q() / (alpha * mu * y)), cst(work, 0)};
                const Series phi = restrict_to(phi_rs(ctx, up, lo, cst(work, ctx.q())), box);
                sum = sum + phi * pow(var(box, Var::t) * x, j) * op_coeff(ctx, p.fam, j);
            }
            const Series t = var(box, Var::t);
            return {sum * inf(ctx, t * (mu * y)) * inf(ctx, t * y) * inf_inv(ctx, t * (alpha * mu * y))};
        },
    }));

    // -- Specialization checks --------------------------------------------------
    // DAMM with s = 0, omega = s against id1/id2, and with omega -> 0 (kept
    // formal, then set to zero) against id3/id4.
    for (const bool bwd : {false, true}) {
        cat.push_back(make({
            bwd ? "REMARK.1.1b" : "REMARK.1.1a",
            "Remark 1.1",
            {Var::a},
            {"s"},
            false,
            6,
            {nonzero("s")},
            "",
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Rational& s = p.at("s");
                const int n = p.n;
                const int hi = hi_of(box, Var::a);
                Box work = bwd ? box_with(box, Var::a, -n, hi + n) : box;
                const Series first = bwd ? damm_bwd_rhs(ctx, work, cst(work, 0), cst(work, s), n)
                                         : damm_fwd_rhs(ctx, work, cst(work, 0), cst(work, s), n);
                Box formal = work;
                formal.vars.push_back(Var::w);
                formal.lo.push_back(-n - 1);
                formal.hi.push_back(bwd ? hi + n : hi);
                const Series w = var(formal, Var::w);
                const Series second = bwd ? damm_bwd_rhs(ctx, formal, cst(formal, s), w, n)
                                          : damm_fwd_rhs(ctx, formal, cst(formal, s), w, n);
                return {restrict_to(first, box), restrict_to(specialize_zero(second, Var::w), box)};
            },
            [=](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
                const Rational& s = p.at("s");
                return {malm_rhs(bwd ? 2 : 1, ctx, box, s, p.n)[0], malm_rhs(bwd ? 4 : 3, ctx, box, s, p.n)[0]};
            },
        }));
    }
    cat.push_back(make({
        "REMARK.1.2a",
        "Remark 1.2",
        {Var::a},
        {"s", "omega"},
        false,
        6,
        {nonzero("omega")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            // omega -> 0 (formal w, then w = 0) and t -> omega.
            Box formal = box;
            formal.vars.push_back(Var::w);
            formal.lo.push_back(-1);
            formal.hi.push_back(hi_of(box, Var::a));
            const Series r =
                zition_fwd_rhs(ctx, formal, cst(formal, p.at("s")), p.at("omega"), var(formal, Var::w), p.n);
            return {specialize_zero(r, Var::w)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            return {damm_fwd_rhs(ctx, box, cst(box, p.at("s")), cst(box, p.at("omega")), p.n)};
        },
    }));
    cat.push_back(make({
        "REMARK.1.2b",
        "Remark 1.2",
        {Var::a},
        {"s", "omega"},
        false,
        6,
        {nonzero("s"), nonzero("omega")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            // s -> 0 and t -> s.
            const Box work = box_with(box, Var::a, -1, hi_of(box, Var::a));
            return {restrict_to(zition_bwd_rhs(ctx, work, cst(work, 0), p.at("s"), cst(work, p.at("omega")), p.n),
                                box)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            const int hi = hi_of(box, Var::a);
            const Box work = box_with(box, Var::a, -p.n, hi + p.n);
            return {restrict_to(damm_bwd_rhs(ctx, work, cst(work, p.at("s")), cst(work, p.at("omega")), p.n), box)};
        },
    }));
    cat.push_back(make({
        "REMARK.4.1",
        "Remark 4.1",
        {Var::t},
        {"x", "y", "lambda"},
        true,
        -1,
        {nonzero("y")},
        "",
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides {
            // t -> lambda t, s -> t.
            const int hi = hi_of(box, Var::t);
            const Box two = Box::power({Var::t, Var::s}, hi);
            const Series r = rogers2_psi_rhs(ctx, two, p);
            const std::vector<MonomialImage> images{{Var::t, p.at("lambda"), Exponents{1}},
                                                    {Var::s, Rational(1), Exponents{1}}};
            return {substitute_monomials(r, box, images)};
        },
        [](const ParamSet& p, const QContext& ctx, const Box& box) -> Sides { return {sa_psi_rhs(ctx, box, p)}; },
    }));

    return cat;
}

} // namespace

const Rational& ParamSet::at(const std::string& name) const {
    const auto it = scalars.find(name);
    if (it == scalars.end()) {
        throw std::out_of_range("parameter '" + name + "' was not supplied");
    }
    return it->second;
}

Box Identity::target_box(int order) const {
    Box b;
    b.vars = vars;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        b.lo.push_back(0);
        b.hi.push_back(fixed_caps[i] > 0 ? fixed_caps[i] : order);
    }
    return b;
}

std::string Identity::caps_summary() const {
    if (vars.empty()) {
        return "-";
    }
    std::string out;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += std::string(var_name(vars[i])) + ":" + (fixed_caps[i] > 0 ? std::to_string(fixed_caps[i]) : "N");
    }
    return out;
}

std::string Identity::constraint_summary() const {
    std::string out;
    for (const auto& c : constraints) {
        if (!out.empty()) {
            out += "; ";
        }
        out += c.summary;
    }
    return out.empty() ? "-" : out;
}

const std::vector<Identity>& register_catalog() {
    static const std::vector<Identity> catalog = build_catalog();
    return catalog;
}

const Identity* lookup(std::string_view id) {
    for (const auto& entry : register_catalog()) {
        if (entry.id == id) {
            return &entry;
        }
    }
    return nullptr;
}

bool glob_match(std::string_view pattern, std::string_view text) {
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') {
        ++p;
    }
    return p == pattern.size();
}

} // namespace qid
