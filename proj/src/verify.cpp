#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <stdexcept>
#include <thread>

#include "qid/catalog.hpp"
#include "qid/errors.hpp"

namespace qid {

namespace {

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 1469598103934665603ULL) {
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rational draw_rational(std::mt19937_64& rng) {
    const long num = static_cast<long>(rng() % 19) - 9;
    const long den = static_cast<long>(rng() % 9) + 1;
    return make_rational(num, den);
}

std::size_t lattice_size(const Box& box) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < box.size(); ++i) {
        n *= static_cast<std::size_t>(box.hi[i] - box.lo[i] + 1);
    }
    return n;
}

bool degree_lex_less(const Exponents& a, const Exponents& b) {
    int da = 0, db = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        da += a[i];
        db += b[i];
    }
    return da != db ? da < db : a < b;
}

struct Comparison {
    Status status = Status::PASS;
    std::string reason;
    std::optional<Mismatch> first;
    std::size_t compared = 0;
};

Comparison compare_sides(const std::vector<Series>& lhs, const std::vector<Series>& rhs, const Box& box) {
    Comparison out;
    if (lhs.size() != rhs.size()) {
        out.status = Status::FAIL;
        out.reason = "component count differs: " + std::to_string(lhs.size()) + " vs " + std::to_string(rhs.size());
        return out;
    }
    for (std::size_t c = 0; c < lhs.size(); ++c) {
        const Series l = assert_no_negative_exponents(restrict_to(lhs[c], box));
        const Series r = assert_no_negative_exponents(restrict_to(rhs[c], box));
        out.compared += lattice_size(box);
        const Series diff = l - r;
        if (diff.is_zero()) {
            continue;
        }
        const Exponents* best = nullptr;
        for (const auto& [e, v] : diff.terms()) {
            if (!best || degree_lex_less(e, *best)) {
                best = &e;
            }
        }
        Mismatch m;
        m.component = c;
        for (std::size_t i = 0; i < box.size(); ++i) {
            m.exponents.emplace_back(std::string(var_name(box.vars[i])), (*best)[i]);
        }
        m.lhs = coefficient(l, *best);
        m.rhs = coefficient(r, *best);
        out.status = Status::FAIL;
        out.reason = "coefficient mismatch";
        out.first = std::move(m);
        return out;
    }
    return out;
}

Comparison evaluate(const Builder& lhs, const Builder& rhs, const ParamSet& params, const QContext& ctx,
                    const Box& box) {
    try {
        return compare_sides(lhs(params, ctx, box), rhs(params, ctx, box), box);
    } catch (const std::exception& e) {
        Comparison out;
        out.status = Status::FAIL;
        out.reason = std::string("builder error: ") + e.what();
        return out;
    }
}

} // namespace

std::string_view status_name(Status s) {
    switch (s) {
    case Status::PASS:
        return "PASS";
    case Status::FAIL:
        return "FAIL";
    default:
        return "SKIPPED";
    }
}

std::optional<Status> parse_status(std::string_view s) {
    for (const Status st : {Status::PASS, Status::FAIL, Status::SKIPPED}) {
        if (status_name(st) == s) {
            return st;
        }
    }
    return std::nullopt;
}

bool operator==(const VerificationReport& a, const VerificationReport& b) {
    return a.id == b.id && a.paper_eq == b.paper_eq && a.status == b.status && a.order == b.order &&
           a.params == b.params && a.reason == b.reason && a.first_mismatch == b.first_mismatch &&
           a.coefficients_compared == b.coefficients_compared && a.printed == b.printed;
}

VerificationReport verify(const Identity& identity, const ParamSet& params, int order) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.id = identity.id;
    report.paper_eq = identity.paper_eq;
    report.order = order;
    report.params = params;

    auto finish = [&]() {
        report.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return report;
    };

    std::optional<QContext> ctx;
    try {
        ctx.emplace(params.q, order);
    } catch (const std::exception& e) {
        report.status = Status::SKIPPED;
        report.reason = e.what();
        return finish();
    }
    for (const auto& c : identity.constraints) {
        bool ok = false;
        try {
            ok = c.holds(params, *ctx);
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) {
            report.status = Status::SKIPPED;
            report.reason = "constraint violated: " + c.summary;
            return finish();
        }
    }

    const Box box = identity.target_box(order);
    const Comparison main = evaluate(identity.lhs, identity.rhs, params, *ctx, box);
    report.status = main.status;
    report.reason = main.reason;
    report.first_mismatch = main.first;
    report.coefficients_compared = main.compared;

    if (identity.erratum) {
        const Erratum& err = *identity.erratum;
        const Comparison printed = evaluate(err.printed_lhs ? err.printed_lhs : identity.lhs,
                                            err.printed_rhs ? err.printed_rhs : identity.rhs, params, *ctx, box);
        report.printed = ErratumOutcome{err.note, printed.status, printed.reason, printed.first};
    }
    return finish();
}

const std::vector<Rational>& default_q_palette() {
    static const std::vector<Rational> palette{make_rational(1, 2), make_rational(1, 3), make_rational(2, 5),
                                               make_rational(3, 7), make_rational(-1, 3)};
    return palette;
}

std::vector<ParamSet> sample_params(const Identity& identity, std::uint64_t seed, int count, const Rational& q,
                                    int order) {
    if (count < 1) {
        throw std::invalid_argument("sample count must be at least 1");
    }
    const QContext ctx(q, order);
    std::uint64_t h = fnv1a(identity.id);
    h = fnv1a(to_string(q), h);
    std::mt19937_64 rng(splitmix(seed ^ splitmix(h)));

    std::vector<ParamSet> out;
    int rejections = 0;
    while (static_cast<int>(out.size()) < count) {
        ParamSet p;
        p.q = q;
        for (const auto& name : identity.scalars) {
            p.scalars[name] = draw_rational(rng);
        }
        if (identity.uses_family) {
            const int r = static_cast<int>(rng() % 3);
            for (int i = 0; i <= r; ++i) {
                p.fam.a.push_back(draw_rational(rng));
            }
            for (int i = 0; i < r; ++i) {
                p.fam.b.push_back(draw_rational(rng));
            }
        }
        if (identity.n_max >= 0) {
            p.n = identity.n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(identity.n_max - identity.n_min + 1));
        }
        if (identity.uses_seed) {
            p.seed = rng();
        }
        const bool ok = std::all_of(identity.constraints.begin(), identity.constraints.end(),
                                    [&](const Constraint& c) { return c.holds(p, ctx); });
        if (!ok) {
            if (++rejections >= 1000) {
                throw std::runtime_error("sample_params: 1000 draws for " + identity.id +
                                         " violated the constraints");
            }
            continue;
        }
        rejections = 0;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
    std::vector<std::string> ids = config.ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    struct Job {
        const Identity* identity;
        ParamSet params;
        std::optional<VerificationReport> ready;
    };
    std::vector<Job> jobs;
    for (const auto& id : ids) {
        const Identity* identity = lookup(id);
        if (!identity) {
            throw std::invalid_argument("unknown identity '" + id + "'");
        }
        for (const auto seed : config.seeds) {
            for (const auto& q : config.q_points) {
                try {
                    for (auto& p : sample_params(*identity, seed, config.draws, q, config.order)) {
                        jobs.push_back({identity, std::move(p), std::nullopt});
                    }
                } catch (const std::exception& e) {
                    VerificationReport r;
                    r.id = identity->id;
                    r.paper_eq = identity->paper_eq;
                    r.order = config.order;
                    r.params.q = q;
                    r.status = Status::SKIPPED;
                    r.reason = e.what();
                    jobs.push_back({identity, r.params, r});
                }
            }
        }
    }

    std::vector<VerificationReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            out[i] = jobs[i].ready ? *jobs[i].ready : verify(*jobs[i].identity, jobs[i].params, config.order);
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(jobs.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return out;
}

Identity mutate_rhs_scale(const Identity& identity) {
    Identity m = identity;
    m.erratum.reset();
    const Builder rhs = identity.rhs;
    m.rhs = [rhs](const ParamSet& p, const QContext& ctx, const Box& box) {
        auto sides = rhs(p, ctx, box);
        for (auto& s : sides) {
            s = s * Rational(1 + ctx.q());
        }
        return sides;
    };
    return m;
}

Identity mutate_rhs_q_shift(const Identity& identity) {
    Identity m = identity;
    m.erratum.reset();
    const Builder rhs = identity.rhs;
    const std::optional<Var> v = identity.vars.empty() ? std::nullopt : std::optional<Var>(identity.vars.front());
    m.rhs = [rhs, v](const ParamSet& p, const QContext& ctx, const Box& box) {
        auto sides = rhs(p, ctx, box);
        for (auto& s : sides) {
            s = v ? substitute_scaled(s, *v, ctx.q()) : s * ctx.q();
        }
        return sides;
    };
    return m;
}

} // namespace qid
