// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "qid/catalog.hpp"
#include "qid/families.hpp"
#include "qid/operators.hpp"
#include "qid/report.hpp"

using namespace qid;

namespace {

// Pinned budgets and tolerances.
constexpr double kSuiteBudgetSeconds = 600.0;
constexpr double kSingleVariableBudgetMs = 1000.0;
constexpr double kTripleSumBudgetMs = 30000.0;
constexpr int kCatalogOrder = 12;
constexpr int kDraws = 5;
const Rational kLimitQ = make_rational(999999, 1000000);
const Rational kLimitTolerancePerM2 = make_rational(1, 1000000);

int failures = 0;

void report(int number, bool ok, const std::string& title, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " [" << number << "] " << title << ": " << detail << std::endl;
    failures += ok ? 0 : 1;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<std::string> all_ids() {
    std::vector<std::string> ids;
    for (const auto& id : register_catalog()) {
        ids.push_back(id.id);
    }
    return ids;
}

std::string first_problem(const std::vector<VerificationReport>& rs) {
    for (const auto& r : rs) {
        if (r.status != Status::PASS) {
            std::string s = r.id + " q=" + to_string(r.params.q) + " " + std::string(status_name(r.status)) + " " +
                            r.reason;
            if (r.first_mismatch) {
                s += " (" + describe_mismatch(*r.first_mismatch) + ")";
            }
            return s;
        }
    }
    return "";
}

std::vector<VerificationReport> criterion_full_catalog() {
    SuiteConfig cfg;
    cfg.ids = all_ids();
    cfg.order = kCatalogOrder;
    cfg.draws = kDraws;
    cfg.workers = workers();
    const auto start = std::chrono::steady_clock::now();
    auto rs = run_suite(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t pass = 0;
    double worst_single = 0, worst_triple = 0;
    std::map<std::string, std::size_t> per_id;
    for (const auto& r : rs) {
        pass += r.status == Status::PASS;
        per_id[r.id] += r.status == Status::PASS;
        const Identity& id = *lookup(r.id);
        if (id.vars.size() <= 1) {
            worst_single = std::max(worst_single, r.wall_ms);
        }
        if (r.id == "EXTROGERS.psi") {
            worst_triple = std::max(worst_triple, r.wall_ms);
        }
    }
    const std::size_t per_identity = cfg.q_points.size() * static_cast<std::size_t>(cfg.draws);
    bool every_identity = per_id.size() == register_catalog().size();
    for (const auto& [id, n] : per_id) {
        every_identity = every_identity && n == per_identity;
    }
    const bool ok = every_identity && pass == rs.size() && seconds < kSuiteBudgetSeconds &&
                    worst_single < kSingleVariableBudgetMs && worst_triple < kTripleSumBudgetMs;
    std::ostringstream os;
    os << register_catalog().size() << " identities x " << per_identity << " instantiations, " << pass << "/"
       << rs.size() << " PASS at N=" << cfg.order << ", " << seconds << " s total (budget " << kSuiteBudgetSeconds
       << "), slowest single-variable instantiation " << worst_single << " ms (budget " << kSingleVariableBudgetMs
       << "), slowest EXTROGERS.psi " << worst_triple << " ms (budget " << kTripleSumBudgetMs << ")";
    if (!ok) {
        os << "; " << first_problem(rs);
    }
    report(1, ok, "full catalog", os.str());
    return rs;
}

void criterion_operator_representation() {
    std::mt19937_64 rng(20260101);
    auto draw = [&]() {
        const long num = static_cast<long>(rng() % 19) - 9;
        const long den = static_cast<long>(rng() % 9) + 1;
        return make_rational(num, den);
    };
    std::size_t cases = 0, mismatched = 0;
    const auto& palette = default_q_palette();
    for (int r = 0; r <= 2; ++r) {
        for (int d = 0; d < 20; ++d) {
            const QContext ctx(palette[static_cast<std::size_t>(d) % palette.size()], 8);
            FamilySpec fam;
            for (int i = 0; i <= r; ++i) {
                fam.a.push_back(draw());
            }
            for (int i = 0; i < r; ++i) {
                Rational b;
                do {
                    b = draw();
                } while (ctx.negative_power_index(b));
                fam.b.push_back(b);
            }
            for (int n = 0; n <= 8; ++n) {
                const Box box = Box::power({Var::x, Var::y}, n);
                const Series x = Series::variable(box, Var::x);
                const Series y = Series::variable(box, Var::y);
                const Series dphi = phi_family_via_operator(ctx, fam, n, x, y) - phi_family(ctx, fam, n, x, y);
                const Series dpsi = psi_family_via_operator(ctx, fam, n, x, y) - psi_family(ctx, fam, n, x, y);
                mismatched += dphi.term_count() + dpsi.term_count();
                cases += 2;
            }
        }
    }
    std::ostringstream os;
    os << cases << " operator/direct comparisons (n <= 8, r in {0,1,2}, 20 draws each), " << mismatched
       << " mismatched coefficients";
    report(2, mismatched == 0, "operator representation", os.str());
}

void criterion_chu() {
    std::size_t runs = 0, pass = 0;
    std::string problem;
    for (const char* name : {"CHU.1", "CHU.2"}) {
        const Identity& id = *lookup(name);
        for (const auto& q : default_q_palette()) {
            const auto draws = sample_params(id, 7, kDraws, q, kCatalogOrder);
            for (auto p : draws) {
                for (int n = 0; n <= 20; ++n) {
                    p.n = n;
                    const auto r = verify(id, p, kCatalogOrder);
                    ++runs;
                    pass += r.status == Status::PASS;
                    if (r.status != Status::PASS && problem.empty()) {
                        problem = first_problem({r});
                    }
                }
            }
        }
    }
    std::ostringstream os;
    os << pass << "/" << runs << " exact (n = 0..20, 5 q values, 5 (a,c) draws, both forms)";
    if (!problem.empty()) {
        os << "; " << problem;
    }
    report(3, pass == runs, "q-Chu-Vandermonde", os.str());
}

void criterion_leibniz() {
    std::size_t runs = 0, pass = 0;
    std::mt19937_64 rng(42);
    for (const char* name : {"LEIBNIZ.fwd", "LEIBNIZ.bwd"}) {
        const Identity& id = *lookup(name);
        for (int d = 0; d < 10; ++d) {
            ParamSet p;
            p.q = default_q_palette()[static_cast<std::size_t>(d) % default_q_palette().size()];
            p.seed = rng();
            for (int n = 0; n <= 6; ++n) {
                p.n = n;
                ++runs;
                pass += verify(id, p, kCatalogOrder).status == Status::PASS;
            }
        }
    }
    std::ostringstream os;
    os << pass << "/" << runs << " exact (10 random f,g pairs, n = 0..6, both directions)";
    report(4, pass == runs, "Leibniz rules", os.str());
}

void criterion_remarks(const std::vector<VerificationReport>& catalog_run) {
    std::size_t runs = 0, pass = 0;
    std::vector<VerificationReport> remarks;
    for (const auto& r : catalog_run) {
        if (r.id.rfind("REMARK.", 0) == 0) {
            remarks.push_back(r);
            ++runs;
            pass += r.status == Status::PASS;
        }
    }
    std::ostringstream os;
    os << pass << "/" << runs << " specialization runs reproduce their targets coefficientwise";
    if (pass != runs) {
        os << "; " << first_problem(remarks);
    }
    report(5, runs > 0 && pass == runs, "specialization checks", os.str());
}

void criterion_cross_sections() {
    std::mt19937_64 rng(5);
    auto draw = [&]() {
        const long num = static_cast<long>(rng() % 19) - 9;
        const long den = static_cast<long>(rng() % 9) + 1;
        return make_rational(num, den);
    };
    const Identity& lemma = *lookup("SA.lemma");
    const Identity& sa = *lookup("SA.phi");
    const Identity& cs = *lookup("CAUCHY.SA");
    const Identity& cg = *lookup("CAUCHY.gen");
    std::size_t checks = 0, equal = 0;
    for (const auto& q : default_q_palette()) {
        const QContext ctx(q, kCatalogOrder);
        const Box box = lemma.target_box(kCatalogOrder);
        for (int d = 0; d < kDraws; ++d) {
            ParamSet pl;
            pl.q = q;
            pl.scalars = {{"x", draw()}, {"lambda", draw()}, {"alpha", draw()}};
            ParamSet ps = pl;
            ps.scalars = {{"x", pl.at("x")}, {"y", Rational(1)}, {"lambda", pl.at("lambda")}};
            ps.fam = FamilySpec{{pl.at("alpha")}, {}};
            equal += lemma.lhs(pl, ctx, box) == sa.lhs(ps, ctx, box);
            equal += lemma.rhs(pl, ctx, box) == sa.rhs(ps, ctx, box);

            ParamSet pc;
            pc.q = q;
            Rational x;
            do {
                x = draw();
            } while (is_zero(x));
            pc.scalars = {{"x", x}, {"y", draw()}, {"lambda", Rational(0)}};
            equal += cs.lhs(pc, ctx, box) == cg.lhs(pc, ctx, box);
            equal += cs.rhs(pc, ctx, box) == cg.rhs(pc, ctx, box);
            checks += 4;
        }
    }
    std::ostringstream os;
    os << equal << "/" << checks << " side-by-side equalities (lemma vs r=0, y=1 case; lambda=0 reduction)";
    report(6, equal == checks, "cross-section consistency", os.str());
}

void criterion_q_limit() {
    const QContext ctx(kLimitQ, 6);
    bool ok = true;
    std::ostringstream os;
    os << "q = 1 - 10^-6:";
    for (int m = 1; m <= 6; ++m) {
        const Box box = Box::power({Var::y}, m);
        Exponents e{};
        e[0] = m;
        const Series f = Series::monomial(box, 1, e);
        e[0] = m - 1;
        const Rational ratio = coefficient(apply_dq(ctx, f, Var::y), e);
        const Rational gap = abs(ratio - m);
        const Rational bound = kLimitTolerancePerM2 * (m * m);
        ok = ok && gap <= bound;
        os << " m=" << m << " gap " << gap.get_d() << " <= " << bound.get_d() << ";";
    }
    report(7, ok, "q -> 1 limit", os.str());
}

void criterion_mutation() {
    constexpr int order = 8;
    std::size_t identities = 0, caught = 0, fails = 0, localized = 0;
    std::string missed;
    for (const auto& id : register_catalog()) {
        const auto draws = sample_params(id, 7, kDraws, make_rational(1, 2), order);
        for (const auto& mutated : {mutate_rhs_scale(id), mutate_rhs_q_shift(id)}) {
            ++identities;
            bool any = false;
            for (const auto& p : draws) {
                const auto r = verify(mutated, p, order);
                if (r.status != Status::FAIL) {
                    continue;
                }
                any = true;
                ++fails;
                localized += r.first_mismatch && r.first_mismatch->lhs != r.first_mismatch->rhs;
            }
            caught += any;
            if (!any && missed.empty()) {
                missed = id.id;
            }
        }
    }
    std::ostringstream os;
    os << caught << "/" << identities << " perturbed builders caught (rhs*(1+q) and v -> qv), " << localized << "/"
       << fails << " failures carry a localized first mismatch";
    if (!missed.empty()) {
        os << "; not caught: " << missed;
    }
    report(8, caught == identities && localized == fails, "mutation sensitivity", os.str());
}

void criterion_determinism(const std::vector<VerificationReport>& first_run) {
    SuiteConfig cfg;
    cfg.ids = all_ids();
    cfg.order = kCatalogOrder;
    cfg.draws = kDraws;
    cfg.workers = workers() > 1 ? 1 : 3;
    RunReport a{{cfg.order, cfg.seeds, cfg.q_points, cfg.draws, "first"}, first_run};
    RunReport b{{cfg.order, cfg.seeds, cfg.q_points, cfg.draws, "second"}, run_suite(cfg)};
    const auto ja = without_timing(nlohmann::json::parse(to_json(a).dump()));
    const auto jb = without_timing(nlohmann::json::parse(to_json(b).dump()));
    const bool ok = ja.dump() == jb.dump();
    std::ostringstream os;
    os << "two full runs with different worker counts, " << a.results.size()
       << " results each, JSON identical without timestamp/wall_ms: " << (ok ? "yes" : "no");
    report(9, ok, "determinism", os.str());
}

} // namespace

int main() {
    const auto catalog_run = criterion_full_catalog();
    criterion_operator_representation();
    criterion_chu();
    criterion_leibniz();
    criterion_remarks(catalog_run);
    criterion_cross_sections();
    criterion_q_limit();
    criterion_mutation();
    criterion_determinism(catalog_run);
    std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
