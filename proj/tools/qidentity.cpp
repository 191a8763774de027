#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qid/catalog.hpp"
#include "qid/errors.hpp"
#include "qid/families.hpp"
#include "qid/report.hpp"

namespace {

using namespace qid;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_order() {
    if (const char* env = std::getenv("QIDENTITY_ORDER")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw ConfigError(std::string("QIDENTITY_ORDER is not an integer: ") + env);
        }
    }
    return 12;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::vector<Rational> parse_rational_list(const std::vector<std::string>& items) {
    std::vector<Rational> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            try {
                out.push_back(parse_rational(piece));
            } catch (const std::exception& e) {
                throw ConfigError("bad rational '" + piece + "': " + e.what());
            }
        }
    }
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open output file " + path);
    }
    out << text;
}

struct ListOptions {
    std::string filter = "*";
};

int cmd_list(const ListOptions& opt) {
    std::cout << std::left << std::setw(16) << "id" << std::setw(24) << "equation" << std::setw(18) << "caps"
              << "constraints\n";
    for (const auto& id : register_catalog()) {
        if (!glob_match(opt.filter, id.id)) {
            continue;
        }
        std::cout << std::left << std::setw(16) << id.id << std::setw(24) << id.paper_eq << std::setw(18)
                  << id.caps_summary() << id.constraint_summary();
        if (!id.domain_note.empty()) {
            std::cout << "  [" << id.domain_note << ']';
        }
        std::cout << '\n';
    }
    return kExitPass;
}

struct VerifyOptions {
    bool all = false;
    std::vector<std::string> ids;
    std::vector<std::string> filters;
    int order = 12;
    std::vector<std::string> q;
    std::vector<std::uint64_t> seeds;
    int draws = 5;
    std::string json_path;
    std::string csv_path;
    bool human = false;
    std::string out;
    unsigned workers = 0;
    CLI::Option* json_opt = nullptr;
    CLI::Option* csv_opt = nullptr;
};

int cmd_verify(const VerifyOptions& opt) {
    if (opt.order < 1) {
        throw ConfigError("order must be at least 1");
    }
    if (opt.draws < 1) {
        throw ConfigError("draw count must be at least 1");
    }
    const int formats = (opt.json_opt->count() > 0) + (opt.csv_opt->count() > 0) + (opt.human ? 1 : 0);
    if (formats > 1) {
        throw ConfigError("choose one of --json, --csv, --human");
    }

    SuiteConfig cfg;
    for (const auto& id : register_catalog()) {
        bool selected = opt.all;
        for (const auto& want : opt.ids) {
            selected = selected || want == id.id;
        }
        for (const auto& f : opt.filters) {
            selected = selected || glob_match(f, id.id);
        }
        if (selected) {
            cfg.ids.push_back(id.id);
        }
    }
    for (const auto& want : opt.ids) {
        if (!lookup(want)) {
            throw ConfigError("unknown identity '" + want + "'");
        }
    }
    if (!opt.all && opt.ids.empty() && opt.filters.empty()) {
        throw ConfigError("select identities with --all, --id or --filter");
    }
    cfg.order = opt.order;
    cfg.draws = opt.draws;
    if (!opt.seeds.empty()) {
        cfg.seeds = opt.seeds;
    }
    if (!opt.q.empty()) {
        cfg.q_points = parse_rational_list(opt.q);
        for (const auto& q : cfg.q_points) {
            if (is_zero(q) || abs(q) >= 1) {
                throw ConfigError("q must satisfy 0 < |q| < 1, got " + to_string(q));
            }
        }
    }
    cfg.workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());

    RunReport report;
    report.run = RunInfo{cfg.order, cfg.seeds, cfg.q_points, cfg.draws, utc_timestamp()};
    report.results = run_suite(cfg);

    std::string text;
    std::string path = opt.out;
    if (opt.json_opt->count()) {
        text = to_json(report).dump(2) + "\n";
        if (!opt.json_path.empty()) {
            path = opt.json_path;
        }
    } else if (opt.csv_opt->count()) {
        text = format_csv(report);
        if (!opt.csv_path.empty()) {
            path = opt.csv_path;
        }
    } else {
        text = format_human(report);
    }
    write_output(text, path);
    if (!path.empty() && !opt.human) {
        std::size_t failed = 0;
        for (const auto& r : report.results) {
            failed += r.status == Status::FAIL;
        }
        std::cerr << report.results.size() << " runs, " << failed << " FAIL; report written to " << path << '\n';
    }

    for (const auto& r : report.results) {
        if (r.status != Status::PASS) {
            return kExitFail;
        }
    }
    return kExitPass;
}

struct EvalOptions {
    std::string family;
    int r = -1;
    std::vector<std::string> a;
    std::vector<std::string> b;
    int n = 0;
    std::string q = "1/2";
    std::string formal = "x,y";
    std::string x;
    std::string y;
    std::string format = "text";
};

int cmd_eval(const EvalOptions& opt) {
    FamilySpec fam{parse_rational_list(opt.a), parse_rational_list(opt.b)};
    const int r = opt.r >= 0 ? opt.r : static_cast<int>(fam.b.size());
    if (opt.a.empty()) {
        fam.a.assign(static_cast<std::size_t>(r) + 1, Rational(0));
    }
    if (opt.b.empty() && r > 0) {
        fam.b.assign(static_cast<std::size_t>(r), Rational(0));
    }
    if (static_cast<int>(fam.a.size()) != r + 1 || static_cast<int>(fam.b.size()) != r) {
        throw ConfigError("family needs r+1 upper and r lower parameters (r = " + std::to_string(r) + ")");
    }
    if (opt.n < 0) {
        throw ConfigError("n must be nonnegative");
    }
    Rational q;
    try {
        q = parse_rational(opt.q);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad q: ") + e.what());
    }

    // Formal variables become box variables; --x/--y substitute rationals.
    std::vector<Var> vars;
    std::stringstream ss(opt.formal);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) {
            continue;
        }
        const auto v = parse_var(name);
        if (!v || (*v != Var::x && *v != Var::y)) {
            throw ConfigError("--formal accepts x and y, got '" + name + "'");
        }
        vars.push_back(*v);
    }
    const Box box = Box::power(vars, opt.n);
    auto argument = [&](Var v, const std::string& value) {
        if (box.index_of(v)) {
            if (!value.empty()) {
                throw ConfigError(std::string(var_name(v)) + " is both formal and given a value");
            }
            return Series::variable(box, v);
        }
        if (value.empty()) {
            throw ConfigError(std::string(var_name(v)) + " needs --formal or a value");
        }
        return Series::constant(box, parse_rational(value));
    };

    std::optional<QContext> ctx;
    try {
        ctx.emplace(q, opt.n);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const Series xs = argument(Var::x, opt.x);
    const Series ys = argument(Var::y, opt.y);
    Series value;
    try {
        fam.validate(*ctx);
        value = opt.family == "phi" ? phi_family(*ctx, fam, opt.n, xs, ys) : psi_family(*ctx, fam, opt.n, xs, ys);
    } catch (const PoleInLowerParameter& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    if (opt.format == "csv") {
        std::cout << series_csv(value);
    } else {
        std::cout << to_canonical_string(value) << '\n';
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of q-series identities"};
    app.require_subcommand(1);

    ListOptions list_opt;
    auto* list = app.add_subcommand("list", "Show the identity registry");
    list->add_option("--filter", list_opt.filter, "Glob over identity ids");

    VerifyOptions vopt;
    try {
        vopt.order = default_order();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    auto* verify = app.add_subcommand("verify", "Check identities coefficientwise");
    verify->add_flag("--all", vopt.all, "Every registered identity");
    verify->add_option("--id", vopt.ids, "Identity id (repeatable)");
    verify->add_option("--filter", vopt.filters, "Glob over identity ids (repeatable)");
    verify->add_option("--order", vopt.order, "Truncation order N (default 12 or QIDENTITY_ORDER)");
    verify->add_option("--q", vopt.q, "q value p/q (repeatable; default palette)");
    verify->add_option("--seed", vopt.seeds, "Sampling seed (repeatable; default 7)");
    verify->add_option("--draws", vopt.draws, "Parameter draws per q value");
    vopt.json_opt = verify->add_option("--json", vopt.json_path, "JSON report, optionally to a file")->expected(0, 1);
    vopt.csv_opt = verify->add_option("--csv", vopt.csv_path, "CSV report, optionally to a file")->expected(0, 1);
    verify->add_flag("--human", vopt.human, "Plain text report (default)");
    verify->add_option("--out", vopt.out, "Output path");
    verify->add_option("--workers", vopt.workers, "Worker threads (default: available parallelism)");

    EvalOptions eopt;
    auto* eval = app.add_subcommand("eval", "Expand phi_n or psi_n");
    eval->add_option("family", eopt.family, "phi or psi")->required()->check(CLI::IsMember({"phi", "psi"}));
    eval->add_option("--r", eopt.r, "Family size r");
    eval->add_option("--a", eopt.a, "Upper parameters a_1..a_{r+1}");
    eval->add_option("--b", eopt.b, "Lower parameters b_1..b_r");
    eval->add_option("--n", eopt.n, "Degree n");
    eval->add_option("--q", eopt.q, "q value p/q");
    eval->add_option("--formal", eopt.formal, "Formal variables among x,y");
    eval->add_option("--x", eopt.x, "Rational value for x");
    eval->add_option("--y", eopt.y, "Rational value for y");
    eval->add_option("--format", eopt.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (list->parsed()) {
            return cmd_list(list_opt);
        }
        if (verify->parsed()) {
            return cmd_verify(vopt);
        }
        return cmd_eval(eopt);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
