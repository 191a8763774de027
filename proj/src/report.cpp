#include "qid/report.hpp"

#include <sstream>
#include <stdexcept>

namespace qid {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json rationals_to_json(const std::vector<Rational>& xs) {
    ordered_json out = ordered_json::array();
    for (const auto& x : xs) {
        out.push_back(to_string(x));
    }
    return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
    std::vector<Rational> out;
    for (const auto& x : j) {
        out.push_back(parse_rational(x.get<std::string>()));
    }
    return out;
}

ordered_json mismatch_to_json(const Mismatch& m) {
    ordered_json e = ordered_json::object();
    for (const auto& [name, exp] : m.exponents) {
        e[name] = exp;
    }
    return ordered_json{{"component", m.component},
                        {"exponents", e},
                        {"lhs", to_string(m.lhs)},
                        {"rhs", to_string(m.rhs)}};
}

// Exponent order is restored from the "exponent_order" list because JSON
// objects do not carry one.
Mismatch mismatch_from_json(const json& j) {
    Mismatch m;
    m.component = j.at("component").get<std::size_t>();
    for (const auto& name : j.at("exponent_order")) {
        const auto key = name.get<std::string>();
        m.exponents.emplace_back(key, j.at("exponents").at(key).get<int>());
    }
    m.lhs = parse_rational(j.at("lhs").get<std::string>());
    m.rhs = parse_rational(j.at("rhs").get<std::string>());
    return m;
}

ordered_json mismatch_with_order(const Mismatch& m) {
    ordered_json j = mismatch_to_json(m);
    ordered_json order = ordered_json::array();
    for (const auto& [name, exp] : m.exponents) {
        order.push_back(name);
    }
    j["exponent_order"] = order;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string params_text(const ParamSet& p) {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) {
            os << ' ';
        }
        first = false;
    };
    for (const auto& [k, v] : p.scalars) {
        sep();
        os << k << '=' << to_string(v);
    }
    if (!p.fam.a.empty()) {
        sep();
        os << "a=[";
        for (std::size_t i = 0; i < p.fam.a.size(); ++i) {
            os << (i ? "," : "") << to_string(p.fam.a[i]);
        }
        os << "] b=[";
        for (std::size_t i = 0; i < p.fam.b.size(); ++i) {
            os << (i ? "," : "") << to_string(p.fam.b[i]);
        }
        os << ']';
    }
    sep();
    os << "n=" << p.n;
    if (p.seed) {
        os << " seed=" << p.seed;
    }
    return os.str();
}

} // namespace

std::string describe_mismatch(const Mismatch& m) {
    std::ostringstream os;
    os << "component " << m.component << " at (";
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        os << (i ? ", " : "") << m.exponents[i].first << '^' << m.exponents[i].second;
    }
    os << "): lhs " << to_string(m.lhs) << ", rhs " << to_string(m.rhs);
    return os.str();
}

ordered_json to_json(const VerificationReport& r) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params.scalars) {
        params[k] = to_string(v);
    }
    ordered_json j{{"id", r.id},
                   {"paper_eq", r.paper_eq},
                   {"status", std::string(status_name(r.status))},
                   {"q", to_string(r.params.q)},
                   {"order", r.order},
                   {"params", params},
                   {"family", {{"a", rationals_to_json(r.params.fam.a)}, {"b", rationals_to_json(r.params.fam.b)}}},
                   {"n", r.params.n},
                   {"seed", r.params.seed},
                   {"reason", r.reason},
                   {"coefficients_compared", r.coefficients_compared}};
    if (r.first_mismatch) {
        j["first_mismatch"] = mismatch_with_order(*r.first_mismatch);
    }
    if (r.printed) {
        ordered_json p{{"note", r.printed->note},
                       {"status", std::string(status_name(r.printed->status))},
                       {"reason", r.printed->reason}};
        if (r.printed->first_mismatch) {
            p["first_mismatch"] = mismatch_with_order(*r.printed->first_mismatch);
        }
        j["printed_form"] = p;
    }
    j["wall_ms"] = r.wall_ms;
    return j;
}

VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    r.id = j.at("id").get<std::string>();
    r.paper_eq = j.at("paper_eq").get<std::string>();
    const auto status = parse_status(j.at("status").get<std::string>());
    if (!status) {
        throw std::invalid_argument("unknown status in report");
    }
    r.status = *status;
    r.order = j.at("order").get<int>();
    r.params.q = parse_rational(j.at("q").get<std::string>());
    for (const auto& [k, v] : j.at("params").items()) {
        r.params.scalars[k] = parse_rational(v.get<std::string>());
    }
    r.params.fam.a = rationals_from_json(j.at("family").at("a"));
    r.params.fam.b = rationals_from_json(j.at("family").at("b"));
    r.params.n = j.at("n").get<int>();
    r.params.seed = j.at("seed").get<std::uint64_t>();
    r.reason = j.at("reason").get<std::string>();
    r.coefficients_compared = j.at("coefficients_compared").get<std::size_t>();
    if (j.contains("first_mismatch")) {
        r.first_mismatch = mismatch_from_json(j.at("first_mismatch"));
    }
    if (j.contains("printed_form")) {
        const auto& p = j.at("printed_form");
        ErratumOutcome e;
        e.note = p.at("note").get<std::string>();
        e.status = parse_status(p.at("status").get<std::string>()).value_or(Status::FAIL);
        e.reason = p.at("reason").get<std::string>();
        if (p.contains("first_mismatch")) {
            e.first_mismatch = mismatch_from_json(p.at("first_mismatch"));
        }
        r.printed = e;
    }
    r.wall_ms = j.value("wall_ms", 0.0);
    return r;
}

ordered_json to_json(const RunReport& r) {
    ordered_json results = ordered_json::array();
    for (const auto& v : r.results) {
        results.push_back(to_json(v));
    }
    return ordered_json{{"run",
                         {{"order", r.run.order},
                          {"seeds", r.run.seeds},
                          {"q_points", rationals_to_json(r.run.q_points)},
                          {"draws", r.run.draws},
                          {"timestamp", r.run.timestamp}}},
                        {"results", results}};
}

RunReport run_report_from_json(const json& j) {
    RunReport r;
    const auto& run = j.at("run");
    r.run.order = run.at("order").get<int>();
    r.run.seeds = run.at("seeds").get<std::vector<std::uint64_t>>();
    r.run.q_points = rationals_from_json(run.at("q_points"));
    r.run.draws = run.at("draws").get<int>();
    r.run.timestamp = run.at("timestamp").get<std::string>();
    for (const auto& v : j.at("results")) {
        r.results.push_back(report_from_json(v));
    }
    return r;
}

json without_timing(const json& j) {
    json out = j;
    if (out.contains("run")) {
        out["run"].erase("timestamp");
    }
    if (out.contains("results")) {
        for (auto& r : out["results"]) {
            r.erase("wall_ms");
        }
    }
    return out;
}

std::string format_human(const RunReport& r) {
    std::ostringstream os;
    std::size_t pass = 0, fail = 0, skipped = 0;
    for (const auto& v : r.results) {
        os << status_name(v.status) << "  " << v.id << "  " << v.paper_eq << "  q=" << to_string(v.params.q) << "  "
           << params_text(v.params);
        if (!v.reason.empty() && v.status != Status::PASS) {
            os << "  (" << v.reason << ')';
        }
        os << '\n';
        if (v.first_mismatch) {
            os << "    first mismatch: " << describe_mismatch(*v.first_mismatch) << '\n';
        }
        if (v.printed) {
            os << "    printed form [" << v.printed->note << "]: " << status_name(v.printed->status);
            if (v.printed->first_mismatch) {
                os << ", " << describe_mismatch(*v.printed->first_mismatch);
            }
            os << '\n';
        }
        (v.status == Status::PASS ? pass : v.status == Status::FAIL ? fail : skipped) += 1;
    }
    os << "summary: " << r.results.size() << " runs, " << pass << " PASS, " << fail << " FAIL, " << skipped
       << " SKIPPED (order " << r.run.order << ")\n";
    return os.str();
}

std::string format_csv(const RunReport& r) {
    std::ostringstream os;
    os << "id,paper_eq,status,q,order,params,reason,first_mismatch,printed_status\n";
    for (const auto& v : r.results) {
        os << csv_field(v.id) << ',' << csv_field(v.paper_eq) << ',' << status_name(v.status) << ','
           << to_string(v.params.q) << ',' << v.order << ',' << csv_field(params_text(v.params)) << ','
           << csv_field(v.reason) << ',' << csv_field(v.first_mismatch ? describe_mismatch(*v.first_mismatch) : "")
           << ',' << (v.printed ? status_name(v.printed->status) : "") << '\n';
    }
    return os.str();
}

std::string series_csv(const Series& p) {
    std::ostringstream os;
    for (const Var v : p.box().vars) {
        os << var_name(v) << ',';
    }
    os << "coeff\n";
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            os << e[i] << ',';
        }
        os << to_string(c) << '\n';
    }
    return os.str();
}

} // namespace qid
