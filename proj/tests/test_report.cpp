#include <doctest.h>

#include "qid/report.hpp"
#include "test_util.hpp"

using namespace qid;
using qid::test::R;

namespace {

RunReport sample_run() {
    SuiteConfig cfg;
    cfg.ids = {"GEN.psi", "LEIBNIZ.fwd", "CHU.1"};
    cfg.order = 6;
    cfg.q_points = {R(1, 2), R(-1, 3)};
    cfg.draws = 2;
    RunReport run;
    run.run = RunInfo{cfg.order, cfg.seeds, cfg.q_points, cfg.draws, "2026-01-01T00:00:00Z"};
    run.results = run_suite(cfg);

    // One failing entry so the mismatch fields are exercised.
    const auto mutated = mutate_rhs_scale(*lookup("GEN.phi"));
    run.results.push_back(verify(mutated, sample_params(mutated, 7, 1, R(2, 5), 6)[0], 6));
    return run;
}

} // namespace

TEST_CASE("json report round-trips") {
    const RunReport run = sample_run();
    REQUIRE(run.results.back().first_mismatch.has_value());
    const std::string text = to_json(run).dump(2);
    const RunReport back = run_report_from_json(nlohmann::json::parse(text));
    CHECK(back == run);
    CHECK(to_json(back).dump(2) == text);

    const auto j = nlohmann::json::parse(text);
    CHECK(j["run"]["order"] == 6);
    CHECK(j["run"]["q_points"][1] == "-1/3");
    const auto& first = j["results"][0];
    CHECK(first["id"] == "CHU.1");
    CHECK(first["paper_eq"] == "Eq. (\"chuv\")");
    CHECK(first["status"] == "PASS");
    CHECK(first["q"] == "1/2");
    CHECK(first.contains("wall_ms"));
    CHECK_FALSE(first.contains("first_mismatch"));
    const auto& last = j["results"].back();
    CHECK(last["status"] == "FAIL");
    CHECK(last["first_mismatch"]["exponents"]["t"] == 0);
}

TEST_CASE("identical configurations give identical json apart from timing") {
    RunReport a = sample_run();
    RunReport b = sample_run();
    b.run.timestamp = "2030-06-01T12:00:00Z";
    const auto ja = nlohmann::json::parse(to_json(a).dump());
    const auto jb = nlohmann::json::parse(to_json(b).dump());
    CHECK(without_timing(ja) == without_timing(jb));
    CHECK_FALSE(without_timing(ja).contains("timestamp"));
    CHECK_FALSE(without_timing(ja)["results"][0].contains("wall_ms"));
}

TEST_CASE("human and csv renderings") {
    const RunReport run = sample_run();
    const std::string human = format_human(run);
    CHECK(human.find("PASS  CHU.1") != std::string::npos);
    CHECK(human.find("first mismatch: component 0 at (t^0)") != std::string::npos);
    CHECK(human.find("printed form [psi summed without the (-1)^k sign]") != std::string::npos);
    CHECK(human.find(", 1 FAIL,") != std::string::npos);

    const std::string csv = format_csv(run);
    CHECK(csv.rfind("id,paper_eq,status,q,order,params,reason,first_mismatch,printed_status\n", 0) == 0);
    CHECK(csv.find("CHU.1,\"Eq. (\"\"chuv\"\")\",PASS,1/2,6,") != std::string::npos);
}

TEST_CASE("coefficient table as csv") {
    const Box box = Box::power({Var::x, Var::y}, 2);
    const Series p = Series::variable(box, Var::x) * Series::variable(box, Var::y) * R(3, 2) +
                     Series::variable(box, Var::y) * Series::variable(box, Var::y);
    CHECK(series_csv(p) == "x,y,coeff\n0,2,1\n1,1,3/2\n");
}
