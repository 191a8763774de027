#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qid/catalog.hpp"

namespace qid {

struct RunInfo {
    int order = 12;
    std::vector<std::uint64_t> seeds;
    std::vector<Rational> q_points;
    int draws = 5;
    std::string timestamp;

    friend bool operator==(const RunInfo&, const RunInfo&) = default;
};

struct RunReport {
    RunInfo run;
    std::vector<VerificationReport> results;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::ordered_json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

// Copy without the run timestamp and per-result wall_ms, the only fields that
// vary between identical runs.
nlohmann::json without_timing(const nlohmann::json& j);

std::string format_human(const RunReport& r);
std::string format_csv(const RunReport& r);

// Coefficient table: one column per variable of the box, then "coeff".
std::string series_csv(const Series& p);

std::string describe_mismatch(const Mismatch& m);

} // namespace qid
