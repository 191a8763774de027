#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qid/families.hpp"
#include "qid/q_fundamentals.hpp"
#include "qid/series.hpp"

namespace qid {

// One instantiation of an identity's free parameters.
struct ParamSet {
    Rational q;
    FamilySpec fam;
    std::map<std::string, Rational> scalars;
    int n = 0;
    std::uint64_t seed = 0;

    const Rational& at(const std::string& name) const;

    friend bool operator==(const ParamSet&, const ParamSet&) = default;
};

// Builds the components of one side over the comparison box. Most identities
// have a single component; the specialization checks return several.
using Builder = std::function<std::vector<Series>(const ParamSet&, const QContext&, const Box&)>;

struct Constraint {
    std::string summary;
    std::function<bool(const ParamSet&, const QContext&)> holds;
};

// A displayed form that does not hold as printed. verify() evaluates it next
// to the corrected form and reports its outcome separately.
struct Erratum {
    std::string note;
    Builder printed_lhs;  // empty: same as the corrected lhs
    Builder printed_rhs;  // empty: same as the corrected rhs
};

struct Identity {
    std::string id;
    std::string paper_eq;
    std::vector<Var> vars;
    std::vector<int> fixed_caps;  // per variable; 0 means "use the run order"
    std::vector<std::string> scalars;
    bool uses_family = false;
    int n_min = 0;
    int n_max = -1;  // -1: identity has no integer parameter
    bool uses_seed = false;
    std::vector<Constraint> constraints;
    std::string domain_note;
    Builder lhs;
    Builder rhs;
    std::optional<Erratum> erratum;

    Box target_box(int order) const;
    std::string caps_summary() const;
    std::string constraint_summary() const;
};

const std::vector<Identity>& register_catalog();
const Identity* lookup(std::string_view id);
// Shell-style glob with '*' and '?'.
bool glob_match(std::string_view pattern, std::string_view text);

enum class Status { PASS, FAIL, SKIPPED };
std::string_view status_name(Status s);
std::optional<Status> parse_status(std::string_view s);

struct Mismatch {
    std::size_t component = 0;
    std::vector<std::pair<std::string, int>> exponents;
    Rational lhs;
    Rational rhs;

    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct ErratumOutcome {
    std::string note;
    Status status = Status::PASS;
    std::string reason;
    std::optional<Mismatch> first_mismatch;

    friend bool operator==(const ErratumOutcome&, const ErratumOutcome&) = default;
};

struct VerificationReport {
    std::string id;
    std::string paper_eq;
    Status status = Status::SKIPPED;
    int order = 0;
    ParamSet params;
    std::string reason;
    std::optional<Mismatch> first_mismatch;
    std::size_t coefficients_compared = 0;
    std::optional<ErratumOutcome> printed;
    double wall_ms = 0;

    // Equality ignores wall_ms.
    friend bool operator==(const VerificationReport& a, const VerificationReport& b);
};

// Compares the two sides componentwise over the identity's box. Mismatches are
// ordered by total degree, then lexicographically.
VerificationReport verify(const Identity& identity, const ParamSet& params, int order);

// Deterministic draws for one q value. Throws std::runtime_error when 1000
// consecutive draws violate the constraints.
std::vector<ParamSet> sample_params(const Identity& identity, std::uint64_t seed, int count, const Rational& q,
                                    int order);

const std::vector<Rational>& default_q_palette();

struct SuiteConfig {
    std::vector<std::string> ids;
    std::vector<std::uint64_t> seeds{7};
    int order = 12;
    std::vector<Rational> q_points = default_q_palette();
    int draws = 5;
    unsigned workers = 1;
};

// identities x seeds x q points x draws, sorted by id, then seed, q index and
// draw index regardless of worker scheduling.
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

// Test fixtures: copies whose rhs is perturbed.
Identity mutate_rhs_scale(const Identity& identity);     // rhs * (1 + q)
Identity mutate_rhs_q_shift(const Identity& identity);   // first variable v -> q v, or rhs * q

} // namespace qid
