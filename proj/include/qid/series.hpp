#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qid/rational.hpp"

namespace qid {

// Formal variables known to the engine. `x` is the auxiliary variable that
// keeps the operator scale (1-q)x formal while another variable is
// differentiated.
enum class Var : std::uint8_t { t, s, w, a, y, x };

inline constexpr std::size_t kMaxVars = 6;

std::string_view var_name(Var v);
std::optional<Var> parse_var(std::string_view name);

// Exponent tuple in the variable order of the owning Box; unused slots are 0.
using Exponents = std::array<int, kMaxVars>;

// Ordered variable list with per-variable truncation bounds [lo, hi].
struct Box {
    std::vector<Var> vars;
    std::vector<int> lo;
    std::vector<int> hi;

    // lo = -order, hi = order for every variable.
    static Box laurent(std::vector<Var> vars, int order);
    // lo = 0, hi = order for every variable.
    static Box power(std::vector<Var> vars, int order);

    std::size_t size() const { return vars.size(); }
    std::optional<std::size_t> index_of(Var v) const;
    std::size_t require_index(Var v) const;
    bool contains(const Exponents& e) const;
    bool same_vars(const Box& other) const { return vars == other.vars; }
    int max_total_degree() const;

    Box with_bounds(Var v, int new_lo, int new_hi) const;
    Box without(Var v) const;

    friend bool operator==(const Box&, const Box&) = default;
};

// Truncated multivariate Laurent series over Rational, stored sparsely.
// No stored coefficient is zero and every stored exponent lies in box().
class Series {
public:
    using Terms = std::map<Exponents, Rational>;

    Series() = default;
    explicit Series(Box box) : box_(std::move(box)) {}

    static Series constant(const Box& box, const Rational& c);
    static Series monomial(const Box& box, const Rational& c, const Exponents& e);
    static Series variable(const Box& box, Var v, const Rational& c = 1);

    const Box& box() const { return box_; }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Value of a series with at most a constant term.
    std::optional<Rational> constant_value() const;
    bool is_monomial() const { return terms_.size() == 1; }
    // Smallest total degree among stored terms; 0 for the zero series.
    int min_total_degree() const;
    // Exponent range of one variable over stored terms.
    std::pair<int, int> degree_range(Var v) const;

    // Accumulates c * monomial(e); silently drops e outside the box.
    void add_term(const Exponents& e, const Rational& c);

    friend bool operator==(const Series& p, const Series& q);

private:
    Box box_;
    Terms terms_;
};

Series series_add(const Series& p, const Series& q);
Series series_sub(const Series& p, const Series& q);
Series series_mul(const Series& p, const Series& q);
Series series_scale(const Series& p, const Rational& c);

inline Series operator+(const Series& p, const Series& q) { return series_add(p, q); }
inline Series operator-(const Series& p, const Series& q) { return series_sub(p, q); }
inline Series operator*(const Series& p, const Series& q) { return series_mul(p, q); }
inline Series operator*(const Series& p, const Rational& c) { return series_scale(p, c); }
inline Series operator*(const Rational& c, const Series& p) { return series_scale(p, c); }
inline Series operator-(const Series& p) { return series_scale(p, -1); }

// p^e; negative e is allowed only for monomials.
Series pow(const Series& p, int e);

// Rescales v -> factor * v: the term with v-exponent e picks up factor^e.
Series substitute_scaled(const Series& p, Var v, const Rational& factor);

Rational coefficient(const Series& p, const Exponents& e);

// Returns p when every stored exponent is >= 0, otherwise throws
// NegativeExponentResidue naming the offending terms.
Series assert_no_negative_exponents(const Series& p);

// Moves p into a box over the same variables, dropping out-of-box terms.
Series restrict_to(const Series& p, const Box& target);

// Replaces v by `value` (a series over the same box) via Horner's rule.
Series substitute(const Series& p, Var v, const Series& value);

// Sets v = 0 and removes v from the box.
Series specialize_zero(const Series& p, Var v);

// Image of one source variable under a monomial substitution.
struct MonomialImage {
    Var source;
    Rational coeff;
    Exponents exps;  // exponents in the target box
};

// Ring map sending each source variable to coeff * target-monomial.
Series substitute_monomials(const Series& p, const Box& target, const std::vector<MonomialImage>& images);

// Canonical text: terms in lexicographic exponent order, "c * v^e w^f" joined
// by " + " / " - "; the zero series is "0".
std::string to_canonical_string(const Series& p);
Series parse_canonical(std::string_view text, const Box& box);

} // namespace qid
