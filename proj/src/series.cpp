#include "qid/series.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "qid/errors.hpp"

namespace qid {

namespace {

constexpr std::array<std::string_view, kMaxVars> kVarNames = {"t", "s", "w", "a", "y", "x"};

void require_same_vars(const Series& p, const Series& q, const char* op) {
    if (!p.box().same_vars(q.box())) {
        throw SeriesError(std::string(op) + ": operands have different variable lists");
    }
}

Box merged_box(const Box& p, const Box& q) {
    Box out = p;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.lo[i] = std::max(p.lo[i], q.lo[i]);
        out.hi[i] = std::min(p.hi[i], q.hi[i]);
    }
    return out;
}

std::string describe_exponents(const Box& box, const Exponents& e) {
    std::string out = "(";
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += std::string(var_name(box.vars[i])) + ":" + std::to_string(e[i]);
    }
    return out + ")";
}

} // namespace

std::string_view var_name(Var v) { return kVarNames[static_cast<std::size_t>(v)]; }

std::optional<Var> parse_var(std::string_view name) {
    if (name == "x-aux") {
        return Var::x;
    }
    for (std::size_t i = 0; i < kVarNames.size(); ++i) {
        if (kVarNames[i] == name) {
            return static_cast<Var>(i);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Box

Box Box::laurent(std::vector<Var> vars, int order) {
    Box b;
    b.lo.assign(vars.size(), -order);
    b.hi.assign(vars.size(), order);
    b.vars = std::move(vars);
    if (b.vars.size() > kMaxVars) {
        throw SeriesError("too many variables");
    }
    return b;
}

Box Box::power(std::vector<Var> vars, int order) {
    Box b = laurent(std::move(vars), order);
    std::fill(b.lo.begin(), b.lo.end(), 0);
    return b;
}

std::optional<std::size_t> Box::index_of(Var v) const {
    const auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - vars.begin());
}

std::size_t Box::require_index(Var v) const {
    const auto i = index_of(v);
    if (!i) {
        throw SeriesError("variable '" + std::string(var_name(v)) + "' is not part of the series");
    }
    return *i;
}

bool Box::contains(const Exponents& e) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (e[i] < lo[i] || e[i] > hi[i]) {
            return false;
        }
    }
    for (std::size_t i = size(); i < kMaxVars; ++i) {
        if (e[i] != 0) {
            return false;
        }
    }
    return true;
}

int Box::max_total_degree() const {
    int d = 0;
    for (int h : hi) {
        d += h;
    }
    return d;
}

Box Box::with_bounds(Var v, int new_lo, int new_hi) const {
    Box b = *this;
    const auto i = b.require_index(v);
    b.lo[i] = new_lo;
    b.hi[i] = new_hi;
    return b;
}

Box Box::without(Var v) const {
    Box b = *this;
    const auto i = b.require_index(v);
    b.vars.erase(b.vars.begin() + static_cast<std::ptrdiff_t>(i));
    b.lo.erase(b.lo.begin() + static_cast<std::ptrdiff_t>(i));
    b.hi.erase(b.hi.begin() + static_cast<std::ptrdiff_t>(i));
    return b;
}

// ---------------------------------------------------------------------------
// Series

Series Series::constant(const Box& box, const Rational& c) {
    Series p(box);
    p.add_term(Exponents{}, c);
    return p;
}

Series Series::monomial(const Box& box, const Rational& c, const Exponents& e) {
    Series p(box);
    p.add_term(e, c);
    return p;
}

Series Series::variable(const Box& box, Var v, const Rational& c) {
    Exponents e{};
    e[box.require_index(v)] = 1;
    return monomial(box, c, e);
}

std::optional<Rational> Series::constant_value() const {
    if (terms_.empty()) {
        return Rational(0);
    }
    if (terms_.size() == 1 && terms_.begin()->first == Exponents{}) {
        return terms_.begin()->second;
    }
    return std::nullopt;
}

int Series::min_total_degree() const {
    if (terms_.empty()) {
        return 0;
    }
    int best = std::numeric_limits<int>::max();
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (std::size_t i = 0; i < box_.size(); ++i) {
            d += e[i];
        }
        best = std::min(best, d);
    }
    return best;
}

std::pair<int, int> Series::degree_range(Var v) const {
    const auto i = box_.require_index(v);
    if (terms_.empty()) {
        return {0, 0};
    }
    int lo = std::numeric_limits<int>::max();
    int hi = std::numeric_limits<int>::min();
    for (const auto& [e, c] : terms_) {
        lo = std::min(lo, e[i]);
        hi = std::max(hi, e[i]);
    }
    return {lo, hi};
}

void Series::add_term(const Exponents& e, const Rational& c) {
    if (qid::is_zero(c) || !box_.contains(e)) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (qid::is_zero(it->second)) {
            terms_.erase(it);
        }
    }
}

bool operator==(const Series& p, const Series& q) { return p.box_ == q.box_ && p.terms_ == q.terms_; }

// ---------------------------------------------------------------------------
// Arithmetic

Series series_add(const Series& p, const Series& q) {
    require_same_vars(p, q, "series_add");
    Series out(merged_box(p.box(), q.box()));
    for (const auto& [e, c] : p.terms()) {
        out.add_term(e, c);
    }
    for (const auto& [e, c] : q.terms()) {
        out.add_term(e, c);
    }
    return out;
}

Series series_sub(const Series& p, const Series& q) {
    require_same_vars(p, q, "series_sub");
    Series out(merged_box(p.box(), q.box()));
    for (const auto& [e, c] : p.terms()) {
        out.add_term(e, c);
    }
    for (const auto& [e, c] : q.terms()) {
        out.add_term(e, -c);
    }
    return out;
}

Series series_mul(const Series& p, const Series& q) {
    require_same_vars(p, q, "series_mul");
    const Box box = merged_box(p.box(), q.box());
    const std::size_t n = box.size();
    Series::Terms acc;
    Rational prod;
    Exponents e{};
    for (const auto& [ep, cp] : p.terms()) {
        for (const auto& [eq, cq] : q.terms()) {
            bool inside = true;
            for (std::size_t i = 0; i < n; ++i) {
                e[i] = ep[i] + eq[i];
                if (e[i] < box.lo[i] || e[i] > box.hi[i]) {
                    inside = false;
                    break;
                }
            }
            if (!inside) {
                continue;
            }
            mpq_mul(prod.get_mpq_t(), cp.get_mpq_t(), cq.get_mpq_t());
            auto [it, inserted] = acc.try_emplace(e, prod);
            if (!inserted) {
                mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
            }
        }
    }
    Series out(box);
    for (auto& [k, c] : acc) {
        out.add_term(k, c);
    }
    return out;
}

Series series_scale(const Series& p, const Rational& c) {
    Series out(p.box());
    if (is_zero(c)) {
        return out;
    }
    for (const auto& [e, v] : p.terms()) {
        out.add_term(e, v * c);
    }
    return out;
}

Series pow(const Series& p, int e) {
    if (e < 0) {
        if (!p.is_monomial()) {
            throw SeriesError("negative power of a series that is not a monomial");
        }
        const auto& [exps, c] = *p.terms().begin();
        Exponents inv{};
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            inv[i] = -exps[i] * (-e);
        }
        return Series::monomial(p.box(), pow(c, e), inv);
    }
    Series result = Series::constant(p.box(), 1);
    Series base = p;
    while (e > 0) {
        if (e & 1) {
            result = result * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

Series substitute_scaled(const Series& p, Var v, const Rational& factor) {
    const auto idx = p.box().require_index(v);
    Series out(p.box());
    for (const auto& [e, c] : p.terms()) {
        if (e[idx] < 0 && is_zero(factor)) {
            throw SeriesError("substitute_scaled: zero factor on a negative exponent");
        }
        out.add_term(e, c * pow(factor, e[idx]));
    }
    return out;
}

Rational coefficient(const Series& p, const Exponents& e) {
    if (!p.box().contains(e)) {
        throw SeriesError("coefficient: exponent tuple " + describe_exponents(p.box(), e) + " is outside the box");
    }
    const auto it = p.terms().find(e);
    return it == p.terms().end() ? Rational(0) : it->second;
}

Series assert_no_negative_exponents(const Series& p) {
    std::string offending;
    std::size_t count = 0;
    for (const auto& [e, c] : p.terms()) {
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            if (e[i] < 0) {
                if (count < 4) {
                    offending += (count ? ", " : "") + to_string(c) + " at " + describe_exponents(p.box(), e);
                }
                ++count;
                break;
            }
        }
    }
    if (count > 0) {
        throw NegativeExponentResidue(std::to_string(count) + " term(s) with negative exponents: " + offending);
    }
    return p;
}

Series restrict_to(const Series& p, const Box& target) {
    if (!p.box().same_vars(target)) {
        throw SeriesError("restrict_to: target box has different variables");
    }
    Series out(target);
    for (const auto& [e, c] : p.terms()) {
        out.add_term(e, c);
    }
    return out;
}

Series substitute(const Series& p, Var v, const Series& value) {
    if (!p.box().same_vars(value.box())) {
        throw SeriesError("substitute: value lives over different variables");
    }
    const auto idx = p.box().require_index(v);
    std::map<int, Series> slices;
    for (const auto& [e, c] : p.terms()) {
        Exponents rest = e;
        rest[idx] = 0;
        auto it = slices.try_emplace(e[idx], Series(p.box())).first;
        it->second.add_term(rest, c);
    }
    Series out(p.box());
    for (const auto& [k, slice] : slices) {
        out = out + slice * pow(value, k);
    }
    return out;
}

Series specialize_zero(const Series& p, Var v) {
    const auto idx = p.box().require_index(v);
    Series out(p.box().without(v));
    for (const auto& [e, c] : p.terms()) {
        if (e[idx] != 0) {
            continue;
        }
        Exponents rest{};
        for (std::size_t i = 0, j = 0; i < p.box().size(); ++i) {
            if (i != idx) {
                rest[j++] = e[i];
            }
        }
        out.add_term(rest, c);
    }
    return out;
}

Series substitute_monomials(const Series& p, const Box& target, const std::vector<MonomialImage>& images) {
    std::vector<const MonomialImage*> image_of(p.box().size(), nullptr);
    for (const auto& img : images) {
        image_of[p.box().require_index(img.source)] = &img;
    }
    for (std::size_t i = 0; i < image_of.size(); ++i) {
        if (!image_of[i]) {
            throw SeriesError("substitute_monomials: no image for variable '" +
                              std::string(var_name(p.box().vars[i])) + "'");
        }
    }
    Series out(target);
    for (const auto& [e, c] : p.terms()) {
        Rational coeff = c;
        Exponents image{};
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            coeff *= pow(image_of[i]->coeff, e[i]);
            for (std::size_t j = 0; j < target.size(); ++j) {
                image[j] += image_of[i]->exps[j] * e[i];
            }
        }
        out.add_term(image, coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text

std::string to_canonical_string(const Series& p) {
    if (p.is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        const bool negative = sgn(c) < 0;
        if (first) {
            out << (negative ? "-" : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        out << to_string(negative ? Rational(-c) : c);
        bool star = false;
        for (std::size_t i = 0; i < p.box().size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            out << (star ? " " : " * ") << var_name(p.box().vars[i]) << "^" << e[i];
            star = true;
        }
    }
    return out.str();
}

namespace {

Exponents parse_monomial(std::string_view text, const Box& box) {
    Exponents e{};
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') {
            ++pos;
        }
        if (pos >= text.size()) {
            break;
        }
        auto end = text.find(' ', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const auto factor = text.substr(pos, end - pos);
        pos = end;
        const auto caret = factor.find('^');
        const auto var = parse_var(factor.substr(0, caret));
        if (!var) {
            throw SeriesError("parse_canonical: unknown variable in '" + std::string(factor) + "'");
        }
        int exp = 1;
        if (caret != std::string_view::npos) {
            const auto digits = factor.substr(caret + 1);
            const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exp);
            if (ec != std::errc() || ptr != digits.data() + digits.size()) {
                throw SeriesError("parse_canonical: bad exponent in '" + std::string(factor) + "'");
            }
        }
        e[box.require_index(*var)] += exp;
    }
    return e;
}

} // namespace

Series parse_canonical(std::string_view text, const Box& box) {
    Series out(box);
    std::string s(text);
    if (s == "0") {
        return out;
    }
    // Split on " + " and " - " separators; exponents never contain spaces.
    std::vector<std::pair<bool, std::string>> pieces;
    bool negative = false;
    std::size_t start = 0;
    if (!s.empty() && s[0] == '-') {
        negative = true;
        start = 1;
    }
    std::size_t pos = start;
    while (true) {
        const auto plus = s.find(" + ", pos);
        const auto minus = s.find(" - ", pos);
        const auto next = std::min(plus, minus);
        pieces.emplace_back(negative, s.substr(start, next - start));
        if (next == std::string::npos) {
            break;
        }
        negative = (next == minus);
        start = next + 3;
        pos = start;
    }
    for (const auto& [neg, piece] : pieces) {
        const auto star = piece.find(" * ");
        Rational c = parse_rational(piece.substr(0, star));
        const Exponents e = star == std::string::npos ? Exponents{} : parse_monomial(std::string_view(piece).substr(star + 3), box);
        if (!box.contains(e)) {
            throw SeriesError("parse_canonical: term outside box: '" + piece + "'");
        }
        out.add_term(e, neg ? Rational(-c) : c);
    }
    return out;
}

} // namespace qid
