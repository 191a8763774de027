#pragma once

#include <vector>

#include "qid/q_fundamentals.hpp"
#include "qid/rational.hpp"
#include "qid/series.hpp"

namespace qid {

// Parameter vectors a = (a_1..a_{r+1}) and b = (b_1..b_r).
struct FamilySpec {
    std::vector<Rational> a;
    std::vector<Rational> b;

    int r() const { return static_cast<int>(b.size()); }
    // Throws std::invalid_argument on length mismatch and PoleInLowerParameter
    // when some b_j equals q^{-m} with 0 <= m <= cap.
    void validate(const QContext& ctx) const;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// (a_1, .., a_{r+1};q)_k / (b_1, .., b_r;q)_k.
Rational family_ratio(const QContext& ctx, const FamilySpec& fam, int k);

// prod_{k<n} (x - q^k y).
Series cauchy_p(const QContext& ctx, int n, const Series& x, const Series& y);

// sum_k [n,k] (a)_k/(b)_k x^k y^{n-k}.
Series phi_family(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y);

// sum_k [n,k] (a)_k/(b)_k (-1)^k q^{C(k+1,2)-nk} x^k y^{n-k}; the sign makes the
// direct sum agree with E(a,b,-(1-q)x D_{q^-1}){y^n} and the generating
// functions built from it.
Series psi_family(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y);
// Same sum without (-1)^k.
Series psi_family_unsigned(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y);

// T(a,b,(1-q)x D_q){y^n} and E(a,b,-(1-q)x D_{q^-1}){y^n}. When y is not the
// plain formal variable y, the operator acts on a scratch y which is then
// replaced by the given value.
Series phi_family_via_operator(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y);
Series psi_family_via_operator(const QContext& ctx, const FamilySpec& fam, int n, const Series& x, const Series& y);

// sum_k [n,k] (a;q)_k x^k.
Series hahn_phi(const QContext& ctx, const Rational& a, int n, const Series& x);
// sum_k [n,k] q^{k(k-n)} (a q^{1-k};q)_k x^k.
Series hahn_psi(const QContext& ctx, const Rational& a, int n, const Series& x);

} // namespace qid
