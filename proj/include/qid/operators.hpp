#pragma once

#include "qid/families.hpp"
#include "qid/q_fundamentals.hpp"
#include "qid/series.hpp"

namespace qid {

enum class Direction { forward, backward };

// D_q in v: v^n -> [n]_q v^{n-1}. Throws SeriesError when a nonzero result
// term would fall below the box's lower bound in v.
Series apply_dq(const QContext& ctx, const Series& p, Var v);
// D_{q^-1} in v: v^n -> q^{1-n}[n]_q v^{n-1}.
Series apply_dq_inv(const QContext& ctx, const Series& p, Var v);
// k-fold iterate; k = 0 is the identity.
Series apply_dq_power(const QContext& ctx, const Series& p, Var v, int k, Direction dir);

// Difference quotient (p(v) - p(qv))/((1-q)v), used as an independent check of
// the monomial rule.
Series dq_difference_quotient(const QContext& ctx, const Series& p, Var v);

enum class OperatorKind { T, E };

struct OperatorSpec {
    FamilySpec family;
    Series scale;  // must not involve acted
    OperatorKind kind = OperatorKind::T;
    Var acted = Var::y;
};

// sum_k (a)_k/((q)_k (b)_k) (scale D)^k p with D = D_q for T and D_{q^-1} for
// E. Stops once the iterate vanishes; throws SeriesError if it survives past
// order + (top degree in the acted variable).
Series apply_homogeneous_operator(const QContext& ctx, const OperatorSpec& spec, const Series& p);

} // namespace qid
