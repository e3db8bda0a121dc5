#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qres/errors.hpp"
#include "qres/lp.hpp"
#include "qres/reach.hpp"
#include "qres/system.hpp"

namespace qres {

enum class Verdict { Resilient, NotResilient, NotControllable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Resilient: return "Resilient";
        case Verdict::NotResilient: return "NotResilient";
        case Verdict::NotControllable: return "NotControllable";
    }
    return "?";
}

/// Maximal gain with which the kept actuators can imitate the lost column:
/// lambda* = max { lambda : B v = lambda C, |v|_inf <= u_max }, lambda free.
/// C = 0 yields +infinity (any multiple of the zero column is reachable);
/// -infinity is the sentinel for an infeasible LP, which cannot occur for
/// well-posed inputs since (v, lambda) = 0 is always feasible.
inline double lambda_star(const MalfunctionSplit& ms, const Tolerances& tol = {}) {
    if (ms.p() != 1)
        throw MultipleColumns("lambda_star requires exactly one lost column, got " +
                              std::to_string(ms.p()));
    const Vector c = ms.c.column(0);
    if (is_zero(c)) return kInf;

    const std::size_t m = ms.m();
    LpProblem lp;
    lp.objective.assign(m + 1, 0.0);
    lp.objective[m] = 1.0;
    lp.a_eq = Matrix(ms.system.n, m + 1);
    for (std::size_t i = 0; i < ms.system.n; ++i) {
        for (std::size_t j = 0; j < m; ++j) lp.a_eq(i, j) = ms.b(i, j);
        lp.a_eq(i, m) = -c[i];
    }
    lp.b_eq.assign(ms.system.n, 0.0);
    lp.lower.assign(m + 1, -ms.system.u_max);
    lp.upper.assign(m + 1, ms.system.u_max);
    lp.lower[m] = -kInf;
    lp.upper[m] = kInf;

    const LpOutcome out = solve(lp, tol.feas_tol);
    if (out.status == LpStatus::Infeasible) return -kInf;
    if (out.status == LpStatus::Unbounded) return kInf;
    return out.value;
}

inline double r_max_from_lambda(double ls, double u_max) {
    if (ls == kInf) return 1.0;
    if (ls == -kInf) return -1.0;  // lost column not replicable at any gain
    if (std::abs(ls + u_max) < 1e-12)
        throw DegenerateDenominator("lambda* + u_max vanishes");
    return (ls - u_max) / (ls + u_max);
}

/// r_max = (lambda* - u_max) / (lambda* + u_max); the closed form for r_q of
/// a resilient system. C = 0 gives 1 (no disturbance at all).
inline double r_max(const MalfunctionSplit& ms, const Tolerances& tol = {}) {
    const double ls = lambda_star(ms, tol);
    return r_max_from_lambda(ls, ms.system.u_max);
}

/// Resilient means every target stays reachable in finite time after the
/// loss. For a single lost column this is exact: controllable and
/// r_max in (0, 1]. For p > 1 the check is the finite-reach heuristic over
/// each lost column direction and is flagged as such in reports.
inline Verdict resilience_verdict(const MalfunctionSplit& ms, const Tolerances& tol = {}) {
    if (!is_controllable(ms.system, tol.rank_tol)) return Verdict::NotControllable;
    if (ms.p() == 1) {
        double r;
        try {
            r = r_max(ms, tol);
        } catch (const DegenerateDenominator&) {
            return Verdict::NotResilient;
        }
        return r > 0.0 ? Verdict::Resilient : Verdict::NotResilient;
    }
    for (std::size_t j = 0; j < ms.p(); ++j) {
        const Vector cj = ms.c.column(j);
        if (is_zero(cj)) continue;
        const auto [rt, vertex] = malfunctioning_reach_time(ms, cj, tol);
        (void)vertex;
        if (rt.infinite) return Verdict::NotResilient;
    }
    return Verdict::Resilient;
}

/// r_q: inverse of the worst-case slowdown over all target directions.
/// 1 means no slowdown, 0 means some target becomes unreachable.
inline double quantitative_resilience(const MalfunctionSplit& ms, const Tolerances& tol = {}) {
    if (ms.p() != 1)
        throw MultipleColumns("exact r_q is defined for a single lost column");
    if (is_zero(ms.c.column(0)))
        return is_controllable(ms.system, tol.rank_tol) ? 1.0 : 0.0;
    if (resilience_verdict(ms, tol) != Verdict::Resilient) return 0.0;
    return r_max(ms, tol);
}

struct ColumnResilience {
    std::size_t column_index = 0;  // 0-based
    double lambda_star = 0.0;      // +inf when C = 0
    double r_max = 0.0;
    Verdict verdict = Verdict::NotResilient;
    double r_q = 0.0;
    DisturbanceVertex worst_vertex;  // p = 1: single sign
    std::string error;               // nonempty when this column's run failed
};

struct ResilienceReport {
    bool controllable = false;
    double u_max = 0.0;
    std::vector<ColumnResilience> per_column;
};

/// Per-column resilience table: every input column in turn treated as the
/// single lost actuator.
inline ResilienceReport full_report(const SystemSpec& sys, const Tolerances& tol = {}) {
    sys.validate();
    ResilienceReport rep;
    rep.controllable = is_controllable(sys, tol.rank_tol);
    rep.u_max = sys.u_max;
    rep.per_column.reserve(sys.num_inputs);
    for (std::size_t j = 0; j < sys.num_inputs; ++j) {
        ColumnResilience col;
        col.column_index = j;
        col.worst_vertex = vertex_from_code(0, 1, sys.u_max);
        try {
            const MalfunctionSplit ms = split(sys, {j});
            col.lambda_star = lambda_star(ms, tol);
            try {
                col.r_max = r_max_from_lambda(col.lambda_star, sys.u_max);
            } catch (const DegenerateDenominator&) {
                col.r_max = -1.0;
            }
            col.verdict = rep.controllable
                              ? (col.r_max > 0.0 ? Verdict::Resilient : Verdict::NotResilient)
                              : Verdict::NotControllable;
            col.r_q = col.verdict == Verdict::Resilient ? col.r_max : 0.0;
            const Vector c = ms.c.column(0);
            if (rep.controllable && !is_zero(c)) {
                const auto [rt, vertex] = malfunctioning_reach_time(ms, c, tol);
                (void)rt;
                col.worst_vertex = vertex;
            }
        } catch (const Error& e) {
            col.error = e.what();
        }
        rep.per_column.push_back(std::move(col));
    }
    return rep;
}

} // namespace qres
