#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qres/errors.hpp"
#include "qres/lp.hpp"
#include "qres/matrix.hpp"
#include "qres/system.hpp"

namespace qres {

/// Tolerances shared by the reach-time and resilience pipelines. An LP gain
/// below lambda_min_tol (measured after row equilibration) is treated as
/// zero, i.e. the target is unreachable and the reach time is infinite.
struct Tolerances {
    double feas_tol = kDefaultFeasTol;
    double rank_tol = kDefaultRankTol;
    double lambda_min_tol = 1e-9;
    std::size_t vertex_cap = 20;  // max p such that 2^p vertex LPs are run
};

/// A reach time: finite nonnegative seconds (scenario time unit) or infinite.
struct ReachTime {
    double t = 0.0;
    bool infinite = false;

    static ReachTime finite(double v) { return ReachTime{v, false}; }
    static ReachTime unreachable() { return ReachTime{0.0, true}; }
    bool is_finite() const noexcept { return !infinite; }

    friend bool operator==(const ReachTime&, const ReachTime&) = default;
};

/// Worst-case disturbance: every component at +u_max or -u_max.
struct DisturbanceVertex {
    Vector w;
    std::size_t code = 0;  // bit i set  <=>  w[i] = +u_max
};

/// Ratio of reach times t(d); finite values are >= 1 up to roundoff.
struct RatioValue {
    double r = 1.0;
    bool infinite = false;

    static RatioValue finite(double v) { return RatioValue{v, false}; }
    static RatioValue unbounded() { return RatioValue{0.0, true}; }
    bool is_finite() const noexcept { return !infinite; }
};

namespace detail {

// max { lambda >= 0 : cols * z = lambda * d + shift, bounds on z }, i.e. the
// lambda = 1/T transform shared by the nominal and disturbed reach problems.
// Returns the LP outcome with lambda as the last variable.
inline LpOutcome max_gain_lp(const Matrix& cols, const Vector& d, const Vector& shift,
                             double u_max, double feas_tol) {
    const std::size_t n = cols.rows();
    const std::size_t m = cols.cols();
    LpProblem lp;
    lp.objective.assign(m + 1, 0.0);
    lp.objective[m] = 1.0;
    lp.a_eq = Matrix(n, m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) lp.a_eq(i, j) = cols(i, j);
        lp.a_eq(i, m) = -d[i];
    }
    lp.b_eq = shift;
    lp.lower.assign(m + 1, -u_max);
    lp.upper.assign(m + 1, u_max);
    lp.lower[m] = 0.0;
    lp.upper[m] = kInf;
    return solve(lp, feas_tol);
}

inline void check_target(const Vector& d, std::size_t n) {
    if (d.size() != n) throw DimensionMismatch("target vector length must equal n");
    for (double v : d)
        if (!std::isfinite(v)) throw ValidationError("target", "entries must be finite");
}

} // namespace detail

/// Shortest time for the healthy system to move the state by d, via the
/// gain transform T = 1/lambda*.
inline ReachTime nominal_reach_time(const SystemSpec& sys, const Vector& d,
                                    const Tolerances& tol = {}) {
    detail::check_target(d, sys.n);
    if (!is_controllable(sys, tol.rank_tol))
        throw NotControllable("rank(b_bar) < n");
    if (is_zero(d)) return ReachTime::finite(0.0);

    const Vector zero(sys.n, 0.0);
    const LpOutcome out = detail::max_gain_lp(sys.b_bar, d, zero, sys.u_max, tol.feas_tol);
    if (out.status != LpStatus::Optimal || out.value <= tol.lambda_min_tol)
        throw NumericalFailure("nominal reach LP degenerate for a controllable system");
    return ReachTime::finite(1.0 / out.value);
}

/// Best-response reach time against one fixed constant disturbance w.
inline ReachTime disturbed_reach_time(const MalfunctionSplit& ms, const Vector& w,
                                      const Vector& d, const Tolerances& tol = {}) {
    detail::check_target(d, ms.system.n);
    if (w.size() != ms.p()) throw DimensionMismatch("disturbance length must equal p");
    if (norm_inf(w) > ms.system.u_max * (1.0 + 1e-12))
        throw ValidationError("w", "disturbance exceeds input bound");
    if (is_zero(d)) return ReachTime::finite(0.0);

    // B u = lambda d - C w
    Vector shift = ms.c.apply(w);
    for (double& v : shift) v = -v;
    const LpOutcome out = detail::max_gain_lp(ms.b, d, shift, ms.system.u_max, tol.feas_tol);
    if (out.status == LpStatus::Infeasible) return ReachTime::unreachable();
    if (out.status == LpStatus::Unbounded)
        throw NumericalFailure("disturbed reach LP unbounded for nonzero target");
    if (out.value <= tol.lambda_min_tol) return ReachTime::unreachable();
    return ReachTime::finite(1.0 / out.value);
}

inline DisturbanceVertex vertex_from_code(std::size_t code, std::size_t p, double u_max) {
    DisturbanceVertex v;
    v.code = code;
    v.w.resize(p);
    for (std::size_t i = 0; i < p; ++i)
        v.w[i] = (code >> i) & 1u ? u_max : -u_max;
    return v;
}

/// Worst-case reach time over the 2^p sign vertices of the disturbance
/// hypercube, with the achieving vertex. Ties and the infinite case resolve
/// to the lowest binary code, so the reported vertex is deterministic.
inline std::pair<ReachTime, DisturbanceVertex>
malfunctioning_reach_time(const MalfunctionSplit& ms, const Vector& d,
                          const Tolerances& tol = {}) {
    detail::check_target(d, ms.system.n);
    const std::size_t p = ms.p();
    if (p > tol.vertex_cap)
        throw VertexBudgetExceeded("2^" + std::to_string(p) + " disturbance vertices exceed cap 2^" +
                                   std::to_string(tol.vertex_cap));
    if (is_zero(d))
        return {ReachTime::finite(0.0), vertex_from_code(0, p, ms.system.u_max)};

    ReachTime worst = ReachTime::finite(0.0);
    std::size_t worst_code = 0;
    const std::size_t count = std::size_t{1} << p;
    for (std::size_t code = 0; code < count; ++code) {
        const DisturbanceVertex v = vertex_from_code(code, p, ms.system.u_max);
        const ReachTime rt = disturbed_reach_time(ms, v.w, d, tol);
        if (rt.infinite) { worst = rt; worst_code = code; break; }
        if (rt.t > worst.t) { worst = rt; worst_code = code; }
    }
    return {worst, vertex_from_code(worst_code, p, ms.system.u_max)};
}

/// t(d) = T_M*(d) / T_N*(d); equals 1 at d = 0 by convention and infinity
/// whenever the disturbance can block the target.
inline RatioValue time_ratio(const MalfunctionSplit& ms, const Vector& d,
                             const Tolerances& tol = {}) {
    detail::check_target(d, ms.system.n);
    if (is_zero(d)) return RatioValue::finite(1.0);
    const ReachTime tn = nominal_reach_time(ms.system, d, tol);
    const auto [tm, vertex] = malfunctioning_reach_time(ms, d, tol);
    (void)vertex;
    if (tm.infinite) return RatioValue::unbounded();
    return RatioValue::finite(tm.t / tn.t);
}

struct SweepPoint {
    double beta = 0.0;  // radians
    RatioValue ratio;
};

/// Ratios over the unit circle of the plane spanned by the orthonormal pair
/// (e1, e2): beta_k = 2 pi k / samples, d_k = cos(beta_k) e1 + sin(beta_k) e2.
inline std::vector<SweepPoint> sweep_ratio(const MalfunctionSplit& ms, const Vector& e1,
                                           const Vector& e2, std::size_t samples,
                                           const Tolerances& tol = {}) {
    detail::check_target(e1, ms.system.n);
    detail::check_target(e2, ms.system.n);
    if (samples < 4) throw ValidationError("samples", "at least 4 samples required");
    if (std::abs(norm2(e1) - 1.0) > 1e-9 || std::abs(norm2(e2) - 1.0) > 1e-9 ||
        std::abs(dot(e1, e2)) > 1e-9)
        throw ValidationError("plane", "basis must be orthonormal");

    std::vector<SweepPoint> out(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double beta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(samples);
        Vector d(ms.system.n);
        for (std::size_t i = 0; i < ms.system.n; ++i)
            d[i] = std::cos(beta) * e1[i] + std::sin(beta) * e2[i];
        out[k] = SweepPoint{beta, time_ratio(ms, d, tol)};
    }
    return out;
}

} // namespace qres
