#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "qres/errors.hpp"
#include "qres/matrix.hpp"

namespace qres {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDefaultFeasTol = 1e-10;

/// maximize objective . z  subject to  a_eq z = b_eq,  lower <= z <= upper.
/// Bounds may be +-infinity.
struct LpProblem {
    Vector objective;
    Matrix a_eq;
    Vector b_eq;
    Vector lower;
    Vector upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;  // defined iff Optimal
    Vector point;        // defined iff Optimal
};

namespace detail {

// Dense LU with partial pivoting, used for the simplex basis systems.
struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
    bool singular = false;

    explicit Lu(const Matrix& a) : lu(a), perm(a.rows()) {
        const std::size_t n = a.rows();
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t piv = s;
            for (std::size_t i = s + 1; i < n; ++i)
                if (std::abs(lu(i, s)) > std::abs(lu(piv, s))) piv = i;
            if (std::abs(lu(piv, s)) < 1e-13) { singular = true; return; }
            if (piv != s) {
                std::swap(perm[s], perm[piv]);
                for (std::size_t j = 0; j < n; ++j) std::swap(lu(s, j), lu(piv, j));
            }
            for (std::size_t i = s + 1; i < n; ++i) {
                lu(i, s) /= lu(s, s);
                const double f = lu(i, s);
                if (f == 0.0) continue;
                for (std::size_t j = s + 1; j < n; ++j) lu(i, j) -= f * lu(s, j);
            }
        }
    }

    Vector solve(const Vector& b) const {
        const std::size_t n = perm.size();
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        return x;
    }

    Vector solve_transposed(const Vector& b) const {
        const std::size_t n = perm.size();
        Vector y = b;
        // U^T forward
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) y[i] -= lu(j, i) * y[j];
            y[i] /= lu(i, i);
        }
        // L^T backward
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t j = i + 1; j < n; ++j) y[i] -= lu(j, i) * y[j];
        Vector x(n);
        for (std::size_t i = 0; i < n; ++i) x[perm[i]] = y[i];
        return x;
    }
};

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

// Bounded-variable revised simplex over an explicit column list. Bland's rule
// throughout: lowest-index entering variable, lowest-index tie-break on the
// ratio test, which guarantees termination.
class BoundedSimplex {
public:
    BoundedSimplex(std::size_t num_rows, std::size_t num_vars)
        : k_(num_rows), cols_(num_vars, Vector(num_rows, 0.0)),
          lower_(num_vars, -kInf), upper_(num_vars, kInf),
          x_(num_vars, 0.0), state_(num_vars, VarState::FreeZero) {}

    std::size_t k_;
    std::vector<Vector> cols_;
    Vector lower_, upper_, x_;
    std::vector<VarState> state_;
    std::vector<std::size_t> basis_;

    static constexpr double kOptTol = 1e-9;
    static constexpr double kPivotTol = 1e-11;

    // Runs simplex iterations for the given objective. Returns false when the
    // objective is unbounded above.
    bool iterate(const Vector& obj) {
        const std::size_t n = cols_.size();
        for (long guard = 0; guard < 100000; ++guard) {
            Lu lu(basis_matrix());
            if (lu.singular)  // ratio-test pivots keep the basis invertible
                throw NumericalFailure("simplex basis became singular");
            Vector obj_b(k_);
            for (std::size_t i = 0; i < k_; ++i) obj_b[i] = obj[basis_[i]];
            const Vector y = k_ > 0 ? lu.solve_transposed(obj_b) : Vector{};

            // entering variable: lowest index with a profitable direction
            std::size_t enter = n;
            int dir = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (upper_[j] - lower_[j] <= 0.0) continue;  // fixed
                const double d = obj[j] - dot(y, cols_[j]);
                const bool can_up = state_[j] == VarState::AtLower || state_[j] == VarState::FreeZero;
                const bool can_down = state_[j] == VarState::AtUpper || state_[j] == VarState::FreeZero;
                if (can_up && d > kOptTol) { enter = j; dir = +1; break; }
                if (can_down && d < -kOptTol) { enter = j; dir = -1; break; }
            }
            if (enter == n) return true;  // optimal

            const Vector w = k_ > 0 ? lu.solve(cols_[enter]) : Vector{};

            // ratio test: how far can x[enter] move in direction dir.
            // Lowest variable index wins ties (Bland).
            double t_best = kInf;
            std::size_t leave_pos = k_;   // k_ == bound flip of entering var
            std::size_t leave_var = enter;
            const auto consider = [&](double t, std::size_t var, std::size_t pos) {
                if (!std::isfinite(t)) return;
                if (t < 0.0) t = 0.0;  // roundoff guard
                if (!std::isfinite(t_best)) {
                    t_best = t; leave_pos = pos; leave_var = var;
                    return;
                }
                const double tie = 1e-12 * (1.0 + std::min(t, t_best));
                if (t < t_best - tie) {
                    t_best = t; leave_pos = pos; leave_var = var;
                } else if (t <= t_best + tie && var < leave_var) {
                    t_best = std::min(t_best, t); leave_pos = pos; leave_var = var;
                }
            };
            consider(upper_[enter] - lower_[enter], enter, k_);
            for (std::size_t i = 0; i < k_; ++i) {
                const double rate = -dir * w[i];  // d x_basis[i] / dt
                if (std::abs(w[i]) <= kPivotTol) continue;
                double t;
                if (rate < 0.0) {
                    if (!std::isfinite(lower_[basis_[i]])) continue;
                    t = (x_[basis_[i]] - lower_[basis_[i]]) / (-rate);
                } else {
                    if (!std::isfinite(upper_[basis_[i]])) continue;
                    t = (upper_[basis_[i]] - x_[basis_[i]]) / rate;
                }
                consider(t, basis_[i], i);
            }
            if (!std::isfinite(t_best)) return false;  // unbounded ray

            // apply the step
            x_[enter] += dir * t_best;
            for (std::size_t i = 0; i < k_; ++i) x_[basis_[i]] += -dir * t_best * w[i];

            if (leave_pos == k_) {
                state_[enter] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
                x_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
            } else {
                const std::size_t out = basis_[leave_pos];
                const double rate = -dir * w[leave_pos];
                if (rate < 0.0) { state_[out] = VarState::AtLower; x_[out] = lower_[out]; }
                else            { state_[out] = VarState::AtUpper; x_[out] = upper_[out]; }
                basis_[leave_pos] = enter;
                state_[enter] = VarState::Basic;
            }
        }
        throw NumericalFailure("simplex iteration limit exceeded");
    }

    Matrix basis_matrix() const {
        Matrix b(k_, k_);
        for (std::size_t i = 0; i < k_; ++i) b.set_column(i, cols_[basis_[i]]);
        return b;
    }

    // Recompute basic values exactly from the nonbasic ones.
    void refresh_basics(const Vector& rhs) {
        if (k_ == 0) return;
        Vector r = rhs;
        const std::size_t n = cols_.size();
        for (std::size_t j = 0; j < n; ++j) {
            if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
            for (std::size_t i = 0; i < k_; ++i) r[i] -= cols_[j][i] * x_[j];
        }
        Lu lu(basis_matrix());
        if (lu.singular) return;
        const Vector xb = lu.solve(r);
        for (std::size_t i = 0; i < k_; ++i) x_[basis_[i]] = xb[i];
    }
};

} // namespace detail

/// Two-phase bounded-variable simplex. Rows of a_eq (and b_eq) are scaled to
/// unit max-norm before solving; the solution is reported in original units,
/// which row scaling leaves untouched. feas_tol applies to the equilibrated
/// system.
inline LpOutcome solve(const LpProblem& p, double feas_tol = kDefaultFeasTol) {
    const std::size_t q = p.objective.size();
    const std::size_t k = p.b_eq.size();
    if (p.a_eq.rows() != k || (k > 0 && p.a_eq.cols() != q))
        throw DimensionMismatch("a_eq shape does not match objective/b_eq");
    if (p.lower.size() != q || p.upper.size() != q)
        throw DimensionMismatch("bound vectors must match objective length");
    if (feas_tol <= 0.0) throw ValidationError("feas_tol", "must be positive");
    for (std::size_t j = 0; j < q; ++j) {
        if (p.lower[j] > p.upper[j])
            throw ValidationError("lower", "lower bound exceeds upper bound");
        if (p.lower[j] == kInf || p.upper[j] == -kInf)
            throw ValidationError("lower", "bound interval is empty");
    }

    // row equilibration, then column equilibration via the exact variable
    // substitution z'_j = s_j z_j (bounds and objective rescaled to match)
    Matrix a = p.a_eq;
    Vector b = p.b_eq;
    for (std::size_t i = 0; i < k; ++i) {
        double mx = 0.0;
        for (std::size_t j = 0; j < q; ++j) mx = std::max(mx, std::abs(a(i, j)));
        if (mx > 0.0) {
            for (std::size_t j = 0; j < q; ++j) a(i, j) /= mx;
            b[i] /= mx;
        }
    }
    Vector col_scale(q, 1.0);
    for (std::size_t j = 0; j < q; ++j) {
        double mx = 0.0;
        for (std::size_t i = 0; i < k; ++i) mx = std::max(mx, std::abs(a(i, j)));
        if (mx > 0.0) {
            col_scale[j] = mx;
            for (std::size_t i = 0; i < k; ++i) a(i, j) /= mx;
        }
    }

    detail::BoundedSimplex s(k, q + k);
    for (std::size_t j = 0; j < q; ++j) {
        s.cols_[j] = a.column(j);
        s.lower_[j] = p.lower[j] * col_scale[j];
        s.upper_[j] = p.upper[j] * col_scale[j];
        const bool lf = std::isfinite(s.lower_[j]), uf = std::isfinite(s.upper_[j]);
        if (lf && (!uf || std::abs(s.lower_[j]) <= std::abs(s.upper_[j]))) {
            s.state_[j] = detail::VarState::AtLower; s.x_[j] = s.lower_[j];
        } else if (uf) {
            s.state_[j] = detail::VarState::AtUpper; s.x_[j] = s.upper_[j];
        } else {
            s.state_[j] = detail::VarState::FreeZero; s.x_[j] = 0.0;
        }
    }

    // artificial variables carry the phase-1 residual
    Vector resid = b;
    for (std::size_t j = 0; j < q; ++j)
        if (s.x_[j] != 0.0)
            for (std::size_t i = 0; i < k; ++i) resid[i] -= s.cols_[j][i] * s.x_[j];
    s.basis_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t aj = q + i;
        s.cols_[aj][i] = resid[i] >= 0.0 ? 1.0 : -1.0;
        s.lower_[aj] = 0.0;
        s.upper_[aj] = kInf;
        s.x_[aj] = std::abs(resid[i]);
        s.state_[aj] = detail::VarState::Basic;
        s.basis_[i] = aj;
    }

    if (k > 0) {
        Vector phase1(q + k, 0.0);
        for (std::size_t i = 0; i < k; ++i) phase1[q + i] = -1.0;
        s.iterate(phase1);  // bounded above by 0, never unbounded
        double infeas = 0.0;
        for (std::size_t i = 0; i < k; ++i) infeas += s.x_[q + i];
        if (infeas > feas_tol * (1.0 + norm_inf(b)))
            return LpOutcome{LpStatus::Infeasible, 0.0, {}};
        // pin artificials to zero for phase 2
        for (std::size_t i = 0; i < k; ++i) { s.upper_[q + i] = 0.0; s.x_[q + i] = 0.0; }
    }

    Vector phase2(q + k, 0.0);
    for (std::size_t j = 0; j < q; ++j) phase2[j] = p.objective[j] / col_scale[j];
    const bool bounded = s.iterate(phase2);
    if (!bounded) return LpOutcome{LpStatus::Unbounded, 0.0, {}};

    s.refresh_basics(b);

    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.point.resize(q);
    for (std::size_t j = 0; j < q; ++j) out.point[j] = s.x_[j] / col_scale[j];
    // snap roundoff-sized bound violations
    for (std::size_t j = 0; j < q; ++j) {
        out.point[j] = std::min(out.point[j], p.upper[j]);
        out.point[j] = std::max(out.point[j], p.lower[j]);
    }
    out.value = dot(p.objective, out.point);
    return out;
}

} // namespace qres
