#pragma once

// Brute-force LP oracle for tests: enumerates every basic solution (choice of
// basic variables plus lower/upper pattern for the rest) and keeps the best
// feasible one. Independent of the simplex implementation path it checks.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "qres/lp.hpp"
#include "qres/matrix.hpp"

namespace qres::test_oracle {

struct OracleResult {
    bool feasible = false;
    double value = -std::numeric_limits<double>::infinity();
    Vector point;
};

namespace detail {

inline std::optional<Vector> solve_square(Matrix a, Vector b) {
    const std::size_t n = a.rows();
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t piv = s;
        for (std::size_t i = s + 1; i < n; ++i)
            if (std::abs(a(i, s)) > std::abs(a(piv, s))) piv = i;
        if (std::abs(a(piv, s)) < 1e-12) return std::nullopt;
        if (piv != s) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(s, j), a(piv, j));
            std::swap(b[s], b[piv]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == s) continue;
            const double f = a(i, s) / a(s, s);
            if (f == 0.0) continue;
            for (std::size_t j = s; j < n; ++j) a(i, j) -= f * a(s, j);
            b[i] -= f * b[s];
        }
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
    return x;
}

inline void combinations(std::size_t q, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    const auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) { out.push_back(cur); return; }
        for (std::size_t j = start; j + (k - cur.size()) <= q; ++j) {
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// Requires finite bounds on every variable. Enumerates all C(q, k) bases
/// and all 2^(q-k) bound assignments of the nonbasic variables.
inline OracleResult solve_by_enumeration(const LpProblem& p, double feas_tol = 1e-9) {
    const std::size_t q = p.objective.size();
    const std::size_t k = p.b_eq.size();
    OracleResult best;

    std::vector<std::vector<std::size_t>> bases;
    detail::combinations(q, k, bases);

    const auto consider = [&](const Vector& x) {
        for (std::size_t j = 0; j < q; ++j)
            if (x[j] < p.lower[j] - feas_tol || x[j] > p.upper[j] + feas_tol) return;
        Vector res = p.b_eq;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < q; ++j) res[i] -= p.a_eq(i, j) * x[j];
        if (norm_inf(res) > feas_tol * 10) return;
        const double v = dot(p.objective, x);
        if (!best.feasible || v > best.value) {
            best.feasible = true;
            best.value = v;
            best.point = x;
        }
    };

    for (const auto& basis : bases) {
        std::vector<std::size_t> nonbasic;
        for (std::size_t j = 0; j < q; ++j)
            if (std::find(basis.begin(), basis.end(), j) == basis.end()) nonbasic.push_back(j);

        const std::size_t patterns = std::size_t{1} << nonbasic.size();
        for (std::size_t code = 0; code < patterns; ++code) {
            Vector x(q, 0.0);
            for (std::size_t t = 0; t < nonbasic.size(); ++t) {
                const std::size_t j = nonbasic[t];
                x[j] = (code >> t) & 1u ? p.upper[j] : p.lower[j];
            }
            if (k > 0) {
                Matrix a(k, k);
                Vector rhs = p.b_eq;
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t t = 0; t < k; ++t) a(i, t) = p.a_eq(i, basis[t]);
                    for (const std::size_t j : nonbasic) rhs[i] -= p.a_eq(i, j) * x[j];
                }
                const auto sol = detail::solve_square(a, rhs);
                if (!sol) continue;
                for (std::size_t t = 0; t < k; ++t) x[basis[t]] = (*sol)[t];
            }
            consider(x);
        }
    }
    return best;
}

} // namespace qres::test_oracle
