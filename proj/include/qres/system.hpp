#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qres/errors.hpp"
#include "qres/matrix.hpp"

namespace qres {

/// The plant x' = b_bar * u with the symmetric input bound |u_i| <= u_max.
struct SystemSpec {
    std::size_t n = 0;           // state dimension
    std::size_t num_inputs = 0;  // m + p
    Matrix b_bar;                // n x num_inputs
    double u_max = 1.0;

    void validate() const {
        if (n < 1) throw ValidationError("n", "state dimension must be >= 1");
        if (num_inputs < 1) throw ValidationError("b_bar", "at least one input column required");
        if (!(u_max > 0.0)) throw ValidationError("u_max", "input bound must be positive");
        if (b_bar.rows() != n || b_bar.cols() != num_inputs)
            throw ValidationError("b_bar", "matrix shape does not match n and input count");
        if (!b_bar.all_finite())
            throw ValidationError("b_bar", "entries must be finite");
    }
};

inline SystemSpec make_system(Matrix b_bar, double u_max) {
    SystemSpec s;
    s.n = b_bar.rows();
    s.num_inputs = b_bar.cols();
    s.b_bar = std::move(b_bar);
    s.u_max = u_max;
    s.validate();
    return s;
}

/// A system plus the columns over which control authority was lost:
/// b_bar = [b | c] up to the recorded column positions.
struct MalfunctionSplit {
    SystemSpec system;
    std::vector<std::size_t> lost;  // sorted, distinct, 0-based
    Matrix b;                       // n x m, kept columns in original order
    Matrix c;                       // n x p, lost columns in `lost` order

    std::size_t p() const noexcept { return lost.size(); }
    std::size_t m() const noexcept { return system.num_inputs - lost.size(); }

    /// Re-interleave kept and lost columns; must reproduce b_bar bit-exactly.
    Matrix merged() const {
        Matrix out(system.n, system.num_inputs);
        std::size_t bi = 0, ci = 0;
        for (std::size_t j = 0; j < system.num_inputs; ++j) {
            const bool is_lost = std::binary_search(lost.begin(), lost.end(), j);
            const Matrix& src = is_lost ? c : b;
            const std::size_t col = is_lost ? ci++ : bi++;
            for (std::size_t i = 0; i < system.n; ++i) out(i, j) = src(i, col);
        }
        return out;
    }
};

inline MalfunctionSplit split(const SystemSpec& sys, std::vector<std::size_t> lost) {
    sys.validate();
    if (lost.empty()) throw ValidationError("lost", "at least one lost column required");
    std::sort(lost.begin(), lost.end());
    if (std::adjacent_find(lost.begin(), lost.end()) != lost.end())
        throw ValidationError("lost", "duplicate column index");
    if (lost.back() >= sys.num_inputs)
        throw ValidationError("lost", "column index " + std::to_string(lost.back()) +
                                          " out of range");
    if (lost.size() >= sys.num_inputs)
        throw ValidationError("lost", "no controlled columns left");

    MalfunctionSplit ms;
    ms.system = sys;
    ms.lost = std::move(lost);
    const std::size_t p = ms.lost.size();
    const std::size_t m = sys.num_inputs - p;
    ms.b = Matrix(sys.n, m);
    ms.c = Matrix(sys.n, p);
    std::size_t bi = 0, ci = 0;
    for (std::size_t j = 0; j < sys.num_inputs; ++j) {
        const bool is_lost = std::binary_search(ms.lost.begin(), ms.lost.end(), j);
        for (std::size_t i = 0; i < sys.n; ++i) {
            if (is_lost) ms.c(i, ci) = sys.b_bar(i, j);
            else         ms.b(i, bi) = sys.b_bar(i, j);
        }
        if (is_lost) ++ci; else ++bi;
    }
    return ms;
}

/// Driftless systems with symmetric bounded inputs are controllable exactly
/// when b_bar has full row rank.
inline bool is_controllable(const SystemSpec& sys, double rank_tol = kDefaultRankTol) {
    sys.validate();
    return matrix_rank(sys.b_bar, rank_tol) == sys.n;
}

} // namespace qres
