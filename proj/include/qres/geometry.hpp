#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qres/errors.hpp"
#include "qres/lp.hpp"
#include "qres/matrix.hpp"

namespace qres {

/// The zonotope { G u : |u|_inf <= 1 }. Every input set in this library is
/// the image of a hypercube, so generator form is the natural representation
/// and keeps all queries linear programs.
struct ZonotopePolytope {
    Matrix generator;  // n x k

    std::size_t dim() const noexcept { return generator.rows(); }
    std::size_t num_generators() const noexcept { return generator.cols(); }
};

/// The segment [-x, x].
struct Segment {
    Vector endpoint;
};

namespace geo_detail {

inline void check_unit(const Vector& d) {
    if (std::abs(norm2(d) - 1.0) > 1e-9)
        throw ValidationError("d", "direction must have unit norm");
}

// max { lambda >= 0 : G u = lambda d - x, |u|_inf <= 1 }.
inline LpOutcome support_lp(const Matrix& g, const Vector& x, const Vector& d) {
    const std::size_t n = g.rows(), k = g.cols();
    LpProblem lp;
    lp.objective.assign(k + 1, 0.0);
    lp.objective[k] = 1.0;
    lp.a_eq = Matrix(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) lp.a_eq(i, j) = g(i, j);
        lp.a_eq(i, k) = -d[i];
    }
    lp.b_eq.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.b_eq[i] = -x[i];
    lp.lower.assign(k + 1, -1.0);
    lp.upper.assign(k + 1, 1.0);
    lp.lower[k] = 0.0;
    lp.upper[k] = kInf;
    return solve(lp);
}

// Membership of a point in the zonotope, up to the LP feasibility tolerance.
inline bool contains(const ZonotopePolytope& y, const Vector& z) {
    const std::size_t n = y.dim(), k = y.num_generators();
    LpProblem lp;
    lp.objective.assign(k, 0.0);
    lp.a_eq = y.generator;
    lp.b_eq = z;
    lp.lower.assign(k, -1.0);
    lp.upper.assign(k, 1.0);
    (void)n;
    return solve(lp).status == LpStatus::Optimal;
}

// Interior test with margin: z +- margin e_i must stay in Y for every axis;
// by convexity that places a full-dimensional cross-polytope around z.
inline bool interior(const ZonotopePolytope& y, const Vector& z, double margin) {
    for (std::size_t i = 0; i < y.dim(); ++i) {
        for (const double s : {-1.0, 1.0}) {
            Vector probe = z;
            probe[i] += s * margin;
            if (!contains(y, probe)) return false;
        }
    }
    return true;
}

inline Vector zonotope_point(const ZonotopePolytope& x, const Vector& coeff) {
    return x.generator.apply(coeff);
}

// r_Y without the per-call interior validation; the direction-sweep checks
// validate x once and then call this in their loops.
inline double ratio_rY_unchecked(const ZonotopePolytope& y, const Vector& x, const Vector& d);

// r_XY without the per-call interior validation.
inline double ratio_rXY_unchecked(const Segment& x, const ZonotopePolytope& y, const Vector& d);

} // namespace geo_detail

/// Farthest reach lambda*(x, d) = max { |x + y| : y in Y, x + y in R+ d }.
inline double directed_support(const ZonotopePolytope& y, const Vector& x, const Vector& d) {
    geo_detail::check_unit(d);
    if (x.size() != y.dim() || d.size() != y.dim())
        throw DimensionMismatch("point/direction dimension must match zonotope");
    const LpOutcome out = geo_detail::support_lp(y.generator, x, d);
    if (out.status == LpStatus::Infeasible)
        throw EmptyIntersection("the ray from x along d misses the translated polytope");
    if (out.status == LpStatus::Unbounded)
        throw NumericalFailure("unbounded support on a compact polytope");
    return out.value;
}

namespace geo_detail {

inline double ratio_rY_unchecked(const ZonotopePolytope& y, const Vector& x, const Vector& d) {
    const double num = directed_support(y, x, d);
    const double den = directed_support(y, scaled(x, -1.0), d);
    if (den <= 1e-15) throw NumericalFailure("vanishing denominator in r_Y");
    return num / den;
}

} // namespace geo_detail

/// r_Y(d, x): with-help support over against-help support.
inline double ratio_rY(const ZonotopePolytope& y, const Vector& x, const Vector& d) {
    geo_detail::check_unit(d);
    if (!is_zero(x)) {
        if (!geo_detail::interior(y, x, 1e-9) || !geo_detail::interior(y, scaled(x, -1.0), 1e-9))
            throw ValidationError("x", "x and -x must be interior points of Y");
    }
    return geo_detail::ratio_rY_unchecked(y, x, d);
}

namespace geo_detail {

inline double ratio_rXY_unchecked(const Segment& x, const ZonotopePolytope& y, const Vector& d) {
    const Vector& e = x.endpoint;
    Matrix joint(y.dim(), y.num_generators() + 1);
    for (std::size_t i = 0; i < y.dim(); ++i) {
        for (std::size_t j = 0; j < y.num_generators(); ++j) joint(i, j) = y.generator(i, j);
        joint(i, y.num_generators()) = e[i];
    }
    const Vector origin(y.dim(), 0.0);
    const LpOutcome num = support_lp(joint, origin, d);
    if (num.status != LpStatus::Optimal)
        throw NumericalFailure("joint support LP failed");

    const double at_plus = directed_support(y, e, d);
    const double at_minus = directed_support(y, scaled(e, -1.0), d);
    const double den = std::min(at_plus, at_minus);
    if (den <= 1e-15) throw NumericalFailure("vanishing denominator in r_XY");
    return num.value / den;
}

} // namespace geo_detail

/// r_{X,Y}(d) for a segment X = [-x, x] inside Y's interior. The numerator
/// maximizes jointly over the segment and Y, which is one LP over the
/// concatenated zonotope [G | x]; the denominator minimum sits on the
/// segment's endpoints (the vertex-minimum theorem), two more LPs.
inline double ratio_rXY(const Segment& x, const ZonotopePolytope& y, const Vector& d) {
    geo_detail::check_unit(d);
    const Vector& e = x.endpoint;
    if (e.size() != y.dim()) throw DimensionMismatch("segment dimension must match zonotope");
    if (is_zero(e)) return 1.0;
    if (!geo_detail::interior(y, e, 1e-9) || !geo_detail::interior(y, scaled(e, -1.0), 1e-9))
        throw ValidationError("x", "segment must lie in the interior of Y");
    return geo_detail::ratio_rXY_unchecked(x, y, d);
}

/// Theorem check: the minimum over X of the directed distance to the far
/// boundary of Y is attained at a vertex of X. Vertices are enumerated as
/// sign patterns of X's generators; the grid samples the generator cube.
inline bool check_vertex_minimum(const ZonotopePolytope& x, const ZonotopePolytope& y,
                                 const Vector& d, std::size_t grid) {
    geo_detail::check_unit(d);
    if (grid < 10) throw ValidationError("grid", "at least 10 points per generator");
    const std::size_t kx = x.num_generators();
    if (kx > 20) throw ValidationError("X", "too many generators for vertex enumeration");

    const auto reach = [&](const Vector& pt) {
        // distance from pt to the far boundary of Y along +d
        return directed_support(y, scaled(pt, -1.0), d);
    };

    double vertex_min = kInf;
    for (std::size_t code = 0; code < (std::size_t{1} << kx); ++code) {
        Vector coeff(kx);
        for (std::size_t i = 0; i < kx; ++i) coeff[i] = (code >> i) & 1u ? 1.0 : -1.0;
        const Vector v = geo_detail::zonotope_point(x, coeff);
        if (!geo_detail::contains(y, v))
            throw ValidationError("X", "X is not contained in Y");
        vertex_min = std::min(vertex_min, reach(v));
    }

    // grid over the coefficient cube, total point budget capped
    std::size_t per_dim = grid;
    double total = 1.0;
    for (std::size_t i = 0; i < kx; ++i) total *= static_cast<double>(per_dim);
    while (total > 1e5 && per_dim > 2) {
        --per_dim;
        total = 1.0;
        for (std::size_t i = 0; i < kx; ++i) total *= static_cast<double>(per_dim);
    }
    double grid_min = kInf;
    std::vector<std::size_t> idx(kx, 0);
    while (true) {
        Vector coeff(kx);
        for (std::size_t i = 0; i < kx; ++i)
            coeff[i] = -1.0 + 2.0 * static_cast<double>(idx[i]) / static_cast<double>(per_dim - 1);
        grid_min = std::min(grid_min, reach(geo_detail::zonotope_point(x, coeff)));
        std::size_t i = 0;
        for (; i < kx; ++i) {
            if (++idx[i] < per_dim) break;
            idx[i] = 0;
        }
        if (i == kx) break;
    }
    return grid_min >= vertex_min - 1e-7;
}

struct CollinearMaximumCheck {
    double max_over_dirs = 0.0;
    double value_at_x = 0.0;
    double value_at_minus_x = 0.0;
    bool pass = false;
};

/// Theorem check: max over directions of r_Y(d, x) is attained at d
/// collinear with x. Directions sample the great circle of the plane
/// spanned by x and `plane_mate` (any vector independent of x).
inline CollinearMaximumCheck check_collinear_maximum(const ZonotopePolytope& y, const Vector& x,
                                                     std::size_t n_dirs,
                                                     const Vector& plane_mate) {
    CollinearMaximumCheck res;
    if (is_zero(x)) {  // all ratios are 1
        res.max_over_dirs = res.value_at_x = res.value_at_minus_x = 1.0;
        res.pass = true;
        return res;
    }
    Vector e1 = scaled(x, 1.0 / norm2(x));
    Vector e2 = sub(plane_mate, scaled(e1, dot(plane_mate, e1)));
    if (norm2(e2) < 1e-12) throw ValidationError("plane", "plane mate collinear with x");
    e2 = scaled(e2, 1.0 / norm2(e2));

    res.value_at_x = ratio_rY(y, x, e1);  // validates x once
    res.value_at_minus_x = geo_detail::ratio_rY_unchecked(y, x, scaled(e1, -1.0));
    res.max_over_dirs = 0.0;
    for (std::size_t k = 0; k < n_dirs; ++k) {
        const double beta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_dirs);
        Vector d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            d[i] = std::cos(beta) * e1[i] + std::sin(beta) * e2[i];
        res.max_over_dirs = std::max(res.max_over_dirs, geo_detail::ratio_rY_unchecked(y, x, d));
    }
    res.pass = res.max_over_dirs <= std::max(res.value_at_x, res.value_at_minus_x) + 1e-6;
    return res;
}

struct SegmentMaximumCheck {
    double max_over_dirs = 0.0;
    double value_at_x = 0.0;
    bool pass = false;
};

/// Theorem check: max over directions of r_{X,Y}(d) is attained at the
/// segment direction.
inline SegmentMaximumCheck check_segment_maximum(const Segment& x, const ZonotopePolytope& y,
                                                 std::size_t n_dirs, const Vector& plane_mate) {
    SegmentMaximumCheck res;
    if (is_zero(x.endpoint)) {
        res.max_over_dirs = res.value_at_x = 1.0;
        res.pass = true;
        return res;
    }
    Vector e1 = scaled(x.endpoint, 1.0 / norm2(x.endpoint));
    Vector e2 = sub(plane_mate, scaled(e1, dot(plane_mate, e1)));
    if (norm2(e2) < 1e-12) throw ValidationError("plane", "plane mate collinear with x");
    e2 = scaled(e2, 1.0 / norm2(e2));

    res.value_at_x = ratio_rXY(x, y, e1);  // validates the segment once
    res.max_over_dirs = 0.0;
    for (std::size_t k = 0; k < n_dirs; ++k) {
        const double beta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_dirs);
        Vector d(x.endpoint.size());
        for (std::size_t i = 0; i < x.endpoint.size(); ++i)
            d[i] = std::cos(beta) * e1[i] + std::sin(beta) * e2[i];
        res.max_over_dirs = std::max(res.max_over_dirs, geo_detail::ratio_rXY_unchecked(x, y, d));
    }
    res.pass = res.max_over_dirs <= res.value_at_x + 1e-6;
    return res;
}

} // namespace qres
