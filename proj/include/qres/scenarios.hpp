#pragma once

#include <cmath>
#include <cstddef>

#include "qres/errors.hpp"
#include "qres/matrix.hpp"
#include "qres/system.hpp"

namespace qres {

/// Classical orbital elements. Lengths in kilometers, angles in radians
/// (degree conversion happens at the CLI/JSON boundary).
struct OrbitalElements {
    double a = 0.0;             // semi-major axis [km]
    double e = 0.0;             // eccentricity
    double i = 0.0;             // inclination [rad]
    double raan = 0.0;          // longitude of the ascending node [rad]
    double argp = 0.0;          // argument of perigee [rad]
    double mean_anomaly = 0.0;  // [rad]
};

struct GravParameter {
    double mu = 0.0;  // [km^3 / s^2]
};

/// Earth, matching the km-based element units used here.
inline constexpr GravParameter kEarthMu{3.986e5};

constexpr double kEccentricityFloor = 1e-6;
constexpr double kSinInclinationFloor = 1e-6;

/// Averaged variational equations mapping the 14 retained Fourier thrust
/// coefficients to orbital-element rates. Block layout over the columns
///   1-3: B3 rows (argp, M)      4-7: B1 rows (a, e)
///   8-9: B4 rows (argp, M)      10-14: B2 rows (i, raan) and B5 row (argp)
/// with zeros elsewhere. Singular as e -> 0 (1/e terms) and sin i -> 0
/// (csc i terms).
inline Matrix spacecraft_bbar(const OrbitalElements& el, const GravParameter& grav = kEarthMu) {
    if (!(el.a > 0.0)) throw ValidationError("a", "semi-major axis must be positive");
    if (!(grav.mu > 0.0)) throw ValidationError("mu", "gravitational parameter must be positive");
    if (!(el.e >= 0.0 && el.e < 1.0)) throw ValidationError("e", "eccentricity must be in [0, 1)");
    if (el.e <= kEccentricityFloor)
        throw SingularElements("eccentricity too close to zero for the 1/e terms");
    if (std::sin(el.i) <= kSinInclinationFloor)
        throw SingularElements("inclination too close to 0 or pi for the csc i terms");

    const double e = el.e;
    const double se = std::sqrt(1.0 - e * e);
    const double sqam = std::sqrt(el.a / grav.mu);
    const double sqa3m = std::sqrt(el.a * el.a * el.a / grav.mu);
    const double cw = std::cos(el.argp), sw = std::sin(el.argp);
    const double ci = std::cos(el.i);
    const double csci = 1.0 / std::sin(el.i);

    const Matrix b1{{sqa3m * e, 2.0 * sqa3m * se, 0.0, 0.0},
                    {0.5 * sqam * (1.0 - e * e), -1.5 * e * sqam * se, sqam * se,
                     -0.25 * e * sqam * se}};
    Matrix b2{{-1.5 * e * cw / se, 0.5 * (1.0 + e * e) * cw / se, -0.25 * e * cw / se,
               -0.5 * sw, 0.25 * e * sw},
              {-1.5 * e * sw * csci / se, 0.5 * (1.0 + e * e) * sw * csci / se,
               -0.25 * e * sw * csci / se, 0.5 * cw * csci, -0.25 * e * cw * csci}};
    Matrix b3{{sqam * se, -0.5 / e * sqam * se, 0.0},
              {-3.0 * sqam, sqam * (1.5 * e + 0.5 / e), -0.5 * e * e * sqam}};
    Matrix b4{{0.5 * (2.0 - e * e) / e, -0.25},
              {-0.5 / e * (2.0 - e * e) * se, 0.25 * se}};
    Matrix b5{{1.5 * e * sw * csci / se, -0.5 * (1.0 + e * e) * sw * csci / se,
               0.25 * e * sw * csci / se, -0.5 * csci, 0.25 * e * csci},
              {0.0, 0.0, 0.0, 0.0, 0.0}};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            b2(i, j) *= sqam;
            b5(i, j) *= ci * sqam;
        }
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) b4(i, j) *= sqam;

    Matrix bbar(6, 14);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 4; ++j) bbar(i, 3 + j) = b1(i, j);
        for (std::size_t j = 0; j < 5; ++j) bbar(2 + i, 9 + j) = b2(i, j);
        for (std::size_t j = 0; j < 3; ++j) bbar(4 + i, j) = b3(i, j);
        for (std::size_t j = 0; j < 2; ++j) bbar(4 + i, 7 + j) = b4(i, j);
        for (std::size_t j = 0; j < 5; ++j) bbar(4 + i, 9 + j) += b5(i, j);
    }
    return bbar;
}

struct SpacecraftExample {
    SystemSpec printed_bbar;      // the 6x14 matrix as published, x 1e-6
    OrbitalElements initial;      // raising maneuver start
    OrbitalElements target;       // raising maneuver goal
    Vector target_distance_d;     // (667, 0.067, 2, 2, 2, 2): km, -, degrees
};

/// Low-thrust orbit-raising case study: 6 orbital-element states, 14 thrust
/// frequencies, u_max = 1. The target-distance vector is kept exactly as
/// published, mixing kilometers and degrees; downstream resilience numbers
/// are invariant to such row scalings.
inline SpacecraftExample spacecraft_example() {
    SpacecraftExample ex;
    const Matrix printed{
        {0, 0, 0, 18314, 40583, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 1.1, -3.4, 2.3, -0.4, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, -5.2, 3.8, -0.9, -0.7, 0.2},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, -5.5, 4, -0.9, 5.6, -1.9},
        {3, -2.7, 0, 0, 0, 0, 0, 4.7, -1, 5.2, -3.8, 1.3, -5.6, 1.9},
        {-12.3, 7.2, -0.9, 0, 0, 0, 0, -3.5, 0.8, 0, 0, 0, 0, 0}};
    ex.printed_bbar = make_system(printed.scaled(1e-6), 1.0);

    const double deg = M_PI / 180.0;
    ex.initial = OrbitalElements{6678.0, 0.67, 20 * deg, 20 * deg, 20 * deg, 20 * deg};
    ex.target = OrbitalElements{7345.0, 0.737, 22 * deg, 22 * deg, 22 * deg, 20 * deg};
    ex.target_distance_d = {667.0, 0.067, 2.0, 2.0, 2.0, 2.0};
    return ex;
}

/// Opinion-shaping case study: two agents, five influence channels,
/// u_max = 1. Both agents trust channel 1, distrust channel 2, split on
/// channels 3 and 4, and barely react to channel 5.
inline SystemSpec opinion_example() {
    const Matrix bbar{{0.8, -0.9, 0.5, -0.5, 0.0},
                      {0.9, -0.8, -0.4, 0.4, 0.1}};
    return make_system(bbar, 1.0);
}

} // namespace qres
