#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qres/errors.hpp"
#include "qres/geometry.hpp"
#include "qres/json_io.hpp"
#include "qres/reach.hpp"
#include "qres/resilience.hpp"
#include "qres/scenarios.hpp"
#include "qres/system.hpp"

namespace qres::cli {

namespace cli_detail {

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::string fmt4(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return io_detail::format_sig(v, 4);
}

inline std::string fmt_reach(const ReachTime& t) {
    return t.infinite ? "inf" : fmt4(t.t);
}

inline std::string fmt_ratio(const RatioValue& r) {
    return r.infinite ? "inf" : fmt4(r.r);
}

inline Vector axis(std::size_t n, std::size_t i) {
    Vector v(n, 0.0);
    v[i] = 1.0;
    return v;
}

struct RandomInstances {
    std::mt19937_64 rng;
    explicit RandomInstances(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }

    Matrix zonotope_generators(std::size_t n, std::size_t k) {
        while (true) {
            Matrix g(n, k);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < k; ++j) g(i, j) = uniform(-1.0, 1.0);
            if (matrix_rank(g) == n) return g;
        }
    }

    Vector unit_direction(std::size_t n) {
        while (true) {
            Vector d(n);
            for (double& v : d) v = uniform(-1.0, 1.0);
            const double nn = norm2(d);
            if (nn > 1e-3) return scaled(d, 1.0 / nn);
        }
    }
};

} // namespace cli_detail

/// Runs the three polytope theorem checks on seeded random planar
/// instances. Returns the number of failures.
inline int verify_geometry(std::uint64_t seed, std::size_t cases, std::size_t n_dirs,
                           std::ostream& out) {
    cli_detail::RandomInstances rnd(seed);
    int failures = 0;

    std::size_t pass = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const Matrix g = rnd.zonotope_generators(2, 2 + c % 3);
        Matrix gx = g;
        for (std::size_t j = 0; j < gx.cols(); ++j) {
            const double s = rnd.uniform(0.2, 0.6);
            for (std::size_t i = 0; i < gx.rows(); ++i) gx(i, j) *= s;
        }
        if (check_vertex_minimum(ZonotopePolytope{gx}, ZonotopePolytope{g},
                                 rnd.unit_direction(2), 64))
            ++pass;
    }
    out << "vertex-minimum:    " << pass << "/" << cases << " pass\n";
    failures += static_cast<int>(cases - pass);

    pass = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const Matrix g = rnd.zonotope_generators(2, 2 + c % 3);
        Vector coeff(g.cols());
        for (double& v : coeff) v = rnd.uniform(-0.4, 0.4);
        const Vector x = g.apply(coeff);
        const auto res = check_collinear_maximum(ZonotopePolytope{g}, x, n_dirs,
                                                 rnd.unit_direction(2));
        if (res.pass) ++pass;
    }
    out << "collinear-maximum: " << pass << "/" << cases << " pass\n";
    failures += static_cast<int>(cases - pass);

    pass = 0;
    for (std::size_t c = 0; c < cases; ++c) {
        const Matrix g = rnd.zonotope_generators(2, 2 + c % 3);
        Vector coeff(g.cols());
        for (double& v : coeff) v = rnd.uniform(-0.4, 0.4);
        const auto res = check_segment_maximum(Segment{g.apply(coeff)}, ZonotopePolytope{g},
                                               n_dirs, rnd.unit_direction(2));
        if (res.pass) ++pass;
    }
    out << "segment-maximum:   " << pass << "/" << cases << " pass\n";
    failures += static_cast<int>(cases - pass);
    return failures;
}

/// Command-line entry point. Exit codes: 0 success, 1 domain error
/// (error name on the error stream), 2 usage error.
inline int run(const std::vector<std::string>& args, std::istream& in = std::cin,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"reach times and quantitative resilience of driftless systems"};
    app.require_subcommand(1);

    Tolerances tol;
    app.add_option("--feas-tol", tol.feas_tol, "LP feasibility tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--rank-tol", tol.rank_tol, "relative rank tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--vertex-cap", tol.vertex_cap,
                   "max lost-actuator count for vertex enumeration");

    std::string spec_path, json_out, csv_out, scenario_name;
    std::vector<std::size_t> lost;
    std::vector<double> target;
    std::vector<std::size_t> plane{0, 1};
    std::size_t samples = 720, cases = 50;
    std::uint64_t seed = 1;

    auto* rep = app.add_subcommand("report", "per-column resilience table");
    rep->add_option("spec", spec_path, "system JSON file, or - for stdin")->required();
    rep->add_option("--json", json_out, "write the JSON report to a file, or - for stdout");

    auto* rq = app.add_subcommand("rq", "quantitative resilience for one lost column");
    rq->add_option("spec", spec_path)->required();
    rq->add_option("--lost", lost, "0-based lost column index")->expected(1);

    auto* reach = app.add_subcommand("reach", "reach times and ratio for a target");
    reach->add_option("spec", spec_path)->required();
    reach->add_option("--lost", lost, "0-based lost column indices");
    reach->add_option("--target", target, "target displacement, n values")->required();

    auto* sweep = app.add_subcommand("sweep", "ratio of reach times over a plane of directions");
    sweep->add_option("spec", spec_path)->required();
    sweep->add_option("--lost", lost, "0-based lost column indices");
    sweep->add_option("--plane", plane, "two 0-based state axes spanning the sweep plane")
        ->expected(2);
    sweep->add_option("--samples", samples, "direction count");
    sweep->add_option("--out", csv_out, "CSV output path, or - for stdout")->required();

    auto* scen = app.add_subcommand("scenario", "emit a built-in system as JSON");
    scen->add_option("name", scenario_name, "spacecraft | opinion")->required();

    auto* geo = app.add_subcommand("verify-geometry", "polytope theorem checks on random instances");
    geo->add_option("--seed", seed, "random seed");
    geo->add_option("--cases", cases, "instances per theorem");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (rep->parsed()) {
            const ParsedSystem ps = parse_system(cli_detail::read_input(spec_path, in));
            const ResilienceReport report = full_report(ps.system, tol);
            print_report_table(report, out);
            if (!json_out.empty()) {
                const std::string text = report_to_json(report).dump(2);
                if (json_out == "-") out << text << "\n";
                else {
                    std::ofstream f(json_out);
                    if (!f) throw ParseError("cannot open '" + json_out + "'");
                    f << text << "\n";
                }
            }
        } else if (rq->parsed()) {
            const ParsedSystem ps = parse_system(cli_detail::read_input(spec_path, in));
            if (lost.empty()) lost = ps.lost;
            if (lost.size() != 1) throw ValidationError("lost", "exactly one lost column required");
            const MalfunctionSplit ms = split(ps.system, lost);
            const double ls = lambda_star(ms, tol);
            const Verdict v = resilience_verdict(ms, tol);
            out << "column (1-based): " << lost[0] + 1 << "\n";
            out << "lambda* = " << cli_detail::fmt4(ls) << "\n";
            out << "r_max   = " << cli_detail::fmt4(r_max_from_lambda(ls, ps.system.u_max)) << "\n";
            out << "verdict = " << to_string(v) << "\n";
            out << "r_q     = " << cli_detail::fmt4(quantitative_resilience(ms, tol)) << "\n";
        } else if (reach->parsed()) {
            const ParsedSystem ps = parse_system(cli_detail::read_input(spec_path, in));
            if (lost.empty()) lost = ps.lost;
            if (lost.empty()) throw ValidationError("lost", "at least one lost column required");
            const MalfunctionSplit ms = split(ps.system, lost);
            const ReachTime tn = nominal_reach_time(ps.system, target, tol);
            const auto [tm, vertex] = malfunctioning_reach_time(ms, target, tol);
            const RatioValue ratio = time_ratio(ms, target, tol);
            out << "T_N* = " << cli_detail::fmt_reach(tn) << "\n";
            out << "T_M* = " << cli_detail::fmt_reach(tm) << "\n";
            out << "t(d) = " << cli_detail::fmt_ratio(ratio) << "\n";
            out << "worst vertex w = [";
            for (std::size_t i = 0; i < vertex.w.size(); ++i)
                out << (i ? ", " : "") << cli_detail::fmt4(vertex.w[i]);
            out << "]\n";
            if (ms.p() > 1)
                out << "multi-actuator verdict (heuristic, sweep-based evidence only): "
                    << to_string(resilience_verdict(ms, tol)) << "\n";
        } else if (sweep->parsed()) {
            const ParsedSystem ps = parse_system(cli_detail::read_input(spec_path, in));
            if (lost.empty()) lost = ps.lost;
            if (lost.empty()) throw ValidationError("lost", "at least one lost column required");
            const MalfunctionSplit ms = split(ps.system, lost);
            if (plane[0] >= ps.system.n || plane[1] >= ps.system.n || plane[0] == plane[1])
                throw ValidationError("plane", "axes must be distinct and < n");
            const auto pts = sweep_ratio(ms, cli_detail::axis(ps.system.n, plane[0]),
                                         cli_detail::axis(ps.system.n, plane[1]), samples, tol);
            if (csv_out == "-") write_sweep_csv(pts, out);
            else {
                std::ofstream f(csv_out);
                if (!f) throw ParseError("cannot open '" + csv_out + "'");
                write_sweep_csv(pts, f);
            }
        } else if (scen->parsed()) {
            if (scenario_name == "spacecraft")
                out << system_to_json(spacecraft_example().printed_bbar).dump(2) << "\n";
            else if (scenario_name == "opinion")
                out << system_to_json(opinion_example()).dump(2) << "\n";
            else
                throw ValidationError("name", "unknown scenario '" + scenario_name + "'");
        } else if (geo->parsed()) {
            if (verify_geometry(seed, cases, 720, out) > 0) {
                err << "NumericalFailure: a geometry theorem check failed\n";
                return 1;
            }
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qres::cli
