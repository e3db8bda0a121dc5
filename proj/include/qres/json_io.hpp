#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qres/errors.hpp"
#include "qres/reach.hpp"
#include "qres/resilience.hpp"
#include "qres/system.hpp"

namespace qres {

struct ParsedSystem {
    SystemSpec system;
    std::vector<std::size_t> lost;  // empty when the file names none
};

namespace io_detail {

inline double require_number(const nlohmann::json& j, const char* field) {
    if (!j.is_number()) throw ValidationError(field, "expected a number");
    return j.get<double>();
}

inline std::string format_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

/// JSON has no infinity literal; the convention here is the string "inf".
/// Finite values are rounded to 12 significant digits.
inline nlohmann::json number12(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return std::stod(format_sig(v, 12));
}

} // namespace io_detail

inline ParsedSystem parse_system(const std::string& spec_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(spec_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw ParseError("top-level value must be an object");

    if (!j.contains("n")) throw ValidationError("n", "missing");
    if (!j["n"].is_number_integer() || j["n"].get<long>() < 1)
        throw ValidationError("n", "must be an integer >= 1");
    const auto n = j["n"].get<std::size_t>();

    if (!j.contains("u_max")) throw ValidationError("u_max", "missing");
    const double u_max = io_detail::require_number(j["u_max"], "u_max");
    if (!(u_max > 0.0)) throw ValidationError("u_max", "must be positive");

    if (!j.contains("b_bar") || !j["b_bar"].is_array() || j["b_bar"].empty())
        throw ValidationError("b_bar", "missing or empty");
    const auto& rows = j["b_bar"];
    if (rows.size() != n)
        throw ValidationError("b_bar", "row count must equal n");
    if (!rows[0].is_array() || rows[0].empty())
        throw ValidationError("b_bar", "rows must be non-empty arrays");
    const std::size_t cols = rows[0].size();
    Matrix b(n, cols);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != cols)
            throw ValidationError("b_bar", "all rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = io_detail::require_number(rows[i][c], "b_bar");
            if (!std::isfinite(v)) throw ValidationError("b_bar", "entries must be finite");
            b(i, c) = v;
        }
    }

    ParsedSystem out;
    out.system = make_system(std::move(b), u_max);

    if (j.contains("lost")) {
        if (!j["lost"].is_array()) throw ValidationError("lost", "must be an array of indices");
        for (const auto& v : j["lost"]) {
            if (!v.is_number_integer() || v.get<long>() < 0 ||
                v.get<std::size_t>() >= out.system.num_inputs)
                throw ValidationError("lost", "index out of range");
            out.lost.push_back(v.get<std::size_t>());
        }
    }
    return out;
}

/// Parses system-spec JSON text into a validated system.
inline SystemSpec load_system(const std::string& spec_text) {
    return parse_system(spec_text).system;
}

inline nlohmann::json system_to_json(const SystemSpec& sys,
                                     const std::vector<std::size_t>& lost = {}) {
    nlohmann::json j;
    j["n"] = sys.n;
    j["u_max"] = sys.u_max;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < sys.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < sys.num_inputs; ++c) row.push_back(sys.b_bar(i, c));
        rows.push_back(std::move(row));
    }
    j["b_bar"] = std::move(rows);
    if (!lost.empty()) j["lost"] = lost;
    return j;
}

inline nlohmann::json report_to_json(const ResilienceReport& rep) {
    nlohmann::json j;
    j["controllable"] = rep.controllable;
    j["u_max"] = io_detail::number12(rep.u_max);
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : rep.per_column) {
        nlohmann::json c;
        c["column"] = col.column_index;  // 0-based in JSON
        c["lambda_star"] = io_detail::number12(col.lambda_star);
        c["r_max"] = io_detail::number12(col.r_max);
        c["verdict"] = to_string(col.verdict);
        c["r_q"] = io_detail::number12(col.r_q);
        c["worst_vertex"] = col.worst_vertex.w;
        if (!col.error.empty()) c["error"] = col.error;
        cols.push_back(std::move(c));
    }
    j["per_column"] = std::move(cols);
    return j;
}

/// Human-readable table; column indices are 1-based here and only here.
inline void print_report_table(const ResilienceReport& rep, std::ostream& os) {
    os << "controllable: " << (rep.controllable ? "yes" : "no") << "\n";
    os << "column  lambda*      r_max        verdict          r_q\n";
    for (const auto& col : rep.per_column) {
        char line[160];
        const std::string ls = std::isinf(col.lambda_star)
                                   ? std::string(col.lambda_star > 0 ? "inf" : "-inf")
                                   : io_detail::format_sig(col.lambda_star, 4);
        std::snprintf(line, sizeof(line), "%-7zu %-12s %-12s %-16s %s\n",
                      col.column_index + 1, ls.c_str(),
                      io_detail::format_sig(col.r_max, 4).c_str(), to_string(col.verdict),
                      io_detail::format_sig(col.r_q, 4).c_str());
        os << line;
        if (!col.error.empty())
            os << "        error: " << col.error << "\n";
    }
}

/// Sweep CSV: header `beta,ratio`, 12 significant digits, `inf` for
/// unbounded ratios.
inline void write_sweep_csv(const std::vector<SweepPoint>& sweep, std::ostream& os) {
    os << "beta,ratio\n";
    for (const auto& pt : sweep) {
        os << io_detail::format_sig(pt.beta, 12) << ",";
        if (pt.ratio.infinite) os << "inf";
        else os << io_detail::format_sig(pt.ratio.r, 12);
        os << "\n";
    }
}

} // namespace qres
