#pragma once

// Serialization: CSV emitters with '#'-prefixed metadata headers, and JSON
// records for exact values, Monte Carlo estimates, and verification results.
// Conventions:
//   - exact rationals travel as strings "p/q" plus a separate decimal field,
//     so nothing downstream silently rounds them;
//   - CSV numeric cells use 17 significant digits (round-trip safe);
//   - JSON decimal fields use the shortest round-trip rendering.

#include <array>
#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "rho/ensemble.hpp"
#include "rho/montecarlo.hpp"
#include "rho/rational.hpp"
#include "rho/verify.hpp"
#include "rho/version.hpp"

namespace rho {

using nlohmann::json;

// 17-significant-digit rendering for CSV cells.
inline std::string csv_double(double x) {
    std::array<char, 40> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                             std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw std::runtime_error("csv_double: formatting failed");
    return std::string(buf.data(), res.ptr);
}

// Common metadata header.  Every CSV output starts with these lines so the
// file alone suffices to reproduce it.
inline void write_csv_header(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& fields) {
    os << "# rho-ensembles " << version_string << "\n";
    for (const auto& [key, value] : fields) os << "# " << key << ": " << value << "\n";
}

// Spectra CSV: one row per sample, columns are the sorted eigenvalues.
inline void write_spectra_csv(std::ostream& os, const EnsembleSpec& spec,
                              const std::vector<std::vector<double>>& spectra,
                              std::uint64_t seed, const std::string& sampler) {
    std::vector<std::pair<std::string, std::string>> fields = {
        {"ensemble", ensemble_name(spec.kind)},
        {"n", std::to_string(spec.n)},
        {"k", std::to_string(spec.k)},
        {"count", std::to_string(spectra.size())},
        {"seed", std::to_string(seed)},
        {"sampler", sampler},
    };
    if (spec.swapped)
        fields.emplace_back("note", "k < n: exact formulas use the interchanged pair (n'=" +
                                        std::to_string(spec.formula_n()) +
                                        ", k'=" + std::to_string(spec.formula_k()) +
                                        "); rows keep dimension n with n-k exact zeros");
    write_csv_header(os, fields);
    for (const auto& row : spectra) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ",";
            os << csv_double(row[j]);
        }
        os << "\n";
    }
}

// Two-column density CSV (x, P(x)).
inline void write_density_csv(std::ostream& os,
                              const std::vector<std::pair<std::string, std::string>>& fields,
                              const std::vector<std::pair<double, double>>& rows) {
    write_csv_header(os, fields);
    os << "x,density\n";
    for (const auto& [x, p] : rows) os << csv_double(x) << "," << csv_double(p) << "\n";
}

// Three-column CSV for the two-point density (lambda, mu, P(lambda, mu)).
inline void write_two_point_csv(std::ostream& os,
                                const std::vector<std::pair<std::string, std::string>>& fields,
                                const std::vector<std::array<double, 3>>& rows) {
    write_csv_header(os, fields);
    os << "lambda,mu,density\n";
    for (const auto& row : rows)
        os << csv_double(row[0]) << "," << csv_double(row[1]) << "," << csv_double(row[2])
           << "\n";
}

// Exact rational value record.
inline json exact_value_json(const EnsembleSpec& spec, const std::string& quantity, int q,
                             const BigRational& value) {
    json j;
    j["ensemble"] = ensemble_name(spec.kind);
    j["n"] = spec.n;
    j["k"] = spec.k;
    j["quantity"] = quantity;
    if (q > 0) j["q"] = q;
    j["exact"] = rational_to_string(value);
    j["decimal"] = double_to_string(to_double(value));
    return j;
}

// a + b*pi^2 record; the decimal field is computed from the exact rational
// for pi^2, not from binary floating point.
inline json pi_square_json(const PiSquareValue& value) {
    json j;
    j["a"] = rational_to_string(value.a);
    j["b"] = rational_to_string(value.b);
    j["decimal"] = value.decimal();
    return j;
}

inline json estimate_report_json(const EstimateReport& r) {
    json j;
    j["quantity"] = r.quantity;
    j["count"] = r.count;
    j["estimate"] = r.estimate;
    j["std_error"] = r.std_error;
    if (r.has_target) {
        j["target"] = r.target;
        j["target_repr"] = r.target_repr;
        j["z"] = r.z;
        if (r.abs_tol > 0)
            j["abs_tol"] = r.abs_tol;
        else
            j["z_threshold"] = r.z_threshold;
        j["pass"] = r.pass;
    }
    return j;
}

inline json check_result_json(const CheckResult& r) {
    json j;
    j["name"] = r.name;
    j["criterion"] = r.criterion;
    j["suite"] = r.suite;
    j["pass"] = r.pass;
    j["elapsed_s"] = r.elapsed_s;
    j["detail"] = r.detail;
    return j;
}

inline json check_results_json(const std::vector<CheckResult>& results) {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(check_result_json(r));
    return arr;
}

} // namespace rho
