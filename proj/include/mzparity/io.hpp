#pragma once

// Serialization of states and reports. JSON and CSV are emitted through one
// fixed 17-significant-digit formatter so that exporting, re-importing and
// re-exporting reproduces files byte for byte; parsing goes through a real
// JSON parser. Import validates shape and normalization but never rescales
// coefficients.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mzparity/metrology.hpp"

namespace mzparity {

inline std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string format17(std::optional<double> x) {
    return x ? format17(*x) : std::string("null");
}

inline std::string stage_name(Stage stage) {
    return stage == Stage::Input ? "input" : "internal";
}

inline std::string state_to_json(const TwoModeState& state) {
    std::ostringstream out;
    out << "{\"sectors\": [";
    for (size_t k = 0; k < state.sectors.size(); ++k) {
        const auto& sec = state.sectors[k];
        if (k) out << ", ";
        out << "{\"total_n\": " << sec.two_j << ", \"coeffs\": [";
        for (int i = 0; i < sec.dim(); ++i) {
            if (i) out << ", ";
            out << '[' << format17(sec.coeffs(i).real()) << ", " << format17(sec.coeffs(i).imag())
                << ']';
        }
        out << "]}";
    }
    out << "], \"stage\": \"" << stage_name(state.stage) << "\"}";
    return out.str();
}

inline TwoModeState state_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("state JSON is malformed: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sectors") || !doc.contains("stage"))
        throw std::invalid_argument("state JSON must be an object with \"sectors\" and \"stage\"");

    TwoModeState state;
    const std::string stage = doc["stage"].get<std::string>();
    if (stage == "input")
        state.stage = Stage::Input;
    else if (stage == "internal")
        state.stage = Stage::Internal;
    else
        throw std::invalid_argument("state JSON: stage must be \"input\" or \"internal\"");

    if (!doc["sectors"].is_array() || doc["sectors"].empty())
        throw std::invalid_argument("state JSON: \"sectors\" must be a nonempty array");
    for (const auto& s : doc["sectors"]) {
        if (!s.is_object() || !s.contains("total_n") || !s.contains("coeffs"))
            throw std::invalid_argument("state JSON: each sector needs \"total_n\" and \"coeffs\"");
        const int total_n = s["total_n"].get<int>();
        if (total_n < 0)
            throw std::invalid_argument("state JSON: total_n must be nonnegative");
        const auto& coeffs = s["coeffs"];
        if (!coeffs.is_array() || int(coeffs.size()) != total_n + 1)
            throw std::invalid_argument("state JSON: sector " + std::to_string(total_n) + " needs " +
                                        std::to_string(total_n + 1) + " coefficient pairs");
        SectorState sec{total_n, Vector(total_n + 1)};
        for (int i = 0; i <= total_n; ++i) {
            const auto& pair = coeffs[i];
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("state JSON: coefficients must be [re, im] pairs");
            sec.coeffs(i) = Complex(pair[0].get<double>(), pair[1].get<double>());
        }
        state.sectors.push_back(std::move(sec));
    }
    try {
        require_normalized(state, "state JSON", 1e-8);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("state JSON: ") + e.what());
    }
    return state;
}

inline std::string symmetry_report_to_json(const SymmetryReport& r) {
    std::ostringstream out;
    out << "{\"is_path_symmetric\": " << (r.is_path_symmetric ? "true" : "false")
        << ", \"chi_per_sector\": [";
    for (size_t k = 0; k < r.chi_per_sector.size(); ++k) {
        const auto& s = r.chi_per_sector[k];
        if (k) out << ", ";
        out << "{\"total_n\": " << s.total_n << ", \"chi\": " << format17(s.chi)
            << ", \"residual\": " << format17(s.residual) << '}';
    }
    out << "], \"max_residual\": " << format17(r.max_residual)
        << ", \"tolerance_used\": " << format17(r.tolerance_used) << '}';
    return out.str();
}

inline std::string scan_to_json(const SensitivityScan& scan) {
    std::ostringstream out;
    out << "{\"points\": [";
    for (size_t k = 0; k < scan.points.size(); ++k) {
        const auto& p = scan.points[k];
        if (k) out << ", ";
        out << "{\"phi\": " << format17(p.phi) << ", \"parity_expectation\": "
            << format17(p.parity_expectation) << ", \"delta_phi_parity\": "
            << format17(p.delta_phi_parity) << '}';
    }
    out << "], \"qcrb\": " << format17(scan.qcrb) << ", \"best_phi\": " << format17(scan.best_phi)
        << ", \"best_delta_phi\": " << format17(scan.best_delta_phi) << '}';
    return out.str();
}

inline std::string scan_to_csv(const SensitivityScan& scan) {
    std::ostringstream out;
    out << "phi,parity,delta_phi,qcrb\n";
    for (const auto& p : scan.points) {
        out << format17(p.phi) << ',' << format17(p.parity_expectation) << ','
            << (p.delta_phi_parity ? format17(*p.delta_phi_parity) : std::string("nan")) << ','
            << format17(scan.qcrb) << '\n';
    }
    return out.str();
}

inline std::string claim1_report_to_json(const ClaimOneReport& r) {
    std::ostringstream out;
    out << "{\"satisfied\": " << (r.satisfied ? "true" : "false")
        << ", \"phi_star\": " << format17(r.phi_star) << ", \"s_prime_values\": [";
    for (size_t k = 0; k < r.s_prime_values.size(); ++k) {
        const auto& e = r.s_prime_values[k];
        if (k) out << ", ";
        out << "{\"total_n\": " << e.total_n << ", \"two_m\": " << e.two_m
            << ", \"s_prime\": " << format17(e.s_prime) << '}';
    }
    out << "], \"lambda\": " << format17(r.lambda) << '}';
    return out.str();
}

inline std::string bias_report_to_json(const BiasReport& r) {
    std::ostringstream out;
    out << "{\"beta_closed_form\": " << format17(r.beta_closed_form)
        << ", \"claim1_at_sweet_spot\": " << (r.claim1_at_sweet_spot ? "true" : "false")
        << ", \"sweet_spot_phi\": " << format17(r.sweet_spot_phi)
        << ", \"numerical_fallback_used\": " << (r.numerical_fallback_used ? "true" : "false") << '}';
    return out.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open file for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open file for writing: " + path);
    out << text;
    if (!out)
        throw std::invalid_argument("write failed: " + path);
}

}  // namespace mzparity
