#pragma once

// Path symmetry of internal two-mode states: the property that the
// coefficients of each total-photon-number sector obey
//   c_m = conj(c_{-m}) * e^{-i 2 chi}
// for a sector-wide real constant chi. The checker reports a best-fit chi
// and a worst-case residual per sector; companion checks validate the two
// equivalent characterizations (phase independence, mode exchange).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mzparity/states.hpp"

namespace mzparity {

// Coefficients at or below this fraction of the sector's largest magnitude
// are treated as absent when pairing m with -m.
inline constexpr double kZeroCoeffFraction = 1e-12;

inline constexpr double kDefaultSymmetryTol = 1e-9;

struct SectorChi {
    int total_n = 0;
    double chi = 0.0;       // best fit, canonical in [0, pi)
    double residual = 0.0;  // max over m of |c_m - conj(c_{-m}) e^{-i 2 chi}|
};

struct SymmetryReport {
    bool is_path_symmetric = false;
    std::vector<SectorChi> chi_per_sector;
    double max_residual = 0.0;
    double tolerance_used = 0.0;
};

namespace detail {

inline double wrap_to_half_pi_period(double chi) {
    chi = std::fmod(chi, pi);
    if (chi < 0.0) chi += pi;
    if (chi >= pi) chi -= pi;
    return chi;
}

// Best-fit chi for one sector from the largest usable (m, -m) pair, plus the
// worst-case residual of the symmetry relation at that chi. Sectors with no
// usable pair get chi = 0 and an honest residual.
inline SectorChi fit_sector_chi(const SectorState& sec) {
    const double scale = sec.coeffs.cwiseAbs().maxCoeff();
    const double zero_cut = kZeroCoeffFraction * scale;

    double best_product = 0.0;
    double two_chi = 0.0;
    for (int i = 0; i < sec.dim(); ++i) {
        const int ri = sec.dim() - 1 - i;
        const Complex cm = sec.coeffs(i);
        const Complex cr = sec.coeffs(ri);
        if (std::abs(cm) <= zero_cut || std::abs(cr) <= zero_cut) continue;
        const double product = std::abs(cm) * std::abs(cr);
        if (product > best_product) {
            best_product = product;
            // c_m = conj(c_{-m}) e^{-i 2 chi}  =>  2 chi = -(arg c_m + arg c_{-m})
            two_chi = -(std::arg(cm) + std::arg(cr));
        }
    }

    const Complex phase = std::exp(Complex(0.0, -two_chi));
    double residual = 0.0;
    for (int i = 0; i < sec.dim(); ++i) {
        const int ri = sec.dim() - 1 - i;
        const Complex cm = sec.coeffs(i);
        const Complex cr = sec.coeffs(ri);
        if (std::abs(cm) <= zero_cut && std::abs(cr) <= zero_cut) continue;
        residual = std::max(residual, std::abs(cm - std::conj(cr) * phase));
    }

    return {sec.two_j, wrap_to_half_pi_period(0.5 * two_chi), residual};
}

}  // namespace detail

inline SymmetryReport check(const TwoModeState& state, double tol = kDefaultSymmetryTol) {
    if (state.stage != Stage::Internal)
        throw std::invalid_argument("check: expects an Internal-stage state; run to_internal first");
    require_normalized(state, "check");
    SymmetryReport report;
    report.tolerance_used = tol;
    for (const auto& sec : state.sectors) {
        SectorChi fit = detail::fit_sector_chi(sec);
        report.max_residual = std::max(report.max_residual, fit.residual);
        report.chi_per_sector.push_back(fit);
    }
    report.is_path_symmetric = report.max_residual < tol;
    return report;
}

// Strict chi extraction for a single sector. Throws unless the sector has a
// usable (m, -m) pair and every pair is consistent with the fitted chi.
inline double extract_chi(const SectorState& sec, double tol = kDefaultSymmetryTol) {
    require_sector_shape(sec, "extract_chi");
    const double scale = sec.coeffs.cwiseAbs().maxCoeff();
    if (scale <= 0.0)
        throw std::domain_error("extract_chi: empty sector");
    const double zero_cut = kZeroCoeffFraction * scale;
    bool has_pair = false;
    for (int i = 0; i < sec.dim(); ++i) {
        const int ri = sec.dim() - 1 - i;
        if (std::abs(sec.coeffs(i)) > zero_cut && std::abs(sec.coeffs(ri)) > zero_cut)
            has_pair = true;
    }
    if (!has_pair)
        throw std::domain_error("extract_chi: no m-pair with both coefficients nonzero");
    const SectorChi fit = detail::fit_sector_chi(sec);
    if (fit.residual >= tol)
        throw std::domain_error("extract_chi: sector is not path-symmetric (residual " +
                                std::to_string(fit.residual) + ")");
    return fit.chi;
}

// Angular distance between chi values defined modulo pi.
inline double chi_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), pi);
    return std::min(d, pi - d);
}

// Requires that accumulating any of the sampled phases leaves the symmetry
// verdict positive and every sector chi where the unshifted state has it.
// Vacuously true on an empty sample list. Accepts an Input-stage state by
// sending it through the first splitter (type I) internally.
inline bool phase_independence_check(const TwoModeState& state_input,
                                     const std::vector<double>& phi_samples, double tol) {
    const TwoModeState base = state_input.stage == Stage::Input
                                  ? to_internal(state_input, MziKind::TypeI)
                                  : state_input;
    const SymmetryReport base_report = check(base, tol);
    for (double phi : phi_samples) {
        TwoModeState shifted{Stage::Internal, {}};
        shifted.sectors.reserve(base.sectors.size());
        for (const auto& sec : base.sectors)
            shifted.sectors.push_back(apply(phase_shifter(sec.two_j, phi), sec));
        const SymmetryReport r = check(shifted, tol);
        if (!r.is_path_symmetric || !base_report.is_path_symmetric) return false;
        for (size_t k = 0; k < r.chi_per_sector.size(); ++k)
            if (chi_distance(r.chi_per_sector[k].chi, base_report.chi_per_sector[k].chi) > tol)
                return false;
    }
    return true;
}

// Second characterization: swapping the modes and conjugating all
// coefficients reproduces the state up to one global phase. Within a sector
// the swap sends m to -m; the overlap of the transformed state with the
// original has unit magnitude exactly when the two coincide up to phase.
inline bool mode_exchange_check(const TwoModeState& state, double tol = kDefaultSymmetryTol) {
    if (state.stage != Stage::Internal)
        throw std::invalid_argument("mode_exchange_check: expects an Internal-stage state");
    require_normalized(state, "mode_exchange_check");
    Complex overlap = 0.0;
    for (const auto& sec : state.sectors) {
        for (int i = 0; i < sec.dim(); ++i) {
            const int ri = sec.dim() - 1 - i;
            // <exchanged|state> term: conj(conj(c_{-m})) * c_m
            overlap += sec.coeffs(ri) * sec.coeffs(i);
        }
    }
    return std::abs(std::abs(overlap) - 1.0) < tol;
}

}  // namespace mzparity
