#pragma once

// Phase-estimation figures of merit for internal two-mode states: the
// quantum Cramer-Rao bound 1/(2 dJz), the parity signal <Q>(phi) and its
// error-propagation sensitivity, the per-m alignment values S' whose
// simultaneous unit magnitude marks bound attainment, closed-form bias
// phases, and sweet-spot location.
//
// All parity formulas below are for the type I interferometer (Jx first
// splitter). The parity operator is conjugated through the second splitter,
// so expectations are taken directly in the Internal-stage state.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mzparity/symmetry.hpp"

namespace mzparity {

inline constexpr double kDerivativeFloor = 1e-14;
inline constexpr double kDefaultClaimTol = 1e-8;

struct ScanPoint {
    double phi = 0.0;
    double parity_expectation = 0.0;
    std::optional<double> delta_phi_parity;
};

struct SensitivityScan {
    std::vector<ScanPoint> points;
    double qcrb = 0.0;
    std::optional<double> best_phi;
    std::optional<double> best_delta_phi;
};

struct SPrimeEntry {
    int total_n = 0;
    int two_m = 0;
    double s_prime = 0.0;
};

struct ClaimOneReport {
    bool satisfied = false;
    std::optional<double> phi_star;
    std::vector<SPrimeEntry> s_prime_values;
    std::optional<double> lambda;
};

struct BiasReport {
    double beta_closed_form = 0.0;
    bool claim1_at_sweet_spot = false;
    double sweet_spot_phi = 0.0;
    bool numerical_fallback_used = false;
};

namespace detail {

inline Complex minus_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

inline double sign_j_plus_m(int two_j, int two_m) {
    return ((two_j + two_m) / 2) % 2 == 0 ? 1.0 : -1.0;
}

inline double wrap_two_pi(double x) {
    x = std::fmod(x, 2.0 * pi);
    if (x < 0.0) x += 2.0 * pi;
    return x;
}

// Summand of <Q> for one (sector, m): (-i)^N (-1)^{j+m} c_{-m} c_m^* e^{i 2m phi},
// optionally differentiated d times with respect to phi.
inline Complex parity_term(const SectorState& sec, int i, double phi, int d_order) {
    const int two_m = sec.two_m_at(i);
    const int ri = sec.dim() - 1 - i;
    Complex term = minus_i_pow(sec.two_j) * sign_j_plus_m(sec.two_j, two_m) * sec.coeffs(ri) *
                   std::conj(sec.coeffs(i)) * std::exp(Complex(0.0, two_m * phi));
    for (int d = 0; d < d_order; ++d) term *= Complex(0.0, double(two_m));
    return term;
}

inline double parity_sum(const TwoModeState& state, double phi, int d_order) {
    Complex total = 0.0;
    for (const auto& sec : state.sectors) {
        // e^{i 2m phi} walked down the m ladder by recurrence; one exp per
        // sector instead of one per term, with rounding below dim * eps.
        Complex w = std::exp(Complex(0.0, sec.two_j * phi));
        const Complex step = std::exp(Complex(0.0, -2.0 * phi));
        Complex sub = 0.0;
        for (int i = 0; i < sec.dim(); ++i, w *= step) {
            const int two_m = sec.two_j - 2 * i;
            Complex term = sign_j_plus_m(sec.two_j, two_m) * sec.coeffs(sec.dim() - 1 - i) *
                           std::conj(sec.coeffs(i)) * w;
            for (int d = 0; d < d_order; ++d) term *= Complex(0.0, double(two_m));
            sub += term;
        }
        total += minus_i_pow(sec.two_j) * sub;
    }
    if (std::abs(total.imag()) > 1e-10)
        throw std::logic_error("parity sum acquired an imaginary part; state coefficients are inconsistent");
    return total.real();
}

}  // namespace detail

inline double qcrb(const TwoModeState& state) {
    if (state.stage != Stage::Internal)
        throw std::invalid_argument("qcrb: expects an Internal-stage state; run to_internal first");
    require_normalized(state, "qcrb");
    double mean = 0.0, second = 0.0;
    for (const auto& sec : state.sectors) {
        for (int i = 0; i < sec.dim(); ++i) {
            const double m = 0.5 * sec.two_m_at(i);
            const double w = std::norm(sec.coeffs(i));
            mean += w * m;
            second += w * m * m;
        }
    }
    const double variance = second - mean * mean;
    if (variance <= 1e-24)
        throw std::domain_error("qcrb: zero J_z variance; the phase is not estimable from this state");
    return 1.0 / (2.0 * std::sqrt(variance));
}

inline double parity_expectation(const TwoModeState& state, double phi) {
    if (state.stage != Stage::Internal)
        throw std::invalid_argument("parity_expectation: expects an Internal-stage state");
    require_normalized(state, "parity_expectation");
    const double q = detail::parity_sum(state, phi, 0);
    return std::clamp(q, -1.0, 1.0);
}

// d<Q>/dphi in closed form (each term picks up a factor i*2m).
inline double parity_derivative(const TwoModeState& state, double phi) {
    if (state.stage != Stage::Internal)
        throw std::invalid_argument("parity_derivative: expects an Internal-stage state");
    require_normalized(state, "parity_derivative");
    return detail::parity_sum(state, phi, 1);
}

// Error-propagation sensitivity sqrt(1 - <Q>^2)/|d<Q>/dphi|. Returns nullopt
// where the derivative magnitude is below kDerivativeFloor; that is an
// in-band value (signal extrema), not an error.
inline std::optional<double> parity_sensitivity(const TwoModeState& state, double phi) {
    const double q = parity_expectation(state, phi);
    const double dq = parity_derivative(state, phi);
    if (std::abs(dq) < kDerivativeFloor) return std::nullopt;
    return std::sqrt(std::max(0.0, 1.0 - q * q)) / std::abs(dq);
}

// Real part of S = (-i)^N (-1)^{j+m} (c_{-m}/c_m) e^{i 2m phi} for one m of
// one sector. When the sector satisfies the symmetry relation at the given
// chi, S equals (-1)^{j+m} e^{i(2m phi - 2 theta_m - 2 chi - pi N/2)} with
// theta_m = arg c_m; the two evaluations are cross-checked here.
inline double s_prime(const SectorState& sec, int two_m, double phi, double chi) {
    require_sector_shape(sec, "s_prime");
    if (std::abs(two_m) > sec.two_j || (sec.two_j - two_m) % 2 != 0)
        throw std::invalid_argument("s_prime: two_m is not a projection of this sector");
    const int i = sec.index_of_two_m(two_m);
    const int ri = sec.index_of_two_m(-two_m);
    const double scale = sec.coeffs.cwiseAbs().maxCoeff();
    const Complex cm = sec.coeffs(i);
    if (std::abs(cm) <= kZeroCoeffFraction * scale)
        throw std::domain_error("s_prime: c_m vanishes; the ratio is undefined at this m");
    const Complex cr = sec.coeffs(ri);

    const Complex s = detail::minus_i_pow(sec.two_j) * detail::sign_j_plus_m(sec.two_j, two_m) *
                      (cr / cm) * std::exp(Complex(0.0, two_m * phi));
    const double direct = s.real();

    const double pair_residual = std::abs(cm - std::conj(cr) * std::exp(Complex(0.0, -2.0 * chi)));
    if (pair_residual <= 1e-7 * std::abs(cm)) {
        const double theta_m = std::arg(cm);
        const double trig = detail::sign_j_plus_m(sec.two_j, two_m) *
                            std::cos(two_m * phi - 2.0 * theta_m - 2.0 * chi - half_pi * sec.two_j);
        if (std::abs(direct - trig) > 1e-5)
            throw std::logic_error("s_prime: ratio and trigonometric evaluations disagree");
    }
    return direct;
}

// Evaluates S' at every populated m of every sector and decides whether all
// of them sit at one shared sign within tol. That single-sign alignment is
// exactly the condition for |<Q>| = 1, hence for the parity sensitivity to
// reach the Cramer-Rao bound at this phi (in the sweet-spot limit).
inline ClaimOneReport claim1_check(const TwoModeState& state, double phi, double tol = kDefaultClaimTol) {
    const SymmetryReport sym = check(state, kDefaultSymmetryTol);
    if (!sym.is_path_symmetric)
        throw std::domain_error("claim1_check: state is not path-symmetric; the criterion does not apply");

    ClaimOneReport report;
    double lambda_sign_vote = 0.0;
    for (size_t k = 0; k < state.sectors.size(); ++k) {
        const SectorState& sec = state.sectors[k];
        const double chi = sym.chi_per_sector[k].chi;
        const double scale = sec.coeffs.cwiseAbs().maxCoeff();
        for (int i = 0; i < sec.dim(); ++i) {
            if (std::abs(sec.coeffs(i)) <= kZeroCoeffFraction * scale) continue;
            const int two_m = sec.two_m_at(i);
            const double v = s_prime(sec, two_m, phi, chi);
            report.s_prime_values.push_back({sec.two_j, two_m, v});

            const Complex s_full = detail::minus_i_pow(sec.two_j) *
                                   detail::sign_j_plus_m(sec.two_j, two_m) *
                                   (sec.coeffs(sec.index_of_two_m(-two_m)) / sec.coeffs(i)) *
                                   std::exp(Complex(0.0, two_m * phi));
            lambda_sign_vote += s_full.imag() * double(two_m);
        }
    }

    for (double target : {1.0, -1.0}) {
        bool all = !report.s_prime_values.empty();
        for (const auto& e : report.s_prime_values)
            if (std::abs(e.s_prime - target) > tol) { all = false; break; }
        if (all) { report.satisfied = true; break; }
    }

    if (report.satisfied) {
        report.phi_star = phi;
        const double q = parity_expectation(state, phi);
        const double dq_mag = std::sqrt(std::max(0.0, 1.0 - q * q));
        double mean = 0.0, second = 0.0;
        for (const auto& sec : state.sectors)
            for (int i = 0; i < sec.dim(); ++i) {
                const double m = 0.5 * sec.two_m_at(i);
                mean += std::norm(sec.coeffs(i)) * m;
                second += std::norm(sec.coeffs(i)) * m * m;
            }
        const double variance = second - mean * mean;
        if (variance > 1e-24)
            report.lambda = (lambda_sign_vote < 0.0 ? -1.0 : 1.0) * dq_mag / std::sqrt(variance);
    }
    return report;
}

inline std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1)
        throw std::invalid_argument("linspace: needs at least one point");
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = lo;
        return grid;
    }
    const double step = (hi - lo) / double(points - 1);
    for (int k = 0; k < points; ++k) grid[k] = lo + step * k;
    return grid;
}

inline SensitivityScan sensitivity_scan(const TwoModeState& state, const std::vector<double>& phi_grid) {
    if (phi_grid.empty())
        throw std::invalid_argument("sensitivity_scan: empty phase grid");
    SensitivityScan scan;
    scan.qcrb = qcrb(state);
    scan.points.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        ScanPoint p;
        p.phi = phi;
        p.parity_expectation = parity_expectation(state, phi);
        p.delta_phi_parity = parity_sensitivity(state, phi);
        if (p.delta_phi_parity &&
            (!scan.best_delta_phi || *p.delta_phi_parity < *scan.best_delta_phi)) {
            scan.best_delta_phi = p.delta_phi_parity;
            scan.best_phi = phi;
        }
        scan.points.push_back(p);
    }
    return scan;
}

// Sensitivity in the sweet-spot limit. At a phase where |<Q>| touches 1 both
// sqrt(1 - <Q>^2) and d<Q>/dphi vanish, so the ratio is evaluated on a
// symmetric bracket and Richardson-extrapolated (two levels, leading error
// O(h^6)). The base half-width stays clear of both the cancellation zone
// near the extremum and the neighboring signal oscillations.
inline double sensitivity_limit(const TwoModeState& state, double phi_star, double h0 = 0.0) {
    int max_two_m = 1;
    for (const auto& sec : state.sectors) max_two_m = std::max(max_two_m, sec.two_j);
    if (h0 <= 0.0) h0 = std::min(1e-2, pi / (10.0 * max_two_m));

    auto bracket_average = [&](double h) {
        for (int tries = 0; tries < 8; ++tries) {
            const auto lo = parity_sensitivity(state, phi_star - h);
            const auto hi = parity_sensitivity(state, phi_star + h);
            if (lo && hi) return 0.5 * (*lo + *hi);
            h *= 1.0009765625;
        }
        throw std::domain_error("sensitivity_limit: sensitivity undefined on the whole bracket");
    };

    const double d0 = bracket_average(h0);
    const double d1 = bracket_average(0.5 * h0);
    const double d2 = bracket_average(0.25 * h0);
    const double r1a = (4.0 * d1 - d0) / 3.0;
    const double r1b = (4.0 * d2 - d1) / 3.0;
    return (16.0 * r1b - r1a) / 15.0;
}

// Global sweet-spot search: coarse 4096-point grid on [0, 2pi), then
// golden-section refinement of the best bracket down to 1e-12 width, then a
// Newton polish on d<Q>/dphi = 0 when the refined point sits at a signal
// extremum. Near such an extremum the direct ratio is numerically 0/0, so
// the reported minimum is the extrapolated limit instead.
inline std::pair<double, double> min_sensitivity(const TwoModeState& state) {
    constexpr int kCoarse = 4096;
    const auto eval = [&](double phi) {
        const auto d = parity_sensitivity(state, phi);
        return d ? *d : std::numeric_limits<double>::infinity();
    };

    double best_phi = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kCoarse; ++k) {
        const double phi = 2.0 * pi * k / kCoarse;
        const double d = eval(phi);
        if (d < best) { best = d; best_phi = phi; }
    }
    if (!std::isfinite(best))
        throw std::domain_error("min_sensitivity: sensitivity undefined everywhere on the coarse grid");

    const double step = 2.0 * pi / kCoarse;
    double a = best_phi - step, b = best_phi + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = eval(c), fd = eval(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = eval(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = eval(d);
        }
    }
    double phi_ref = 0.5 * (a + b);

    if (std::abs(parity_expectation(state, phi_ref)) > 1.0 - 1e-6) {
        double phi_n = phi_ref;
        for (int it = 0; it < 64; ++it) {
            const double g = detail::parity_sum(state, phi_n, 1);
            const double h = detail::parity_sum(state, phi_n, 2);
            if (std::abs(h) < 1e-18) break;
            const double next = phi_n - g / h;
            if (std::abs(next - phi_ref) > 2.0 * step) break;
            if (std::abs(next - phi_n) < 1e-15) { phi_n = next; break; }
            phi_n = next;
        }
        phi_ref = phi_n;
        return {detail::wrap_two_pi(phi_ref), sensitivity_limit(state, phi_ref)};
    }
    return {detail::wrap_two_pi(phi_ref), eval(phi_ref)};
}

namespace detail {

struct SectorBias {
    int total_n = 0;
    double beta = 0.0;
    double weight = 0.0;
};

// Closed-form bias of one sector: beta = -(count * chi + sum theta_m) / sum m
// over m > 0, which for the full m-range reduces to the -8/(N+1)^2 and
// -8/(N(N+2)) prefactor forms. Vacuous m contribute theta = 0.
inline double sector_beta(const SectorState& sec, double chi) {
    const double scale = sec.coeffs.cwiseAbs().maxCoeff();
    double sum_theta = 0.0;
    for (int i = 0; i < sec.dim(); ++i) {
        if (sec.two_m_at(i) <= 0) continue;
        if (std::abs(sec.coeffs(i)) <= kZeroCoeffFraction * scale) continue;
        sum_theta += std::arg(sec.coeffs(i));
    }
    const int n = sec.two_j;
    if (n % 2 == 1)
        return -8.0 / (double(n + 1) * (n + 1)) * (0.5 * (n + 1) * chi + sum_theta);
    return -8.0 / (double(n) * (n + 2)) * (0.5 * n * chi + sum_theta);
}

}  // namespace detail

// Closed-form bias phase and sweet-spot location. Candidate sweet spots are
// offset - beta with offsets from the odd/even phase families (only the
// (2l+1)pi/2 offsets survive for multi-sector and odd-N states); each
// candidate is validated with claim1_check, and a grid-plus-golden-section
// search takes over when no candidate passes. Since chi is defined modulo
// pi, candidates are generated for both representatives.
inline BiasReport bias_phase(const TwoModeState& state, double claim_tol = kDefaultClaimTol) {
    const SymmetryReport sym = check(state, kDefaultSymmetryTol);
    if (!sym.is_path_symmetric)
        throw std::domain_error("bias_phase: state is not path-symmetric");

    std::vector<detail::SectorBias> biases;
    for (size_t k = 0; k < state.sectors.size(); ++k) {
        const SectorState& sec = state.sectors[k];
        if (sec.two_j == 0) continue;
        biases.push_back({sec.two_j, detail::sector_beta(sec, sym.chi_per_sector[k].chi), sec.norm_sq()});
    }
    if (biases.empty())
        throw std::domain_error("bias_phase: vacuum state carries no phase information");

    std::sort(biases.begin(), biases.end(), [](const auto& x, const auto& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        return x.total_n < y.total_n;
    });

    const bool single_even = biases.size() == 1 && biases.front().total_n % 2 == 0;
    const std::vector<double> offsets = single_even
                                            ? std::vector<double>{0.0, half_pi, pi, 3.0 * half_pi}
                                            : std::vector<double>{half_pi, 3.0 * half_pi};

    bool betas_agree = true;
    for (const auto& sb : biases) {
        const double diff = std::abs(detail::wrap_two_pi(sb.beta) - detail::wrap_two_pi(biases.front().beta));
        if (std::min(diff, 2.0 * pi - diff) > 1e-6) { betas_agree = false; break; }
    }

    std::vector<double> candidates;
    auto push_candidate = [&](double phi) {
        phi = detail::wrap_two_pi(phi);
        for (double seen : candidates) {
            const double diff = std::abs(seen - phi);
            if (std::min(diff, 2.0 * pi - diff) < 1e-9) return;
        }
        candidates.push_back(phi);
    };
    for (const auto& sb : biases) {
        // Sectors at or below the coefficient noise floor get no candidates:
        // their fitted beta carries no information, and any sweet spot they
        // could contribute is still reachable through the fallback search.
        if (sb.weight < 1e-9 * biases.front().weight) continue;
        // chi -> chi - pi changes this sector's beta by a fixed shift; both
        // representatives yield legitimate candidates.
        const double shift = sb.total_n % 2 == 1 ? 4.0 * pi / (sb.total_n + 1) : 4.0 * pi / (sb.total_n + 2);
        for (double off : offsets) {
            push_candidate(off - sb.beta);
            push_candidate(off - sb.beta - shift);
        }
    }
    if (!betas_agree)
        for (double off : offsets) push_candidate(off);

    BiasReport report;
    report.beta_closed_form = biases.front().beta;
    for (double cand : candidates) {
        if (claim1_check(state, cand, claim_tol).satisfied) {
            report.claim1_at_sweet_spot = true;
            report.sweet_spot_phi = cand;
            report.numerical_fallback_used = false;
            return report;
        }
    }

    const auto [phi_min, delta_min] = min_sensitivity(state);
    (void)delta_min;
    report.sweet_spot_phi = phi_min;
    report.claim1_at_sweet_spot = claim1_check(state, phi_min, claim_tol).satisfied;
    report.numerical_fallback_used = true;
    return report;
}

}  // namespace mzparity
