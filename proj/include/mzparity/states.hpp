#pragma once

// Factories for the benchmark two-mode states, as interferometer inputs
// (stage Input, the state arriving at the first beam splitter) and as
// internal states (stage Internal, the state between the splitters where
// the phase accumulates). Indefinite-photon-number states are truncated in
// total photon number with the discarded probability tracked explicitly.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mzparity/su2.hpp"

namespace mzparity {

enum class Stage { Input, Internal };

struct TwoModeState {
    Stage stage = Stage::Input;
    std::vector<SectorState> sectors;  // sorted by two_j, no duplicates

    double norm_sq() const {
        double s = 0.0;
        for (const auto& sec : sectors) s += sec.norm_sq();
        return s;
    }
};

// Truncation policy plus the probability mass it discarded. tail_mass is
// filled in by the factory that consumed the policy.
struct Truncation {
    int max_total_n = 60;
    double tail_bound = 1e-12;
    double tail_mass = 0.0;
};

inline void require_two_mode_shape(const TwoModeState& state, const char* where) {
    int prev = -1;
    for (const auto& sec : state.sectors) {
        require_sector_shape(sec, where);
        if (sec.two_j <= prev)
            throw std::invalid_argument(std::string(where) +
                                        ": sectors must be sorted by total photon number without duplicates");
        prev = sec.two_j;
    }
}

inline void require_normalized(const TwoModeState& state, const char* where, double tol = 1e-8) {
    require_two_mode_shape(state, where);
    if (std::abs(state.norm_sq() - 1.0) > tol)
        throw std::invalid_argument(std::string(where) + ": state is not normalized");
}

inline void normalize(TwoModeState& state) {
    const double n = std::sqrt(state.norm_sq());
    if (n <= 0.0)
        throw std::invalid_argument("normalize: zero state");
    for (auto& sec : state.sectors) sec.coeffs /= n;
}

// (|N,0> + |0,N>)/sqrt(2), defined directly at stage Internal.
inline TwoModeState noon(int total_n) {
    if (total_n < 1)
        throw std::invalid_argument("noon: needs at least one photon");
    SectorState sec{total_n, Vector::Zero(total_n + 1)};
    const double amp = 1.0 / std::sqrt(2.0);
    sec.coeffs(0) = amp;
    sec.coeffs(total_n) = amp;
    return {Stage::Internal, {std::move(sec)}};
}

// |n, n>: equal occupation of both input ports.
inline TwoModeState twin_fock(int n) {
    if (n < 1)
        throw std::invalid_argument("twin_fock: needs at least one photon per mode");
    SectorState sec{2 * n, Vector::Zero(2 * n + 1)};
    sec.coeffs(sec.index_of_two_m(0)) = 1.0;
    return {Stage::Input, {std::move(sec)}};
}

namespace detail {

// Collects per-sector amplitude vectors, tracks retained probability, and
// assembles a normalized Input-stage state once all sectors are in.
struct SectorAccumulator {
    std::vector<SectorState> sectors;
    double kept_mass = 0.0;

    void add(SectorState sec) {
        const double mass = sec.norm_sq();
        if (mass == 0.0) return;
        kept_mass += mass;
        sectors.push_back(std::move(sec));
    }

    TwoModeState finish(Truncation& trunc, const char* who) {
        trunc.tail_mass = std::max(0.0, 1.0 - kept_mass);
        if (trunc.tail_mass >= trunc.tail_bound)
            throw std::domain_error(std::string(who) + ": truncation discards probability " +
                                    std::to_string(trunc.tail_mass) +
                                    "; increase max_total_n or loosen the tail bound");
        std::sort(sectors.begin(), sectors.end(),
                  [](const SectorState& a, const SectorState& b) { return a.two_j < b.two_j; });
        TwoModeState out{Stage::Input, std::move(sectors)};
        normalize(out);
        return out;
    }
};

}  // namespace detail

// Sectors |n, n> weighted by (-tanh r)^n / cosh r.
inline TwoModeState two_mode_squeezed_vacuum(double r, Truncation& trunc) {
    if (!(r > 0.0))
        throw std::invalid_argument("two_mode_squeezed_vacuum: squeezing parameter must be positive");
    if (trunc.max_total_n < 0)
        throw std::invalid_argument("two_mode_squeezed_vacuum: negative max_total_n");
    detail::SectorAccumulator acc;
    const double t = std::tanh(r);
    double amp = 1.0 / std::cosh(r);
    for (int n = 0; 2 * n <= trunc.max_total_n; ++n) {
        SectorState sec{2 * n, Vector::Zero(2 * n + 1)};
        sec.coeffs(sec.index_of_two_m(0)) = amp;
        acc.add(std::move(sec));
        amp *= -t;
    }
    return acc.finish(trunc, "two_mode_squeezed_vacuum");
}

// Sectors |n, n> weighted by zeta^n / n!, normalized through the modified
// Bessel function I0(2|zeta|).
inline TwoModeState pair_coherent(Complex zeta, Truncation& trunc) {
    if (std::abs(zeta) == 0.0)
        throw std::invalid_argument("pair_coherent: zeta must be nonzero");
    if (trunc.max_total_n < 0)
        throw std::invalid_argument("pair_coherent: negative max_total_n");
    detail::SectorAccumulator acc;
    Complex amp = 1.0 / std::sqrt(std::cyl_bessel_i(0.0, 2.0 * std::abs(zeta)));
    for (int n = 0; 2 * n <= trunc.max_total_n; ++n) {
        SectorState sec{2 * n, Vector::Zero(2 * n + 1)};
        sec.coeffs(sec.index_of_two_m(0)) = amp;
        acc.add(std::move(sec));
        amp *= zeta / double(n + 1);
    }
    return acc.finish(trunc, "pair_coherent");
}

// Coherent state in mode a, squeezed vacuum in mode b, decomposed into
// total-photon-number sectors. Coherent amplitudes follow
// e^{-|alpha|^2/2} alpha^n / sqrt(n!); squeezed-vacuum amplitudes occupy
// even n only, with the phase of zeta entering through (-e^{i arg zeta}
// tanh|zeta|)^{n/2}.
inline TwoModeState coherent_times_squeezed_vacuum(Complex alpha, Complex zeta, Truncation& trunc) {
    const double s = std::abs(zeta);
    if (std::norm(alpha) + std::sinh(s) * std::sinh(s) <= 0.0)
        throw std::invalid_argument("coherent_times_squeezed_vacuum: state must carry photons");
    if (trunc.max_total_n < 0)
        throw std::invalid_argument("coherent_times_squeezed_vacuum: negative max_total_n");
    const int cap = trunc.max_total_n;

    std::vector<Complex> coh(cap + 1);
    coh[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < cap; ++n)
        coh[n + 1] = coh[n] * alpha / std::sqrt(double(n + 1));

    std::vector<Complex> sq(cap + 1, Complex(0.0, 0.0));
    sq[0] = 1.0 / std::sqrt(std::cosh(s));
    const Complex pump = s > 0.0 ? -(zeta / s) * std::tanh(s) : Complex(0.0, 0.0);
    for (int k = 0; 2 * k + 2 <= cap; ++k)
        sq[2 * k + 2] = sq[2 * k] * pump *
                        std::sqrt(double(2 * k + 1) * double(2 * k + 2)) / double(2 * (k + 1));

    detail::SectorAccumulator acc;
    for (int total = 0; total <= cap; ++total) {
        SectorState sec{total, Vector(total + 1)};
        for (int i = 0; i <= total; ++i) {
            const int n_a = total - i;
            sec.coeffs(i) = coh[n_a] * sq[total - n_a];
        }
        acc.add(std::move(sec));
    }
    return acc.finish(trunc, "coherent_times_squeezed_vacuum");
}

// Sends an Input-stage state through the first beam splitter sector by
// sector, yielding the Internal-stage state the phase shifter acts on.
inline TwoModeState to_internal(const TwoModeState& state, MziKind kind) {
    if (state.stage != Stage::Input)
        throw std::invalid_argument("to_internal: state is already at stage Internal");
    require_two_mode_shape(state, "to_internal");
    TwoModeState out{Stage::Internal, {}};
    out.sectors.reserve(state.sectors.size());
    for (const auto& sec : state.sectors)
        out.sectors.push_back(apply(mzi_first_splitter(sec.two_j, kind), sec));
    return out;
}

}  // namespace mzparity
