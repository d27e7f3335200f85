#pragma once

// Independent cross-check route in the raw Fock occupation basis. Nothing
// here touches the Schwinger-basis code paths: beam splitters are built from
// mode-operator matrix elements and exponentiated with a general matrix
// exponential, and parity is read off output occupation numbers directly.

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "mzparity/su2.hpp"

namespace mzparity {

struct SchwingerLabel {
    int two_j = 0;
    int index = 0;
};

// |n_a, n_b> = |j = (n_a+n_b)/2, m = (n_a-n_b)/2>. The returned index is the
// position of that |j, m> in the descending-m coefficient vector of
// SectorState, which works out to n_b.
inline SchwingerLabel fock_to_schwinger(int n_a, int n_b) {
    if (n_a < 0 || n_b < 0)
        throw std::invalid_argument("fock_to_schwinger: negative occupation number");
    return {n_a + n_b, n_b};
}

// One total-photon-number sector expressed over occupations of mode a:
// amps[n_a] multiplies |n_a, total_n - n_a>, with n_a ascending. This is the
// reverse of the descending-m Schwinger ordering used by SectorState.
struct FockSectorState {
    int total_n = 0;
    Vector amps;
};

inline void require_fock_shape(const FockSectorState& s, const char* where) {
    if (s.total_n < 0)
        throw std::invalid_argument(std::string(where) + ": negative photon number");
    if (s.amps.size() != s.total_n + 1)
        throw std::invalid_argument(std::string(where) + ": amplitude count does not match sector dimension");
}

// Reindexing between the two orderings. Both carry the same amplitudes;
// index i of the Schwinger vector is occupation n_a = total_n - i.
inline FockSectorState fock_from_schwinger_sector(const SectorState& s) {
    require_sector_shape(s, "fock_from_schwinger_sector");
    FockSectorState out{s.two_j, Vector(s.two_j + 1)};
    for (int n_a = 0; n_a <= s.two_j; ++n_a)
        out.amps(n_a) = s.coeffs(s.two_j - n_a);
    return out;
}

inline SectorState schwinger_from_fock_sector(const FockSectorState& s) {
    require_fock_shape(s, "schwinger_from_fock_sector");
    SectorState out{s.total_n, Vector(s.total_n + 1)};
    for (int n_a = 0; n_a <= s.total_n; ++n_a)
        out.coeffs(s.total_n - n_a) = s.amps(n_a);
    return out;
}

// Beam splitter generator on a fixed-N sector from mode matrix elements:
// Jx = (a'b + ab')/2, Jy = (a'b - ab')/(2i), where a'b sends |n_a, n_b> to
// sqrt((n_a+1) n_b) |n_a+1, n_b-1>.
inline Matrix bs_generator_fock(int total_n, Axis axis) {
    if (axis == Axis::Z)
        throw std::invalid_argument("bs_generator_fock: generator must be Jx or Jy");
    if (total_n < 0)
        throw std::invalid_argument("bs_generator_fock: negative photon number");
    const int dim = total_n + 1;
    Matrix g = Matrix::Zero(dim, dim);
    for (int n_a = 0; n_a + 1 < dim; ++n_a) {
        const double raise = std::sqrt(double(n_a + 1) * double(total_n - n_a));
        if (axis == Axis::X) {
            g(n_a + 1, n_a) = 0.5 * raise;
            g(n_a, n_a + 1) = 0.5 * raise;
        } else {
            g(n_a + 1, n_a) = Complex(0.0, -0.5 * raise);
            g(n_a, n_a + 1) = Complex(0.0, 0.5 * raise);
        }
    }
    return g;
}

// <psi4| (-1)^{n_b} |psi4> for an interferometer input sector, where psi4 is
// the output of splitter, exp(-i*phi*(n_a-n_b)/2) phase, inverse splitter.
// The splitter unitary comes from a Pade-based matrix exponential of the
// occupation-basis generator, so this route shares no code with the
// eigendecomposition used in the Schwinger picture.
inline double parity_expectation_fock(const FockSectorState& state, double phi, MziKind kind) {
    require_fock_shape(state, "parity_expectation_fock");
    const int n = state.total_n;
    const Matrix gen = kind == MziKind::TypeI ? bs_generator_fock(n, Axis::X)
                                              : bs_generator_fock(n, Axis::Y);
    const double angle = kind == MziKind::TypeI ? half_pi : -half_pi;
    const Matrix splitter = (Complex(0.0, -angle) * gen).exp();

    Vector psi = splitter * state.amps;
    for (int n_a = 0; n_a <= n; ++n_a) {
        const double m = 0.5 * (2 * n_a - n);
        psi(n_a) *= std::exp(Complex(0.0, -phi * m));
    }
    psi = splitter.adjoint() * psi;

    double parity = 0.0;
    for (int n_a = 0; n_a <= n; ++n_a) {
        const int n_b = n - n_a;
        parity += (n_b % 2 == 0 ? 1.0 : -1.0) * std::norm(psi(n_a));
    }
    return parity;
}

}  // namespace mzparity
