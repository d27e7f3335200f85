#pragma once

// Two-mode photonic sectors in the Schwinger (pseudo-spin) picture and the
// SU(2) building blocks of a Mach-Zehnder interferometer: angular momentum
// matrices, beam splitters, phase shifters, and the composed interferometer
// action on a single total-photon-number sector.

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace mzparity {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr double half_pi = std::numbers::pi / 2.0;

enum class Axis { X, Y, Z };

// Type I drives the phase with exp(-i*phi*Jz) between 50:50 splitters
// generated by Jx; type II uses a Jy first splitter so that the composed
// interferometer rotates about Jx instead of Jy.
enum class MziKind { TypeI, TypeII };

// One fixed total photon number sector of a two-mode state. A sector with
// N = two_j photons carries spin j = N/2 and holds two_j + 1 coefficients
// ordered by *descending* m: index i stores the amplitude of |j, m> with
// 2m = two_j - 2i. In Fock language |j, m> = |n_a = j+m, n_b = j-m>, so
// index 0 is |N, 0> and the last index is |0, N>.
struct SectorState {
    int two_j = 0;
    Vector coeffs;

    int dim() const { return two_j + 1; }
    int two_m_at(int index) const { return two_j - 2 * index; }
    int index_of_two_m(int two_m) const { return (two_j - two_m) / 2; }
    double norm_sq() const { return coeffs.squaredNorm(); }
};

// Dense operator acting on a single sector, tagged with the sector it fits.
struct OperatorMatrix {
    int two_j = 0;
    Matrix entries;
};

inline void require_sector_shape(const SectorState& s, const char* where) {
    if (s.two_j < 0)
        throw std::invalid_argument(std::string(where) + ": negative photon number");
    if (s.coeffs.size() != s.two_j + 1)
        throw std::invalid_argument(std::string(where) + ": coefficient count " +
                                    std::to_string(s.coeffs.size()) + " does not match sector dimension " +
                                    std::to_string(s.two_j + 1));
}

// Spin-j representation of Jx, Jy or Jz in the descending-m basis.
// Matrix elements follow the standard ladder convention
// J+|j,m> = sqrt((j-m)(j+m+1)) |j,m+1> with real positive step factors.
inline OperatorMatrix angular_momentum_matrix(int two_j, Axis axis) {
    if (two_j < 0)
        throw std::invalid_argument("angular_momentum_matrix: negative two_j");
    const int dim = two_j + 1;
    Matrix m = Matrix::Zero(dim, dim);
    if (axis == Axis::Z) {
        for (int i = 0; i < dim; ++i)
            m(i, i) = 0.5 * (two_j - 2 * i);
    } else {
        const double j = 0.5 * two_j;
        for (int i = 1; i < dim; ++i) {
            const double mm = 0.5 * (two_j - 2 * i);
            const double step = 0.5 * std::sqrt((j - mm) * (j + mm + 1.0));
            if (axis == Axis::X) {
                m(i - 1, i) = step;
                m(i, i - 1) = step;
            } else {
                m(i - 1, i) = Complex(0.0, -step);
                m(i, i - 1) = Complex(0.0, step);
            }
        }
    }
    return {two_j, std::move(m)};
}

// exp(-i * angle * J_axis) for axis x or y, via eigendecomposition of the
// Hermitian generator.
inline OperatorMatrix beam_splitter(int two_j, Axis axis, double angle) {
    if (axis == Axis::Z)
        throw std::invalid_argument("beam_splitter: generator must be Jx or Jy");
    const OperatorMatrix gen = angular_momentum_matrix(two_j, axis);
    Eigen::SelfAdjointEigenSolver<Matrix> es(gen.entries);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("beam_splitter: eigendecomposition failed");
    const Eigen::VectorXd evals = es.eigenvalues();
    Vector phases(evals.size());
    for (Eigen::Index k = 0; k < evals.size(); ++k)
        phases(k) = std::exp(Complex(0.0, -angle * evals(k)));
    Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return {two_j, std::move(u)};
}

// exp(-i * phi * Jz): diagonal phase e^{-i m phi} on each |j, m>.
inline OperatorMatrix phase_shifter(int two_j, double phi) {
    if (two_j < 0)
        throw std::invalid_argument("phase_shifter: negative two_j");
    const int dim = two_j + 1;
    Matrix m = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const double mm = 0.5 * (two_j - 2 * i);
        m(i, i) = std::exp(Complex(0.0, -phi * mm));
    }
    return {two_j, std::move(m)};
}

inline SectorState apply(const OperatorMatrix& op, const SectorState& state) {
    require_sector_shape(state, "apply");
    if (op.two_j != state.two_j)
        throw std::invalid_argument("apply: operator sector " + std::to_string(op.two_j) +
                                    " does not match state sector " + std::to_string(state.two_j));
    return {state.two_j, op.entries * state.coeffs};
}

// The first 50:50 splitter of the interferometer. Type I uses
// exp(-i*(pi/2)*Jx); type II uses exp(+i*(pi/2)*Jy).
inline OperatorMatrix mzi_first_splitter(int two_j, MziKind kind) {
    return kind == MziKind::TypeI ? beam_splitter(two_j, Axis::X, half_pi)
                                  : beam_splitter(two_j, Axis::Y, -half_pi);
}

// Full interferometer: splitter, phase shifter exp(-i*phi*Jz), inverse
// splitter. With the splitter angles above the composition collapses to a
// single rotation, exp(-i*phi*Jy) for type I and exp(-i*phi*Jx) for type II.
inline SectorState mzi_transform(const SectorState& state, double phi, MziKind kind) {
    require_sector_shape(state, "mzi_transform");
    const OperatorMatrix split = mzi_first_splitter(state.two_j, kind);
    const Matrix u = split.entries.adjoint() * phase_shifter(state.two_j, phi).entries * split.entries;
    return {state.two_j, u * state.coeffs};
}

}  // namespace mzparity
