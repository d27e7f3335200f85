#include <catch2/catch_amalgamated.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "mzparity/su2.hpp"

using namespace mzparity;
using testutil::max_abs_diff;
using testutil::random_sector;

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
const Complex im(0.0, 1.0);
}  // namespace

TEST_CASE("angular momentum matrices reproduce the spin-1 pattern") {
    Matrix want_x = Matrix::Zero(3, 3);
    want_x(0, 1) = want_x(1, 0) = want_x(1, 2) = want_x(2, 1) = inv_sqrt2;
    REQUIRE(max_abs_diff(angular_momentum_matrix(2, Axis::X).entries, want_x) < 1e-15);

    Matrix want_y = Matrix::Zero(3, 3);
    want_y(0, 1) = want_y(1, 2) = -im * inv_sqrt2;
    want_y(1, 0) = want_y(2, 1) = im * inv_sqrt2;
    REQUIRE(max_abs_diff(angular_momentum_matrix(2, Axis::Y).entries, want_y) < 1e-15);

    Matrix want_z = Matrix::Zero(3, 3);
    want_z(0, 0) = 1.0;
    want_z(2, 2) = -1.0;
    REQUIRE(max_abs_diff(angular_momentum_matrix(2, Axis::Z).entries, want_z) < 1e-15);
}

TEST_CASE("angular momentum matrices close the su(2) algebra") {
    for (int two_j : {1, 2, 3, 5, 8, 13, 21, 40}) {
        const Matrix jx = angular_momentum_matrix(two_j, Axis::X).entries;
        const Matrix jy = angular_momentum_matrix(two_j, Axis::Y).entries;
        const Matrix jz = angular_momentum_matrix(two_j, Axis::Z).entries;
        REQUIRE(max_abs_diff(jx * jy - jy * jx, im * jz) < 1e-10);
        REQUIRE(max_abs_diff(jy * jz - jz * jy, im * jx) < 1e-10);
        REQUIRE(max_abs_diff(jz * jx - jx * jz, im * jy) < 1e-10);

        const double j = 0.5 * two_j;
        const Matrix casimir = jx * jx + jy * jy + jz * jz;
        REQUIRE(max_abs_diff(casimir, j * (j + 1.0) * Matrix::Identity(two_j + 1, two_j + 1)) < 1e-10);
    }
}

TEST_CASE("single photon beam splitters match the standard 50:50 matrices") {
    Matrix want_x(2, 2);
    want_x << 1.0, -im, -im, 1.0;
    want_x *= inv_sqrt2;
    REQUIRE(max_abs_diff(beam_splitter(1, Axis::X, half_pi).entries, want_x) < 1e-14);

    Matrix want_y(2, 2);
    want_y << 1.0, -1.0, 1.0, 1.0;
    want_y *= inv_sqrt2;
    REQUIRE(max_abs_diff(beam_splitter(1, Axis::Y, half_pi).entries, want_y) < 1e-14);
}

TEST_CASE("quarter turn about x on a one-photon-pair sector") {
    // exp(-i (pi/2) Jx) at spin 1, from I - i Jx - Jx^2.
    Matrix want(3, 3);
    want << 0.5, -im * inv_sqrt2, -0.5,
        -im * inv_sqrt2, 0.0, -im * inv_sqrt2,
        -0.5, -im * inv_sqrt2, 0.5;
    REQUIRE(max_abs_diff(beam_splitter(2, Axis::X, half_pi).entries, want) < 1e-14);
}

TEST_CASE("beam splitter agrees with a general matrix exponential") {
    for (Axis axis : {Axis::X, Axis::Y}) {
        for (double angle : {0.37, -1.2, half_pi}) {
            const Matrix gen = angular_momentum_matrix(8, axis).entries;
            const Matrix direct = (-im * angle * gen).exp();
            REQUIRE(max_abs_diff(beam_splitter(8, axis, angle).entries, direct) < 1e-12);
        }
    }
}

TEST_CASE("beam splitters are unitary and invert cleanly") {
    for (int two_j : {1, 4, 7, 10, 20}) {
        const Matrix id = Matrix::Identity(two_j + 1, two_j + 1);
        for (double angle : {0.6, 2.9}) {
            const Matrix u = beam_splitter(two_j, Axis::X, angle).entries;
            REQUIRE(max_abs_diff(u.adjoint() * u, id) < 1e-12);
            const Matrix v = beam_splitter(two_j, Axis::X, -angle).entries;
            REQUIRE(max_abs_diff(u * v, id) < 1e-12);
        }
    }
}

TEST_CASE("phase shifter applies e^{-i m phi} down the diagonal") {
    const Matrix ps = phase_shifter(2, pi).entries;
    Matrix want = Matrix::Zero(3, 3);
    want(0, 0) = -1.0;
    want(1, 1) = 1.0;
    want(2, 2) = -1.0;
    REQUIRE(max_abs_diff(ps, want) < 1e-14);

    const Matrix ps3 = phase_shifter(3, 0.7).entries;
    for (int i = 0; i < 4; ++i) {
        const double m = 0.5 * (3 - 2 * i);
        REQUIRE(std::abs(ps3(i, i) - std::exp(-im * 0.7 * m)) < 1e-15);
    }
}

TEST_CASE("interferometer collapses to a single rotation") {
    for (int two_j : {1, 2, 5, 8}) {
        const SectorState s = random_sector(two_j);
        for (double phi : {0.3, 1.7, 4.4}) {
            const SectorState via_mzi_1 = mzi_transform(s, phi, MziKind::TypeI);
            const SectorState rot_y = apply(beam_splitter(two_j, Axis::Y, phi), s);
            REQUIRE((via_mzi_1.coeffs - rot_y.coeffs).cwiseAbs().maxCoeff() < 1e-12);

            const SectorState via_mzi_2 = mzi_transform(s, phi, MziKind::TypeII);
            const SectorState rot_x = apply(beam_splitter(two_j, Axis::X, phi), s);
            REQUIRE((via_mzi_2.coeffs - rot_x.coeffs).cwiseAbs().maxCoeff() < 1e-12);

            REQUIRE(std::abs(via_mzi_1.norm_sq() - 1.0) < 1e-12);
            REQUIRE(std::abs(via_mzi_2.norm_sq() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("shape and axis violations are rejected") {
    REQUIRE_THROWS_AS(angular_momentum_matrix(-1, Axis::X), std::invalid_argument);
    REQUIRE_THROWS_AS(beam_splitter(2, Axis::Z, 1.0), std::invalid_argument);

    const OperatorMatrix op = phase_shifter(2, 0.5);
    const SectorState wrong_sector = random_sector(4);
    REQUIRE_THROWS_AS(apply(op, wrong_sector), std::invalid_argument);

    SectorState bad_shape{3, Vector::Zero(2)};
    REQUIRE_THROWS_AS(apply(phase_shifter(3, 0.1), bad_shape), std::invalid_argument);
}
