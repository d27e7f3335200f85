#pragma once

// Shared helpers for the test binaries: a seeded generator so failures
// reproduce, random sector builders, and dense matrix comparison.

#include <cmath>
#include <complex>
#include <random>

#include "mzparity/states.hpp"

namespace testutil {

using mzparity::Complex;
using mzparity::Matrix;
using mzparity::SectorState;
using mzparity::Vector;

inline std::mt19937& rng() {
    static std::mt19937 gen(20260819u);
    return gen;
}

inline Vector random_coeffs(int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng()), gauss(rng()));
    v /= v.norm();
    return v;
}

inline SectorState random_sector(int two_j) {
    return {two_j, random_coeffs(two_j + 1)};
}

// Path-symmetric sector with the requested chi: magnitudes even in m and
// phases paired as theta_{-m} = -theta_m - 2 chi (theta_0 = -chi).
inline SectorState symmetric_sector(int two_j, double chi) {
    std::uniform_real_distribution<double> mag(0.2, 1.0);
    std::uniform_real_distribution<double> ph(-mzparity::pi, mzparity::pi);
    SectorState sec{two_j, Vector(two_j + 1)};
    for (int i = 0; 2 * i <= two_j; ++i) {
        const int ri = two_j - i;
        const double r = mag(rng());
        if (ri == i) {
            sec.coeffs(i) = std::polar(r, -chi);
        } else {
            const double theta = ph(rng());
            sec.coeffs(i) = std::polar(r, theta);
            sec.coeffs(ri) = std::polar(r, -theta - 2.0 * chi);
        }
    }
    sec.coeffs /= std::sqrt(sec.norm_sq());
    return sec;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
