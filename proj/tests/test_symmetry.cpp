#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "mzparity/states.hpp"
#include "mzparity/symmetry.hpp"

using namespace mzparity;

namespace {

TwoModeState single_sector_state(const SectorState& sec) {
    TwoModeState st;
    st.stage = Stage::Internal;
    st.sectors.push_back(sec);
    normalize(st);
    return st;
}

TwoModeState perturbed_noon(int n, double bump) {
    TwoModeState st = noon(n);
    st.sectors[0].coeffs(0) += bump;
    normalize(st);
    return st;
}

}  // namespace

TEST_CASE("noon states pass the symmetry check with real-coefficient chi") {
    const SymmetryReport rep = check(noon(3));
    REQUIRE(rep.is_path_symmetric);
    REQUIRE(rep.chi_per_sector.size() == 1);
    REQUIRE(rep.chi_per_sector[0].total_n == 3);
    REQUIRE(chi_distance(rep.chi_per_sector[0].chi, 0.0) < 1e-15);
    REQUIRE(rep.max_residual < 1e-15);
    REQUIRE(rep.tolerance_used == kDefaultSymmetryTol);
}

TEST_CASE("linear coefficient phases keep a sector path-symmetric") {
    const double theta = 0.37;
    SectorState sec;
    sec.two_j = 4;
    sec.coeffs = Vector::Zero(5);
    const double r[3] = {0.9, 0.55, 0.7};
    for (int i = 0; i <= 4; ++i) {
        const double m = 0.5 * (4 - 2 * i);
        sec.coeffs(i) = r[std::abs(2 - i)] * std::exp(Complex(0.0, m * theta));
    }
    const TwoModeState st = single_sector_state(sec);

    const SymmetryReport rep = check(st);
    REQUIRE(rep.is_path_symmetric);
    REQUIRE(chi_distance(rep.chi_per_sector[0].chi, 0.0) < 1e-14);
}

TEST_CASE("an unbalanced noon coefficient breaks the symmetry verdict") {
    const TwoModeState st = perturbed_noon(3, 0.1);
    const SymmetryReport rep = check(st);
    REQUIRE_FALSE(rep.is_path_symmetric);
    REQUIRE(rep.max_residual > 1e-3);
}

TEST_CASE("chi extraction matches the phase structure it was built from") {
    for (int two_j : {2, 3, 5, 8}) {
        for (double chi : {0.0, 0.4, 1.1, 2.6}) {
            const SectorState sec = testutil::symmetric_sector(two_j, chi);
            const double fitted = extract_chi(sec);
            CAPTURE(two_j, chi);
            REQUIRE(chi_distance(fitted, chi) < 1e-12);
            REQUIRE(fitted >= 0.0);
            REQUIRE(fitted < pi);
        }
    }
}

TEST_CASE("a global phase shifts chi by the opposite angle") {
    const double delta = 0.83;
    SectorState sec = testutil::symmetric_sector(5, 0.0);
    REQUIRE(chi_distance(extract_chi(sec), 0.0) < 1e-12);

    sec.coeffs *= std::exp(Complex(0.0, delta));
    REQUIRE(chi_distance(extract_chi(sec), -delta) < 1e-12);

    sec.coeffs *= 3.7;  // positive rescaling leaves the fit alone
    REQUIRE(chi_distance(extract_chi(sec), -delta) < 1e-12);
}

TEST_CASE("the bunched two-photon state carries chi of a quarter turn") {
    const TwoModeState inside = to_internal(twin_fock(1), MziKind::TypeI);
    const double chi = extract_chi(inside.sectors[0]);
    REQUIRE(chi_distance(chi, half_pi) < 1e-14);
}

TEST_CASE("chi extraction rejects unusable sectors") {
    SectorState lonely;
    lonely.two_j = 2;
    lonely.coeffs = Vector::Zero(3);
    lonely.coeffs(0) = 1.0;
    const auto extract_lonely = [&] { return extract_chi(lonely); };
    REQUIRE_THROWS_AS(extract_lonely(), std::domain_error);

    SectorState broken;
    broken.two_j = 2;
    broken.coeffs = Vector::Zero(3);
    broken.coeffs(0) = Complex(0.6, 0.0);
    broken.coeffs(1) = Complex(0.0, 0.53);
    broken.coeffs(2) = Complex(0.1, 0.58);
    const auto extract_broken = [&] { return extract_chi(broken); };
    REQUIRE_THROWS_AS(extract_broken(), std::domain_error);

    SectorState empty;
    empty.two_j = 1;
    empty.coeffs = Vector::Zero(2);
    const auto extract_empty = [&] { return extract_chi(empty); };
    REQUIRE_THROWS_AS(extract_empty(), std::domain_error);
}

TEST_CASE("chi distance respects the half-turn period") {
    REQUIRE(chi_distance(0.1, 0.1 + pi) < 1e-15);
    REQUIRE(chi_distance(0.0, pi - 0.01) == Catch::Approx(0.01).margin(1e-12));
    REQUIRE(chi_distance(1.0, 1.4) == Catch::Approx(0.4).margin(1e-12));
}

TEST_CASE("accumulated phases never disturb the symmetry verdict") {
    REQUIRE(phase_independence_check(noon(2), {0.0, 0.7, pi}, kDefaultSymmetryTol));
    REQUIRE(phase_independence_check(twin_fock(2), {0.3, 2.9}, kDefaultSymmetryTol));

    const TwoModeState bad = perturbed_noon(2, 0.1);
    REQUIRE_FALSE(phase_independence_check(bad, {0.0}, kDefaultSymmetryTol));
    REQUIRE_FALSE(phase_independence_check(bad, {0.4, 1.0}, kDefaultSymmetryTol));

    REQUIRE(phase_independence_check(bad, {}, kDefaultSymmetryTol));
}

TEST_CASE("mode exchange with conjugation fixes symmetric states") {
    REQUIRE(mode_exchange_check(noon(2)));
    REQUIRE(mode_exchange_check(noon(5)));
    REQUIRE(mode_exchange_check(to_internal(twin_fock(1), MziKind::TypeI)));
    REQUIRE_FALSE(mode_exchange_check(perturbed_noon(2, 0.1)));
}

TEST_CASE("both symmetry characterizations agree on single-sector states") {
    for (int two_j : {2, 3, 6}) {
        const TwoModeState sym = single_sector_state(testutil::symmetric_sector(two_j, 0.9));
        CAPTURE(two_j);
        REQUIRE(check(sym).is_path_symmetric);
        REQUIRE(mode_exchange_check(sym));
    }
    for (int two_j : {3, 5}) {
        const TwoModeState asym = single_sector_state(testutil::random_sector(two_j));
        CAPTURE(two_j);
        REQUIRE(check(asym).is_path_symmetric == mode_exchange_check(asym));
    }
}

TEST_CASE("path-symmetric states have no mean photon number imbalance") {
    auto mean_two_m = [](const TwoModeState& st) {
        double mean = 0.0;
        for (const auto& sec : st.sectors)
            for (int i = 0; i < sec.dim(); ++i)
                mean += std::norm(sec.coeffs(i)) * sec.two_m_at(i);
        return mean;
    };
    for (int two_j : {2, 4, 7}) {
        const TwoModeState st = single_sector_state(testutil::symmetric_sector(two_j, 1.3));
        REQUIRE(std::abs(mean_two_m(st)) < 1e-12);
    }
    Truncation trunc{40, 1e-12};
    const TwoModeState tmsv = to_internal(two_mode_squeezed_vacuum(0.4, trunc), MziKind::TypeI);
    REQUIRE(std::abs(mean_two_m(tmsv)) < 1e-12);
}

TEST_CASE("the symmetry check refuses input-stage states") {
    REQUIRE_THROWS_WITH(check(twin_fock(2)), Catch::Matchers::ContainsSubstring("to_internal"));
}
