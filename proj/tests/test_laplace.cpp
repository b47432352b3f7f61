#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specwell/errors.hpp"
#include "specwell/laplace.hpp"

#include <cmath>
#include <numeric>

using namespace specwell;

TEST_CASE("zero-flux closure annihilates constants for m = 0") {
    MetricProfile p = make_round_sphere();
    ModeOperator op = laplacian_mode_operator(p, 0, 64);
    // Row sums of the flux part vanish: L * 1 = 0 exactly.
    for (std::size_t i = 0; i < op.cells; ++i) {
        double row = op.diag[i];
        if (i > 0) row += op.offdiag[i - 1];
        if (i + 1 < op.cells) row += op.offdiag[i];
        CHECK(std::abs(row) < 1e-12 * std::abs(op.diag[i]));
    }
}

TEST_CASE("non-pole-regular profiles are rejected") {
    std::vector<double> x, v;
    for (int i = 0; i <= 100; ++i) {
        double t = -0.9999 + 2 * 0.9999 * i / 100.0;
        x.push_back(t);
        v.push_back(1 + t * t);
    }
    MetricProfile tab = MetricProfile::tabulated(x, v);
    CHECK_THROWS_AS(laplacian_mode_operator(tab, 0, 64), PoleRegularityError);
    CHECK_THROWS_AS(laplacian_mode_operator(make_round_sphere(), 0, 8), ConfigError);
}

TEST_CASE("round sphere m=0 spectrum approaches k(k+1)") {
    MetricProfile p = make_round_sphere();
    EquivariantSpectrum s = equivariant_spectrum(p, 0, 2048, 50.0);
    REQUIRE(s.eigenvalues.size() >= 7);
    CHECK(std::abs(s.eigenvalues[0]) < 1e-10); // constants
    for (int k = 1; k <= 6; ++k) {
        double exact = k * (k + 1.0);
        CHECK(std::abs(s.eigenvalues[k] - exact) / exact < 1e-3);
    }
}

TEST_CASE("round sphere m=3 spectrum starts at 12") {
    MetricProfile p = make_round_sphere();
    EquivariantSpectrum s = equivariant_spectrum(p, 3, 2048, 50.0);
    REQUIRE(!s.eigenvalues.empty());
    CHECK(std::abs(s.eigenvalues[0] - 12.0) / 12.0 < 1e-3);
    // k >= |m|: eigenvalues are k(k+1) for k = 3, 4, 5, 6
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
        double k = 3.0 + static_cast<double>(i);
        CHECK(std::abs(s.eigenvalues[i] - k * (k + 1)) / (k * (k + 1)) < 1e-3);
    }
}

TEST_CASE("m=2 spectrum within lambda_max 50 matches the oracle list") {
    MetricProfile p = make_round_sphere();
    EquivariantSpectrum s = equivariant_spectrum(p, 2, 2048, 50.0);
    std::vector<double> expected = {6, 12, 20, 30, 42};
    REQUIRE(s.eigenvalues.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(std::abs(s.eigenvalues[i] - expected[i]) / expected[i] < 1e-3);
}

TEST_CASE("empty list below the m^2 c lower bound") {
    MetricProfile p = make_round_sphere(); // c = 1
    EquivariantSpectrum s = equivariant_spectrum(p, 5, 512, 24.0); // < m^2 c = 25
    CHECK(s.eigenvalues.empty());
}

TEST_CASE("lower bound lambda >= m^2 c holds for perturbed wells") {
    MetricProfile p = make_perturbed_well({0.0, 0.0, 1.0, 0.3});
    double c = certify_single_well(p).min_value;
    for (int m : {1, 2, 4}) {
        EquivariantSpectrum s = equivariant_spectrum(p, m, 1024, 80.0);
        for (double lambda : s.eigenvalues) CHECK(lambda >= m * m * c - 1e-9);
    }
}

TEST_CASE("spectra for m and -m coincide exactly") {
    MetricProfile p = make_perturbed_well({0.0, 0.0, 1.0, 0.3});
    EquivariantSpectrum a = equivariant_spectrum(p, 3, 512, 60.0);
    EquivariantSpectrum b = equivariant_spectrum(p, -3, 512, 60.0);
    REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
        CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
}

TEST_CASE("eigenvalues increase with the weight (min-max)") {
    MetricProfile p = make_round_sphere();
    EquivariantSpectrum s1 = equivariant_spectrum(p, 1, 512, 60.0);
    EquivariantSpectrum s2 = equivariant_spectrum(p, 2, 512, 60.0);
    std::size_t n = std::min(s1.eigenvalues.size(), s2.eigenvalues.size());
    for (std::size_t i = 0; i < n; ++i)
        CHECK(s2.eigenvalues[i] > s1.eigenvalues[i]);
}

TEST_CASE("grid convergence order at least 1.8 on the fundamental") {
    MetricProfile p = make_round_sphere();
    double e_coarse = 0, e_fine = 0;
    {
        EquivariantSpectrum s = equivariant_spectrum(p, 0, 512, 10.0);
        e_coarse = std::abs(s.eigenvalues[1] - 2.0);
    }
    {
        EquivariantSpectrum s = equivariant_spectrum(p, 0, 1024, 10.0);
        e_fine = std::abs(s.eigenvalues[1] - 2.0);
    }
    double order = std::log(e_coarse / e_fine) / std::log(2.0);
    CHECK(order >= 1.8);
}

TEST_CASE("truncation guard") {
    MetricProfile p = make_round_sphere();
    CHECK_THROWS_AS(equivariant_spectrum(p, 0, 64, 1e4), TruncatedSpectrumError);
}
