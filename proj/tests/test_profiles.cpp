#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specwell/errors.hpp"
#include "specwell/profiles.hpp"

#include <cmath>
#include <vector>

using namespace specwell;

namespace {

/// Central-difference slope of v at x with step h.
double fd1(const MetricProfile& p, double x, double h) {
    return (p.v(x + h) - p.v(x - h)) / (2 * h);
}

} // namespace

TEST_CASE("round sphere closed forms") {
    MetricProfile p = make_round_sphere();
    CHECK(p.v(0.0) == doctest::Approx(1.0));
    CHECK(p.v(0.5) == doctest::Approx(4.0 / 3));
    CHECK(p.v1(0.5) == doctest::Approx(16.0 / 9));
    double x = 0.999;
    CHECK((1 - x * x) * p.v(x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.pole_regular());
}

TEST_CASE("perturbed well values and linear-term rejection") {
    MetricProfile p = make_perturbed_well({0.0, 0.0, 1.0}); // P = x^2
    CHECK(p.v(0.0) == doctest::Approx(1.0));
    CHECK(p.v2(0.0) == doctest::Approx(4.0)); // 2 from the pole term + 2 from P
    CHECK_THROWS_AS(make_perturbed_well({0.0, 0.5}), ConfigError);
    CHECK(make_perturbed_well({}).v(0.3) == doctest::Approx(make_round_sphere().v(0.3)));
}

TEST_CASE("derivative evaluators agree with finite differences at order >= 1.8") {
    std::vector<MetricProfile> profiles = {
        make_round_sphere(), make_perturbed_well({0.0, 0.0, 1.0, 0.3})};
    for (const auto& p : profiles) {
        for (double x : {-0.7, -0.2, 0.35, 0.8}) {
            double h1 = 1e-3, h2 = 5e-4;
            double e1 = std::abs(fd1(p, x, h1) - p.v1(x));
            double e2 = std::abs(fd1(p, x, h2) - p.v1(x));
            REQUIRE(e2 > 0);
            double order = std::log(e1 / e2) / std::log(h1 / h2);
            CHECK(order >= 1.8);
        }
    }
}

TEST_CASE("single-well certification on the round sphere") {
    MetricProfile p = make_round_sphere();
    for (std::size_t grid : {16u, 64u, 1024u, 10000u}) {
        SingleWellCertificate cert = certify_single_well(p, grid);
        CHECK(cert.min_value == doctest::Approx(1.0));
        CHECK(cert.curvature == doctest::Approx(2.0));
        CHECK(cert.grid_size == grid);
    }
}

TEST_CASE("asymmetric well passes on a dense grid, c from the minimum") {
    MetricProfile p = make_perturbed_well({0.0, 0.0, 1.0, 0.3});
    SingleWellCertificate cert = certify_single_well(p, 10000);
    CHECK(cert.min_value == doctest::Approx(1.0));
    CHECK(cert.curvature == doctest::Approx(4.0));
}

TEST_CASE("degenerate minimum is rejected") {
    MetricProfile p = make_perturbed_well({0.0, 0.0, -3.0}); // v''(0) = 2 - 6 < 0
    CHECK_THROWS_AS(certify_single_well(p), DegenerateMinimumError);
}

TEST_CASE("interior double dip is rejected as multi-well") {
    // v = 1/(1-x^2) + x^2 - 8 x^4: positive curvature at 0 but v' changes
    // sign on (0.39, 0.83).
    MetricProfile p = make_perturbed_well({0.0, 0.0, 1.0, 0.0, -8.0});
    CHECK_THROWS_AS(certify_single_well(p), MultiWellError);
}

TEST_CASE("mirrored cubic perturbations certify with the same minimum") {
    MetricProfile plus = make_perturbed_well({0.0, 0.0, 1.0, 0.3});
    MetricProfile minus = make_perturbed_well({0.0, 0.0, 1.0, -0.3});
    SingleWellCertificate a = certify_single_well(plus, 10000);
    SingleWellCertificate b = certify_single_well(minus, 10000);
    CHECK(a.min_value == doctest::Approx(b.min_value).epsilon(1e-14));
    CHECK(a.curvature == doctest::Approx(b.curvature).epsilon(1e-14));
}

TEST_CASE("pole regularity detection") {
    CHECK(make_perturbed_well({0.0, 0.0, 1.0, 0.3}).pole_regular());
    // v = 1 + x^2 as a tabulated profile: no pole blow-up, not regular.
    std::vector<double> x, v;
    for (int i = 0; i <= 200; ++i) {
        double t = -0.999999 + 2 * 0.999999 * i / 200.0;
        x.push_back(t);
        v.push_back(1 + t * t);
    }
    MetricProfile tab = MetricProfile::tabulated(x, v);
    CHECK_FALSE(tab.pole_regular());
}

TEST_CASE("tabulated profile evaluates through the spline") {
    std::vector<double> x, v;
    MetricProfile truth = make_perturbed_well({0.0, 0.0, 1.0});
    for (int i = 0; i <= 400; ++i) {
        double t = -0.9 + 1.8 * i / 400.0;
        x.push_back(t);
        v.push_back(truth.v(t));
    }
    MetricProfile tab = MetricProfile::tabulated(x, v);
    CHECK(tab.x_limit() == doctest::Approx(0.9));
    CHECK(tab.v(0.41) == doctest::Approx(truth.v(0.41)).epsilon(1e-8));
    CHECK(tab.v1(0.41) == doctest::Approx(truth.v1(0.41)).epsilon(1e-5));
    SingleWellCertificate cert = certify_single_well(tab, 4096, 0.88);
    CHECK(cert.min_value == doctest::Approx(1.0).epsilon(1e-9));
}
