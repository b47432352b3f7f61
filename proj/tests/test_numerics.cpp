#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specwell/numerics.hpp"
#include "specwell/errors.hpp"

#include <cmath>
#include <vector>

using namespace specwell;

TEST_CASE("adaptive quadrature on basics") {
    CHECK(integrate([](double x) { return x * x; }, 0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    // Kinks are fine for the adaptive rule.
    CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0, 1) ==
          doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-10));
    // Endpoint square roots are handled once substituted away, which is how
    // the region integrals use the rule.
    CHECK(integrate([](double t) { return 2 * t * t; }, 0, 1) ==
          doctest::Approx(integrate([](double x) { return std::sqrt(x); }, 1e-300, 1))
              .epsilon(1e-8));
}

TEST_CASE("bisection root and predicate") {
    double r = bisect_root([](double x) { return x * x - 2; }, 0, 2);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    double t = bisect_predicate([](double x) { return x > 0.3; }, 0, 1);
    CHECK(t == doctest::Approx(0.3).epsilon(1e-10));
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1; }, 0, 1), RootBracketError);
}

TEST_CASE("pchip interpolates monotone data monotonically") {
    std::vector<double> x = {0, 1, 2, 3, 4, 5};
    std::vector<double> y = {0, 0.1, 0.5, 2.0, 2.05, 4.0};
    Pchip f(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(f(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
    double prev = f(0.0);
    for (double t = 0.01; t <= 5.0; t += 0.01) {
        double cur = f(t);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
    // derivative consistency with finite differences
    for (double t : {0.4, 1.7, 3.3, 4.6}) {
        double fd = (f(t + 1e-6) - f(t - 1e-6)) / 2e-6;
        CHECK(f.derivative(t) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("cubic spline reproduces smooth functions and derivatives") {
    std::vector<double> x, y;
    for (int i = 0; i <= 60; ++i) {
        double t = -1.0 + 2.0 * i / 60.0;
        x.push_back(t);
        y.push_back(std::exp(t));
    }
    CubicSpline s(x, y);
    for (double t : {-0.73, -0.2, 0.31, 0.77}) {
        CHECK(s(t) == doctest::Approx(std::exp(t)).epsilon(1e-6));
        CHECK(s.derivative(t) == doctest::Approx(std::exp(t)).epsilon(1e-4));
        CHECK(s.derivative2(t) == doctest::Approx(std::exp(t)).epsilon(2e-2));
    }
}

TEST_CASE("dense solve and least squares") {
    auto x = solve_dense({2, 1, 1, 3}, {3, 5});
    CHECK(x[0] == doctest::Approx(0.8));
    CHECK(x[1] == doctest::Approx(1.4));

    std::vector<double> xs, ys;
    for (int i = 0; i < 40; ++i) {
        double t = 0.1 + 0.05 * i;
        xs.push_back(t);
        ys.push_back(2.5 - 1.25 * t);
    }
    auto [a, b] = fit_line(xs, ys);
    CHECK(a == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(b == doctest::Approx(-1.25).epsilon(1e-10));
}

TEST_CASE("savgol second derivative of a smooth sample") {
    std::vector<double> u;
    double h = 1e-3;
    for (int i = 0; i <= 2000; ++i) {
        double t = i * h;
        u.push_back(std::sin(3 * t));
    }
    SavGolResult r = savgol_second_derivative(u, h, 3);
    for (int i = 50; i <= 1950; i += 170) {
        double t = i * h;
        CHECK(r.second_derivative[i] == doctest::Approx(-9 * std::sin(3 * t)).epsilon(1e-4));
    }
    CHECK(r.max_fit_residual < 1e-6);
}

TEST_CASE("fourth order first derivative") {
    std::vector<double> u;
    double h = 1e-2;
    for (int i = 0; i <= 300; ++i) u.push_back(std::cos(2 * i * h));
    auto d = fd_derivative(u, h);
    for (int i : {0, 1, 77, 150, 299, 300})
        CHECK(d[i] == doctest::Approx(-2 * std::sin(2 * i * h)).epsilon(1e-6));
}

TEST_CASE("tridiagonal eigenvalues: discrete laplacian oracle") {
    // -u'' on (0,1), Dirichlet, n interior points: exact discrete eigenvalues
    // (4/h^2) sin^2(k pi h / 2).
    const int n = 200;
    const double h = 1.0 / (n + 1);
    std::vector<double> diag(n, 2.0 / (h * h)), off(n - 1, -1.0 / (h * h));
    auto eig = tridiag_eigenvalues_below(diag, off, 1e5);
    REQUIRE(eig.size() >= 10);
    for (int k = 1; k <= 10; ++k) {
        double exact = 4.0 / (h * h) * std::pow(std::sin(k * M_PI * h / 2), 2);
        CHECK(eig[k - 1] == doctest::Approx(exact).epsilon(1e-11));
    }
    CHECK(tridiag_count_below(diag, off, eig[4] + 1e-6) == 5);
}

TEST_CASE("parallel map is deterministic across degrees") {
    auto job = [](std::size_t i) {
        double acc = 0;
        for (int k = 0; k < 1000; ++k) acc += std::sin(0.001 * k * (i + 1));
        return acc;
    };
    auto serial = parallel_map<double>(32, 1, job);
    auto parallel = parallel_map<double>(32, 7, job);
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}
