#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specwell/profiles.hpp"
#include "specwell/symbolic.hpp"

#include <cmath>
#include <random>

using namespace specwell;
using E = SymbolicExpr;

namespace {

/// Random expression tree of bounded depth over the atom set, built from
/// +, *, and small integer powers.
E random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 6);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<int> jet(0, 2);
    if (depth == 0) {
        switch (pick(rng) % 5) {
            case 0: return E::alpha();
            case 1: return E::xi();
            case 2: return E::vjet(jet(rng));
            case 3: return E::rational(small(rng), 1 + std::abs(small(rng)));
            default: return E::imaginary_unit();
        }
    }
    E a = random_expr(rng, depth - 1);
    E b = random_expr(rng, depth - 1);
    switch (pick(rng) % 3) {
        case 0: return a + b;
        case 1: return a * b;
        default: return a * a; // even power keeps sizes moderate
    }
}

SymAssignment random_assignment(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.3, 1.7);
    SymAssignment a;
    a.alpha = u(rng);
    a.xi = u(rng);
    a.vjets = {u(rng), u(rng), u(rng), u(rng)};
    return a;
}

} // namespace

TEST_CASE("formal x-derivative basics") {
    E v = E::vjet(0), v1 = E::vjet(1), xi = E::xi(), alpha = E::alpha();
    CHECK(d_dx(v * v) == E::integer(2) * v * v1);
    CHECK(d_dx(xi * alpha).is_zero());
    // d/dx (xi^2 v^-2) = -2 xi^2 v' v^-3
    CHECK(d_dx(xi.pow(2) * v.pow(-2)) ==
          E::integer(-2) * xi.pow(2) * v1 * v.pow(-3));
}

TEST_CASE("formal xi-derivative basics") {
    E v = E::vjet(0), v1 = E::vjet(1), xi = E::xi();
    CHECK(d_dxi(xi.pow(2)) == E::integer(2) * xi);
    CHECK(d_dxi(v1).is_zero());
    CHECK(d_dxi(xi.pow(3) * v.pow(-1)) == E::integer(3) * xi.pow(2) * v.pow(-1));
}

TEST_CASE("canonical simplification") {
    E v = E::vjet(0), xi = E::xi(), i = E::imaginary_unit();
    CHECK(i * i * xi == -xi);
    CHECK(xi * v + v * xi == E::integer(2) * xi * v);
    CHECK((xi + v) * (xi - v) == xi.pow(2) - v.pow(2));
}

TEST_CASE("canonical form is idempotent and deterministic") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        E e = random_expr(rng, 4);
        CHECK(canon(e) == e);
        CHECK(pretty(canon(e)) == pretty(e));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        E a = random_expr(rng, 3);
        E b = random_expr(rng, 3);
        SymAssignment at = random_assignment(rng);
        auto sum = eval(a + b, at);
        auto prod = eval(a * b, at);
        auto ea = eval(a, at), eb = eval(b, at);
        CHECK(std::abs(sum - (ea + eb)) <= 1e-9 * (1 + std::abs(ea) + std::abs(eb)));
        CHECK(std::abs(prod - ea * eb) <=
              1e-9 * (1 + std::abs(ea) * std::abs(eb) + std::abs(prod)));
    }
}

TEST_CASE("canonical equality implies numeric agreement") {
    std::mt19937_64 rng(99);
    E v = E::vjet(0), xi = E::xi(), alpha = E::alpha();
    // Two different constructions of the same polynomial.
    E left = (xi + alpha * v).pow(2);
    E right = xi.pow(2) + E::integer(2) * xi * alpha * v + alpha.pow(2) * v.pow(2);
    REQUIRE(left == right);
    for (int trial = 0; trial < 100; ++trial) {
        SymAssignment at = random_assignment(rng);
        CHECK(std::abs(eval(left, at) - eval(right, at)) <=
              1e-10 * (1 + std::abs(eval(left, at))));
    }
}

TEST_CASE("x- and xi-derivatives commute on random trees") {
    std::mt19937_64 rng(123456);
    for (int trial = 0; trial < 60; ++trial) {
        E e = random_expr(rng, 5);
        CHECK(d_dx(d_dxi(e)) == d_dxi(d_dx(e)));
    }
}

TEST_CASE("eval of d_dx matches central differences along a profile") {
    MetricProfile p = make_perturbed_well({0.0, 0.0, 1.0, 0.3});
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(-0.6, 0.6);
    E v = E::vjet(0), v1 = E::vjet(1), xi = E::xi(), alpha = E::alpha();
    std::vector<E> exprs = {
        v.pow(2) * xi,
        v1 * (alpha.pow(2) - xi.pow(2) * v.pow(-2)),
        v.pow(-1) * xi.pow(2) + alpha.pow(2) * v,
    };
    auto assign = [&](double x) {
        SymAssignment a;
        a.alpha = 1.3;
        a.xi = 0.7;
        a.vjets = {p.v(x), p.v1(x), p.v2(x), p.v3(x)};
        return a;
    };
    const double h = 1e-4;
    for (const E& e : exprs) {
        for (int trial = 0; trial < 5; ++trial) {
            double x = ux(rng);
            double fd = (eval(e, assign(x + h)).real() - eval(e, assign(x - h)).real()) / (2 * h);
            double sym = eval(d_dx(e), assign(x)).real();
            CHECK(std::abs(fd - sym) <= 1e-6 * std::max(1.0, std::abs(sym)));
        }
    }
}

TEST_CASE("no floating point constants: rational arithmetic stays exact") {
    // 1/3 + 1/6 = 1/2 exactly, and (1/3)*3 = 1.
    E third = E::rational(1, 3), sixth = E::rational(1, 6);
    CHECK(third + sixth == E::rational(1, 2));
    CHECK(third * E::integer(3) == E::integer(1));
}

TEST_CASE("pretty printer emits deterministic ascii") {
    E v = E::vjet(0), v1 = E::vjet(1), xi = E::xi(), alpha = E::alpha();
    E e = -(v1 * xi * v.pow(-1)) * (alpha.pow(2) - xi.pow(2) * v.pow(-2));
    CHECK(pretty(e) == "-1*alpha^2*xi*v0^-1*v1 + 1*xi^3*v0^-3*v1");
}

TEST_CASE("t-polynomial bookkeeping") {
    TPolynomial p = TPolynomial::constant(E::integer(1));
    TPolynomial shifted = p.scaled(E::xi(), 2);
    CHECK(shifted.coefficient(2) == E::xi());
    TPolynomial integrated = shifted.integrate_t();
    CHECK(integrated.coefficient(3) == E::rational(1, 3) * E::xi());
    CHECK(integrated.coefficient(0).is_zero());
}
