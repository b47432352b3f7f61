#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specwell/semiclassics.hpp"

using namespace specwell;
using E = SymbolicExpr;

namespace {

E sym_alpha() { return E::alpha(); }
E sym_xi() { return E::xi(); }
E sym_v() { return E::vjet(0); }
E sym_v1() { return E::vjet(1); }
E sym_v2() { return E::vjet(2); }

/// W' = v'(alpha^2 - xi^2/v^2), the x-derivative of the symbol.
E wprime() {
    return sym_v1() * (sym_alpha().pow(2) - sym_xi().pow(2) * sym_v().pow(-2));
}

} // namespace

TEST_CASE("order zero is the constant 1") {
    BRecursion rec;
    const TPolynomial& b0 = rec.order(0);
    CHECK(b0.coefficient(0) == E::integer(1));
    CHECK(b0.degree() == 0);
}

TEST_CASE("order one matches the closed form") {
    BRecursion rec;
    const TPolynomial& b1 = rec.order(1);
    CHECK(b1.coefficient(0).is_zero());
    CHECK(b1.coefficient(1).is_zero());
    // b_{1,2} = -(v' xi / (v i)) (alpha^2 - xi^2/v^2) = i xi W' / v
    E expected = E::imaginary_unit() * sym_xi() * sym_v().pow(-1) * wprime();
    CHECK(b1.coefficient(2) == expected);
    CHECK(b1.degree() == 2);
}

TEST_CASE("order two matches the closed form") {
    BRecursion rec;
    const TPolynomial& b2 = rec.order(2);

    // t^2 coefficient: (1/2v) (W')'
    E t2 = E::rational(1, 2) * sym_v().pow(-1) * d_dx(wprime());
    CHECK(b2.coefficient(2) == t2);

    // t^3 coefficient: (i/3) [ (v')^2/v (alpha^2-xi^2/v^2)^2
    //                          + (2 xi^2 / v)((v'/v)(alpha^2-xi^2/v^2))' ]
    E w = sym_alpha().pow(2) - sym_xi().pow(2) * sym_v().pow(-2);
    E t3 = E::rational(1, 3) * E::imaginary_unit() *
           (sym_v1().pow(2) * sym_v().pow(-1) * w.pow(2) +
            E::integer(2) * sym_xi().pow(2) * sym_v().pow(-1) *
                d_dx(sym_v1() * sym_v().pow(-1) * w));
    CHECK(b2.coefficient(3) == t3);

    // t^4 coefficient: -(v')^2 xi^2 / (2 v^2) (alpha^2-xi^2/v^2)^2
    E t4 = E::rational(-1, 2) * sym_v1().pow(2) * sym_xi().pow(2) *
           sym_v().pow(-2) * w.pow(2);
    CHECK(b2.coefficient(4) == t4);

    CHECK(b2.coefficient(0).is_zero());
    CHECK(b2.coefficient(1).is_zero());
    CHECK(b2.degree() == 4);
}

TEST_CASE("degree bound and vanishing at t=0 for k <= 4") {
    BRecursion rec(4);
    for (int k = 1; k <= 4; ++k) {
        const TPolynomial& b = rec.order(k);
        CHECK(b.degree() <= 2 * k);
        CHECK(b.coefficient(0).is_zero());
    }
}

TEST_CASE("parity pattern of the computed coefficients") {
    // Observed pattern on all computed orders: the xi-parity of b_{k,l}
    // equals the parity of k, and the i-power parity equals that of l+k.
    BRecursion rec(4);
    for (int k = 1; k <= 4; ++k) {
        const TPolynomial& b = rec.order(k);
        for (const auto& [l, coeff] : b.coefficients()) {
            bool xi_even = coeff.even_in_xi();
            bool xi_odd = coeff.odd_in_xi();
            REQUIRE((xi_even || xi_odd)); // pure parity, never mixed
            CHECK(xi_odd == (k % 2 == 1));
            for (const auto& mono : coeff.monomials())
                CHECK(mono.coeff.ipow == (l + k) % 2);
        }
    }
}

TEST_CASE("assembled order 0: the plain area integrand") {
    BRecursion rec;
    ExpansionTerm t0 = assemble_term(rec, 0);
    REQUIRE(t0.pieces.size() == 1);
    CHECK(t0.pieces[0].derivative_order == 0);
    CHECK(t0.pieces[0].integrand == E::integer(1));
    CHECK_FALSE(t0.pieces[0].zero_by_parity);
}

TEST_CASE("assembled order 1 vanishes by parity") {
    BRecursion rec;
    ExpansionTerm t1 = assemble_term(rec, 1);
    REQUIRE(!t1.pieces.empty());
    for (const auto& piece : t1.pieces) {
        CHECK(piece.zero_by_parity);
        CHECK(piece.integrand.odd_in_xi());
    }
}

TEST_CASE("assembled order 2 reproduces the second invariant term by term") {
    BRecursion rec;
    ExpansionTerm t2 = assemble_term(rec, 2);
    REQUIRE(t2.pieces.size() == 3);

    E v = sym_v(), v1 = sym_v1(), v2 = sym_v2(), xi = sym_xi(), alpha = sym_alpha();
    E w = alpha.pow(2) - xi.pow(2) * v.pow(-2);

    // rho^(2) integrand: (1/2v)[xi^2 (v2/v^2 - 2 v1^2/v^3) - alpha^2 v2]
    E inv2_l2 = E::rational(1, 2) * v.pow(-1) *
                (xi.pow(2) * (v2 * v.pow(-2) - E::integer(2) * v1.pow(2) * v.pow(-3)) -
                 alpha.pow(2) * v2);

    // rho^(3) integrand: -(2 xi^2/3v)[xi^2(3v1^2/v^4 - v2/v^3)
    //                     + alpha^2(v2/v - v1^2/v^2)] - (v1^2/3v) w^2
    E inv2_l3 =
        E::rational(-2, 3) * xi.pow(2) * v.pow(-1) *
            (xi.pow(2) * (E::integer(3) * v1.pow(2) * v.pow(-4) - v2 * v.pow(-3)) +
             alpha.pow(2) * (v2 * v.pow(-1) - v1.pow(2) * v.pow(-2))) -
        E::rational(1, 3) * v1.pow(2) * v.pow(-1) * w.pow(2);

    // rho^(4) integrand: -(xi^2 v1^2 / 2v^2) w^2
    E inv2_l4 = E::rational(-1, 2) * xi.pow(2) * v1.pow(2) * v.pow(-2) * w.pow(2);

    for (const auto& piece : t2.pieces) {
        CHECK(piece.integrand.is_real());
        CHECK_FALSE(piece.zero_by_parity);
        if (piece.derivative_order == 2) CHECK(piece.integrand == inv2_l2);
        else if (piece.derivative_order == 3) CHECK(piece.integrand == inv2_l3);
        else if (piece.derivative_order == 4) CHECK(piece.integrand == inv2_l4);
        else FAIL("unexpected derivative order in the order-2 term");
    }
}
