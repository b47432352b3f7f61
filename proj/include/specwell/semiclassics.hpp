#pragma once

#include "specwell/symbolic.hpp"

#include <vector>

namespace specwell {

/// Coefficient functions b_k(x, xi, t) of the hbar-expansion of the
/// equivariant spectral measure, computed by the first/second derivative
/// recursion with symbol xi^2/v + alpha^2 v. Results are cached per order.
class BRecursion {
public:
    explicit BRecursion(int max_order = 4);

    /// b_k as a polynomial in t. k = 0 gives the constant 1; for k >= 1 the
    /// t = 0 value is zero and the t-degree is at most 2k.
    const TPolynomial& order(int k);

    int max_order() const { return max_order_; }

private:
    int max_order_;
    std::vector<TPolynomial> cache_;
};

/// One hbar-order of the expansion: the list of integrands per derivative
/// order l, i.e. the expansion term is sum_l integral of
/// integrand_l * rho^(l)(tau) dx dxi with tau = xi^2/v + alpha^2 v.
struct ExpansionTerm {
    struct Piece {
        int derivative_order = 0;   // l
        SymbolicExpr integrand;     // b_{k,l} * (1/i)^l, canonical
        bool zero_by_parity = false; // odd in xi, integrates to zero over xi
    };
    int order = 0; // k
    std::vector<Piece> pieces;
};

/// Multiplies each b_{k,l} by (1/i)^l and flags odd-in-xi integrands. Even
/// orders produce purely real integrands; odd orders produce imaginary
/// integrands that vanish by parity.
ExpansionTerm assemble_term(BRecursion& recursion, int k);

/// The fixed symbol derivative v'(alpha^2 - xi^2/v^2) used by the recursion.
SymbolicExpr symbol_x_derivative();

} // namespace specwell
