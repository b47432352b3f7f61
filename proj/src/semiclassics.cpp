#include "specwell/semiclassics.hpp"
#include "specwell/errors.hpp"

namespace specwell {

namespace {

using E = SymbolicExpr;

/// (d/dx + i t W') applied to a t-polynomial, where W' is the x-derivative of
/// the symbol.
TPolynomial apply_transport(const TPolynomial& b) {
    static const SymbolicExpr i_wprime = E::imaginary_unit() * symbol_x_derivative();
    return b.dx() + b.scaled(i_wprime, 1);
}

} // namespace

SymbolicExpr symbol_x_derivative() {
    // v' (alpha^2 - xi^2 / v^2)
    E alpha = E::alpha(), xi = E::xi(), v = E::vjet(0), v1 = E::vjet(1);
    return v1 * (alpha.pow(2) - xi.pow(2) * v.pow(-2));
}

BRecursion::BRecursion(int max_order) : max_order_(max_order) {
    if (max_order < 0) throw ConfigError("BRecursion: negative max order");
    cache_.push_back(TPolynomial::constant(E::integer(1))); // b_0 = 1
}

const TPolynomial& BRecursion::order(int k) {
    if (k < 0 || k > max_order_)
        throw ConfigError("BRecursion: order outside the configured range");
    E xi = E::xi();
    E inv_v = E::vjet(0).pow(-1);
    while (static_cast<int>(cache_.size()) <= k) {
        int m = static_cast<int>(cache_.size());
        // db_m/dt = (2 xi / v) T b_{m-1} - (i / v) T^2 b_{m-2},
        // with T = d/dx + i t W'; the second term is absent for m = 1.
        TPolynomial dbdt =
            apply_transport(cache_[m - 1]).scaled(E::integer(2) * xi * inv_v);
        if (m >= 2) {
            TPolynomial second = apply_transport(apply_transport(cache_[m - 2]));
            dbdt = dbdt + second.scaled(-(E::imaginary_unit() * inv_v));
        }
        cache_.push_back(dbdt.integrate_t());
    }
    return cache_[k];
}

ExpansionTerm assemble_term(BRecursion& recursion, int k) {
    const TPolynomial& b = recursion.order(k);
    ExpansionTerm term;
    term.order = k;
    if (k == 0) {
        term.pieces.push_back({0, E::integer(1), false});
        return term;
    }
    for (const auto& [l, coeff] : b.coefficients()) {
        ExpansionTerm::Piece piece;
        piece.derivative_order = l;
        // (1/i)^l = i^(3l) after folding i^2 = -1.
        piece.integrand = E::rational(1, 1, 3 * l) * coeff;
        piece.zero_by_parity = piece.integrand.odd_in_xi();
        if (!piece.zero_by_parity && !piece.integrand.is_real())
            throw NumericalError(
                "assemble_term: non-parity integrand with imaginary part");
        term.pieces.push_back(std::move(piece));
    }
    return term;
}

} // namespace specwell
