#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace specwell {

// ---------------------------------------------------------------------------
// Expression atoms: the weight alpha, the fiber variable xi, and the jet of v.
// Deterministic ordering: alpha < xi < v0 < v1 < ...
// ---------------------------------------------------------------------------

struct SymAtom {
    enum Kind : int { Alpha = 0, Xi = 1, VJet = 2 };
    Kind kind = Alpha;
    int jet = 0; // derivative order, only for VJet

    friend bool operator==(const SymAtom& a, const SymAtom& b) {
        return a.kind == b.kind && (a.kind != VJet || a.jet == b.jet);
    }
    friend bool operator<(const SymAtom& a, const SymAtom& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.kind == VJet && a.jet < b.jet;
    }
};

/// Exact rational with an attached power of the imaginary unit, normalized so
/// the stored power is 0 or 1 (i^2 = -1 folds into the sign).
struct SymCoeff {
    std::int64_t num = 0;
    std::int64_t den = 1;
    int ipow = 0; // 0 or 1 after normalization

    bool is_zero() const { return num == 0; }
};

/// One Laurent monomial: coeff * prod atom^exponent (exponents may be
/// negative integers, never zero).
struct SymMonomial {
    SymCoeff coeff;
    std::vector<std::pair<SymAtom, int>> factors; // sorted by atom

    int xi_degree() const;
};

// ---------------------------------------------------------------------------
// Expression trees
// ---------------------------------------------------------------------------

/// Immutable expression over {rationals * i^p, alpha, xi, v^(j)} closed under
/// +, *, integer powers. Canonical form is a flat sum of Laurent monomials
/// with merged coefficients and deterministic ordering.
class SymbolicExpr {
public:
    SymbolicExpr() = default; // zero

    static SymbolicExpr rational(std::int64_t num, std::int64_t den = 1, int ipow = 0);
    static SymbolicExpr integer(std::int64_t n) { return rational(n, 1, 0); }
    static SymbolicExpr imaginary_unit() { return rational(1, 1, 1); }
    static SymbolicExpr alpha();
    static SymbolicExpr xi();
    static SymbolicExpr vjet(int derivative_order);

    bool is_zero() const { return monomials_.empty(); }
    const std::vector<SymMonomial>& monomials() const { return monomials_; }

    /// True when every monomial carries i^0 (purely real coefficients).
    bool is_real() const;
    /// True when every monomial has odd total degree in xi.
    bool odd_in_xi() const;
    /// True when every monomial has even total degree in xi.
    bool even_in_xi() const;

    friend SymbolicExpr operator+(const SymbolicExpr& a, const SymbolicExpr& b);
    friend SymbolicExpr operator-(const SymbolicExpr& a, const SymbolicExpr& b);
    friend SymbolicExpr operator*(const SymbolicExpr& a, const SymbolicExpr& b);
    friend SymbolicExpr operator-(const SymbolicExpr& a);
    friend bool operator==(const SymbolicExpr& a, const SymbolicExpr& b);
    friend bool operator!=(const SymbolicExpr& a, const SymbolicExpr& b) { return !(a == b); }

    /// Integer power; negative exponents require a single-monomial base.
    SymbolicExpr pow(int exponent) const;

private:
    // Always stored canonically: sorted, merged, zero-free.
    std::vector<SymMonomial> monomials_;
    friend SymbolicExpr canon_monomials(std::vector<SymMonomial> monos);
};

/// Canonicalization is the identity for SymbolicExpr values (they are kept
/// canonical); exposed for building expressions from raw monomial lists and
/// for the idempotence property test.
SymbolicExpr canon(const SymbolicExpr& e);

/// Formal x-derivative: v^(j) -> v^(j+1) by the chain rule, alpha and xi are
/// constants.
SymbolicExpr d_dx(const SymbolicExpr& e);

/// Formal xi-derivative.
SymbolicExpr d_dxi(const SymbolicExpr& e);

/// Numeric assignment for evaluation: alpha, xi, and the v-jet values.
struct SymAssignment {
    double alpha = 0.0;
    double xi = 0.0;
    std::vector<double> vjets; // vjets[j] = v^(j)
};

std::complex<double> eval(const SymbolicExpr& e, const SymAssignment& a);

/// Real part of eval; throws if the expression has imaginary monomials.
double eval_real(const SymbolicExpr& e, const SymAssignment& a);

/// Deterministic ASCII rendering of the canonical form, e.g.
/// "-1/3*i*alpha^2*xi*v0^-1*v1".
std::string pretty(const SymbolicExpr& e);

// ---------------------------------------------------------------------------
// Polynomials in the auxiliary variable t with symbolic coefficients
// ---------------------------------------------------------------------------

/// b(x, xi, t) = sum_l coeff_l(x, xi) t^l with canonical symbolic coefficients.
class TPolynomial {
public:
    TPolynomial() = default;

    static TPolynomial constant(SymbolicExpr e);

    const std::map<int, SymbolicExpr>& coefficients() const { return coeffs_; }
    SymbolicExpr coefficient(int l) const;
    int degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
    bool is_zero() const { return coeffs_.empty(); }

    void set_coefficient(int l, SymbolicExpr e);

    TPolynomial operator+(const TPolynomial& other) const;
    /// Multiply by expr * t^shift.
    TPolynomial scaled(const SymbolicExpr& factor, int t_shift = 0) const;
    /// Coefficient-wise x-derivative.
    TPolynomial dx() const;
    /// Antiderivative in t with value 0 at t = 0.
    TPolynomial integrate_t() const;

private:
    std::map<int, SymbolicExpr> coeffs_; // zero coefficients are not stored
};

} // namespace specwell
