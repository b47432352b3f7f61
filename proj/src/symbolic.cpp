#include "specwell/symbolic.hpp"
#include "specwell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace specwell {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw NumericalError("symbolic: rational overflow");
    return static_cast<std::int64_t>(p);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN)
        throw NumericalError("symbolic: rational overflow");
    return static_cast<std::int64_t>(s);
}

SymCoeff normalize(std::int64_t num, std::int64_t den, int ipow) {
    if (den == 0) throw NumericalError("symbolic: zero denominator");
    if (num == 0) return {0, 1, 0};
    if (den < 0) {
        num = -num;
        den = -den;
    }
    // Fold i^2 = -1 so the stored power is 0 or 1.
    ipow = ((ipow % 4) + 4) % 4;
    if (ipow >= 2) {
        num = -num;
        ipow -= 2;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g, ipow};
}

SymCoeff mul(const SymCoeff& a, const SymCoeff& b) {
    return normalize(checked_mul(a.num, b.num), checked_mul(a.den, b.den),
                     a.ipow + b.ipow);
}

/// Addition only for coefficients with equal ipow.
SymCoeff add_same_ipow(const SymCoeff& a, const SymCoeff& b) {
    std::int64_t num = checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den));
    return normalize(num, checked_mul(a.den, b.den), a.ipow);
}

bool factors_less(const std::vector<std::pair<SymAtom, int>>& a,
                  const std::vector<std::pair<SymAtom, int>>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].first < b[i].first) return true;
        if (b[i].first < a[i].first) return false;
        if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() < b.size();
}

/// Ordering key for monomials: factors first, then ipow.
bool mono_less(const SymMonomial& a, const SymMonomial& b) {
    if (a.factors != b.factors) return factors_less(a.factors, b.factors);
    return a.coeff.ipow < b.coeff.ipow;
}

bool same_key(const SymMonomial& a, const SymMonomial& b) {
    return a.factors == b.factors && a.coeff.ipow == b.coeff.ipow;
}

SymMonomial mono_product(const SymMonomial& a, const SymMonomial& b) {
    SymMonomial out;
    out.coeff = mul(a.coeff, b.coeff);
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        if (a.factors[i].first == b.factors[j].first) {
            int e = a.factors[i].second + b.factors[j].second;
            if (e != 0) out.factors.emplace_back(a.factors[i].first, e);
            ++i;
            ++j;
        } else if (a.factors[i].first < b.factors[j].first) {
            out.factors.push_back(a.factors[i++]);
        } else {
            out.factors.push_back(b.factors[j++]);
        }
    }
    while (i < a.factors.size()) out.factors.push_back(a.factors[i++]);
    while (j < b.factors.size()) out.factors.push_back(b.factors[j++]);
    return out;
}

} // namespace

int SymMonomial::xi_degree() const {
    for (const auto& [atom, exp] : factors)
        if (atom.kind == SymAtom::Xi) return exp;
    return 0;
}

SymbolicExpr canon_monomials(std::vector<SymMonomial> monos) {
    std::sort(monos.begin(), monos.end(), mono_less);
    SymbolicExpr out;
    for (auto& m : monos) {
        if (m.coeff.is_zero()) continue;
        if (!out.monomials_.empty() && same_key(out.monomials_.back(), m)) {
            out.monomials_.back().coeff =
                add_same_ipow(out.monomials_.back().coeff, m.coeff);
            if (out.monomials_.back().coeff.is_zero()) out.monomials_.pop_back();
        } else {
            out.monomials_.push_back(std::move(m));
        }
    }
    return out;
}

SymbolicExpr SymbolicExpr::rational(std::int64_t num, std::int64_t den, int ipow) {
    SymMonomial m;
    m.coeff = normalize(num, den, ipow);
    return canon_monomials({m});
}

SymbolicExpr SymbolicExpr::alpha() {
    SymMonomial m;
    m.coeff = normalize(1, 1, 0);
    m.factors = {{SymAtom{SymAtom::Alpha, 0}, 1}};
    return canon_monomials({m});
}

SymbolicExpr SymbolicExpr::xi() {
    SymMonomial m;
    m.coeff = normalize(1, 1, 0);
    m.factors = {{SymAtom{SymAtom::Xi, 0}, 1}};
    return canon_monomials({m});
}

SymbolicExpr SymbolicExpr::vjet(int derivative_order) {
    if (derivative_order < 0)
        throw NumericalError("symbolic: negative v-jet order");
    SymMonomial m;
    m.coeff = normalize(1, 1, 0);
    m.factors = {{SymAtom{SymAtom::VJet, derivative_order}, 1}};
    return canon_monomials({m});
}

bool SymbolicExpr::is_real() const {
    for (const auto& m : monomials_)
        if (m.coeff.ipow != 0) return false;
    return true;
}

bool SymbolicExpr::odd_in_xi() const {
    for (const auto& m : monomials_)
        if ((m.xi_degree() % 2 + 2) % 2 != 1) return false;
    return true;
}

bool SymbolicExpr::even_in_xi() const {
    for (const auto& m : monomials_)
        if ((m.xi_degree() % 2 + 2) % 2 != 0) return false;
    return true;
}

SymbolicExpr operator+(const SymbolicExpr& a, const SymbolicExpr& b) {
    std::vector<SymMonomial> monos = a.monomials_;
    monos.insert(monos.end(), b.monomials_.begin(), b.monomials_.end());
    return canon_monomials(std::move(monos));
}

SymbolicExpr operator-(const SymbolicExpr& a) {
    std::vector<SymMonomial> monos = a.monomials_;
    for (auto& m : monos) m.coeff.num = -m.coeff.num;
    return canon_monomials(std::move(monos));
}

SymbolicExpr operator-(const SymbolicExpr& a, const SymbolicExpr& b) {
    return a + (-b);
}

SymbolicExpr operator*(const SymbolicExpr& a, const SymbolicExpr& b) {
    std::vector<SymMonomial> monos;
    monos.reserve(a.monomials_.size() * b.monomials_.size());
    for (const auto& ma : a.monomials_)
        for (const auto& mb : b.monomials_) monos.push_back(mono_product(ma, mb));
    return canon_monomials(std::move(monos));
}

bool operator==(const SymbolicExpr& a, const SymbolicExpr& b) {
    if (a.monomials_.size() != b.monomials_.size()) return false;
    for (std::size_t i = 0; i < a.monomials_.size(); ++i) {
        const auto& ma = a.monomials_[i];
        const auto& mb = b.monomials_[i];
        if (!(same_key(ma, mb) && ma.coeff.num == mb.coeff.num &&
              ma.coeff.den == mb.coeff.den))
            return false;
    }
    return true;
}

SymbolicExpr SymbolicExpr::pow(int exponent) const {
    if (exponent == 0) return integer(1);
    if (exponent < 0) {
        if (monomials_.size() != 1)
            throw NumericalError("symbolic: negative power of a non-monomial");
        const SymMonomial& m = monomials_[0];
        if (m.coeff.ipow != 0)
            throw NumericalError("symbolic: negative power of an imaginary monomial");
        SymMonomial inv;
        inv.coeff = normalize(m.coeff.den, m.coeff.num, 0);
        inv.factors = m.factors;
        for (auto& f : inv.factors) f.second = -f.second;
        SymbolicExpr base = canon_monomials({inv});
        return base.pow(-exponent);
    }
    SymbolicExpr result = integer(1);
    SymbolicExpr base = *this;
    int e = exponent;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

SymbolicExpr canon(const SymbolicExpr& e) { return e; }

namespace {

SymbolicExpr differentiate(const SymbolicExpr& e, bool in_x) {
    std::vector<SymMonomial> out;
    for (const auto& m : e.monomials()) {
        for (std::size_t k = 0; k < m.factors.size(); ++k) {
            const auto& [atom, exp] = m.factors[k];
            if (in_x) {
                if (atom.kind != SymAtom::VJet) continue; // alpha, xi constant in x
            } else {
                if (atom.kind != SymAtom::Xi) continue;
            }
            // term: exp * atom^(exp-1) * d(atom) * (other factors)
            SymMonomial t;
            t.coeff = mul(m.coeff, normalize(exp, 1, 0));
            for (std::size_t j = 0; j < m.factors.size(); ++j) {
                if (j == k) continue;
                t.factors.push_back(m.factors[j]);
            }
            // atom^(exp-1) and the derivative atom (v^(j+1) or nothing for xi)
            std::vector<std::pair<SymAtom, int>> extra;
            if (exp != 1) extra.emplace_back(atom, exp - 1);
            if (in_x) extra.emplace_back(SymAtom{SymAtom::VJet, atom.jet + 1}, 1);
            for (const auto& f : extra) {
                SymMonomial factor;
                factor.coeff = normalize(1, 1, 0);
                factor.factors = {f};
                t = mono_product(t, factor);
            }
            out.push_back(std::move(t));
        }
    }
    return canon_monomials(std::move(out));
}

} // namespace

SymbolicExpr d_dx(const SymbolicExpr& e) { return differentiate(e, true); }

SymbolicExpr d_dxi(const SymbolicExpr& e) { return differentiate(e, false); }

std::complex<double> eval(const SymbolicExpr& e, const SymAssignment& a) {
    std::complex<double> total = 0.0;
    for (const auto& m : e.monomials()) {
        double value = static_cast<double>(m.coeff.num) / static_cast<double>(m.coeff.den);
        for (const auto& [atom, exp] : m.factors) {
            double base = 0.0;
            switch (atom.kind) {
                case SymAtom::Alpha: base = a.alpha; break;
                case SymAtom::Xi: base = a.xi; break;
                case SymAtom::VJet:
                    if (atom.jet >= static_cast<int>(a.vjets.size()))
                        throw NumericalError("symbolic eval: v-jet order not provided");
                    base = a.vjets[atom.jet];
                    break;
            }
            value *= std::pow(base, exp);
        }
        total += (m.coeff.ipow == 0) ? std::complex<double>(value, 0.0)
                                     : std::complex<double>(0.0, value);
    }
    return total;
}

double eval_real(const SymbolicExpr& e, const SymAssignment& a) {
    if (!e.is_real())
        throw NumericalError("eval_real: expression has imaginary monomials");
    return eval(e, a).real();
}

std::string pretty(const SymbolicExpr& e) {
    if (e.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& m : e.monomials()) {
        std::int64_t num = m.coeff.num;
        if (!first) out << (num < 0 ? " - " : " + ");
        else if (num < 0) out << "-";
        first = false;
        std::int64_t abs_num = num < 0 ? -num : num;
        out << abs_num;
        if (m.coeff.den != 1) out << "/" << m.coeff.den;
        if (m.coeff.ipow == 1) out << "*i";
        for (const auto& [atom, exp] : m.factors) {
            out << "*";
            switch (atom.kind) {
                case SymAtom::Alpha: out << "alpha"; break;
                case SymAtom::Xi: out << "xi"; break;
                case SymAtom::VJet: out << "v" << atom.jet; break;
            }
            if (exp != 1) out << "^" << exp;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// TPolynomial
// ---------------------------------------------------------------------------

TPolynomial TPolynomial::constant(SymbolicExpr e) {
    TPolynomial p;
    p.set_coefficient(0, std::move(e));
    return p;
}

SymbolicExpr TPolynomial::coefficient(int l) const {
    auto it = coeffs_.find(l);
    return it == coeffs_.end() ? SymbolicExpr() : it->second;
}

void TPolynomial::set_coefficient(int l, SymbolicExpr e) {
    if (l < 0) throw NumericalError("TPolynomial: negative t-exponent");
    if (e.is_zero())
        coeffs_.erase(l);
    else
        coeffs_[l] = std::move(e);
}

TPolynomial TPolynomial::operator+(const TPolynomial& other) const {
    TPolynomial out = *this;
    for (const auto& [l, e] : other.coeffs_) out.set_coefficient(l, out.coefficient(l) + e);
    return out;
}

TPolynomial TPolynomial::scaled(const SymbolicExpr& factor, int t_shift) const {
    TPolynomial out;
    for (const auto& [l, e] : coeffs_) out.set_coefficient(l + t_shift, factor * e);
    return out;
}

TPolynomial TPolynomial::dx() const {
    TPolynomial out;
    for (const auto& [l, e] : coeffs_) out.set_coefficient(l, d_dx(e));
    return out;
}

TPolynomial TPolynomial::integrate_t() const {
    TPolynomial out;
    for (const auto& [l, e] : coeffs_)
        out.set_coefficient(l + 1, SymbolicExpr::rational(1, l + 1) * e);
    return out;
}

} // namespace specwell
