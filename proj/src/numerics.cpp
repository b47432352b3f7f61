#include "specwell/numerics.hpp"
#include "specwell/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace specwell {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

double integrate(const RealFn& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double error = 0.0, l1 = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, /*max_depth=*/15, rel_tol, &error, &l1);
    // The error estimate is absolute; accept if small against either the
    // integral scale or the L1 mass (handles cancellation-heavy integrands).
    double scale = std::max({std::abs(value), 1e-3 * l1, 1e-300});
    if (!(error <= 1e5 * rel_tol * scale + 1e-14 * l1 + 1e-300)) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << a << ", " << b
            << "]: value=" << value << " err=" << error;
        throw QuadratureError(msg.str());
    }
    return value;
}

double integrate_fixed(const RealFn& f, double a, double b) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss<double, 64>::integrate(f, a, b);
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

double bisect_root(const RealFn& f, double lo, double hi, double tol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) {
        std::ostringstream msg;
        msg << "bisect_root: no sign change on [" << lo << ", " << hi << "]";
        throw RootBracketError(msg.str());
    }
    for (int it = 0; it < max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi)
            return mid;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double bisect_predicate(const std::function<bool(double)>& pred, double lo,
                        double hi, double tol, int max_iter) {
    if (pred(lo) || !pred(hi))
        throw RootBracketError("bisect_predicate: bracket does not straddle the transition");
    for (int it = 0; it < max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi)
            break;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Pchip
// ---------------------------------------------------------------------------

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw NumericalError("Pchip: need at least two nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw NumericalError("Pchip: abscissae must be strictly increasing");
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    // Fritsch–Carlson: weighted harmonic mean where slopes agree in sign.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] == 0.0 || delta[i] == 0.0 ||
            (delta[i - 1] > 0) != (delta[i] > 0)) {
            d_[i] = 0.0;
        } else {
            double w1 = 2 * h[i] + h[i - 1];
            double w2 = h[i] + 2 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided endpoint slopes, clipped to keep monotonicity.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if ((d > 0) != (d0 > 0) || d0 == 0.0)
            d = 0.0;
        else if ((d0 > 0) != (d1 > 0) && std::abs(d) > 3 * std::abs(d0))
            d = 3 * d0;
        return d;
    };
    d_[0] = (n == 2) ? delta[0] : endpoint(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = (n == 2) ? delta[0]
                         : endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t Pchip::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 1 : (it - x_.begin());
    return std::min(i, x_.size() - 1) - 1;
}

double Pchip::operator()(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    double h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t);
    double h11 = t * t * (t - 1);
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double Pchip::derivative(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double g00 = 6 * t * (t - 1);
    double g10 = (1 - t) * (1 - 3 * t);
    double g01 = -g00;
    double g11 = t * (3 * t - 2);
    return (g00 * y_[i] + g01 * y_[i + 1]) / h + g10 * d_[i] + g11 * d_[i + 1];
}

// ---------------------------------------------------------------------------
// CubicSpline
// ---------------------------------------------------------------------------

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n)
        throw NumericalError("CubicSpline: need at least three nodes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw NumericalError("CubicSpline: abscissae must be strictly increasing");
    // Natural spline: solve tridiagonal system for second derivatives.
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = b[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double hm = x_[i] - x_[i - 1], hp = x_[i + 1] - x_[i];
        a[i] = hm / 6.0;
        b[i] = (hm + hp) / 3.0;
        c[i] = hp / 6.0;
        r[i] = (y_[i + 1] - y_[i]) / hp - (y_[i] - y_[i - 1]) / hm;
    }
    // Thomas algorithm.
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m_.assign(n, 0.0);
    m_[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

std::size_t CubicSpline::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 1 : (it - x_.begin());
    return std::min(i, x_.size() - 1) - 1;
}

double CubicSpline::operator()(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h -
           (3 * A * A - 1) * h * m_[i] / 6.0 + (3 * B * B - 1) * h * m_[i + 1] / 6.0;
}

double CubicSpline::derivative2(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - x) / h, B = (x - x_[i]) / h;
    return A * m_[i] + B * m_[i + 1];
}

double CubicSpline::derivative3(double x) const {
    std::size_t i = interval(x);
    double h = x_[i + 1] - x_[i];
    return (m_[i + 1] - m_[i]) / h;
}

// ---------------------------------------------------------------------------
// Dense linear algebra
// ---------------------------------------------------------------------------

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    if (a.size() != n * n) throw NumericalError("solve_dense: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
        if (std::abs(a[piv * n + col]) < 1e-300)
            throw NumericalError("solve_dense: singular matrix");
        if (piv != col) {
            for (std::size_t k = col; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            double w = a[row * n + col] / a[col * n + col];
            if (w == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[row * n + k] -= w * a[col * n + k];
            b[row] -= w * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double s = b[row];
        for (std::size_t k = row + 1; k < n; ++k) s -= a[row * n + k] * x[k];
        x[row] = s / a[row * n + row];
    }
    return x;
}

std::vector<double> fit_least_squares(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const std::vector<RealFn>& basis) {
    const std::size_t m = basis.size(), n = x.size();
    if (y.size() != n || n < m)
        throw NumericalError("fit_least_squares: underdetermined fit");
    std::vector<double> ata(m * m, 0.0), atb(m, 0.0), row(m);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < m; ++j) row[j] = basis[j](x[k]);
        for (std::size_t i = 0; i < m; ++i) {
            atb[i] += row[i] * y[k];
            for (std::size_t j = 0; j < m; ++j) ata[i * m + j] += row[i] * row[j];
        }
    }
    return solve_dense(std::move(ata), std::move(atb));
}

std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y) {
    auto c = fit_least_squares(x, y, {[](double) { return 1.0; },
                                      [](double t) { return t; }});
    return {c[0], c[1]};
}

// ---------------------------------------------------------------------------
// Savitzky–Golay second derivative
// ---------------------------------------------------------------------------

SavGolResult savgol_second_derivative(const std::vector<double>& values,
                                      double h, int half_window) {
    const int n = static_cast<int>(values.size());
    if (half_window < 1) throw NumericalError("savgol: half_window must be >= 1");
    if (n < 2 * half_window + 1)
        throw NumericalError("savgol: window larger than data");
    SavGolResult result;
    result.second_derivative.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        int lo = std::max(0, i - half_window);
        int hi = std::min(n - 1, i + half_window);
        if (hi - lo < 2) {  // widen degenerate edge windows
            lo = std::max(0, hi - 2);
            hi = std::min(n - 1, lo + 2);
        }
        // Quadratic fit in the local coordinate u = (j - i)*h.
        double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
        for (int j = lo; j <= hi; ++j) {
            double u = (j - i) * h;
            double u2 = u * u;
            s0 += 1;
            s1 += u;
            s2 += u2;
            s3 += u2 * u;
            s4 += u2 * u2;
            b0 += values[j];
            b1 += u * values[j];
            b2 += u2 * values[j];
        }
        auto c = solve_dense({s0, s1, s2, s1, s2, s3, s2, s3, s4}, {b0, b1, b2});
        result.second_derivative[i] = 2.0 * c[2];
        double rss = 0.0;
        for (int j = lo; j <= hi; ++j) {
            double u = (j - i) * h;
            double fit = c[0] + c[1] * u + c[2] * u * u;
            rss += (values[j] - fit) * (values[j] - fit);
        }
        result.max_fit_residual =
            std::max(result.max_fit_residual, std::sqrt(rss / (hi - lo + 1)));
    }
    return result;
}

std::vector<double> fd_derivative(const std::vector<double>& values, double h) {
    const int n = static_cast<int>(values.size());
    std::vector<double> d(n, 0.0);
    if (n < 6) {
        // fall back to second order for very short inputs
        if (n < 2) throw NumericalError("fd_derivative: need >= 2 samples");
        for (int i = 0; i < n; ++i) {
            if (i == 0)
                d[i] = (values[1] - values[0]) / h;
            else if (i == n - 1)
                d[i] = (values[n - 1] - values[n - 2]) / h;
            else
                d[i] = (values[i + 1] - values[i - 1]) / (2 * h);
        }
        return d;
    }
    auto v = [&](int i) { return values[i]; };
    for (int i = 0; i < n; ++i) {
        if (i >= 2 && i <= n - 3) {
            d[i] = (-v(i + 2) + 8 * v(i + 1) - 8 * v(i - 1) + v(i - 2)) / (12 * h);
        } else if (i == 0) {
            d[i] = (-25 * v(0) + 48 * v(1) - 36 * v(2) + 16 * v(3) - 3 * v(4)) / (12 * h);
        } else if (i == 1) {
            d[i] = (-3 * v(0) - 10 * v(1) + 18 * v(2) - 6 * v(3) + v(4)) / (12 * h);
        } else if (i == n - 2) {
            d[i] = (3 * v(n - 1) + 10 * v(n - 2) - 18 * v(n - 3) + 6 * v(n - 4) - v(n - 5)) / (12 * h);
        } else { // i == n-1
            d[i] = (25 * v(n - 1) - 48 * v(n - 2) + 36 * v(n - 3) - 16 * v(n - 4) + 3 * v(n - 5)) / (12 * h);
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Tridiagonal eigenvalues
// ---------------------------------------------------------------------------

int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& offdiag, double x) {
    const std::size_t n = diag.size();
    int count = 0;
    double q = 1.0;
    const double tiny = 1e-300;
    for (std::size_t i = 0; i < n; ++i) {
        double e2 = (i == 0) ? 0.0 : offdiag[i - 1] * offdiag[i - 1];
        q = diag[i] - x - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiag_eigenvalues_below(const std::vector<double>& diag,
                                              const std::vector<double>& offdiag,
                                              double lambda_max) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (offdiag.size() + 1 != n)
        throw NumericalError("tridiag_eigenvalues_below: size mismatch");
    // Gershgorin lower bound.
    double lo_bound = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) +
                   (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
        lo_bound = std::min(lo_bound, diag[i] - r);
    }
    lo_bound -= 1e-8 * (std::abs(lo_bound) + 1.0);
    double hi_bound = lambda_max * (1 + 1e-12) + 1e-300;
    int total = tridiag_count_below(diag, offdiag, hi_bound);
    std::vector<double> eig(total);
    for (int k = 0; k < total; ++k) {
        // Find the (k+1)-th eigenvalue: smallest x with count(x) >= k+1.
        double lo = lo_bound, hi = hi_bound;
        for (int it = 0; it < 120; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (tridiag_count_below(diag, offdiag, mid) >= k + 1)
                hi = mid;
            else
                lo = mid;
            if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) break;
        }
        eig[k] = 0.5 * (lo + hi);
    }
    return eig;
}

} // namespace specwell
