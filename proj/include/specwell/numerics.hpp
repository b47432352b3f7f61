#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace specwell {

using RealFn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Adaptive Gauss–Kronrod integration of f over [a, b] to relative tolerance
/// `rel_tol` (falls back to an absolute floor for near-zero integrals).
/// Throws QuadratureError when the error estimate cannot be met.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-10);

/// Fixed-order Gauss–Legendre rule (order 64), no error estimate.
double integrate_fixed(const RealFn& f, double a, double b);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of opposite
/// sign; returns the midpoint after the interval shrinks below `tol`.
double bisect_root(const RealFn& f, double lo, double hi, double tol = 1e-13,
                   int max_iter = 200);

/// Bisection on a boolean predicate: pred(lo) == false, pred(hi) == true.
/// Returns the smallest located x with pred(x) true, to tolerance `tol`.
double bisect_predicate(const std::function<bool(double)>& pred, double lo,
                        double hi, double tol = 1e-13, int max_iter = 200);

// ---------------------------------------------------------------------------
// Interpolation
// ---------------------------------------------------------------------------

/// Monotone piecewise-cubic interpolant (Fritsch–Carlson limiter).
/// Preserves monotone data; evaluable with first derivative.
class Pchip {
public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double derivative(double x) const;
    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }

private:
    std::vector<double> x_, y_, d_; // node slopes
    std::size_t interval(double x) const;
};

/// Natural cubic spline with derivatives up to order three
/// (third derivative is piecewise constant).
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double derivative(double x) const;
    double derivative2(double x) const;
    double derivative3(double x) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_; // m_ = second derivatives at knots
    std::size_t interval(double x) const;
};

// ---------------------------------------------------------------------------
// Dense linear algebra (small systems only)
// ---------------------------------------------------------------------------

/// Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

/// Least squares for y ~ sum_j coeff_j * basis_j(x) via normal equations.
std::vector<double> fit_least_squares(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const std::vector<RealFn>& basis);

/// Straight-line fit y = a + b*x; returns {a, b}.
std::pair<double, double> fit_line(const std::vector<double>& x,
                                   const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Smoothing and differentiation of sampled data
// ---------------------------------------------------------------------------

struct SavGolResult {
    std::vector<double> second_derivative;
    double max_fit_residual = 0.0; // max RMS residual of the local fits
};

/// Second derivative of uniformly sampled data by local quadratic
/// least-squares fits (window of 2*half_window+1 points, one-sided at the
/// ends). Also reports the worst local fit residual as a noise diagnostic.
SavGolResult savgol_second_derivative(const std::vector<double>& values,
                                      double h, int half_window);

/// Fourth-order finite-difference first derivative on a uniform grid
/// (one-sided stencils at the boundary).
std::vector<double> fd_derivative(const std::vector<double>& values, double h);

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigenvalues (Sturm-sequence bisection)
// ---------------------------------------------------------------------------

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, offdiag)
/// strictly below x.
int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& offdiag, double x);

/// All eigenvalues <= lambda_max in ascending order, each located by
/// bisection to relative tolerance ~1e-13.
std::vector<double> tridiag_eigenvalues_below(const std::vector<double>& diag,
                                              const std::vector<double>& offdiag,
                                              double lambda_max);

// ---------------------------------------------------------------------------
// Parallel map with deterministic ordered collection
// ---------------------------------------------------------------------------

/// Applies fn(i) for i in [0, n) using at most `degree` worker threads and
/// returns results indexed by i. Results are identical for any degree.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int degree,
                            const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    if (degree <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::size_t workers = std::min<std::size_t>(degree, n);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace specwell
