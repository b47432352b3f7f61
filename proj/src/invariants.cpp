#include "specwell/invariants.hpp"
#include "specwell/errors.hpp"
#include "specwell/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace specwell {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Interval [x_lo, x_hi] where v(x) < level, located by bisection on each
/// side of the minimum (single well assumed).
std::pair<double, double> sublevel_interval(const MetricProfile& p, double level) {
    double hi = p.x_limit() * (1.0 - 1e-12);
    auto g = [&](double x) { return p.v(x) - level; };
    if (g(0.0) >= 0.0)
        throw RootBracketError("sublevel_interval: level at or below the well minimum");
    double x_hi, x_lo;
    if (g(hi) <= 0.0)
        x_hi = hi; // region clipped by the evaluable domain (tabulated profiles)
    else
        x_hi = bisect_root(g, 0.0, hi);
    if (g(-hi) <= 0.0)
        x_lo = -hi;
    else
        x_lo = -bisect_root([&](double x) { return p.v(-x) - level; }, 0.0, hi);
    return {x_lo, x_hi};
}

/// Integral over the sublevel interval with the sine substitution
/// x = m + r sin(theta); removes the square-root endpoint behavior of
/// integrands proportional to sqrt(lambda v - alpha^2 v^2).
double sublevel_integral(const MetricProfile& p, double x_lo, double x_hi,
                         const std::function<double(double)>& integrand,
                         double rel_tol) {
    double mid = 0.5 * (x_lo + x_hi);
    double rad = 0.5 * (x_hi - x_lo);
    if (rad <= 0.0) return 0.0;
    return integrate(
        [&](double theta) {
            double x = mid + rad * std::sin(theta);
            return integrand(x) * rad * std::cos(theta);
        },
        -kPi / 2, kPi / 2, rel_tol);
}

/// sqrt(lambda v - alpha^2 v^2), clipped at zero against roundoff.
double xi_max_value(const MetricProfile& p, double alpha, double lambda, double x) {
    double v = p.v(x);
    double s = lambda * v - alpha * alpha * v * v;
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

/// The integrand of the second invariant in its pre-integrated 2D form
/// (against no test function): used by q_at_2d.
double region_bracket(const MetricProfile& p, double alpha, double x, double xi) {
    double v = p.v(x), v1 = p.v1(x), v2 = p.v2(x);
    double a2 = alpha * alpha;
    double xi2 = xi * xi;
    double w = a2 - xi2 / (v * v);
    double t1 = -0.5 * ((2 * xi2 * xi2) / (3 * v * v) * (v2 / (v * v) - 2 * v1 * v1 / (v * v * v)) -
                        2 * a2 * v2 * xi2 / (v * v));
    double t2 = -(2 * xi2 / (3 * v)) *
                (xi2 * (3 * v1 * v1 / (v * v * v * v) - v2 / (v * v * v)) +
                 a2 * (v2 / v - v1 * v1 / (v * v)));
    double t3 = -(v1 * v1 / (3 * v)) * w * w;
    double t4 = (v1 * v1 / (2 * v)) *
                (5 * xi2 * xi2 / (2 * v * v * v * v) - 3 * xi2 * a2 / (v * v) + a2 * a2 / 2);
    return t1 + t2 + t3 + t4;
}

/// xi-integrated coefficient of sqrt(lambda v - alpha^2 v^2) in Q(lambda).
double q_coefficient(const MetricProfile& p, double alpha, double lambda, double x) {
    double v = p.v(x), v1 = p.v1(x), v2 = p.v2(x);
    double a2 = alpha * alpha;
    double a4 = a2 * a2;
    double l = lambda;
    return -(a4 / 9) * v1 * v1 / v - (l * a2 / 45) * v2 / v +
           (l * a2 / 9) * v1 * v1 / (v * v) + (l * l / 15) * v2 / (v * v) -
           (2 * a4 / 45) * v2 - (l * l / 12) * v1 * v1 / (v * v * v);
}

/// Common driver for the smooth (test-function) invariants. `inner` maps
/// (x, xi) to the full integrand including the rho factors; integration runs
/// over the support-determined bounded region, both signs of xi folded in by
/// evenness.
double smooth_invariant(const MetricProfile& p, const TestFunction& rho, double alpha,
                        const std::function<double(double, double)>& inner,
                        double rel_tol) {
    double tau_max = rho.support_max();
    double c = p.v(0.0);
    if (tau_max <= alpha * alpha * c) return 0.0;
    auto [x_lo, x_hi] = sublevel_interval(p, tau_max / (alpha * alpha));
    return sublevel_integral(
        p, x_lo, x_hi,
        [&](double x) {
            double xm = xi_max_value(p, alpha, tau_max, x);
            if (xm <= 0.0) return 0.0;
            // Even in xi: integrate the half fiber and double.
            return 2.0 * integrate([&](double xi) { return inner(x, xi); }, 0.0,
                                   xm, rel_tol);
        },
        rel_tol);
}

} // namespace

double PhaseRegion::xi_max(double x) const {
    if (empty || x < x_lo || x > x_hi) return 0.0;
    return xi_max_value(*profile, alpha, lambda, x);
}

PhaseRegion phase_region(const MetricProfile& p, double alpha, double lambda) {
    PhaseRegion r;
    r.lambda = lambda;
    r.alpha = alpha;
    r.profile = &p;
    double c = p.v(0.0);
    if (alpha == 0.0) throw ConfigError("phase_region: alpha must be nonzero");
    if (lambda <= alpha * alpha * c) return r; // empty
    auto [x_lo, x_hi] = sublevel_interval(p, lambda / (alpha * alpha));
    r.empty = false;
    r.x_lo = x_lo;
    r.x_hi = x_hi;
    return r;
}

double first_invariant_smooth(const MetricProfile& p, const TestFunction& rho,
                              double alpha, double rel_tol) {
    return smooth_invariant(
        p, rho, alpha,
        [&](double x, double xi) {
            double v = p.v(x);
            double tau = xi * xi / v + alpha * alpha * v;
            return rho.derivative(0, tau);
        },
        rel_tol);
}

double second_invariant_smooth(const MetricProfile& p, const TestFunction& rho,
                               double alpha, double rel_tol) {
    return smooth_invariant(
        p, rho, alpha,
        [&](double x, double xi) {
            double v = p.v(x), v1 = p.v1(x), v2 = p.v2(x);
            double a2 = alpha * alpha;
            double xi2 = xi * xi;
            double tau = xi2 / v + a2 * v;
            double w = a2 - xi2 / (v * v);
            double c2 = (0.5 / v) * (xi2 * (v2 / (v * v) - 2 * v1 * v1 / (v * v * v)) - a2 * v2);
            double c3 = -(2 * xi2 / (3 * v)) *
                            (xi2 * (3 * v1 * v1 / (v * v * v * v) - v2 / (v * v * v)) +
                             a2 * (v2 / v - v1 * v1 / (v * v))) -
                        (v1 * v1 / (3 * v)) * w * w;
            double c4 = -(xi2 * v1 * v1 / (2 * v * v)) * w * w;
            return c2 * rho.derivative(2, tau) + c3 * rho.derivative(3, tau) +
                   c4 * rho.derivative(4, tau);
        },
        rel_tol);
}

double second_invariant_third_form(const MetricProfile& p, const TestFunction& rho,
                                   double alpha, double rel_tol) {
    return smooth_invariant(
        p, rho, alpha,
        [&](double x, double xi) {
            double v = p.v(x), v1 = p.v1(x), v2 = p.v2(x);
            double a2 = alpha * alpha;
            double xi2 = xi * xi;
            double xi4 = xi2 * xi2;
            double tau = xi2 / v + a2 * v;
            double w = a2 - xi2 / (v * v);
            double coeff =
                -0.5 * ((2 * xi4) / (3 * v * v) * (v2 / (v * v) - 2 * v1 * v1 / (v * v * v)) -
                        2 * a2 * v2 * xi2 / (v * v)) -
                (2 * xi2 / (3 * v)) *
                    (xi2 * (3 * v1 * v1 / (v * v * v * v) - v2 / (v * v * v)) +
                     a2 * (v2 / v - v1 * v1 / (v * v))) -
                (v1 * v1 / (3 * v)) * w * w +
                (v1 * v1 / (2 * v)) *
                    (5 * xi4 / (2 * v * v * v * v) - 3 * xi2 * a2 / (v * v) + a2 * a2 / 2);
            return coeff * rho.derivative(3, tau);
        },
        rel_tol);
}

double area_at(const MetricProfile& p, double alpha, double lambda, double rel_tol) {
    PhaseRegion r = phase_region(p, alpha, lambda);
    if (r.empty) return 0.0;
    return sublevel_integral(
        p, r.x_lo, r.x_hi,
        [&](double x) { return xi_max_value(p, alpha, lambda, x); }, rel_tol);
}

double q_at(const MetricProfile& p, double alpha, double lambda, double rel_tol) {
    PhaseRegion r = phase_region(p, alpha, lambda);
    if (r.empty) return 0.0;
    return sublevel_integral(
        p, r.x_lo, r.x_hi,
        [&](double x) {
            return xi_max_value(p, alpha, lambda, x) * q_coefficient(p, alpha, lambda, x);
        },
        rel_tol);
}

double q_at_2d(const MetricProfile& p, double alpha, double lambda, double rel_tol) {
    PhaseRegion r = phase_region(p, alpha, lambda);
    if (r.empty) return 0.0;
    return sublevel_integral(
        p, r.x_lo, r.x_hi,
        [&](double x) {
            double xm = xi_max_value(p, alpha, lambda, x);
            if (xm <= 0.0) return 0.0;
            return integrate([&](double xi) { return region_bracket(p, alpha, x, xi); },
                             0.0, xm, rel_tol);
        },
        rel_tol);
}

std::vector<double> default_lambda_grid(const MetricProfile& p, double alpha,
                                        std::size_t points) {
    if (points < 2) throw ConfigError("default_lambda_grid: need at least 2 points");
    double c = p.v(0.0);
    double a2 = alpha * alpha;
    double x_ref = std::min(0.95, p.x_limit() * 0.95);
    double lo = a2 * c * (1.0 + 1e-3);
    double hi = a2 * p.v(x_ref);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

InvariantCurve area_curve(const MetricProfile& p, double alpha,
                          const std::vector<double>& lambda_grid,
                          int parallel_degree) {
    InvariantCurve curve;
    curve.alpha = alpha;
    curve.lambda = lambda_grid;
    curve.W = parallel_map<double>(lambda_grid.size(), parallel_degree,
                                   [&](std::size_t i) {
                                       return area_at(p, alpha, lambda_grid[i]);
                                   });
    return curve;
}

InvariantCurve q_curve(const MetricProfile& p, double alpha,
                       const std::vector<double>& lambda_grid,
                       int parallel_degree) {
    InvariantCurve curve;
    curve.alpha = alpha;
    curve.lambda = lambda_grid;
    curve.Q = parallel_map<double>(lambda_grid.size(), parallel_degree,
                                   [&](std::size_t i) {
                                       return q_at(p, alpha, lambda_grid[i]);
                                   });
    return curve;
}

} // namespace specwell
