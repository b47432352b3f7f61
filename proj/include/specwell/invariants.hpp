#pragma once

#include "specwell/profiles.hpp"
#include "specwell/testfunction.hpp"

#include <optional>
#include <vector>

namespace specwell {

/// Sublevel region of the symbol tau = xi^2/v + alpha^2 v at level lambda:
/// x-extent [x_lo, x_hi] where v < lambda/alpha^2, and the fiber half-width
/// xi_max(x) = sqrt(lambda v - alpha^2 v^2) inside it. Upper half (xi > 0)
/// only, i.e. the first- and second-quadrant regions combined.
struct PhaseRegion {
    double lambda = 0.0;
    double alpha = 0.0;
    bool empty = true;
    double x_lo = 0.0, x_hi = 0.0;
    const MetricProfile* profile = nullptr;

    double xi_max(double x) const;
};

PhaseRegion phase_region(const MetricProfile& p, double alpha, double lambda);

/// Level-resolved invariants on a lambda grid. W is the region area (first
/// invariant); Q the second-invariant region integral.
struct InvariantCurve {
    double alpha = 0.0;
    std::vector<double> lambda;
    std::vector<double> W; // empty when not filled
    std::vector<double> Q; // empty when not filled
    std::optional<double> c_detected;
};

/// First invariant in smooth form: integral of rho(tau) over [-1,1] x R
/// (both signs of xi).
double first_invariant_smooth(const MetricProfile& p, const TestFunction& rho,
                              double alpha, double rel_tol = 1e-10);

/// Second invariant in smooth form: the four-term integral against
/// rho^(2), rho^(3), rho^(4).
double second_invariant_smooth(const MetricProfile& p, const TestFunction& rho,
                               double alpha, double rel_tol = 1e-10);

/// Same quantity after integrating by parts in xi: a single integral against
/// rho^(3) (independent evaluation route).
double second_invariant_third_form(const MetricProfile& p, const TestFunction& rho,
                                   double alpha, double rel_tol = 1e-10);

/// Region area W(lambda) (xi > 0 half): one quadrature in x after the exact
/// xi-integration, endpoint square roots removed by a sine substitution.
double area_at(const MetricProfile& p, double alpha, double lambda,
               double rel_tol = 1e-11);

/// Second invariant Q(lambda) via the xi-integrated 1D form.
double q_at(const MetricProfile& p, double alpha, double lambda,
            double rel_tol = 1e-11);

/// Q(lambda) by direct 2D integration of the region integrand
/// (independently coded cross-check of q_at).
double q_at_2d(const MetricProfile& p, double alpha, double lambda,
               double rel_tol = 1e-10);

/// Default lambda grid: `points` values from alpha^2 c (1+1e-3) to
/// alpha^2 v(0.95).
std::vector<double> default_lambda_grid(const MetricProfile& p, double alpha,
                                        std::size_t points = 200);

InvariantCurve area_curve(const MetricProfile& p, double alpha,
                          const std::vector<double>& lambda_grid,
                          int parallel_degree = 1);

InvariantCurve q_curve(const MetricProfile& p, double alpha,
                       const std::vector<double>& lambda_grid,
                       int parallel_degree = 1);

} // namespace specwell
