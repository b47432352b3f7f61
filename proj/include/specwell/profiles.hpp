#pragma once

#include "specwell/numerics.hpp"

#include <memory>
#include <string>
#include <vector>

namespace specwell {

enum class ProfileFamily { RoundSphere, PolynomialPerturbation, TabulatedSpline };

/// Second derivative v = g'' of a symplectic potential on (-1, 1), with the
/// first three x-derivatives. Immutable after construction; shareable across
/// threads.
class MetricProfile {
public:
    ProfileFamily family() const { return family_; }

    double v(double x) const { return v_(x); }
    double v1(double x) const { return v1_(x); }
    double v2(double x) const { return v2_(x); }
    double v3(double x) const { return v3_(x); }

    /// Largest |x| at which the profile can be evaluated (1 for closed forms,
    /// the knot range for tabulated profiles).
    double x_limit() const { return x_limit_; }

    /// True when (1-x^2)*v(x) -> 1 as x -> +-1, extrapolated from samples
    /// near the endpoints. Closed-form families are checked the same way.
    bool pole_regular() const { return pole_regular_; }

    /// Coefficients of the perturbation polynomial (empty otherwise).
    const std::vector<double>& coefficients() const { return coeffs_; }

    static MetricProfile round_sphere();
    static MetricProfile perturbed_well(std::vector<double> poly_coeffs);
    static MetricProfile tabulated(std::vector<double> knots, std::vector<double> values);

private:
    MetricProfile() = default;

    ProfileFamily family_ = ProfileFamily::RoundSphere;
    RealFn v_, v1_, v2_, v3_;
    double x_limit_ = 1.0;
    bool pole_regular_ = false;
    std::vector<double> coeffs_;
};

/// make_round_sphere() -> v(x) = 1/(1-x^2) with exact derivatives.
MetricProfile make_round_sphere();

/// make_perturbed_well(P) -> v(x) = 1/(1-x^2) + P(x). P is given by its
/// coefficients, constant term first; a nonzero linear term is rejected.
MetricProfile make_perturbed_well(const std::vector<double>& poly_coeffs);

/// Certificate that v is a single well: decreasing on (-1,0), increasing on
/// (0,1), with a nondegenerate minimum c = v(0).
struct SingleWellCertificate {
    double min_value = 0.0;     // c = v(0)
    double curvature = 0.0;     // v''(0) > 0
    std::size_t grid_size = 0;  // grid used for the sign check
};

/// Dense-grid sign check of v' plus exact v''(0). Throws MultiWellError or
/// DegenerateMinimumError on failure. `x_extent` restricts the check to
/// |x| <= x_extent (used for reconstructed profiles that do not reach the
/// poles); 0 means the full evaluable range.
SingleWellCertificate certify_single_well(const MetricProfile& p,
                                          std::size_t grid_size = 10000,
                                          double x_extent = 0.0);

} // namespace specwell
