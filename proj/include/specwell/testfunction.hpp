#pragma once

#include <array>
#include <string>
#include <vector>

namespace specwell {

/// Compactly supported test function rho with evaluators for rho and its
/// first four derivatives. SmoothBump and MollifiedIndicator are C^8
/// piecewise polynomials (8 continuous derivatives across the seams);
/// Exponential is exp(-decay*tau) truncated at a radius and is provided for
/// side experiments only.
class TestFunction {
public:
    enum class Family { SmoothBump, MollifiedIndicator, Exponential };

    /// rho(tau) = (1 - u^2)^9 with u = (tau-center)/width on |u| < 1.
    static TestFunction smooth_bump(double center, double width);

    /// 1 on [eps, level-eps], smooth C^8 ramps on [-eps, eps] and
    /// [level-eps, level+eps], 0 outside. Requires level > 2*eps.
    static TestFunction mollified_indicator(double level, double eps);

    /// exp(-decay*tau) for tau <= truncation_radius, 0 beyond (not smooth at
    /// the cut, not compactly supported in spirit; experiments only).
    static TestFunction exponential(double decay, double truncation_radius);

    double operator()(double tau) const { return derivative(0, tau); }
    double derivative(int order, double tau) const; // order in [0, 4]

    Family family() const { return family_; }
    bool compactly_supported() const { return family_ != Family::Exponential; }
    double support_min() const { return support_min_; }
    double support_max() const { return support_max_; }

private:
    TestFunction() = default;

    Family family_ = Family::SmoothBump;
    double support_min_ = 0.0, support_max_ = 0.0;
    // SmoothBump: polynomial in u; MollifiedIndicator: smoothstep ramps.
    double center_ = 0.0, width_ = 1.0;
    double level_ = 0.0, eps_ = 0.0;
    double decay_ = 0.0;
};

} // namespace specwell
