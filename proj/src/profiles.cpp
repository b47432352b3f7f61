#include "specwell/profiles.hpp"
#include "specwell/errors.hpp"
#include "specwell/sampled.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace specwell {

SampledFunction make_uniform_grid(double a, double b, std::size_t n) {
    SampledFunction g;
    if (n < 2) throw NumericalError("make_uniform_grid: need n >= 2");
    g.x0 = a;
    g.h = (b - a) / static_cast<double>(n - 1);
    g.values.assign(n, 0.0);
    return g;
}

namespace {

/// Evaluate a polynomial and its first three derivatives (coefficients in
/// ascending order).
struct PolyJet {
    double p = 0, p1 = 0, p2 = 0, p3 = 0;
};

PolyJet poly_jet(const std::vector<double>& c, double x) {
    PolyJet j;
    for (std::size_t k = c.size(); k-- > 0;) {
        j.p3 = j.p3 * x + 3 * j.p2;
        j.p2 = j.p2 * x + 2 * j.p1;
        j.p1 = j.p1 * x + j.p;
        j.p = j.p * x + c[k];
    }
    return j;
}

/// Extrapolated limit of (1-x^2) v(x) as x -> s (s = +1 or -1): two samples
/// near the endpoint, linear term in (1-|x|) removed.
bool pole_limit_is_one(const RealFn& v, double side) {
    const double d1 = 1e-5, d2 = 2e-5;
    double t1 = (1 - (1 - d1) * (1 - d1)) * v(side * (1 - d1));
    double t2 = (1 - (1 - d2) * (1 - d2)) * v(side * (1 - d2));
    double limit = 2 * t1 - t2;
    return std::abs(limit - 1.0) < 1e-6;
}

} // namespace

MetricProfile MetricProfile::round_sphere() {
    MetricProfile p;
    p.family_ = ProfileFamily::RoundSphere;
    p.v_ = [](double x) { return 1.0 / (1.0 - x * x); };
    p.v1_ = [](double x) {
        double w = 1.0 - x * x;
        return 2.0 * x / (w * w);
    };
    p.v2_ = [](double x) {
        double w = 1.0 - x * x;
        return (2.0 + 6.0 * x * x) / (w * w * w);
    };
    p.v3_ = [](double x) {
        double w = 1.0 - x * x;
        return 24.0 * x * (1.0 + x * x) / (w * w * w * w);
    };
    p.x_limit_ = 1.0;
    p.pole_regular_ = true;
    return p;
}

MetricProfile MetricProfile::perturbed_well(std::vector<double> poly_coeffs) {
    if (poly_coeffs.size() >= 2 && poly_coeffs[1] != 0.0)
        throw ConfigError("perturbed_well: polynomial must have no linear term (P'(0)=0)");
    MetricProfile p;
    p.family_ = ProfileFamily::PolynomialPerturbation;
    p.coeffs_ = poly_coeffs;
    auto coeffs = std::make_shared<std::vector<double>>(std::move(poly_coeffs));
    p.v_ = [coeffs](double x) {
        return 1.0 / (1.0 - x * x) + poly_jet(*coeffs, x).p;
    };
    p.v1_ = [coeffs](double x) {
        double w = 1.0 - x * x;
        return 2.0 * x / (w * w) + poly_jet(*coeffs, x).p1;
    };
    p.v2_ = [coeffs](double x) {
        double w = 1.0 - x * x;
        return (2.0 + 6.0 * x * x) / (w * w * w) + poly_jet(*coeffs, x).p2;
    };
    p.v3_ = [coeffs](double x) {
        double w = 1.0 - x * x;
        return 24.0 * x * (1.0 + x * x) / (w * w * w * w) + poly_jet(*coeffs, x).p3;
    };
    p.x_limit_ = 1.0;
    p.pole_regular_ = pole_limit_is_one(p.v_, +1.0) && pole_limit_is_one(p.v_, -1.0);
    return p;
}

MetricProfile MetricProfile::tabulated(std::vector<double> knots,
                                       std::vector<double> values) {
    MetricProfile p;
    p.family_ = ProfileFamily::TabulatedSpline;
    auto spline = std::make_shared<CubicSpline>(std::move(knots), std::move(values));
    p.x_limit_ = std::min(std::abs(spline->x_min()), std::abs(spline->x_max()));
    p.v_ = [spline](double x) { return (*spline)(x); };
    p.v1_ = [spline](double x) { return spline->derivative(x); };
    p.v2_ = [spline](double x) { return spline->derivative2(x); };
    p.v3_ = [spline](double x) { return spline->derivative3(x); };
    // A tabulated profile covering nearly the whole interval can still be
    // checked for pole regularity; otherwise the question is moot.
    p.pole_regular_ = p.x_limit_ > 1.0 - 2e-5 &&
                      pole_limit_is_one(p.v_, +1.0) && pole_limit_is_one(p.v_, -1.0);
    return p;
}

MetricProfile make_round_sphere() { return MetricProfile::round_sphere(); }

MetricProfile make_perturbed_well(const std::vector<double>& poly_coeffs) {
    return MetricProfile::perturbed_well(poly_coeffs);
}

SingleWellCertificate certify_single_well(const MetricProfile& p,
                                          std::size_t grid_size,
                                          double x_extent) {
    if (grid_size < 16) throw ConfigError("certify_single_well: grid too small");
    double extent = (x_extent > 0.0) ? x_extent : p.x_limit();
    extent = std::min(extent, p.x_limit());
    // Stay strictly inside the domain; v may blow up at the endpoints.
    double margin = (extent >= 1.0) ? 1e-6 : 0.0;
    double hi = extent - margin;

    double c = p.v(0.0);
    if (!(c > 0.0))
        throw MultiWellError("certify_single_well: v(0) must be positive");
    double curvature = p.v2(0.0);
    if (!(curvature > 0.0)) {
        std::ostringstream msg;
        msg << "certify_single_well: v''(0) = " << curvature << " <= 0";
        throw DegenerateMinimumError(msg.str());
    }

    // Sign pattern of v' on a dense grid. Very near x = 0 the derivative is
    // legitimately tiny; allow it within the local quadratic scale.
    const std::size_t n = grid_size;
    for (std::size_t i = 0; i < n; ++i) {
        double x = -hi + (2 * hi) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        if (x == 0.0) continue;
        double slope = p.v1(x);
        double expected = curvature * x; // local model v' ~ v''(0) x
        bool ok = (x > 0) ? slope > 0 : slope < 0;
        // Near the minimum a tiny wrong-signed slope is evaluation noise;
        // away from it any sign violation is a second well.
        if (!ok && (std::abs(slope) > 0.5 * std::abs(expected) ||
                    std::abs(x) > 0.05 * hi)) {
            std::ostringstream msg;
            msg << "certify_single_well: v' has the wrong sign at x = " << x
                << " (v' = " << slope << ")";
            throw MultiWellError(msg.str());
        }
        if (!(p.v(x) > 0.0)) {
            std::ostringstream msg;
            msg << "certify_single_well: v <= 0 at x = " << x;
            throw MultiWellError(msg.str());
        }
    }

    SingleWellCertificate cert;
    cert.min_value = c;
    cert.curvature = curvature;
    cert.grid_size = grid_size;
    return cert;
}

} // namespace specwell
