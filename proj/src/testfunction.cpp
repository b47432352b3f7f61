#include "specwell/testfunction.hpp"
#include "specwell/errors.hpp"

#include <cmath>

namespace specwell {

namespace {

// Bump kernel (1-u^2)^9 as a polynomial in u (even, degree 18) and the C^8
// smoothstep S(u) = 218790 * int_0^u t^8 (1-t)^8 dt as a polynomial of
// degree 17 on [0,1]. Coefficients are exact in double precision.

struct Poly {
    // ascending coefficients
    std::vector<double> c;
    double eval_derivative(int order, double u) const {
        double acc = 0.0;
        for (int k = static_cast<int>(c.size()) - 1; k >= order; --k) {
            double factor = 1.0;
            for (int j = 0; j < order; ++j) factor *= static_cast<double>(k - j);
            acc = acc * u + c[k] * factor;
        }
        return acc;
    }
};

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

const Poly& bump_poly() {
    static const Poly p = [] {
        Poly q;
        q.c.assign(19, 0.0);
        for (int j = 0; j <= 9; ++j)
            q.c[2 * j] = binom(9, j) * ((j % 2) ? -1.0 : 1.0);
        return q;
    }();
    return p;
}

const Poly& smoothstep_poly() {
    static const Poly p = [] {
        Poly q;
        q.c.assign(18, 0.0);
        // S'(u) = 218790 * u^8 (1-u)^8; integrate term by term.
        for (int j = 0; j <= 8; ++j) {
            double coeff = 218790.0 * binom(8, j) * ((j % 2) ? -1.0 : 1.0);
            q.c[9 + j] = coeff / (9.0 + j);
        }
        return q;
    }();
    return p;
}

} // namespace

TestFunction TestFunction::smooth_bump(double center, double width) {
    if (!(width > 0)) throw ConfigError("smooth_bump: width must be positive");
    TestFunction f;
    f.family_ = Family::SmoothBump;
    f.center_ = center;
    f.width_ = width;
    f.support_min_ = center - width;
    f.support_max_ = center + width;
    return f;
}

TestFunction TestFunction::mollified_indicator(double level, double eps) {
    if (!(eps > 0)) throw ConfigError("mollified_indicator: eps must be positive");
    if (!(level > 2 * eps))
        throw ConfigError("mollified_indicator: need level > 2*eps so the ramps are disjoint");
    TestFunction f;
    f.family_ = Family::MollifiedIndicator;
    f.level_ = level;
    f.eps_ = eps;
    f.support_min_ = -eps;
    f.support_max_ = level + eps;
    return f;
}

TestFunction TestFunction::exponential(double decay, double truncation_radius) {
    if (!(decay > 0) || !(truncation_radius > 0))
        throw ConfigError("exponential: decay and truncation radius must be positive");
    TestFunction f;
    f.family_ = Family::Exponential;
    f.decay_ = decay;
    f.support_min_ = 0.0;
    f.support_max_ = truncation_radius;
    return f;
}

double TestFunction::derivative(int order, double tau) const {
    if (order < 0 || order > 4)
        throw ConfigError("TestFunction: derivative order must be in [0, 4]");
    switch (family_) {
        case Family::SmoothBump: {
            double u = (tau - center_) / width_;
            if (u <= -1.0 || u >= 1.0) return 0.0;
            double scale = std::pow(1.0 / width_, order);
            return bump_poly().eval_derivative(order, u) * scale;
        }
        case Family::MollifiedIndicator: {
            if (tau <= -eps_ || tau >= level_ + eps_) return 0.0;
            if (tau < eps_) { // rising ramp, u = (tau+eps)/(2 eps)
                double u = (tau + eps_) / (2 * eps_);
                double scale = std::pow(1.0 / (2 * eps_), order);
                return smoothstep_poly().eval_derivative(order, u) * scale;
            }
            if (tau > level_ - eps_) { // falling ramp, u = (level+eps-tau)/(2 eps)
                double u = (level_ + eps_ - tau) / (2 * eps_);
                double scale = std::pow(-1.0 / (2 * eps_), order);
                return smoothstep_poly().eval_derivative(order, u) * scale;
            }
            return order == 0 ? 1.0 : 0.0; // plateau
        }
        case Family::Exponential: {
            if (tau > support_max_) return 0.0;
            double sign = (order % 2) ? -1.0 : 1.0;
            return sign * std::pow(decay_, order) * std::exp(-decay_ * tau);
        }
    }
    return 0.0;
}

} // namespace specwell
