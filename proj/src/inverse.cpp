#include "specwell/inverse.hpp"
#include "specwell/errors.hpp"
#include "specwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specwell {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Resample a smooth curve (lambda, values) onto G(beta_j), beta_j = j*h,
/// lambda = alpha^2 (c + beta), with the analytic derivative of the spline
/// (chain rule factor alpha^2). Values below the detected threshold clip to 0.
SampledFunction reindex_to_beta(const std::vector<double>& lambda,
                                const std::vector<double>& values, double alpha,
                                double c, std::size_t n, double beta_max) {
    CubicSpline spline(lambda, values);
    double a2 = alpha * alpha;
    SampledFunction g;
    g.x0 = 0.0;
    g.h = beta_max / static_cast<double>(n - 1);
    g.values.resize(n);
    std::vector<double> deriv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double l = a2 * (c + g.x(j));
        l = std::clamp(l, spline.x_min(), spline.x_max());
        g.values[j] = spline(l);
        deriv[j] = spline.derivative(l) * a2;
    }
    g.derivative = std::move(deriv);
    return g;
}

/// Least-squares fit of y ~ a/sqrt(S) + b + c*sqrt(S) over grid indices
/// [j_lo, j_hi]; the half-integer basis matches the branch expansion near the
/// well minimum.
std::array<double, 3> fit_half_power(const std::vector<double>& S,
                                     const std::vector<double>& y,
                                     std::size_t j_lo, std::size_t j_hi) {
    std::vector<double> xs, ys;
    for (std::size_t j = j_lo; j <= j_hi; ++j) {
        xs.push_back(S[j]);
        ys.push_back(y[j]);
    }
    auto coeff = fit_least_squares(
        xs, ys,
        {[](double s) { return 1.0 / std::sqrt(s); },
         [](double) { return 1.0; },
         [](double s) { return std::sqrt(s); }});
    return {coeff[0], coeff[1], coeff[2]};
}

double eval_half_power(const std::array<double, 3>& m, double S) {
    return m[0] / std::sqrt(S) + m[1] + m[2] * std::sqrt(S);
}

/// Antiderivative of the half-power model from 0 to S.
double integrate_half_power(const std::array<double, 3>& m, double S) {
    return 2.0 * m[0] * std::sqrt(S) + m[1] * S + (2.0 / 3.0) * m[2] * std::pow(S, 1.5);
}

} // namespace

double detect_c(const InvariantCurve& W, const std::optional<RealFn>& evaluator,
                double threshold_frac) {
    if (W.W.size() != W.lambda.size() || W.W.empty())
        throw ConfigError("detect_c: curve has no W values");
    if (W.alpha == 0.0) throw ConfigError("detect_c: alpha must be nonzero");
    double w_max = max_abs(W.W);
    if (w_max <= 0.0)
        throw ThresholdNotBracketedError("detect_c: area curve is identically zero");
    double threshold = threshold_frac * w_max;

    std::size_t first_above = W.W.size();
    for (std::size_t i = 0; i < W.W.size(); ++i) {
        if (W.W[i] > threshold) {
            first_above = i;
            break;
        }
    }
    if (first_above == W.W.size())
        throw ThresholdNotBracketedError("detect_c: no sample above threshold");

    double lambda_star;
    if (first_above == 0) {
        if (!evaluator)
            throw ThresholdNotBracketedError(
                "detect_c: grid does not straddle the threshold");
        // Probe downward until the evaluator drops below the threshold.
        double hi = W.lambda.front();
        double lo = hi / 2;
        int guard = 0;
        while ((*evaluator)(lo) > threshold) {
            hi = lo;
            lo /= 2;
            if (++guard > 200)
                throw ThresholdNotBracketedError("detect_c: threshold not bracketed below the grid");
        }
        lambda_star = bisect_predicate(
            [&](double l) { return (*evaluator)(l) > threshold; }, lo, hi, 1e-12);
    } else if (evaluator) {
        lambda_star = bisect_predicate(
            [&](double l) { return (*evaluator)(l) > threshold; },
            W.lambda[first_above - 1], W.lambda[first_above], 1e-12);
    } else {
        // Interpolated crossing between the bracketing samples.
        double l0 = W.lambda[first_above - 1], l1 = W.lambda[first_above];
        double w0 = W.W[first_above - 1], w1 = W.W[first_above];
        lambda_star = l0 + (threshold - w0) / (w1 - w0) * (l1 - l0);
    }
    return lambda_star / (W.alpha * W.alpha);
}

SampledFunction recover_sum(const InvariantCurve& W, double c,
                            std::size_t s_points, std::optional<double> beta_max) {
    if (W.W.empty()) throw ConfigError("recover_sum: curve has no W values");
    double a2 = W.alpha * W.alpha;
    double bmax = beta_max ? *beta_max : (W.lambda.back() / a2 - c);
    if (!(bmax > 0)) throw ConfigError("recover_sum: empty beta range");

    SampledFunction g1 = reindex_to_beta(W.lambda, W.W, W.alpha, c, s_points, bmax);
    for (double& v : g1.values) v = std::max(0.0, v) / std::abs(W.alpha);
    if (g1.derivative)
        for (double& v : *g1.derivative) v /= std::abs(W.alpha);
    g1.values[0] = 0.0;

    SampledFunction h = abel_invert_threehalves(g1);
    SampledFunction D;
    D.x0 = c;
    D.h = h.h;
    D.values.resize(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        double s = c + h.x(j);
        D.values[j] = h.values[j] / std::sqrt(s);
    }
    return D;
}

SampledFunction recover_recip_sum(const InvariantCurve& Q, double c, double alpha,
                                  std::size_t s_points, std::optional<double> beta_max) {
    if (Q.Q.empty()) throw ConfigError("recover_recip_sum: curve has no Q values");
    double a2 = alpha * alpha;
    double bmax = beta_max ? *beta_max : (Q.lambda.back() / a2 - c);
    if (!(bmax > 0)) throw ConfigError("recover_recip_sum: empty beta range");

    SampledFunction g2 = reindex_to_beta(Q.lambda, Q.Q, alpha, c, s_points, bmax);
    double norm = std::pow(std::abs(alpha), 5);
    for (double& v : g2.values) v /= norm;
    if (g2.derivative)
        for (double& v : *g2.derivative) v /= norm;
    g2.values[0] = 0.0;

    auto A = [c](double S, double beta) { return kernel_A(S, beta, c); };
    auto B = [c](double S, double beta) { return kernel_B(S, beta, c); };
    return volterra_solve(g2, A, B);
}

BranchPair split_branches(const SampledFunction& D, const SampledFunction& F,
                          const ReconstructionOptions& opt) {
    if (D.size() != F.size() || D.size() < 4)
        throw ConfigError("split_branches: D and F must share a grid");
    const std::size_t n = D.size();
    BranchPair bp;
    bp.c = D.x0;
    bp.s.resize(n);
    bp.p.assign(n, 0.0);
    bp.q.assign(n, 0.0);
    bp.merged.assign(n, 0);
    bp.min_discriminant = 0.0;

    for (std::size_t j = 0; j < n; ++j) {
        bp.s[j] = D.x(j);
        if (j == 0) { // branches diverge at s = c; handled by the caller
            bp.p[j] = bp.q[j] = 0.0;
            bp.merged[j] = 1;
            continue;
        }
        double d = D.values[j];
        double f = F.values[j];
        if (!(f > 0.0) || !(d > 0.0)) {
            // Recovered data unusable at this node (typically inside the
            // near-minimum exclusion zone); treat as merged.
            bp.p[j] = bp.q[j] = std::max(0.0, d) / 2.0;
            bp.merged[j] = 1;
            continue;
        }
        double pq = d / f;
        double disc = d * d - 4.0 * pq;
        double rel = disc / (d * d);
        bp.min_discriminant = std::min(bp.min_discriminant, rel);
        if (rel < -opt.disc_tol) {
            std::ostringstream msg;
            msg << "split_branches: discriminant " << rel << " * D^2 at s = "
                << bp.s[j] << " is negative beyond tolerance";
            throw NegativeDiscriminantError(msg.str());
        }
        if (rel <= opt.merge_tol) {
            bp.p[j] = bp.q[j] = d / 2.0;
            bp.merged[j] = 1;
        } else {
            double root = std::sqrt(disc);
            bp.p[j] = (d + root) / 2.0;
            bp.q[j] = (d - root) / 2.0;
        }
    }

    // Continuity tracking: swap p/q forward from any point where keeping the
    // sorted order would kink both branches (crossing f1' = f2').
    bool swapped = false;
    for (std::size_t j = 2; j + 0 < n; ++j) {
        if (bp.merged[j] || bp.merged[j - 1] || bp.merged[j - 2]) continue;
        auto second_diff = [&](double a, double b, double cst) {
            return std::abs(a - 2 * b + cst);
        };
        double keep = second_diff(bp.p[j], bp.p[j - 1], bp.p[j - 2]) +
                      second_diff(bp.q[j], bp.q[j - 1], bp.q[j - 2]);
        double swap = second_diff(bp.q[j], bp.p[j - 1], bp.p[j - 2]) +
                      second_diff(bp.p[j], bp.q[j - 1], bp.q[j - 2]);
        if (swap < keep) {
            std::swap(bp.p[j], bp.q[j]);
            swapped = true;
        }
    }
    (void)swapped;
    return bp;
}

ReconstructionResult assemble_profile(const BranchPair& bp, double c,
                                      const ReconstructionOptions& opt) {
    const std::size_t n = bp.s.size();
    if (n < 8) throw ConfigError("assemble_profile: grid too small");
    const double h = bp.s[1] - bp.s[0];
    const double S_max = bp.s.back() - c;
    const double delta = opt.delta_frac * S_max;
    std::size_t j_delta = std::max<std::size_t>(3, static_cast<std::size_t>(std::round(delta / h)));
    std::size_t j_fit_hi =
        std::min(n - 2, static_cast<std::size_t>(std::round(opt.fit_window_factor * delta / h)));
    if (j_fit_hi < j_delta + 4)
        j_fit_hi = std::min(n - 2, j_delta + 8);

    std::vector<double> S(n);
    for (std::size_t j = 0; j < n; ++j) S[j] = bp.s[j] - c;

    // Half-power fits of each branch on [delta, fit_window_factor*delta]:
    // capture the S^(-1/2) divergence and the asymmetry constant.
    auto model_p = fit_half_power(S, bp.p, j_delta, j_fit_hi);
    auto model_q = fit_half_power(S, bp.q, j_delta, j_fit_hi);
    double a_mean = 0.5 * (model_p[0] + model_q[0]);
    if (!(a_mean > 0.0))
        throw NonMonotoneBranchError("assemble_profile: branch asymptotics not increasing");
    double curvature = 1.0 / (2.0 * a_mean * a_mean);

    // f_i(S) = int_0^S branch: model integral up to the anchor, trapezoid on
    // the data beyond it.
    auto integrate_branch = [&](const std::vector<double>& branch,
                                const std::array<double, 3>& model) {
        std::vector<double> f(n, 0.0);
        for (std::size_t j = 1; j <= j_delta; ++j) f[j] = integrate_half_power(model, S[j]);
        for (std::size_t j = j_delta + 1; j < n; ++j) {
            double left = (j == j_delta + 1) ? eval_half_power(model, S[j - 1]) : branch[j - 1];
            f[j] = f[j - 1] + 0.5 * h * (left + branch[j]);
        }
        return f;
    };
    std::vector<double> f1 = integrate_branch(bp.p, model_p);
    std::vector<double> f2 = integrate_branch(bp.q, model_q);

    for (std::size_t j = 1; j < n; ++j) {
        if (!(f1[j] > f1[j - 1]) || !(f2[j] > f2[j - 1]))
            throw NonMonotoneBranchError(
                "assemble_profile: integrated branch is not strictly increasing");
    }

    ReconstructionResult out;
    out.c = c;
    out.curvature = curvature;
    out.s = bp.s;
    out.f1 = f1;
    out.f2 = f2;
    out.x_max = std::min(f1.back(), f2.back());

    // Invert x = f_i(s) by monotone interpolation, augmented below the anchor
    // by the fitted model so the map covers small x.
    auto build_inverse = [&](const std::vector<double>& f,
                             const std::array<double, 3>& model) {
        std::vector<double> xs, ss;
        for (int k = 1; k <= 8; ++k) {
            double Sk = S[j_delta] * (static_cast<double>(k) / 8.0) *
                        (static_cast<double>(k) / 8.0);
            if (Sk <= 0) continue;
            xs.push_back(integrate_half_power(model, Sk));
            ss.push_back(c + Sk);
        }
        for (std::size_t j = j_delta + 1; j < n; ++j) {
            xs.push_back(f[j]);
            ss.push_back(bp.s[j]);
        }
        return Pchip(std::move(xs), std::move(ss));
    };
    Pchip inv1 = build_inverse(f1, model_p);
    Pchip inv2 = build_inverse(f2, model_q);
    double x_model1 = inv1.x().front();
    double x_model2 = inv2.x().front();

    const std::size_t nx = opt.x_points | 1; // odd, so x = 0 is a node
    out.x.resize(nx);
    out.v.resize(nx);
    double x_hi = out.x_max * (1.0 - 1e-9);
    for (std::size_t i = 0; i < nx; ++i) {
        double x = -x_hi + 2.0 * x_hi * static_cast<double>(i) / static_cast<double>(nx - 1);
        out.x[i] = x;
        if (x >= 0.0) {
            out.v[i] = (x <= x_model1) ? c + 0.5 * curvature * x * x : inv1(x);
        } else {
            double ax = -x;
            out.v[i] = (ax <= x_model2) ? c + 0.5 * curvature * ax * ax : inv2(ax);
        }
    }

    // The reconstructed profile must itself be a single well.
    MetricProfile rec = MetricProfile::tabulated(out.x, out.v);
    certify_single_well(rec, 2048, out.x_max * 0.999);
    return out;
}

namespace {

StageDiagnostics compare_against(const MetricProfile& truth,
                                 const ReconstructionResult& rec,
                                 double compare_x) {
    StageDiagnostics diag;
    diag.c_detected = rec.c;
    diag.curvature = rec.curvature;
    diag.x_window = std::min(compare_x, rec.x_max);
    Pchip v_rec(rec.x, rec.v);
    double linf = 0.0, linf_ref = 0.0, l2 = 0.0, l2_ref = 0.0;
    const int samples = 1601;
    for (int i = 0; i < samples; ++i) {
        double x = -diag.x_window +
                   2.0 * diag.x_window * static_cast<double>(i) / (samples - 1);
        double vr = v_rec(x);
        double e_id = std::abs(vr - truth.v(x));
        double e_rf = std::abs(vr - truth.v(-x));
        linf = std::max(linf, e_id);
        linf_ref = std::max(linf_ref, e_rf);
        l2 += e_id * e_id;
        l2_ref += e_rf * e_rf;
    }
    double dx = 2.0 * diag.x_window / (samples - 1);
    diag.linf = linf;
    diag.linf_reflected = linf_ref;
    diag.linf_best = std::min(linf, linf_ref);
    diag.l2_best = std::sqrt(std::min(l2, l2_ref) * dx);
    return diag;
}

} // namespace

RoundtripReport roundtrip(const MetricProfile& p, double alpha,
                          const RoundtripOptions& opt) {
    certify_single_well(p);
    if (alpha == 0.0) throw ConfigError("roundtrip: alpha must be nonzero");
    double a2 = alpha * alpha;

    // Data-driven threshold detection: bracket the area threshold from the
    // curve range alone, then bisect on the forward evaluator.
    double x_cap = std::min(opt.x_cap, p.x_limit() * 0.97);
    double lambda_cap = a2 * p.v(x_cap);
    InvariantCurve probe;
    probe.alpha = alpha;
    probe.lambda = {lambda_cap};
    probe.W = {area_at(p, alpha, lambda_cap)};
    RealFn evaluator = [&](double l) { return area_at(p, alpha, l); };
    double c_hat = detect_c(probe, evaluator);

    double beta_max = lambda_cap / a2 - c_hat;
    std::vector<double> lambda_grid(opt.lambda_points);
    for (std::size_t i = 0; i < opt.lambda_points; ++i)
        lambda_grid[i] =
            a2 * (c_hat + beta_max * static_cast<double>(i) /
                              static_cast<double>(opt.lambda_points - 1));

    RoundtripReport report;
    report.curve.alpha = alpha;
    report.curve.lambda = lambda_grid;
    report.curve.W = parallel_map<double>(
        lambda_grid.size(), opt.parallel_degree,
        [&](std::size_t i) { return area_at(p, alpha, lambda_grid[i]); });
    report.curve.Q = parallel_map<double>(
        lambda_grid.size(), opt.parallel_degree,
        [&](std::size_t i) { return q_at(p, alpha, lambda_grid[i]); });
    report.curve.c_detected = c_hat;

    SampledFunction D = recover_sum(report.curve, c_hat, opt.s_points, beta_max);
    SampledFunction F =
        recover_recip_sum(report.curve, c_hat, alpha, opt.s_points, beta_max);
    BranchPair bp = split_branches(D, F, opt.reconstruction);
    ReconstructionOptions rc = opt.reconstruction;
    rc.s_points = opt.s_points;
    report.result = assemble_profile(bp, c_hat, rc);
    report.result.D = D.values;
    report.result.F = F.values;

    report.diagnostics = compare_against(p, report.result, opt.compare_x);
    report.diagnostics.c_detected = c_hat;
    report.diagnostics.min_discriminant = bp.min_discriminant;
    return report;
}

ReconstructOutput reconstruct_from_curves(const ReconstructInput& in,
                                          const RoundtripOptions& opt) {
    const InvariantCurve& curve = in.curve;
    if (curve.W.empty() || curve.Q.empty())
        throw ConfigError("reconstruct_from_curves: need both W and Q");
    double c_hat = detect_c(curve);
    double a2 = curve.alpha * curve.alpha;
    double beta_max = curve.lambda.back() / a2 - c_hat;

    SampledFunction D = recover_sum(curve, c_hat, opt.s_points, beta_max);
    SampledFunction F =
        recover_recip_sum(curve, c_hat, curve.alpha, opt.s_points, beta_max);
    BranchPair bp = split_branches(D, F, opt.reconstruction);
    ReconstructOutput out;
    out.c_detected = c_hat;
    out.result = assemble_profile(bp, c_hat, opt.reconstruction);
    out.result.D = D.values;
    out.result.F = F.values;
    return out;
}

} // namespace specwell
