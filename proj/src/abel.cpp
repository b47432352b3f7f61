#include "specwell/abel.hpp"
#include "specwell/errors.hpp"
#include "specwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specwell {

namespace {

void require_zero_based(const SampledFunction& g, const char* who) {
    if (g.size() < 4) throw NumericalError(std::string(who) + ": too few samples");
    if (!(g.h > 0)) throw NumericalError(std::string(who) + ": grid spacing must be positive");
    if (std::abs(g.x0) > 1e-12 * g.h)
        throw NumericalError(std::string(who) + ": grid must start at 0");
}

} // namespace

SampledFunction frac_integrate(const SampledFunction& g, double a) {
    if (!(a > 0)) throw ConfigError("frac_integrate: order a must be positive");
    require_zero_based(g, "frac_integrate");
    const std::size_t n = g.size();
    const double h = g.h;

    // Cell moments for source-cell distance d = i - j:
    //   M0(d) = int over one cell of (s_i - nu)^(a-1) dnu
    //   M1(d) = same against the local linear coordinate (nu - s_j)/h
    std::vector<double> m0(n), m1(n);
    std::vector<double> pow_a(n + 1), pow_a1(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        pow_a[d] = std::pow(d * h, a);
        pow_a1[d] = std::pow(d * h, a + 1.0);
    }
    for (std::size_t d = 1; d < n; ++d) {
        double i0 = (pow_a[d] - pow_a[d - 1]) / a;
        double j1 = (pow_a1[d] - pow_a1[d - 1]) / (a + 1.0);
        m0[d] = i0;
        m1[d] = (static_cast<double>(d) * h * i0 - j1) / h;
    }

    SampledFunction out;
    out.x0 = g.x0;
    out.h = h;
    out.values.assign(n, 0.0);
    const double inv_gamma = 1.0 / std::tgamma(a);
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            std::size_t d = i - j;
            acc += g.values[j] * (m0[d] - m1[d]) + g.values[j + 1] * m1[d];
        }
        out.values[i] = inv_gamma * acc;
    }
    return out;
}

SampledFunction abel_invert_threehalves(const SampledFunction& G,
                                        const AbelInvertOptions& opt) {
    require_zero_based(G, "abel_invert_threehalves");
    SampledFunction half = frac_integrate(G, 0.5);
    SavGolResult sg =
        savgol_second_derivative(half.values, half.h, opt.smoothing_half_window);

    // Noise diagnostic away from the boundary windows (those are known to be
    // one-sided and the data may be weakly singular at 0).
    double scale = 0.0;
    for (double u : half.values) scale = std::max(scale, std::abs(u));
    const std::size_t skip = 2 * static_cast<std::size_t>(opt.smoothing_half_window);
    if (half.size() > 2 * skip + 4) {
        double worst = 0.0;
        // Recompute the interior residual from the returned derivative is not
        // available; use the global fit diagnostic scaled conservatively.
        worst = sg.max_fit_residual;
        if (scale > 0 && worst > opt.noise_threshold * scale) {
            std::ostringstream msg;
            msg << "abel_invert_threehalves: smoothing residual " << worst
                << " exceeds " << opt.noise_threshold << " * " << scale;
            throw NoiseDominatedError(msg.str());
        }
    }

    const double gamma_32 = std::tgamma(1.5); // sqrt(pi)/2
    SampledFunction out;
    out.x0 = G.x0;
    out.h = G.h;
    out.values.resize(G.size());
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = sg.second_derivative[i] / gamma_32;
    return out;
}

SampledFunction volterra_solve(const SampledFunction& G, const KernelCoeff& A,
                               const KernelCoeff& B, const VolterraOptions& opt) {
    require_zero_based(G, "volterra_solve");
    const std::size_t n = G.size();
    const double h = G.h;

    std::vector<double> rhs =
        G.derivative ? *G.derivative : fd_derivative(G.values, h);

    const double fd_step = 1e-6 * std::max(1.0, G.x_max());
    auto dA_dbeta = [&](double S, double beta) {
        return (A(S, beta + fd_step) - A(S, beta - fd_step)) / (2 * fd_step);
    };
    auto dB_dbeta = [&](double S, double beta) {
        return (B(S, beta + fd_step) - B(S, beta - fd_step)) / (2 * fd_step);
    };

    // After d/dbeta the equation reads
    //   G'(beta) = int_0^beta [ (beta-S)^(-1/2) A F / 2
    //                         + (beta-S)^(+1/2) (dA/dbeta) F
    //                         + (beta-S)^(+1/2) K F' ] dS,
    //   K = B/(2(beta-S)) + dB/dbeta   (finite since B(beta,beta) = 0).
    // F is piecewise linear, F' cell-constant; the weight moments are exact.
    SampledFunction F;
    F.x0 = 0.0;
    F.h = h;
    F.values.assign(n, 0.0);

    // Exact moments on a cell at distance d = i-j from the diagonal, for
    // weights (beta-S)^(-1/2) and (beta-S)^(+1/2):
    //   I0 = int w dS; I1 = int w (S-S_j)/h dS. They depend only on d.
    std::vector<double> w_lo_0(n + 1), w_lo_1(n + 1), w_hi_0(n + 1), w_hi_1(n + 1);
    for (std::size_t d = 1; d < n; ++d) {
        double r0 = static_cast<double>(d) * h;       // beta - S_j
        double r1 = static_cast<double>(d - 1) * h;   // beta - S_{j+1}
        { // p = -1/2
            double i0 = 2.0 * (std::sqrt(r0) - std::sqrt(r1));
            double j1 = (2.0 / 3.0) * (std::pow(r0, 1.5) - std::pow(r1, 1.5));
            w_lo_0[d] = i0;
            w_lo_1[d] = (r0 * i0 - j1) / h;
        }
        { // p = +1/2
            double i0 = (2.0 / 3.0) * (std::pow(r0, 1.5) - std::pow(r1, 1.5));
            double j1 = (2.0 / 5.0) * (std::pow(r0, 2.5) - std::pow(r1, 2.5));
            w_hi_0[d] = i0;
            w_hi_1[d] = (r0 * i0 - j1) / h;
        }
    }

    for (std::size_t i = 1; i < n; ++i) {
        const double beta = static_cast<double>(i) * h;
        double known = 0.0;
        double diag = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            std::size_t d = i - j;
            double s_j = static_cast<double>(j) * h;
            double s_j1 = s_j + h;
            double s_mid = s_j + 0.5 * h;

            // F-part: endpoint coefficients of the linear interpolant.
            double phi_lo_j = 0.5 * A(s_j, beta);
            double phi_lo_j1 = 0.5 * A(s_j1, beta);
            double phi_hi_j = dA_dbeta(s_j, beta);
            double phi_hi_j1 = dA_dbeta(s_j1, beta);
            double coef_j = phi_lo_j * (w_lo_0[d] - w_lo_1[d]) + phi_hi_j * (w_hi_0[d] - w_hi_1[d]);
            double coef_j1 = phi_lo_j1 * w_lo_1[d] + phi_hi_j1 * w_hi_1[d];

            // F'-part: midpoint coefficient, cell-constant derivative.
            double K = B(s_mid, beta) / (2.0 * (beta - s_mid)) + dB_dbeta(s_mid, beta);
            double deriv_w = K * w_hi_0[d] / h;

            // Accumulate: F_j and F_{j+1} contributions; F_i is the unknown.
            double c_j = coef_j - deriv_w;
            double c_j1 = coef_j1 + deriv_w;
            if (j + 1 == i)
                diag += c_j1;
            else
                known += c_j1 * F.values[j + 1];
            known += c_j * F.values[j]; // F_0 = 0 contributes nothing
        }
        double scale = std::sqrt(h) * (std::abs(A(beta, beta)) + std::abs(dB_dbeta(beta, beta)) + 1e-30);
        if (std::abs(diag) < opt.pivot_tol * scale) {
            std::ostringstream msg;
            msg << "volterra_solve: ill-conditioned diagonal " << diag
                << " at beta = " << beta;
            throw IllConditionedError(msg.str());
        }
        F.values[i] = (rhs[i] - known) / diag;
    }
    return F;
}

// ---------------------------------------------------------------------------
// Reconstruction kernels
// ---------------------------------------------------------------------------

double kernel_A(double S, double beta, double c) {
    double sc = S + c, bc = beta + c;
    double quad = sc * sc - sc * bc + 0.75 * bc * bc;
    return -quad / (9.0 * sc * sc * std::sqrt(sc));
}

double kernel_B(double S, double beta, double c) {
    double sc = S + c, bc = beta + c;
    (void)bc;
    return (beta - S) * (2.0 * S + 3.0 * beta + 5.0 * c) / (45.0 * sc * std::sqrt(sc));
}

double kernel_A_termwise(double S, double beta, double c) {
    double sc = S + c, bc = beta + c;
    double rt = std::sqrt(sc);
    return -1.0 / (9.0 * rt) + bc / (9.0 * sc * rt) - bc * bc / (12.0 * sc * sc * rt);
}

double kernel_B_termwise(double S, double beta, double c) {
    double sc = S + c, bc = beta + c;
    double rt = std::sqrt(sc);
    return -bc / (45.0 * rt) + bc * bc / (15.0 * sc * rt) - 2.0 * rt / 45.0;
}

std::array<double, 3> kernel_ratio_residues(double beta, double c) {
    // A/B = N(S) / ((S+c)(beta-S)(2S+3beta+5c)) with
    // N(S) = -5 ((S+c)^2 - (S+c)(beta+c) + 3/4 (beta+c)^2); evaluate N at
    // each pole against the product of the remaining linear factors.
    auto N = [&](double S) {
        double sc = S + c, bc = beta + c;
        return -5.0 * (sc * sc - sc * bc + 0.75 * bc * bc);
    };
    double q1 = N(-c) / ((beta + c) * (3.0 * beta + 3.0 * c));
    double q2 = N(beta) / ((beta + c) * (5.0 * beta + 5.0 * c));
    double s3 = -(3.0 * beta + 5.0 * c) / 2.0;
    double q3 = 2.0 * N(s3) / ((s3 + c) * (beta - s3) * 2.0);
    return {q1, q2, q3};
}

double homogeneous_solution(double S, double beta, double c, double C) {
    return C * std::pow(S + c, 1.25) * std::pow(beta - S, -0.75) *
           std::pow(2.0 * S + 3.0 * beta + 5.0 * c, -3.0);
}

double homogeneous_solution_derivative(double S, double beta, double c, double C) {
    double f = homogeneous_solution(S, beta, c, C);
    return f * (1.25 / (S + c) + 0.75 / (beta - S) -
                6.0 / (2.0 * S + 3.0 * beta + 5.0 * c));
}

} // namespace specwell
