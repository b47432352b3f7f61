#pragma once

#include "specwell/sampled.hpp"

#include <array>
#include <functional>

namespace specwell {

using KernelCoeff = std::function<double(double S, double beta)>;

/// Fractional integration J^a g(s) = (1/Gamma(a)) int_0^s (s-nu)^(a-1) g dnu
/// by product integration: g is linear on each cell, the singular moments are
/// exact. Grid must start at 0.
SampledFunction frac_integrate(const SampledFunction& g, double a);

struct AbelInvertOptions {
    int smoothing_half_window = 3;   // 7-point local quadratic fits
    double noise_threshold = 1e-3;   // relative to max |J^(1/2) G|
};

/// Solves G = Gamma(3/2) J^(3/2) h for h, via h = (J^(1/2)G)'' / Gamma(3/2)
/// with smoothed second differences. Throws NoiseDominatedError when the
/// local fits cannot represent the data.
SampledFunction abel_invert_threehalves(const SampledFunction& G,
                                        const AbelInvertOptions& opt = {});

struct VolterraOptions {
    double pivot_tol = 1e-10; // relative floor for the diagonal pivot
};

/// Solves G(beta) = int_0^beta sqrt(beta-S) [A(S,beta) F(S) + B(S,beta) F'(S)] dS
/// for F with F(0) = 0. Requires B(beta,beta) = 0. The equation is first
/// differentiated in beta (the boundary term vanishes), giving an Abel-type
/// kernel with an integrable singularity; the resulting lower-triangular
/// system is solved by forward substitution with product-integrated weights.
/// G may carry its derivative; otherwise a fourth-order difference is used.
SampledFunction volterra_solve(const SampledFunction& G, const KernelCoeff& A,
                               const KernelCoeff& B,
                               const VolterraOptions& opt = {});

/// Coefficients of the recovered first-order relation for 1/f1' + 1/f2'
/// (factored forms; the term-by-term forms are kernel_A_termwise /
/// kernel_B_termwise and agree identically).
double kernel_A(double S, double beta, double c);
double kernel_B(double S, double beta, double c);
double kernel_A_termwise(double S, double beta, double c);
double kernel_B_termwise(double S, double beta, double c);

/// Partial-fraction residues of A/B over (S+c), (beta-S), (2S+3beta+5c);
/// returns {q1, q2, q3} = {-5/4, -3/4, 6} for all beta, c > 0.
std::array<double, 3> kernel_ratio_residues(double beta, double c);

/// The one-parameter homogeneous family annihilated by A + B d/dS:
/// f(S) = C (S+c)^(5/4) (beta-S)^(-3/4) (2S+3beta+5c)^(-3), and its
/// S-derivative.
double homogeneous_solution(double S, double beta, double c, double C);
double homogeneous_solution_derivative(double S, double beta, double c, double C);

} // namespace specwell
