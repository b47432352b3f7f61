#pragma once

#include "specwell/invariants.hpp"
#include "specwell/laplace.hpp"
#include "specwell/profiles.hpp"
#include "specwell/testfunction.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace specwell {

/// One sample of the equivariant spectral measure at weight m, with
/// hbar = alpha/m. The value carries the 2*pi angular normalization of the
/// defining torus integral: mu = 2*pi * sum_k rho(hbar^2 lambda_{m,k}).
struct MeasureSample {
    double alpha = 0.0;
    int m = 0;
    double hbar = 0.0;
    double value = 0.0;
    std::size_t cells = 0;       // fine-grid resolution used
    double lambda_max = 0.0;     // spectral range needed by supp(rho)
    bool complete = false;       // the sum covered the whole support
};

struct MeasureOptions {
    std::size_t cells = 0;       // 0 = choose from the weight (see cells_factor)
    double cells_factor = 48.0;  // auto rule: N ~ cells_factor * lambda_max/(2|m|)
    bool richardson = true;      // eliminate the h^2 eigenvalue error with N and N/2
    std::size_t min_cells = 512;
    std::size_t max_cells = 1u << 21;
};

/// Number of cells the auto rule picks for weight m and the given spectral
/// range (before clamping).
std::size_t auto_cells(int m, double lambda_max, const MeasureOptions& opt);

MeasureSample spectral_measure(const MetricProfile& p, const TestFunction& rho,
                               double alpha, int m,
                               const MeasureOptions& opt = {});

/// Numerically integrates the first and second smooth invariants (the
/// hbar^-1 and hbar^1 coefficients of the measure expansion; the hbar^0 term
/// vanishes by parity and is not computed). order = 1 skips the second.
std::pair<double, double> expansion_prediction(const MetricProfile& p,
                                               const TestFunction& rho,
                                               double alpha, int order = 2);

struct ConvergenceRow {
    int m = 0;
    double hbar = 0.0;
    double mu = 0.0;
    double resid1 = 0.0; // hbar*mu - I1
    double resid2 = 0.0; // (mu - I1/hbar)/hbar - I2
};

struct ConvergenceStudy {
    double I1 = 0.0, I2 = 0.0;
    std::vector<ConvergenceRow> rows;
    double slope = 0.0;          // log-log fit of |resid1| against hbar
    double I2_extrapolated = 0.0; // Richardson limit of (mu - I1/hbar)/hbar
};

ConvergenceStudy convergence_study(const MetricProfile& p, const TestFunction& rho,
                                   double alpha, const std::vector<int>& m_list,
                                   const MeasureOptions& opt = {},
                                   int parallel_degree = 1);

} // namespace specwell
