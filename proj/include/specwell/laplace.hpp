#pragma once

#include "specwell/profiles.hpp"

#include <cstddef>
#include <vector>

namespace specwell {

/// Symmetric tridiagonal finite-volume discretization of the weight-m mode
/// operator L_m f = -(f'/v)' + m^2 v f on cell centers x_i = -1 + (i+1/2)h,
/// h = 2/N, with zero flux at the poles.
struct ModeOperator {
    int m = 0;
    std::size_t cells = 0;
    std::vector<double> diag;
    std::vector<double> offdiag;
};

/// Eigenvalues of the mode operator for one weight, ascending.
struct EquivariantSpectrum {
    int m = 0;
    std::size_t cells = 0;
    double lambda_max = 0.0;
    std::vector<double> eigenvalues;
};

/// Assembles the mode operator. Requires N >= 16 and a pole-regular profile
/// (the zero-flux closure needs 1/v -> 0 at the poles).
ModeOperator laplacian_mode_operator(const MetricProfile& p, int m, std::size_t cells);

/// Largest eigenvalue the N-cell grid resolves to useful accuracy (rule of
/// thumb (N/4)^2); discrete eigenvalues above it are discarded.
double resolvable_lambda_max(std::size_t cells);

/// All discrete eigenvalues <= lambda_max of the mode operator, ascending.
EquivariantSpectrum equivariant_spectrum(const MetricProfile& p, int m,
                                         std::size_t cells, double lambda_max);

} // namespace specwell
