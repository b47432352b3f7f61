#include "specwell/laplace.hpp"
#include "specwell/errors.hpp"
#include "specwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specwell {

ModeOperator laplacian_mode_operator(const MetricProfile& p, int m, std::size_t cells) {
    if (cells < 16) throw ConfigError("laplacian_mode_operator: need N >= 16");
    if (!p.pole_regular())
        throw PoleRegularityError(
            "laplacian_mode_operator: profile is not pole-regular, zero-flux "
            "closure invalid");
    const std::size_t n = cells;
    const double h = 2.0 / static_cast<double>(n);

    std::vector<double> vc(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = -1.0 + (static_cast<double>(i) + 0.5) * h;
        vc[i] = p.v(x);
    }

    // Face conductivities: harmonic average of cell-center v gives the face
    // value of 1/v; tends to zero at the poles, so the boundary faces carry
    // no flux.
    std::vector<double> face(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) face[i] = 2.0 / (vc[i - 1] + vc[i]);

    ModeOperator op;
    op.m = m;
    op.cells = n;
    op.diag.resize(n);
    op.offdiag.resize(n - 1);
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) {
        op.diag[i] = (face[i] + face[i + 1]) / (h * h) + m2 * vc[i];
        if (i + 1 < n) op.offdiag[i] = -face[i + 1] / (h * h);
    }
    return op;
}

double resolvable_lambda_max(std::size_t cells) {
    double q = static_cast<double>(cells) / 4.0;
    return q * q;
}

EquivariantSpectrum equivariant_spectrum(const MetricProfile& p, int m,
                                         std::size_t cells, double lambda_max) {
    if (lambda_max > resolvable_lambda_max(cells)) {
        std::ostringstream msg;
        msg << "equivariant_spectrum: lambda_max = " << lambda_max
            << " exceeds the resolvable range " << resolvable_lambda_max(cells)
            << " at N = " << cells;
        throw TruncatedSpectrumError(msg.str());
    }
    ModeOperator op = laplacian_mode_operator(p, m, cells);
    EquivariantSpectrum spec;
    spec.m = m;
    spec.cells = cells;
    spec.lambda_max = lambda_max;
    spec.eigenvalues = tridiag_eigenvalues_below(op.diag, op.offdiag, lambda_max);
    // The weight-m problem is a 1D Sturm–Liouville operator: simple spectrum.
    for (std::size_t k = 0; k + 1 < spec.eigenvalues.size(); ++k) {
        if (!(spec.eigenvalues[k] < spec.eigenvalues[k + 1]))
            throw NumericalError("equivariant_spectrum: eigenvalues not strictly increasing");
    }
    return spec;
}

} // namespace specwell
