#include "specwell/measure.hpp"
#include "specwell/errors.hpp"
#include "specwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specwell {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

} // namespace

std::size_t auto_cells(int m, double lambda_max, const MeasureOptions& opt) {
    // The steepest eigenfunction oscillation is at wavenumber
    // k = max_x sqrt(v (lambda - m^2 v)) <= lambda/(2|m|).
    double k_max = lambda_max / (2.0 * std::max(1, std::abs(m)));
    double n = opt.cells_factor * std::max(8.0, k_max);
    // Keep room for the (N/4)^2 resolvability rule, on the coarse grid too.
    double n_resolve = 8.0 * 1.2 * std::sqrt(std::max(lambda_max, 1.0));
    n = std::max(n, n_resolve);
    std::size_t cells = static_cast<std::size_t>(std::ceil(n / 2.0)) * 2; // even
    return std::clamp(cells, opt.min_cells, opt.max_cells);
}

MeasureSample spectral_measure(const MetricProfile& p, const TestFunction& rho,
                               double alpha, int m, const MeasureOptions& opt) {
    if (m == 0) throw ConfigError("spectral_measure: weight m must be nonzero");
    if (alpha == 0.0) throw ConfigError("spectral_measure: alpha must be nonzero");

    MeasureSample sample;
    sample.alpha = alpha;
    sample.m = m;
    sample.hbar = alpha / static_cast<double>(m);

    double h2 = sample.hbar * sample.hbar;
    double lambda_need = rho.support_max() / h2;
    sample.lambda_max = lambda_need;

    std::size_t cells = opt.cells ? opt.cells : auto_cells(m, lambda_need, opt);
    if (opt.richardson) cells += cells % 2; // need N and N/2
    sample.cells = cells;

    double resolvable = resolvable_lambda_max(opt.richardson ? cells / 2 : cells);
    if (lambda_need > resolvable) {
        std::ostringstream msg;
        msg << "spectral_measure: supp(rho) needs lambda_max = " << lambda_need
            << " but N = " << cells << " resolves only " << resolvable;
        throw TruncatedSpectrumError(msg.str());
    }

    // Slight overshoot so the Richardson pairing sees matching eigenvalue
    // counts on both grids.
    double lambda_cap = lambda_need * 1.05 + 10.0 * h2;
    EquivariantSpectrum fine = equivariant_spectrum(p, m, cells, lambda_cap);
    double total = 0.0;
    if (opt.richardson) {
        EquivariantSpectrum coarse = equivariant_spectrum(p, m, cells / 2, lambda_cap);
        std::size_t count = std::min(fine.eigenvalues.size(), coarse.eigenvalues.size());
        for (std::size_t k = 0; k < count; ++k) {
            double extrapolated =
                (4.0 * fine.eigenvalues[k] - coarse.eigenvalues[k]) / 3.0;
            total += rho.derivative(0, h2 * extrapolated);
        }
        for (std::size_t k = count; k < fine.eigenvalues.size(); ++k)
            total += rho.derivative(0, h2 * fine.eigenvalues[k]);
    } else {
        for (double lambda : fine.eigenvalues) total += rho.derivative(0, h2 * lambda);
    }
    sample.value = kTwoPi * total;
    sample.complete = true;
    return sample;
}

std::pair<double, double> expansion_prediction(const MetricProfile& p,
                                               const TestFunction& rho,
                                               double alpha, int order) {
    certify_single_well(p);
    double i1 = first_invariant_smooth(p, rho, alpha);
    double i2 = (order >= 2) ? second_invariant_smooth(p, rho, alpha) : 0.0;
    return {i1, i2};
}

ConvergenceStudy convergence_study(const MetricProfile& p, const TestFunction& rho,
                                   double alpha, const std::vector<int>& m_list,
                                   const MeasureOptions& opt, int parallel_degree) {
    ConvergenceStudy study;
    auto [i1, i2] = expansion_prediction(p, rho, alpha, 2);
    study.I1 = i1;
    study.I2 = i2;

    std::vector<MeasureSample> samples = parallel_map<MeasureSample>(
        m_list.size(), parallel_degree, [&](std::size_t i) {
            return spectral_measure(p, rho, alpha, m_list[i], opt);
        });

    std::vector<double> log_h, log_r;
    for (const MeasureSample& s : samples) {
        ConvergenceRow row;
        row.m = s.m;
        row.hbar = s.hbar;
        row.mu = s.value;
        row.resid1 = s.hbar * s.value - i1;
        row.resid2 = (s.value - i1 / s.hbar) / s.hbar - i2;
        study.rows.push_back(row);
        if (std::abs(row.resid1) > 0.0) {
            log_h.push_back(std::log(std::abs(s.hbar)));
            log_r.push_back(std::log(std::abs(row.resid1)));
        }
    }
    if (log_h.size() >= 2) study.slope = fit_line(log_h, log_r).second;

    // Richardson over the two smallest hbar: r(h) = I2 + C h^2 + ...
    if (study.rows.size() >= 2) {
        std::vector<ConvergenceRow> sorted = study.rows;
        std::sort(sorted.begin(), sorted.end(),
                  [](const ConvergenceRow& a, const ConvergenceRow& b) {
                      return std::abs(a.hbar) < std::abs(b.hbar);
                  });
        double h1 = sorted[0].hbar, h2 = sorted[1].hbar;
        double r1 = (sorted[0].mu - i1 / h1) / h1;
        double r2 = (sorted[1].mu - i1 / h2) / h2;
        study.I2_extrapolated = (r1 * h2 * h2 - r2 * h1 * h1) / (h2 * h2 - h1 * h1);
    }
    return study;
}

} // namespace specwell
