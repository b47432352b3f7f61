#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace specwell {

/// Function sampled on a uniform grid x0, x0+h, ..., x0+(n-1)h, optionally
/// carrying derivative samples on the same grid.
struct SampledFunction {
    double x0 = 0.0;
    double h = 0.0;
    std::vector<double> values;
    std::optional<std::vector<double>> derivative;

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + static_cast<double>(i) * h; }
    double x_max() const { return values.empty() ? x0 : x(values.size() - 1); }

    std::vector<double> grid() const {
        std::vector<double> g(values.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = x(i);
        return g;
    }
};

/// Uniform grid with n points covering [a, b] inclusive.
SampledFunction make_uniform_grid(double a, double b, std::size_t n);

} // namespace specwell
