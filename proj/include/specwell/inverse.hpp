#pragma once

#include "specwell/abel.hpp"
#include "specwell/invariants.hpp"
#include "specwell/profiles.hpp"
#include "specwell/sampled.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace specwell {

/// Locates the well minimum c from the area curve: c = lambda*/alpha^2 where
/// lambda* is the threshold above which W becomes nonzero. When an evaluator
/// lambda -> W(lambda) is supplied the threshold is refined by bisection;
/// otherwise the sampled curve is interpolated at the crossing.
double detect_c(const InvariantCurve& W,
                const std::optional<RealFn>& evaluator = std::nullopt,
                double threshold_frac = 1e-8);

struct ReconstructionOptions {
    std::size_t s_points = 400;      // uniform grid in S = s - c
    double delta_frac = 1e-2;        // excluded zone near S = 0, as a fraction of beta_max
    double fit_window_factor = 4.0;  // asymptotic fit window [delta, factor*delta]
    double merge_tol = 1.5e-3;       // relative discriminant below which branches merge
    double disc_tol = 0.05;          // NegativeDiscriminant beyond this relative size
    std::size_t x_points = 801;      // output grid over [-x_max, x_max]
};

/// Recovers D(s) = f1'(s) + f2'(s) by Abel inversion of the area curve.
/// Returned on the uniform grid s = c + j*h; values inside the near-minimum
/// exclusion zone are extrapolation-quality only.
SampledFunction recover_sum(const InvariantCurve& W, double c,
                            std::size_t s_points = 400,
                            std::optional<double> beta_max = std::nullopt);

/// Recovers F(S) = 1/f1' + 1/f2' at s = S + c from the second-invariant
/// curve by the weakly singular Volterra solve.
SampledFunction recover_recip_sum(const InvariantCurve& Q, double c, double alpha,
                                  std::size_t s_points = 400,
                                  std::optional<double> beta_max = std::nullopt);

/// The unordered derivative pair {f1', f2'} from D and F, pointwise sorted
/// (p >= q) and continuity-tracked across grid steps.
struct BranchPair {
    double c = 0.0;
    std::vector<double> s;  // grid, s[0] = c
    std::vector<double> p;  // larger branch
    std::vector<double> q;  // smaller branch
    std::vector<char> merged;  // discriminant below the merge tolerance
    double min_discriminant = 0.0; // most negative relative discriminant seen
};

BranchPair split_branches(const SampledFunction& D, const SampledFunction& F,
                          const ReconstructionOptions& opt = {});

struct ReconstructionResult {
    double c = 0.0;
    double curvature = 0.0;           // fitted v''(0)
    std::vector<double> s;            // S-grid shifted to s = c + S
    std::vector<double> D, F;         // recovered sum and reciprocal sum
    std::vector<double> f1, f2;       // integrated branches, f_i(c) = 0
    double x_max = 0.0;
    std::vector<double> x;            // output grid on [-x_max, x_max]
    std::vector<double> v;            // reconstructed profile
};

ReconstructionResult assemble_profile(const BranchPair& bp, double c,
                                      const ReconstructionOptions& opt = {});

struct StageDiagnostics {
    double c_detected = 0.0;
    double curvature = 0.0;
    double min_discriminant = 0.0;
    double linf = 0.0;           // against the true profile, identity
    double linf_reflected = 0.0; // against the mirrored profile
    double linf_best = 0.0;      // min of the two
    double l2_best = 0.0;
    double x_window = 0.0;       // half-width of the comparison window
};

struct RoundtripOptions {
    std::size_t lambda_points = 200;
    std::size_t s_points = 400;
    double x_cap = 0.9;          // curves extend to lambda = alpha^2 v(x_cap)
    double compare_x = 0.8;      // error window |x| <= compare_x
    ReconstructionOptions reconstruction;
    int parallel_degree = 1;
};

struct RoundtripReport {
    InvariantCurve curve;        // W and Q on the lambda grid
    ReconstructionResult result;
    StageDiagnostics diagnostics;
};

/// Full pipeline: forward curves -> detect_c -> recover_sum ->
/// recover_recip_sum -> split_branches -> assemble_profile, with error
/// reporting up to reflection against the input profile.
RoundtripReport roundtrip(const MetricProfile& p, double alpha,
                          const RoundtripOptions& opt = {});

/// Reconstruction from externally supplied curves (CSV path): same pipeline
/// from detect_c onward.
struct ReconstructInput {
    InvariantCurve curve; // lambda, W, Q filled
};

struct ReconstructOutput {
    ReconstructionResult result;
    double c_detected = 0.0;
};

ReconstructOutput reconstruct_from_curves(const ReconstructInput& in,
                                          const RoundtripOptions& opt = {});

} // namespace specwell
