#pragma once

#include "specwell/profiles.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace specwell {

/// Flat configuration for the command-line front end. Parsed from an
/// INI-style file with one section per module; unknown sections or keys are
/// rejected, numeric ranges validated at parse time.
struct RunConfig {
    // [profile]
    std::string profile_family = "round_sphere";
    std::vector<double> profile_coefficients; // constant term first
    std::string profile_spline_file;
    std::size_t profile_grid_size = 10000;

    // [run]
    double alpha = 1.0;
    std::string output_dir = "out";
    int parallelism = 1;
    std::uint64_t seed = 12345;

    // [spectrum]
    std::size_t spectrum_cells = 4096;
    double spectrum_lambda_max = 50.0;
    int spectrum_m_min = 0;
    int spectrum_m_max = 5;

    // [measure]
    std::vector<int> measure_modes = {16, 24, 32, 48, 64, 96, 128};
    std::string measure_rho = "mollified:4.0:0.1";
    std::size_t measure_cells = 0; // 0 = auto
    double measure_cells_factor = 48.0;
    bool measure_richardson = true;

    // [invariants]
    std::size_t invariants_lambda_points = 200;
    double invariants_lambda_min = 0.0; // 0 = auto
    double invariants_lambda_max = 0.0; // 0 = auto

    // [symbols]
    int symbols_max_order = 4;

    // [reconstruct]
    std::string reconstruct_curves_csv;
    std::size_t reconstruct_s_points = 400;
    double reconstruct_delta_frac = 1e-2;
    double reconstruct_merge_tol = 1.5e-3;
    std::size_t reconstruct_x_points = 801;

    // [roundtrip]
    std::size_t roundtrip_lambda_points = 200;
    std::size_t roundtrip_s_points = 400;
    double roundtrip_x_cap = 0.9;
    double roundtrip_compare_x = 0.8;
};

/// Parses the config file; throws ConfigError on malformed input.
RunConfig parse_config(const std::string& path);

/// Builds the profile described by the [profile] section.
MetricProfile profile_from_config(const RunConfig& cfg);

/// Runs one subcommand. Returns the process exit status: 0 ok, 2 config
/// error, 3 numerical failure (stage reported on stderr). Output files land
/// in cfg.output_dir (overridable by the SPECWELL_OUTPUT_DIR environment
/// variable).
int run_subcommand(const std::string& subcommand, const RunConfig& cfg);

/// 17-significant-digit formatting used for all CSV output.
std::string format_g17(double value);

} // namespace specwell
