#include "specwell/cli.hpp"
#include "specwell/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

// Parse "a..b" into an inclusive integer range.
std::pair<int, int> parse_range(const std::string& spec) {
    auto pos = spec.find("..");
    if (pos == std::string::npos)
        throw specwell::ConfigError("m-range must look like a..b");
    return {std::stoi(spec.substr(0, pos)), std::stoi(spec.substr(pos + 2))};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant spectra and inverse spectral reconstruction for "
                 "circle-invariant metrics on the two-sphere"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "Config file (INI sections per module)");

    // Per-subcommand flag overrides.
    std::string m_range, rho_spec, modes_csv, lambda_grid, curves_csv;
    double lambda_max = 0.0, alpha = 0.0;
    long cells = 0;
    int max_order = -1;

    CLI::App* spectrum = app.add_subcommand("spectrum", "Equivariant eigenvalues per weight");
    spectrum->add_option("--m-range", m_range, "Weights a..b");
    spectrum->add_option("--lambda-max", lambda_max, "Largest eigenvalue");
    spectrum->add_option("--cells", cells, "Finite-volume cells");

    CLI::App* measure = app.add_subcommand("measure", "Spectral measure vs expansion");
    measure->add_option("--alpha", alpha, "Weight scale alpha");
    measure->add_option("--modes", modes_csv, "Comma-separated weights");
    measure->add_option("--rho", rho_spec, "Test function spec (mollified:L:EPS, bump:C:W, exp:D:R)");

    CLI::App* invariants = app.add_subcommand("invariants", "W and Q curves");
    invariants->add_option("--alpha", alpha, "Weight scale alpha");
    invariants->add_option("--lambda-grid", lambda_grid, "Grid spec min:max:points");

    CLI::App* symbols = app.add_subcommand("symbols", "Dump expansion coefficients");
    symbols->add_option("--max-order", max_order, "Largest order k");

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "Rebuild v from W,Q curves");
    reconstruct->add_option("--curves", curves_csv, "CSV with lambda,W,Q");
    reconstruct->add_option("--alpha", alpha, "Weight scale alpha");

    CLI::App* roundtrip = app.add_subcommand("roundtrip", "Forward curves then reconstruct");
    roundtrip->add_option("--alpha", alpha, "Weight scale alpha");

    CLI11_PARSE(app, argc, argv);

    try {
        specwell::RunConfig cfg;
        if (!config_path.empty()) cfg = specwell::parse_config(config_path);

        if (alpha != 0.0) cfg.alpha = alpha;
        if (cells > 0) cfg.spectrum_cells = static_cast<std::size_t>(cells);
        if (lambda_max > 0.0) cfg.spectrum_lambda_max = lambda_max;
        if (!m_range.empty()) {
            auto [lo, hi] = parse_range(m_range);
            cfg.spectrum_m_min = lo;
            cfg.spectrum_m_max = hi;
        }
        if (!rho_spec.empty()) cfg.measure_rho = rho_spec;
        if (!modes_csv.empty()) {
            cfg.measure_modes.clear();
            std::string tok;
            std::stringstream ss(modes_csv);
            while (std::getline(ss, tok, ',')) cfg.measure_modes.push_back(std::stoi(tok));
        }
        if (!lambda_grid.empty()) {
            auto p1 = lambda_grid.find(':');
            auto p2 = lambda_grid.rfind(':');
            if (p1 == std::string::npos || p2 == p1)
                throw specwell::ConfigError("lambda-grid must look like min:max:points");
            cfg.invariants_lambda_min = std::stod(lambda_grid.substr(0, p1));
            cfg.invariants_lambda_max = std::stod(lambda_grid.substr(p1 + 1, p2 - p1 - 1));
            cfg.invariants_lambda_points = std::stoul(lambda_grid.substr(p2 + 1));
        }
        if (max_order >= 0) cfg.symbols_max_order = max_order;
        if (!curves_csv.empty()) cfg.reconstruct_curves_csv = curves_csv;

        std::string sub;
        if (spectrum->parsed()) sub = "spectrum";
        else if (measure->parsed()) sub = "measure";
        else if (invariants->parsed()) sub = "invariants";
        else if (symbols->parsed()) sub = "symbols";
        else if (reconstruct->parsed()) sub = "reconstruct";
        else if (roundtrip->parsed()) sub = "roundtrip";

        return specwell::run_subcommand(sub, cfg);
    } catch (const specwell::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
