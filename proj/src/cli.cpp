#include "specwell/cli.hpp"
#include "specwell/errors.hpp"
#include "specwell/inverse.hpp"
#include "specwell/invariants.hpp"
#include "specwell/laplace.hpp"
#include "specwell/measure.hpp"
#include "specwell/semiclassics.hpp"
#include "specwell/testfunction.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace specwell {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + s);
    }
}

long to_long(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + s);
    }
}

bool to_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("config: bad boolean value for '" + key + "': " + s);
}

std::size_t to_size(const std::string& s, const std::string& key, bool allow_zero = false) {
    long v = to_long(s, key);
    if (v < 0 || (!allow_zero && v == 0))
        throw ConfigError("config: '" + key + "' must be positive");
    return static_cast<std::size_t>(v);
}

TestFunction rho_from_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw ConfigError("rho spec is empty");
    if (parts[0] == "mollified" && parts.size() == 3)
        return TestFunction::mollified_indicator(to_double(parts[1], "rho"),
                                                 to_double(parts[2], "rho"));
    if (parts[0] == "bump" && parts.size() == 3)
        return TestFunction::smooth_bump(to_double(parts[1], "rho"),
                                         to_double(parts[2], "rho"));
    if (parts[0] == "exp" && parts.size() == 3)
        return TestFunction::exponential(to_double(parts[1], "rho"),
                                         to_double(parts[2], "rho"));
    throw ConfigError("rho spec must be mollified:LEVEL:EPS, bump:CENTER:WIDTH "
                      "or exp:DECAY:RADIUS; got " + spec);
}

fs::path output_dir(const RunConfig& cfg) {
    const char* env = std::getenv("SPECWELL_OUTPUT_DIR");
    fs::path dir = env && *env ? fs::path(env) : fs::path(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericalError("cannot open output file " + path.string());
    out << text;
}

json config_echo(const RunConfig& c) {
    json j;
    j["profile"] = {{"family", c.profile_family},
                    {"coefficients", c.profile_coefficients},
                    {"spline_file", c.profile_spline_file},
                    {"grid_size", c.profile_grid_size}};
    j["run"] = {{"alpha", c.alpha},
                {"output_dir", c.output_dir},
                {"parallelism", c.parallelism},
                {"seed", c.seed}};
    j["spectrum"] = {{"cells", c.spectrum_cells},
                     {"lambda_max", c.spectrum_lambda_max},
                     {"m_min", c.spectrum_m_min},
                     {"m_max", c.spectrum_m_max}};
    j["measure"] = {{"modes", c.measure_modes},
                    {"rho", c.measure_rho},
                    {"cells", c.measure_cells},
                    {"cells_factor", c.measure_cells_factor},
                    {"richardson", c.measure_richardson}};
    j["invariants"] = {{"lambda_points", c.invariants_lambda_points},
                       {"lambda_min", c.invariants_lambda_min},
                       {"lambda_max", c.invariants_lambda_max}};
    j["symbols"] = {{"max_order", c.symbols_max_order}};
    j["reconstruct"] = {{"curves_csv", c.reconstruct_curves_csv},
                        {"s_points", c.reconstruct_s_points},
                        {"delta_frac", c.reconstruct_delta_frac},
                        {"merge_tol", c.reconstruct_merge_tol},
                        {"x_points", c.reconstruct_x_points}};
    j["roundtrip"] = {{"lambda_points", c.roundtrip_lambda_points},
                      {"s_points", c.roundtrip_s_points},
                      {"x_cap", c.roundtrip_x_cap},
                      {"compare_x", c.roundtrip_compare_x}};
    return j;
}

void write_manifest(const fs::path& dir, const std::string& subcommand,
                    const RunConfig& cfg, const std::vector<std::string>& outputs,
                    double wall_seconds) {
    json m;
    m["subcommand"] = subcommand;
    m["version"] = "1.0.0";
    m["wall_time_s"] = wall_seconds;
    m["outputs"] = outputs;
    m["config"] = config_echo(cfg);
    write_text(dir / ("manifest_" + subcommand + ".json"), m.dump(2) + "\n");
}

// --------------------------- subcommands ----------------------------------

std::string current_stage;

int cmd_spectrum(const RunConfig& cfg, const fs::path& dir,
                 std::vector<std::string>& outputs) {
    current_stage = "profile";
    MetricProfile p = profile_from_config(cfg);
    current_stage = "spectrum";
    if (cfg.spectrum_m_min > cfg.spectrum_m_max)
        throw ConfigError("spectrum: m_min > m_max");
    std::vector<int> modes;
    for (int m = cfg.spectrum_m_min; m <= cfg.spectrum_m_max; ++m) modes.push_back(m);
    auto spectra = parallel_map<EquivariantSpectrum>(
        modes.size(), cfg.parallelism, [&](std::size_t i) {
            return equivariant_spectrum(p, modes[i], cfg.spectrum_cells,
                                        cfg.spectrum_lambda_max);
        });
    std::ostringstream csv;
    csv << "m,k,lambda\n";
    for (const auto& spec : spectra) {
        for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
            csv << spec.m << "," << k << "," << format_g17(spec.eigenvalues[k]) << "\n";
    }
    write_text(dir / "spectrum.csv", csv.str());
    outputs.push_back("spectrum.csv");
    return 0;
}

int cmd_measure(const RunConfig& cfg, const fs::path& dir,
                std::vector<std::string>& outputs) {
    current_stage = "profile";
    MetricProfile p = profile_from_config(cfg);
    current_stage = "measure";
    TestFunction rho = rho_from_spec(cfg.measure_rho);
    MeasureOptions opt;
    opt.cells = cfg.measure_cells;
    opt.cells_factor = cfg.measure_cells_factor;
    opt.richardson = cfg.measure_richardson;
    ConvergenceStudy study = convergence_study(p, rho, cfg.alpha, cfg.measure_modes,
                                               opt, cfg.parallelism);
    std::ostringstream csv;
    csv << "m,hbar,mu,I1,I2,resid1,resid2\n";
    for (const auto& row : study.rows) {
        csv << row.m << "," << format_g17(row.hbar) << "," << format_g17(row.mu)
            << "," << format_g17(study.I1) << "," << format_g17(study.I2) << ","
            << format_g17(row.resid1) << "," << format_g17(row.resid2) << "\n";
    }
    write_text(dir / "measure.csv", csv.str());
    outputs.push_back("measure.csv");

    json report;
    report["I1"] = study.I1;
    report["I2"] = study.I2;
    report["slope_resid1"] = study.slope;
    report["I2_extrapolated"] = study.I2_extrapolated;
    write_text(dir / "measure_report.json", report.dump(2) + "\n");
    outputs.push_back("measure_report.json");
    return 0;
}

int cmd_invariants(const RunConfig& cfg, const fs::path& dir,
                   std::vector<std::string>& outputs) {
    current_stage = "profile";
    MetricProfile p = profile_from_config(cfg);
    current_stage = "invariants";
    std::vector<double> grid;
    if (cfg.invariants_lambda_min > 0 && cfg.invariants_lambda_max > 0) {
        std::size_t n = cfg.invariants_lambda_points;
        for (std::size_t i = 0; i < n; ++i)
            grid.push_back(cfg.invariants_lambda_min +
                           (cfg.invariants_lambda_max - cfg.invariants_lambda_min) *
                               static_cast<double>(i) / static_cast<double>(n - 1));
    } else {
        grid = default_lambda_grid(p, cfg.alpha, cfg.invariants_lambda_points);
    }
    certify_single_well(p, cfg.profile_grid_size);
    InvariantCurve w = area_curve(p, cfg.alpha, grid, cfg.parallelism);
    InvariantCurve q = q_curve(p, cfg.alpha, grid, cfg.parallelism);
    std::ostringstream csv;
    csv << "lambda,W,Q\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv << format_g17(grid[i]) << "," << format_g17(w.W[i]) << ","
            << format_g17(q.Q[i]) << "\n";
    write_text(dir / "invariants.csv", csv.str());
    outputs.push_back("invariants.csv");
    return 0;
}

int cmd_symbols(const RunConfig& cfg, const fs::path& dir,
                std::vector<std::string>& outputs) {
    current_stage = "symbols";
    BRecursion recursion(cfg.symbols_max_order);
    std::ostringstream report;
    for (int k = 0; k <= cfg.symbols_max_order; ++k) {
        const TPolynomial& b = recursion.order(k);
        report << "# order k = " << k << "\n";
        if (k == 0) {
            report << "b_{0,0} = 1\n";
        } else {
            for (const auto& [l, coeff] : b.coefficients())
                report << "b_{" << k << "," << l << "} = " << pretty(coeff) << "\n";
        }
        ExpansionTerm term = assemble_term(recursion, k);
        for (const auto& piece : term.pieces) {
            report << "integrand(l=" << piece.derivative_order << ")";
            if (piece.zero_by_parity) report << " [odd in xi, integrates to zero]";
            report << " = " << pretty(piece.integrand) << "\n";
        }
        report << "\n";
    }
    write_text(dir / "symbols.txt", report.str());
    outputs.push_back("symbols.txt");
    return 0;
}

int cmd_roundtrip(const RunConfig& cfg, const fs::path& dir,
                  std::vector<std::string>& outputs) {
    current_stage = "profile";
    MetricProfile p = profile_from_config(cfg);
    current_stage = "roundtrip";
    RoundtripOptions opt;
    opt.lambda_points = cfg.roundtrip_lambda_points;
    opt.s_points = cfg.roundtrip_s_points;
    opt.x_cap = cfg.roundtrip_x_cap;
    opt.compare_x = cfg.roundtrip_compare_x;
    opt.parallel_degree = cfg.parallelism;
    opt.reconstruction.delta_frac = cfg.reconstruct_delta_frac;
    opt.reconstruction.merge_tol = cfg.reconstruct_merge_tol;
    opt.reconstruction.x_points = cfg.reconstruct_x_points;
    RoundtripReport report = roundtrip(p, cfg.alpha, opt);

    std::ostringstream curves;
    curves << "lambda,W,Q\n";
    for (std::size_t i = 0; i < report.curve.lambda.size(); ++i)
        curves << format_g17(report.curve.lambda[i]) << ","
               << format_g17(report.curve.W[i]) << ","
               << format_g17(report.curve.Q[i]) << "\n";
    write_text(dir / "roundtrip_curves.csv", curves.str());
    outputs.push_back("roundtrip_curves.csv");

    std::ostringstream csv;
    csv << "x,v_rec,v_true\n";
    Pchip v_rec(report.result.x, report.result.v);
    for (std::size_t i = 0; i < report.result.x.size(); ++i)
        csv << format_g17(report.result.x[i]) << ","
            << format_g17(report.result.v[i]) << ","
            << format_g17(p.v(report.result.x[i])) << "\n";
    write_text(dir / "roundtrip_profile.csv", csv.str());
    outputs.push_back("roundtrip_profile.csv");

    json j;
    j["c_detected"] = report.diagnostics.c_detected;
    j["curvature"] = report.diagnostics.curvature;
    j["min_discriminant"] = report.diagnostics.min_discriminant;
    j["l_inf_error"] = report.diagnostics.linf_best;
    j["l_inf_identity"] = report.diagnostics.linf;
    j["l_inf_reflected"] = report.diagnostics.linf_reflected;
    j["l2_error"] = report.diagnostics.l2_best;
    j["x_window"] = report.diagnostics.x_window;
    j["x_max"] = report.result.x_max;
    write_text(dir / "roundtrip_report.json", j.dump(2) + "\n");
    outputs.push_back("roundtrip_report.json");
    return 0;
}

InvariantCurve read_curves_csv(const std::string& path, double alpha) {
    std::ifstream in(path);
    if (!in) throw ConfigError("reconstruct: cannot open curves CSV " + path);
    InvariantCurve curve;
    curve.alpha = alpha;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("reconstruct: empty CSV");
    if (trim(line) != "lambda,W,Q")
        throw ConfigError("reconstruct: CSV header must be 'lambda,W,Q'");
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != 3) throw ConfigError("reconstruct: bad CSV row " + line);
        curve.lambda.push_back(to_double(cells[0], "lambda"));
        curve.W.push_back(to_double(cells[1], "W"));
        curve.Q.push_back(to_double(cells[2], "Q"));
    }
    if (curve.lambda.size() < 8)
        throw ConfigError("reconstruct: need at least 8 curve samples");
    return curve;
}

int cmd_reconstruct(const RunConfig& cfg, const fs::path& dir,
                    std::vector<std::string>& outputs) {
    current_stage = "reconstruct";
    if (cfg.reconstruct_curves_csv.empty())
        throw ConfigError("reconstruct: curves_csv not set");
    ReconstructInput in;
    in.curve = read_curves_csv(cfg.reconstruct_curves_csv, cfg.alpha);
    RoundtripOptions opt;
    opt.s_points = cfg.reconstruct_s_points;
    opt.reconstruction.delta_frac = cfg.reconstruct_delta_frac;
    opt.reconstruction.merge_tol = cfg.reconstruct_merge_tol;
    opt.reconstruction.x_points = cfg.reconstruct_x_points;
    opt.reconstruction.s_points = cfg.reconstruct_s_points;
    ReconstructOutput out = reconstruct_from_curves(in, opt);

    std::ostringstream csv;
    csv << "x,v_rec\n";
    for (std::size_t i = 0; i < out.result.x.size(); ++i)
        csv << format_g17(out.result.x[i]) << "," << format_g17(out.result.v[i]) << "\n";
    write_text(dir / "reconstruct_profile.csv", csv.str());
    outputs.push_back("reconstruct_profile.csv");

    json j;
    j["c_detected"] = out.c_detected;
    j["curvature"] = out.result.curvature;
    j["x_max"] = out.result.x_max;
    write_text(dir / "reconstruct_report.json", j.dump(2) + "\n");
    outputs.push_back("reconstruct_report.json");
    return 0;
}

} // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            if (section != "profile" && section != "run" && section != "spectrum" &&
                section != "measure" && section != "invariants" &&
                section != "symbols" && section != "reconstruct" &&
                section != "roundtrip")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        std::string qual = section + "." + key;

        if (qual == "profile.family") cfg.profile_family = value;
        else if (qual == "profile.coefficients") {
            cfg.profile_coefficients.clear();
            for (const auto& tok : split(value, ','))
                if (!tok.empty()) cfg.profile_coefficients.push_back(to_double(tok, qual));
        } else if (qual == "profile.spline_file") cfg.profile_spline_file = value;
        else if (qual == "profile.grid_size") cfg.profile_grid_size = to_size(value, qual);
        else if (qual == "run.alpha") {
            cfg.alpha = to_double(value, qual);
            if (cfg.alpha == 0.0) throw ConfigError("config: alpha must be nonzero");
        } else if (qual == "run.output_dir") cfg.output_dir = value;
        else if (qual == "run.parallelism") {
            cfg.parallelism = static_cast<int>(to_long(value, qual));
            if (cfg.parallelism < 1) throw ConfigError("config: parallelism must be >= 1");
        } else if (qual == "run.seed") cfg.seed = static_cast<std::uint64_t>(to_long(value, qual));
        else if (qual == "spectrum.cells") cfg.spectrum_cells = to_size(value, qual);
        else if (qual == "spectrum.lambda_max") {
            cfg.spectrum_lambda_max = to_double(value, qual);
            if (cfg.spectrum_lambda_max <= 0) throw ConfigError("config: lambda_max must be positive");
        } else if (qual == "spectrum.m_min") cfg.spectrum_m_min = static_cast<int>(to_long(value, qual));
        else if (qual == "spectrum.m_max") cfg.spectrum_m_max = static_cast<int>(to_long(value, qual));
        else if (qual == "measure.modes") {
            cfg.measure_modes.clear();
            for (const auto& tok : split(value, ',')) {
                int m = static_cast<int>(to_long(tok, qual));
                if (m == 0) throw ConfigError("config: measure modes must be nonzero");
                cfg.measure_modes.push_back(m);
            }
        } else if (qual == "measure.rho") cfg.measure_rho = value;
        else if (qual == "measure.cells") cfg.measure_cells = to_size(value, qual, true);
        else if (qual == "measure.cells_factor") {
            cfg.measure_cells_factor = to_double(value, qual);
            if (cfg.measure_cells_factor <= 0) throw ConfigError("config: cells_factor must be positive");
        } else if (qual == "measure.richardson") cfg.measure_richardson = to_bool(value, qual);
        else if (qual == "invariants.lambda_points") cfg.invariants_lambda_points = to_size(value, qual);
        else if (qual == "invariants.lambda_min") cfg.invariants_lambda_min = to_double(value, qual);
        else if (qual == "invariants.lambda_max") cfg.invariants_lambda_max = to_double(value, qual);
        else if (qual == "symbols.max_order") {
            cfg.symbols_max_order = static_cast<int>(to_long(value, qual));
            if (cfg.symbols_max_order < 0 || cfg.symbols_max_order > 6)
                throw ConfigError("config: symbols max_order must be in [0, 6]");
        } else if (qual == "reconstruct.curves_csv") cfg.reconstruct_curves_csv = value;
        else if (qual == "reconstruct.s_points") cfg.reconstruct_s_points = to_size(value, qual);
        else if (qual == "reconstruct.delta_frac") {
            cfg.reconstruct_delta_frac = to_double(value, qual);
            if (cfg.reconstruct_delta_frac <= 0 || cfg.reconstruct_delta_frac >= 0.5)
                throw ConfigError("config: delta_frac must be in (0, 0.5)");
        } else if (qual == "reconstruct.merge_tol") {
            cfg.reconstruct_merge_tol = to_double(value, qual);
            if (cfg.reconstruct_merge_tol < 0) throw ConfigError("config: merge_tol must be >= 0");
        } else if (qual == "reconstruct.x_points") cfg.reconstruct_x_points = to_size(value, qual);
        else if (qual == "roundtrip.lambda_points") cfg.roundtrip_lambda_points = to_size(value, qual);
        else if (qual == "roundtrip.s_points") cfg.roundtrip_s_points = to_size(value, qual);
        else if (qual == "roundtrip.x_cap") {
            cfg.roundtrip_x_cap = to_double(value, qual);
            if (cfg.roundtrip_x_cap <= 0 || cfg.roundtrip_x_cap >= 1)
                throw ConfigError("config: x_cap must be in (0, 1)");
        } else if (qual == "roundtrip.compare_x") {
            cfg.roundtrip_compare_x = to_double(value, qual);
            if (cfg.roundtrip_compare_x <= 0 || cfg.roundtrip_compare_x >= 1)
                throw ConfigError("config: compare_x must be in (0, 1)");
        } else {
            throw ConfigError("config: unknown key '" + qual + "'");
        }
    }
    return cfg;
}

MetricProfile profile_from_config(const RunConfig& cfg) {
    if (cfg.profile_family == "round_sphere") return make_round_sphere();
    if (cfg.profile_family == "perturbed_well")
        return make_perturbed_well(cfg.profile_coefficients);
    if (cfg.profile_family == "spline") {
        std::ifstream in(cfg.profile_spline_file);
        if (!in)
            throw ConfigError("profile: cannot open spline_file " + cfg.profile_spline_file);
        std::vector<double> x, v;
        std::string line;
        while (std::getline(in, line)) {
            std::string t = trim(line);
            if (t.empty() || t[0] == '#' || t == "x,v") continue;
            auto cells = split(t, ',');
            if (cells.size() != 2) throw ConfigError("profile: bad spline CSV row " + t);
            x.push_back(to_double(cells[0], "spline x"));
            v.push_back(to_double(cells[1], "spline v"));
        }
        return MetricProfile::tabulated(std::move(x), std::move(v));
    }
    throw ConfigError("profile: unknown family " + cfg.profile_family);
}

int run_subcommand(const std::string& subcommand, const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> outputs;
    fs::path dir;
    try {
        dir = output_dir(cfg);
        int rc;
        if (subcommand == "spectrum") rc = cmd_spectrum(cfg, dir, outputs);
        else if (subcommand == "measure") rc = cmd_measure(cfg, dir, outputs);
        else if (subcommand == "invariants") rc = cmd_invariants(cfg, dir, outputs);
        else if (subcommand == "symbols") rc = cmd_symbols(cfg, dir, outputs);
        else if (subcommand == "roundtrip") rc = cmd_roundtrip(cfg, dir, outputs);
        else if (subcommand == "reconstruct") rc = cmd_reconstruct(cfg, dir, outputs);
        else throw ConfigError("unknown subcommand " + subcommand);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(dir, subcommand, cfg, outputs, wall);
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure in stage '" << current_stage
                  << "': " << e.what() << "\n";
        return 3;
    }
}

} // namespace specwell
