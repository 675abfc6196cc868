#include "demosim_cli/app.h"

#include "demosim_cli/config.h"
#include "demosim_cli/report.h"

#include <demosim/defaults.h>
#include <demosim/errors.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

namespace demosim::cli {

namespace {

CliConfig read_config(const std::string& path) {
    if (path.empty()) {
        std::istringstream empty;
        return parse_config(empty);
    }
    return load_config(path);
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out_dir,
            const std::optional<std::uint64_t>& seed, int replicates, std::ostream& out, std::ostream& err) {
    CliConfig cfg = read_config(config_path);
    if (out_dir) cfg.run.out_dir = *out_dir;
    if (seed) cfg.run.sim.seed = *seed;

    std::vector<RunResult> results;
    if (replicates <= 1) {
        results.push_back(run(cfg.run));
    } else {
        const std::uint64_t base = cfg.run.sim.seed ? *cfg.run.sim.seed : entropy_seed();
        results = run_batch(cfg.run, replicates, base);
    }

    int code = exit_ok;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const RunResult& r = results[i];
        const auto dir = replicates <= 1 ? cfg.run.out_dir : cfg.run.out_dir / ("replicate_" + std::to_string(i));
        write_artifacts(dir, cfg, r);
        out << "seed " << r.seed << "  digest " << hex_digest(r.final_digest) << "  alive "
            << (r.series.rows.empty() ? 0 : r.series.rows.back().alive) << "  violations " << r.violations.size()
            << "  -> " << dir.string() << '\n';
        if (r.aborted) {
            err << "assumption failure: " << r.abort_reason << '\n';
            for (const Violation& v : r.violations) {
                err << "  step " << v.step << " " << v.label << ": " << v.detail << '\n';
            }
            code = exit_assumption;
        }
    }
    return code;
}

int cmd_validate(const std::string& config_path, std::ostream& out) {
    const CliConfig cfg = read_config(config_path);
    out << render_config(cfg);
    out << "# towns: " << cfg.run.density.nonzero_count() << ", fertility table " << cfg.run.data.fertility.rows()
        << "x" << cfg.run.data.fertility.cols() << '\n';
    return exit_ok;
}

int cmd_defaults(std::ostream& out) {
    std::istringstream empty;
    const CliConfig cfg = parse_config(empty);
    out << "# model and simulation parameters (built-in defaults)\n" << render_config(cfg);
    out << "\n# population density, 12 rows (north to south) x 8 columns (west to east)\n";
    const DensityMap m = default_density_map();
    for (int r = 1; r <= m.rows(); ++r) {
        for (int c = 1; c <= m.cols(); ++c) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.1f", m.at(r, c));
            out << (c > 1 ? " " : "") << buf;
        }
        out << '\n';
    }
    const FertilityTable& f = cfg.run.data.fertility;
    out << "\n# fertility: synthetic placeholder (no national table bundled), ages " << f.age_offset() << ".."
        << f.age_offset() + f.rows() - 1 << ", years " << f.year_offset() << ".." << f.year_offset() + f.cols() - 1
        << ", 0.12*exp(-0.5*((age-30)/6)^2), constant across years\n";
    return exit_ok;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Discrete-time demographic agent-based simulation", "demosim"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    int replicates = 1;

    auto* run_cmd = app.add_subcommand("run", "Run a simulation and write its artifacts");
    run_cmd->add_option("--config,-c", config_path, "Config file (key = value)");
    run_cmd->add_option("--out,-o", out_dir, "Output directory (overrides out_dir)");
    run_cmd->add_option("--seed,-s", seed, "Random seed (overrides seed)");
    run_cmd->add_option("--replicates,-r", replicates, "Independent replicates with seeds seed+i")
        ->check(CLI::PositiveNumber);

    auto* validate_cmd = app.add_subcommand("validate", "Parse config and data, print the effective config");
    validate_cmd->add_option("--config,-c", config_path, "Config file (key = value)");

    auto* defaults_cmd = app.add_subcommand("defaults", "Print built-in parameters and data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return exit_usage;
    }

    try {
        if (*run_cmd) return cmd_run(config_path, out_dir, seed, replicates, out, err);
        if (*validate_cmd) return cmd_validate(config_path, out);
        if (*defaults_cmd) return cmd_defaults(out);
    } catch (const DataError& e) {
        err << "data error";
        if (e.row() > 0) err << " at row " << e.row() << ", column " << e.col();
        err << ": " << e.what() << '\n';
        return exit_config;
    } catch (const ConfigurationError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const AssumptionFailure& e) {
        err << "assumption failure: " << e.what() << '\n';
        return exit_assumption;
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_usage;
}

} // namespace demosim::cli
