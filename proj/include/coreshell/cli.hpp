#pragma once

/** \file cli.hpp
 *
 *  \brief Batch driver behind the coreshell executable.
 *
 *  Exit status: 0 success, 1 validation error (bad config, outputs present without force),
 *  2 solver diagnostics. With status 2 the outputs are still written and carry "# flagged:" lines.
 */

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "coreshell/config.hpp"
#include "coreshell/errors.hpp"
#include "coreshell/oracle.hpp"
#include "coreshell/report.hpp"
#include "coreshell/spectrum.hpp"

namespace coreshell::cli {

struct RunManifest
{
    std::string config_path;
    std::string command; ///< solve | sweep | degeneracy | oracle-check
    /// Overrides [output] dir when non-empty.
    std::string output_dir;
    bool force{false};
    bool quiet{false};
};

enum ExitStatus : int
{
    exit_ok = 0,
    exit_validation = 1,
    exit_diagnostics = 2
};

/// Oracle and analytic levels further apart than this are flagged.
inline constexpr double oracle_agreement = 1e-6;

namespace detail {

inline std::vector<std::string> outputs_for(std::string const& command, bool plots)
{
    if (command == "solve") {
        return {"eigenvalues.csv"};
    }
    if (command == "sweep") {
        return plots ? std::vector<std::string>{"levels.csv", "levels.svg"} : std::vector<std::string>{"levels.csv"};
    }
    if (command == "degeneracy") {
        return {"degeneracy.txt"};
    }
    if (command == "oracle-check") {
        return {"oracle_check.csv"};
    }
    throw config_error("unknown command '" + command + "' (expected solve, sweep, degeneracy or oracle-check)");
}

inline std::ofstream open_output(std::filesystem::path const& p)
{
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw config_error("cannot write '" + p.string() + "'");
    }
    return os;
}

inline double single_r0(RunConfig const& cfg, std::string const& command)
{
    if (!cfg.r0) {
        throw config_error("'" + command + "' needs [well] r0");
    }
    return *cfg.r0;
}

inline std::vector<Diagnostic> run_solve(RunConfig const& cfg, std::filesystem::path const& dir)
{
    WellConfig well = cfg.well;
    well.r0 = single_r0(cfg, "solve");
    std::vector<report::EigenRow> rows;
    std::vector<Diagnostic> diags;
    for (auto const& branch : admissible_branches(well.kappa, well.U0)) {
        Spectrum const s = find_levels(well, branch, cfg.solver);
        for (auto const& lv : s.levels) {
            rows.push_back({lv, count_nodes(well, branch, lv.E, cfg.solver.node_grid_points)});
        }
        diags.insert(diags.end(), s.diagnostics.begin(), s.diagnostics.end());
    }
    auto os = open_output(dir / "eigenvalues.csv");
    report::write_eigenvalues_csv(os, well, cfg.solver.matching, rows, diags);
    return diags;
}

inline std::vector<Diagnostic> run_sweep(RunConfig const& cfg, std::filesystem::path const& dir)
{
    std::vector<double> const grid = cfg.sweep_grid();
    std::vector<LevelCurve> curves;
    std::vector<Diagnostic> diags;
    for (auto const& branch : admissible_branches(cfg.well.kappa, cfg.well.U0)) {
        Sweep const s = sweep_well_width(cfg.well, grid, branch, cfg.solver);
        curves.insert(curves.end(), s.curves.begin(), s.curves.end());
        diags.insert(diags.end(), s.diagnostics.begin(), s.diagnostics.end());
    }
    {
        auto os = open_output(dir / "levels.csv");
        report::write_levels_csv(os, cfg.well, cfg.solver.matching, curves, diags);
    }
    if (cfg.plots) {
        auto os = open_output(dir / "levels.svg");
        std::string const title = "m1=" + report::format_short(cfg.well.m1) + ", m2=" + report::format_short(cfg.well.m2)
            + ", V0=" + report::format_short(cfg.well.V0) + " fm^-1, kappa=" + std::to_string(cfg.well.kappa)
            + ", U0=" + report::format_short(cfg.well.U0);
        report::write_level_plot(os, title, curves);
    }
    return diags;
}

inline std::vector<Diagnostic> run_degeneracy(RunConfig const& cfg, std::filesystem::path const& dir)
{
    if (!cfg.compare) {
        throw config_error("'degeneracy' needs a [compare] section with kappa and U0");
    }
    WellConfig a = cfg.well;
    a.r0 = single_r0(cfg, "degeneracy");
    WellConfig b = a;
    b.kappa = cfg.compare->kappa;
    b.U0 = cfg.compare->U0;
    b.validate();
    DegeneracyReport const rep = degeneracy_report(a, b, cfg.solver);
    auto os = open_output(dir / "degeneracy.txt");
    report::write_degeneracy_report(os, a, b, rep);
    return rep.diagnostics;
}

inline std::vector<Diagnostic> run_oracle_check(RunConfig const& cfg, std::filesystem::path const& dir)
{
    WellConfig well = cfg.well;
    well.r0 = single_r0(cfg, "oracle-check");
    oracle::OracleOptions oopts;
    oopts.matching = cfg.solver.matching;
    oracle::ShootingGrid const grid = oracle::ShootingGrid::for_config(well, oopts.window_margin);

    std::vector<report::OracleRow> rows;
    std::vector<Diagnostic> diags;
    for (auto const& branch : admissible_branches(well.kappa, well.U0)) {
        Spectrum const analytic = find_levels(well, branch, cfg.solver);
        Spectrum const shot = oracle::shoot_eigenvalues(well, branch, grid, cfg.solver.n_max, oopts);
        diags.insert(diags.end(), analytic.diagnostics.begin(), analytic.diagnostics.end());
        diags.insert(diags.end(), shot.diagnostics.begin(), shot.diagnostics.end());
        if (analytic.levels.size() != shot.levels.size()) {
            diags.push_back({"oracle-mismatch",
                             "branch " + to_string(branch.branch) + ": " + std::to_string(analytic.levels.size()) + " analytic vs "
                                 + std::to_string(shot.levels.size()) + " oracle levels",
                             well.r0,
                             {0, 0}});
        }
        std::size_t const m = std::min(analytic.levels.size(), shot.levels.size());
        for (std::size_t i = 0; i < m; ++i) {
            auto const& x = analytic.levels[i];
            auto const& y = shot.levels[i];
            int const nodes = count_nodes(well, branch, x.E, cfg.solver.node_grid_points);
            rows.push_back({branch.branch, x.n, x.E, y.E, nodes, y.n});
            if (std::abs(x.E - y.E) > oracle_agreement || nodes != y.n) {
                diags.push_back({"oracle-mismatch", "branch " + to_string(branch.branch) + " level " + std::to_string(i), well.r0,
                                 x.bracket});
            }
        }
    }
    auto os = open_output(dir / "oracle_check.csv");
    report::write_oracle_csv(os, well, cfg.solver.matching, rows, diags);
    return diags;
}

} // namespace detail

inline int run(RunManifest const& manifest, std::ostream& log, std::ostream& err)
{
    namespace fs = std::filesystem;
    RunConfig cfg;
    fs::path dir;
    try {
        cfg = load_config(manifest.config_path);
        cfg.well.validate();
        std::vector<std::string> const files = detail::outputs_for(manifest.command, cfg.plots);
        dir = manifest.output_dir.empty() ? fs::path(cfg.output_dir) : fs::path(manifest.output_dir);
        if (!manifest.force) {
            for (auto const& f : files) {
                if (fs::exists(dir / f)) {
                    throw config_error("'" + (dir / f).string() + "' exists; pass --force to overwrite");
                }
            }
        }
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            throw config_error("cannot create output directory '" + dir.string() + "': " + ec.message());
        }
    } catch (std::exception const& e) {
        err << "coreshell: " << manifest.config_path << ": " << e.what() << '\n';
        return exit_validation;
    }

    std::vector<Diagnostic> diags;
    try {
        if (manifest.command == "solve") {
            diags = detail::run_solve(cfg, dir);
        } else if (manifest.command == "sweep") {
            diags = detail::run_sweep(cfg, dir);
        } else if (manifest.command == "degeneracy") {
            diags = detail::run_degeneracy(cfg, dir);
        } else {
            diags = detail::run_oracle_check(cfg, dir);
        }
    } catch (config_error const& e) {
        err << "coreshell: " << manifest.config_path << ": " << e.what() << '\n';
        return exit_validation;
    } catch (coreshell::domain_error const& e) {
        err << "coreshell: " << e.what() << '\n';
        return exit_validation;
    }

    for (auto const& d : diags) {
        err << "coreshell: " << d.kind << " at r0=" << report::format_short(d.r0) << ": " << d.message << '\n';
    }
    if (!manifest.quiet) {
        log << manifest.command << ": wrote " << dir.string() << (diags.empty() ? "" : " (flagged)") << '\n';
    }
    return diags.empty() ? exit_ok : exit_diagnostics;
}

} // namespace coreshell::cli
