#pragma once

/** \file spectrum.hpp
 *
 *  \brief Bound-state search, node counting, well-width sweeps and degeneracy checks.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "coreshell/errors.hpp"
#include "coreshell/parallel.hpp"
#include "coreshell/radial_solution.hpp"
#include "coreshell/well_model.hpp"

namespace coreshell {

struct SolverOptions
{
    int n_max{50};
    int scan_points{2000};
    double tol_E{1e-10};
    MatchingRule matching{MatchingRule::weighted};
    /// The scan window is the bound window shrunk by this much at each end.
    double window_margin{1e-6};
    int node_grid_points{2000};
};

/// A solver event that did not stop the computation but makes the result suspect.
struct Diagnostic
{
    std::string kind; ///< "unrefined-bracket", "residual", "node-order", "continuation-split"
    std::string message;
    double r0{0};
    std::pair<double, double> bracket{0, 0};
};

struct EigenResult
{
    double E;
    int n;
    BranchExponent branch;
    double residual;
    std::pair<double, double> bracket;
    /// Zero for the closed-form solver; Richardson estimate for the shooting oracle.
    double error_estimate{0};
};

struct Spectrum
{
    std::vector<EigenResult> levels;
    std::vector<Diagnostic> diagnostics;
};

struct LevelLabel
{
    int n;
    int kappa;
    Branch branch;
};

struct CurvePoint
{
    double r0;
    double E;
};

struct LevelCurve
{
    LevelLabel label;
    std::vector<CurvePoint> points;
};

struct Sweep
{
    std::vector<LevelCurve> curves;
    std::vector<Diagnostic> diagnostics;
    /// r0 values actually solved, including points inserted by step bisection.
    std::vector<double> solved_r0;
};

inline constexpr double residual_limit = 1e-9;

namespace detail {

inline int sign_of(double v)
{
    return (v > 0.0) - (v < 0.0);
}

/// Strict sign changes in a sampled sequence, skipping exact zeros.
inline int count_sign_changes(std::vector<double> const& v)
{
    int changes = 0;
    int last = 0;
    for (double x : v) {
        int const s = sign_of(x);
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

} // namespace detail

/// Nodes of the matched composite G on (1e-4 r0, r0 + 8/b2).
///
/// The shell solution is rescaled to meet the core solution at r0. Sign changes are counted on a
/// uniform grid; where |G| dips to a shallow local minimum without changing sign the neighbourhood
/// is resampled so that a closely spaced pair of nodes is not missed.
inline int count_nodes(WellConfig const& cfg, BranchExponent const& branch, double E, int grid_points = 2000)
{
    EnergyWindow const window = bound_window(cfg);
    if (!window.contains(E)) {
        throw domain_error("count_nodes: E outside the bound window");
    }
    RegionEnergy const e1 = region_energy(E, cfg, Region::core);
    RegionEnergy const e2 = region_energy(E, cfg, Region::shell);
    double const b2 = e2.wave.real();
    double const r_start = 1e-4 * cfg.r0;
    double const r_end = cfg.r0 + 8.0 / b2;

    RadialSolution const g1_edge = inner_solution(cfg.r0, branch.a, e1);
    RadialSolution const g2_edge = outer_solution(cfg.r0, branch.a, e2);
    double const shell_scale = g1_edge.value / g2_edge.value;

    auto composite = [&](double r) {
        return r <= cfg.r0 ? inner_solution(r, branch.a, e1).value
                           : shell_scale * outer_solution(r, branch.a, e2).value;
    };

    int const n_core = std::max(grid_points, 2);
    int const n_shell = std::max(200, grid_points / 4);
    std::vector<double> r;
    r.reserve(n_core + n_shell);
    for (int i = 0; i < n_core; ++i) {
        r.push_back(r_start + (cfg.r0 - r_start) * i / (n_core - 1));
    }
    for (int i = 1; i <= n_shell; ++i) {
        r.push_back(cfg.r0 + (r_end - cfg.r0) * i / n_shell);
    }
    std::vector<double> g(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        g[i] = composite(r[i]);
    }

    int nodes = detail::count_sign_changes(g);

    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        double const here = std::abs(g[i]);
        bool const dip = here < std::abs(g[i - 1]) && here < std::abs(g[i + 1])
                         && here < 0.05 * std::max(std::abs(g[i - 1]), std::abs(g[i + 1]));
        bool const same_sign = detail::sign_of(g[i - 1]) == detail::sign_of(g[i])
                               && detail::sign_of(g[i]) == detail::sign_of(g[i + 1]) && g[i] != 0.0;
        if (!dip || !same_sign) {
            continue;
        }
        constexpr int sub = 16;
        std::vector<double> fine;
        fine.reserve(2 * sub + 1);
        for (int k = 0; k <= 2 * sub; ++k) {
            fine.push_back(composite(r[i - 1] + (r[i + 1] - r[i - 1]) * k / (2 * sub)));
        }
        nodes += detail::count_sign_changes(fine);
    }
    return nodes;
}

/// All bound states of one branch with at most n_max nodes, ascending in E.
inline Spectrum find_levels(WellConfig const& cfg, BranchExponent const& branch, SolverOptions const& opts = {})
{
    cfg.validate();
    if (opts.n_max < 0) {
        throw domain_error("find_levels: n_max must be non-negative");
    }
    if (opts.scan_points < 2) {
        throw domain_error("find_levels: need at least two scan points");
    }

    Spectrum out;
    EnergyWindow const window = bound_window(cfg);
    double const lo = window.lo + opts.window_margin;
    double const hi = window.hi - opts.window_margin;
    if (!(lo < hi)) {
        return out;
    }

    auto det = [&](double E) { return matching_determinant(E, cfg, branch, opts.matching).normalized(); };

    std::vector<double> grid(opts.scan_points);
    for (int i = 0; i < opts.scan_points; ++i) {
        grid[i] = lo + (hi - lo) * i / (opts.scan_points - 1);
    }
    std::vector<double> const values = parallel_map(grid, det);

    std::vector<std::pair<double, std::pair<double, double>>> roots; // E, scan bracket
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double const fa = values[i];
        double const fb = values[i + 1];
        if (fa == 0.0) {
            double const left = i > 0 ? grid[i - 1] : grid[i];
            roots.push_back({grid[i], {left, grid[i + 1]}});
            continue;
        }
        if (fb == 0.0 || detail::sign_of(fa) == detail::sign_of(fb)) {
            continue;
        }
        std::uintmax_t iterations = 200;
        auto tol = [](double x, double y) {
            return std::abs(y - x)
                   <= 4.0 * std::numeric_limits<double>::epsilon() * std::max({std::abs(x), std::abs(y), 1.0});
        };
        auto [a, b] = boost::math::tools::toms748_solve(det, grid[i], grid[i + 1], fa, fb, tol, iterations);
        if (std::abs(b - a) > opts.tol_E) {
            out.diagnostics.push_back({"unrefined-bracket",
                                       "root refinement stopped at width " + std::to_string(std::abs(b - a)),
                                       cfg.r0,
                                       {grid[i], grid[i + 1]}});
            continue;
        }
        roots.push_back({0.5 * (a + b), {grid[i], grid[i + 1]}});
    }
    // the last scan point is never a left endpoint above
    if (!values.empty() && values.back() == 0.0) {
        roots.push_back({grid.back(), {grid[grid.size() - 2], grid.back()}});
    }

    int previous_nodes = -1;
    for (auto const& [E, bracket] : roots) {
        MatchingPoint const mp = matching_determinant(E, cfg, branch, opts.matching);
        double const residual = std::abs(mp.normalized());
        int const n = count_nodes(cfg, branch, E, opts.node_grid_points);
        if (residual >= residual_limit) {
            out.diagnostics.push_back({"residual", "normalized residual " + std::to_string(residual) + " at E=" + std::to_string(E),
                                       cfg.r0, bracket});
        }
        if (n <= previous_nodes) {
            out.diagnostics.push_back({"node-order",
                                       "node count " + std::to_string(n) + " does not increase at E=" + std::to_string(E),
                                       cfg.r0, bracket});
        }
        previous_nodes = std::max(previous_nodes, n);
        if (n <= opts.n_max) {
            out.levels.push_back({E, n, branch, residual, bracket, 0.0});
        }
    }
    return out;
}

namespace detail {

struct SweepSample
{
    double r0;
    Spectrum spectrum;
};

inline EigenResult const* level_with_nodes(Spectrum const& s, int n)
{
    for (auto const& lv : s.levels) {
        if (lv.n == n) {
            return &lv;
        }
    }
    return nullptr;
}

inline constexpr int max_bisection_depth = 8;

/// Half the distance from E to the nearest other level; the window width for a lone level.
inline double continuation_limit(Spectrum const& s, double E, double window_width)
{
    double gap = window_width;
    for (auto const& lv : s.levels) {
        double const d = std::abs(lv.E - E);
        if (d > 0.0) {
            gap = std::min(gap, d);
        }
    }
    return 0.5 * gap;
}

} // namespace detail

/// Level curves E(r0) for one branch.
///
/// Every grid point is solved independently; the continuation then walks the grid in order,
/// extending each curve with the nearest root and checking that its node count agrees. A step is
/// bisected when some level moves by more than half the distance to its nearest neighbour, since
/// nearest-energy matching is ambiguous there; inserted r0 values become part of the curves.
inline Sweep sweep_well_width(WellConfig const& cfg, std::vector<double> const& r0_grid, BranchExponent const& branch,
                              SolverOptions const& opts = {})
{
    if (r0_grid.empty()) {
        throw domain_error("sweep_well_width: empty r0 grid");
    }
    for (std::size_t i = 1; i < r0_grid.size(); ++i) {
        if (!(r0_grid[i] > r0_grid[i - 1])) {
            throw domain_error("sweep_well_width: r0 grid must be strictly increasing");
        }
    }

    auto solve_at = [&](double r0) {
        WellConfig c = cfg;
        c.r0 = r0;
        return detail::SweepSample{r0, find_levels(c, branch, opts)};
    };

    double const window_width = bound_window(cfg).width();

    std::vector<detail::SweepSample> const base = parallel_map(r0_grid, solve_at);

    auto needs_refinement = [&](detail::SweepSample const& left, detail::SweepSample const& right) {
        for (auto const& lv : left.spectrum.levels) {
            if (EigenResult const* next = detail::level_with_nodes(right.spectrum, lv.n)) {
                double const limit = std::min(detail::continuation_limit(left.spectrum, lv.E, window_width),
                                              detail::continuation_limit(right.spectrum, next->E, window_width));
                if (std::abs(next->E - lv.E) > limit) {
                    return true;
                }
            }
        }
        return false;
    };

    std::vector<detail::SweepSample> samples;
    // arguments by value: samples grows during the recursion
    auto bridge = [&](auto&& self, detail::SweepSample left, detail::SweepSample right, int depth) -> void {
        if (depth >= detail::max_bisection_depth || !needs_refinement(left, right)) {
            return;
        }
        detail::SweepSample mid = solve_at(0.5 * (left.r0 + right.r0));
        self(self, left, mid, depth + 1);
        samples.push_back(mid);
        self(self, mid, right, depth + 1);
    };
    samples.push_back(base.front());
    for (std::size_t i = 1; i < base.size(); ++i) {
        bridge(bridge, samples.back(), base[i], 0);
        samples.push_back(base[i]);
    }

    Sweep out;
    for (auto const& s : samples) {
        out.solved_r0.push_back(s.r0);
        for (auto d : s.spectrum.diagnostics) {
            d.r0 = s.r0;
            out.diagnostics.push_back(std::move(d));
        }
    }

    std::vector<std::size_t> active; // indices into out.curves
    Spectrum const* previous = nullptr;
    for (auto const& s : samples) {
        std::vector<bool> claimed(s.spectrum.levels.size(), false);
        std::vector<std::size_t> still_active;
        for (std::size_t ci : active) {
            LevelCurve& curve = out.curves[ci];
            double const last_E = curve.points.back().E;
            int const n = curve.label.n;

            std::size_t best = s.spectrum.levels.size();
            double best_dist = std::numeric_limits<double>::infinity();
            int same_n = 0;
            std::size_t same_n_index = s.spectrum.levels.size();
            for (std::size_t k = 0; k < s.spectrum.levels.size(); ++k) {
                double const dist = std::abs(s.spectrum.levels[k].E - last_E);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = k;
                }
                if (s.spectrum.levels[k].n == n) {
                    ++same_n;
                    same_n_index = k;
                }
            }
            if (same_n > 1) {
                out.diagnostics.push_back({"continuation-split",
                                           "two roots carry node count " + std::to_string(n), s.r0, {last_E, last_E}});
                continue;
            }
            std::size_t chosen = s.spectrum.levels.size();
            if (best < s.spectrum.levels.size() && s.spectrum.levels[best].n == n) {
                chosen = best;
            } else if (same_n == 1) {
                chosen = same_n_index;
            }
            if (chosen == s.spectrum.levels.size() || claimed[chosen]) {
                continue; // level left the window
            }
            double const E = s.spectrum.levels[chosen].E;
            double const threshold = std::min(detail::continuation_limit(s.spectrum, E, window_width),
                                              detail::continuation_limit(*previous, last_E, window_width));
            if (std::abs(E - last_E) > threshold) {
                out.diagnostics.push_back({"continuation-split",
                                           "energy step " + std::to_string(std::abs(E - last_E))
                                               + " exceeds continuation threshold " + std::to_string(threshold),
                                           s.r0,
                                           {last_E, E}});
                continue;
            }
            claimed[chosen] = true;
            curve.points.push_back({s.r0, E});
            still_active.push_back(ci);
        }
        for (std::size_t k = 0; k < s.spectrum.levels.size(); ++k) {
            if (claimed[k]) {
                continue;
            }
            auto const& lv = s.spectrum.levels[k];
            out.curves.push_back({{lv.n, cfg.kappa, branch.branch}, {{s.r0, lv.E}}});
            still_active.push_back(out.curves.size() - 1);
        }
        active = std::move(still_active);
        previous = &s.spectrum;
    }
    return out;
}

struct LevelSplitting
{
    Branch branch;
    int n;
    double E_a;
    double E_b;
    /// E_b - E_a
    double splitting;
};

struct DegeneracyReport
{
    std::vector<BranchExponent> exponents_a;
    std::vector<BranchExponent> exponents_b;
    /// Admissible exponent sets agree to 1e-12: the two channels solve the same problem.
    bool degenerate{false};
    /// All paired levels agree to 1e-8 fm^-1 and no level is unpaired.
    bool spectra_agree{false};
    double max_splitting{0};
    int unpaired_levels{0};
    std::vector<LevelSplitting> splittings;
    std::vector<Diagnostic> diagnostics;
};

inline constexpr double exponent_match_tolerance = 1e-12;
inline constexpr double degeneracy_energy_tolerance = 1e-8;

/// Compares two channels that differ only in (kappa, U0).
inline DegeneracyReport degeneracy_report(WellConfig const& cfg_a, WellConfig const& cfg_b, SolverOptions const& opts = {})
{
    if (cfg_a.m1 != cfg_b.m1 || cfg_a.m2 != cfg_b.m2 || cfg_a.V0 != cfg_b.V0 || cfg_a.r0 != cfg_b.r0
        || cfg_a.sigma0 != cfg_b.sigma0) {
        throw domain_error("degeneracy_report: configurations may differ only in kappa and U0");
    }

    DegeneracyReport rep;
    rep.exponents_a = admissible_branches(cfg_a.kappa, cfg_a.U0);
    rep.exponents_b = admissible_branches(cfg_b.kappa, cfg_b.U0);
    rep.degenerate = rep.exponents_a.size() == rep.exponents_b.size();
    for (std::size_t i = 0; rep.degenerate && i < rep.exponents_a.size(); ++i) {
        rep.degenerate = std::abs(rep.exponents_a[i].a - rep.exponents_b[i].a) <= exponent_match_tolerance;
    }

    std::size_t const branches = std::max(rep.exponents_a.size(), rep.exponents_b.size());
    for (std::size_t i = 0; i < branches; ++i) {
        Spectrum sa;
        Spectrum sb;
        if (i < rep.exponents_a.size()) {
            sa = find_levels(cfg_a, rep.exponents_a[i], opts);
        }
        if (i < rep.exponents_b.size()) {
            sb = find_levels(cfg_b, rep.exponents_b[i], opts);
        }
        rep.diagnostics.insert(rep.diagnostics.end(), sa.diagnostics.begin(), sa.diagnostics.end());
        rep.diagnostics.insert(rep.diagnostics.end(), sb.diagnostics.begin(), sb.diagnostics.end());
        for (auto const& la : sa.levels) {
            if (EigenResult const* lb = detail::level_with_nodes(sb, la.n)) {
                double const d = lb->E - la.E;
                rep.splittings.push_back({la.branch.branch, la.n, la.E, lb->E, d});
                rep.max_splitting = std::max(rep.max_splitting, std::abs(d));
            } else {
                ++rep.unpaired_levels;
            }
        }
        for (auto const& lb : sb.levels) {
            if (!detail::level_with_nodes(sa, lb.n)) {
                ++rep.unpaired_levels;
            }
        }
    }
    rep.spectra_agree = rep.unpaired_levels == 0 && rep.max_splitting <= degeneracy_energy_tolerance;
    return rep;
}

} // namespace coreshell
