#pragma once

/** \file oracle.hpp
 *
 *  \brief Reference spectra by direct integration of the reduced radial equation.
 *
 *  Shares nothing with the closed-form path except WellConfig and the exponent algebra. Both
 *  regions are integrated in s = ln r, where the equation reads
 *
 *      y'' - y' = (lambda + eps e^{2s}) y,    lambda = a(a-1),
 *
 *  with classical fourth-order Runge-Kutta on a uniform s-grid: outward from r_min with the
 *  regular Frobenius start r^a (1 + eps r^2 / (2(2a+1))), inward from the cutoff with the decaying
 *  start e^{-br} (1 + lambda / (2br)). Roots of the matching mismatch are bracketed on an energy
 *  scan, refined by Illinois regula falsi, repeated with half the step and Richardson-extrapolated.
 */

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "coreshell/errors.hpp"
#include "coreshell/spectrum.hpp"
#include "coreshell/well_model.hpp"

namespace coreshell::oracle {

struct ShootingGrid
{
    double r_min;
    /// Outer cutoff ceiling. Each energy integrates from min(r_max, r0 + 24/b2), which must exceed r0 + 8/b2.
    double r_max;
    /// Runge-Kutta steps per region.
    int steps;

    /// Grid covering every energy in the bound window shrunk by margin.
    static ShootingGrid for_config(WellConfig const& cfg, double margin = 1e-6, int steps = 10000)
    {
        double const edge_eps = cfg.m2 * cfg.m2 - (cfg.m2 - margin) * (cfg.m2 - margin);
        double const b_min = std::sqrt(std::max(edge_eps, 1e-300));
        return {1e-4 * cfg.r0, cfg.r0 + 24.0 / b_min, steps};
    }

    void validate(WellConfig const& cfg) const
    {
        if (!(r_min > 0.0) || !(r_min < cfg.r0)) {
            throw domain_error("ShootingGrid: need 0 < r_min < r0");
        }
        if (steps < 10000) {
            throw domain_error("ShootingGrid: at least 10^4 steps required");
        }
        if (!(r_max > cfg.r0)) {
            throw domain_error("ShootingGrid: r_max must exceed r0");
        }
    }
};

struct OracleOptions
{
    int scan_points{800};
    MatchingRule matching{MatchingRule::weighted};
    double window_margin{1e-6};
    /// Eigenvalues whose Richardson error estimate exceeds this are flagged.
    double error_bound{1e-7};
};

/// Boundary data at r0 from both integrations, plus sign changes met on the way.
struct ShootingState
{
    double g_core;
    double dg_core;
    double g_shell;
    double dg_shell;
    int core_sign_changes;
    int shell_sign_changes;
};

namespace detail {

struct Integration
{
    double y;
    double dy_ds;
    int sign_changes;
};

/// RK4 for y'' = y' + (lambda + eps e^{2s}) y from s0 to s1 in n steps.
inline Integration integrate_log(double lambda, double eps, double s0, double s1, int n, double y, double p)
{
    double const h = (s1 - s0) / n;
    auto accel = [&](double s, double yy, double pp) { return pp + (lambda + eps * std::exp(2.0 * s)) * yy; };
    int changes = 0;
    for (int k = 0; k < n; ++k) {
        double const s = s0 + h * k;
        double const k1y = p;
        double const k1p = accel(s, y, p);
        double const k2y = p + 0.5 * h * k1p;
        double const k2p = accel(s + 0.5 * h, y + 0.5 * h * k1y, k2y);
        double const k3y = p + 0.5 * h * k2p;
        double const k3p = accel(s + 0.5 * h, y + 0.5 * h * k2y, k3y);
        double const k4y = p + h * k3p;
        double const k4p = accel(s + h, y + h * k3y, k4y);
        double const y_next = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        if ((y_next > 0.0 && y < 0.0) || (y_next < 0.0 && y > 0.0)) {
            ++changes;
        }
        y = y_next;
        // only the ratio y'/y at r0 matters
        double const mag = std::abs(y) + std::abs(p);
        if (mag > 1e200) {
            y *= 1e-200;
            p *= 1e-200;
        }
    }
    return {y, p, changes};
}

} // namespace detail

/// Integrates both regions at energy E for exponent a.
inline ShootingState shoot(double E, WellConfig const& cfg, double a, ShootingGrid const& grid, int steps)
{
    double const lambda = a * (a - 1.0);
    double const eps1 = cfg.m1 * cfg.m1 - (E + cfg.V0) * (E + cfg.V0);
    double const eps2 = cfg.m2 * cfg.m2 - (E - cfg.V0) * (E - cfg.V0);
    if (!(eps2 > 0.0)) {
        throw domain_error("oracle: E=" + std::to_string(E) + " outside the bound window");
    }
    double const b2 = std::sqrt(eps2);
    double const r_end = std::min(grid.r_max, cfg.r0 + 24.0 / b2);
    if (!(r_end > cfg.r0 + 8.0 / b2)) {
        throw domain_error("oracle: grid cutoff too short for E=" + std::to_string(E));
    }

    double const rm = grid.r_min;
    double const c = eps1 / (2.0 * (2.0 * a + 1.0));
    double const g0 = std::pow(rm, a) * (1.0 + c * rm * rm);
    double const dg0 = a * std::pow(rm, a - 1.0) + c * (a + 2.0) * std::pow(rm, a + 1.0);
    detail::Integration const in = detail::integrate_log(lambda, eps1, std::log(rm), std::log(cfg.r0), steps, g0, rm * dg0);

    double const t = lambda / (2.0 * b2 * r_end);
    double const log_slope = -b2 - (lambda / (2.0 * b2 * r_end * r_end)) / (1.0 + t);
    detail::Integration const out
        = detail::integrate_log(lambda, eps2, std::log(r_end), std::log(cfg.r0), steps, 1.0, r_end * log_slope);

    return {in.y, in.dy_ds / cfg.r0, out.y, out.dy_ds / cfg.r0, in.sign_changes, out.sign_changes};
}

/// Normalized matching mismatch; same sign convention as the closed-form determinant.
inline double mismatch(double E, WellConfig const& cfg, double a, ShootingGrid const& grid, int steps, MatchingRule rule)
{
    ShootingState const s = shoot(E, cfg, a, grid, steps);
    double const w1 = rule == MatchingRule::weighted ? 1.0 / cfg.m1 : 1.0;
    double const w2 = rule == MatchingRule::weighted ? 1.0 / cfg.m2 : 1.0;
    double const left = w1 * s.dg_core * s.g_shell;
    double const right = w2 * s.dg_shell * s.g_core;
    double const scale = std::abs(left) + std::abs(right);
    return scale > 0.0 ? (left - right) / scale : 0.0;
}

namespace detail {

/// Illinois regula falsi on a sign-changing bracket.
template <typename F>
double illinois(F const& f, double lo, double hi, double f_lo, double f_hi)
{
    int side = 0;
    for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
        double const x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        double const fx = f(x);
        if (fx == 0.0) {
            return x;
        }
        if ((fx > 0.0) == (f_hi > 0.0)) {
            hi = x;
            f_hi = fx;
            if (side == 1) {
                f_lo *= 0.5;
            }
            side = 1;
        } else {
            lo = x;
            f_lo = fx;
            if (side == -1) {
                f_hi *= 0.5;
            }
            side = -1;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Reference eigenvalues of one branch with node count <= n_max.
inline Spectrum shoot_eigenvalues(WellConfig const& cfg, BranchExponent const& branch, ShootingGrid const& grid, int n_max,
                                  OracleOptions const& opts = {})
{
    cfg.validate();
    grid.validate(cfg);
    Spectrum out;
    double const lo = cfg.V0 - cfg.m2 + opts.window_margin;
    double const hi = cfg.V0 + cfg.m2 - opts.window_margin;
    if (!(lo < hi)) {
        return out;
    }

    double const a = branch.a;
    int const coarse = grid.steps;
    int const fine = 2 * grid.steps;
    auto f_coarse = [&](double E) { return mismatch(E, cfg, a, grid, coarse, opts.matching); };
    auto f_fine = [&](double E) { return mismatch(E, cfg, a, grid, fine, opts.matching); };

    std::vector<double> energies(opts.scan_points);
    for (int i = 0; i < opts.scan_points; ++i) {
        energies[i] = lo + (hi - lo) * i / (opts.scan_points - 1);
    }
    std::vector<double> const values = parallel_map(energies, f_coarse);

    for (std::size_t i = 0; i + 1 < energies.size(); ++i) {
        if ((values[i] > 0.0) == (values[i + 1] > 0.0)) {
            continue;
        }
        std::pair<double, double> const bracket{energies[i], energies[i + 1]};
        double const e_coarse = detail::illinois(f_coarse, energies[i], energies[i + 1], values[i], values[i + 1]);

        // re-bracket the fine-grid root around the coarse one
        double width = 1e-8;
        double left = std::max(lo, e_coarse - width);
        double right = std::min(hi, e_coarse + width);
        double f_left = f_fine(left);
        double f_right = f_fine(right);
        while ((f_left > 0.0) == (f_right > 0.0) && width < (hi - lo)) {
            width *= 4.0;
            left = std::max(lo, e_coarse - width);
            right = std::min(hi, e_coarse + width);
            f_left = f_fine(left);
            f_right = f_fine(right);
        }
        if ((f_left > 0.0) == (f_right > 0.0)) {
            out.diagnostics.push_back({"unrefined-bracket", "oracle lost the root on the fine grid", cfg.r0, bracket});
            continue;
        }
        double const e_fine = detail::illinois(f_fine, left, right, f_left, f_right);
        double const E = e_fine + (e_fine - e_coarse) / 15.0;
        double const error = std::abs(e_fine - e_coarse) / 15.0;

        ShootingState const s = shoot(E, cfg, a, grid, fine);
        int const n = s.core_sign_changes + s.shell_sign_changes;
        if (error > opts.error_bound) {
            out.diagnostics.push_back({"residual", "oracle error estimate " + std::to_string(error), cfg.r0, bracket});
        }
        if (n <= n_max) {
            out.levels.push_back({E, n, branch, std::abs(f_fine(E)), bracket, error});
        }
    }
    return out;
}

} // namespace coreshell::oracle
