#include <array>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>
#include <gtest/gtest.h>

#include "coreshell/radial_solution.hpp"
#include "reference_levels.hpp"

using namespace coreshell;

namespace {

WellConfig light_core(double U0 = 0.0)
{
    WellConfig cfg;
    cfg.m1 = 1.5;
    cfg.m2 = 1.75;
    cfg.V0 = 1.0;
    cfg.r0 = 4.0;
    cfg.U0 = U0;
    cfg.kappa = 0;
    return cfg;
}

RegionEnergy with_eps(double eps, Region region)
{
    std::complex<double> const wave = eps >= 0 ? std::complex<double>(std::sqrt(eps), 0) : std::complex<double>(0, std::sqrt(-eps));
    return {eps, region, wave};
}

// G'' - [a(a-1)/r^2 + eps] G by central differences of G'.
double ode_residual(double r, double a, RegionEnergy const& e, bool inner)
{
    auto eval = [&](double x) { return inner ? inner_solution(x, a, e) : outer_solution(x, a, e); };
    double const h = 1e-5 * r;
    RadialSolution const g = eval(r);
    double const g2 = (eval(r + h).derivative - eval(r - h).derivative) / (2 * h);
    double const pot = (a * (a - 1.0) / (r * r) + e.eps) * g.value;
    return std::abs(g2 - pot) / std::max({std::abs(g2), std::abs(pot), 1e-300});
}

} // namespace

TEST(InnerSolution, VanishesAtOrigin)
{
    for (double a : {0.4, 0.6, 1.0}) {
        for (double eps : {1.0, -4.0}) {
            double const small = inner_solution(1e-8, a, with_eps(eps, Region::core)).value;
            EXPECT_LT(std::abs(small), 1e-3) << a;
            EXPECT_LT(std::abs(inner_solution(1e-12, a, with_eps(eps, Region::core)).value), std::abs(small));
        }
    }
}

TEST(InnerSolution, UnitLeadingCoefficient)
{
    double const g = inner_solution(0.01, 1.0, with_eps(1.0, Region::core)).value;
    EXPECT_NEAR(g / 0.01, 1.0, 0.01);
    // r sinh(r) / r^... : a = 1, eps = 1 gives sinh(r)
    EXPECT_NEAR(g, std::sinh(0.01), 1e-16);
}

TEST(InnerSolution, MatchesDirectIntegration)
{
    namespace odeint = boost::numeric::odeint;
    using state = std::array<double, 2>;
    for (double a : {1.0, 0.6, 0.4}) {
        double const eps = -4.0;
        double const lambda = a * (a - 1.0);
        auto rhs = [&](state const& y, state& dy, double r) {
            dy[0] = y[1];
            dy[1] = (lambda / (r * r) + eps) * y[0];
        };
        double const r_start = 1e-6;
        double const c = eps / (2.0 * (2.0 * a + 1.0));
        state y = {std::pow(r_start, a) * (1 + c * r_start * r_start),
                   a * std::pow(r_start, a - 1) + c * (a + 2) * std::pow(r_start, a + 1)};
        double r = r_start;
        auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_dopri5<state>());
        for (double target : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
            odeint::integrate_adaptive(stepper, rhs, y, r, target, 1e-8);
            r = target;
            RadialSolution const g = inner_solution(target, a, with_eps(eps, Region::core));
            double const amplitude = std::hypot(y[0], y[1] / 2.0);
            EXPECT_NEAR(g.value, y[0], 1e-6 * amplitude) << a << ' ' << target;
            EXPECT_NEAR(g.derivative, y[1], 1e-6 * 2.0 * amplitude) << a << ' ' << target;
        }
    }
}

TEST(OuterSolution, ClosedFormForUnitExponent)
{
    RegionEnergy const e = with_eps(4.0, Region::shell);
    EXPECT_NEAR(outer_solution(2.0, 1.0, e).value, 0.25 * std::exp(-4.0), 1e-16);
    EXPECT_NEAR(outer_solution(1.0, 1.0, e).value, std::exp(-2.0) / 4.0, 1e-16);
    // G = e^{-2r}/4 exactly, so G' = -2 G
    EXPECT_NEAR(outer_solution(1.0, 1.0, e).derivative, -std::exp(-2.0) / 2.0, 1e-15);
}

TEST(OuterSolution, Decays)
{
    RegionEnergy const e = with_eps(1.0, Region::shell);
    double const far = outer_solution(30.0, 1.0, e).value;
    double const near = outer_solution(5.0, 1.0, e).value;
    EXPECT_LT(std::abs(far), std::exp(-25.0) * near / std::exp(-5.0) * std::exp(5.0));
    EXPECT_GT(near, 0.0);
    for (double a : {0.4, 0.6}) {
        double prev = outer_solution(0.5, a, e).value;
        for (double r = 1.0; r < 40.0; r += 0.5) {
            double const g = outer_solution(r, a, e).value;
            EXPECT_GT(g, 0.0);
            EXPECT_LT(g, prev);
            prev = g;
        }
    }
}

TEST(OuterSolution, RequiresBoundEnergy)
{
    EXPECT_THROW(outer_solution(1.0, 1.0, with_eps(-1.0, Region::shell)), coreshell::domain_error);
    EXPECT_THROW(outer_solution(1.0, 1.0, with_eps(0.0, Region::shell)), coreshell::domain_error);
    EXPECT_THROW(outer_solution(-1.0, 1.0, with_eps(1.0, Region::shell)), coreshell::domain_error);
    EXPECT_THROW(inner_solution(1.0, 0.0, with_eps(1.0, Region::core)), coreshell::domain_error);
}

TEST(RadialSolutions, SatisfyRadialEquation)
{
    double const r0 = 4.0;
    for (double a : {0.4, 0.6, 1.0, 1.2}) {
        for (double eps : {-3.0, -0.5, 0.7, 2.0}) {
            for (double r = 0.05 * r0; r <= 3.0 * r0; r += 0.17 * r0) {
                EXPECT_LT(ode_residual(r, a, with_eps(eps, Region::core), true), 1e-5) << a << ' ' << eps << ' ' << r;
                if (eps > 0) {
                    EXPECT_LT(ode_residual(r, a, with_eps(eps, Region::shell), false), 1e-5) << a << ' ' << eps << ' ' << r;
                }
            }
        }
    }
}

TEST(MatchingDeterminant, VanishesAtReferenceLevels)
{
    WellConfig const cfg = light_core();
    BranchExponent const br{1.0, Branch::plus};
    for (double E : reference::a1_weighted) {
        MatchingPoint const p = matching_determinant(E, cfg, br);
        EXPECT_LT(std::abs(p.D), 1e-10 * p.scale) << E;
    }
    for (double E : reference::a1_plain) {
        MatchingPoint const p = matching_determinant(E, cfg, br, MatchingRule::plain);
        EXPECT_LT(std::abs(p.D), 1e-10 * p.scale) << E;
    }
}

TEST(MatchingDeterminant, SignChangesOnlyAtLevels)
{
    WellConfig const cfg = light_core();
    BranchExponent const br{1.0, Branch::plus};
    EnergyWindow const w = bound_window(cfg);
    int const n = 2000;
    std::vector<std::pair<double, double>> brackets;
    double prev_E = w.lo + 1e-6;
    double prev_D = matching_determinant(prev_E, cfg, br).D;
    for (int i = 1; i < n; ++i) {
        double const E = w.lo + 1e-6 + (w.width() - 2e-6) * i / (n - 1);
        double const D = matching_determinant(E, cfg, br).D;
        if ((D > 0) != (prev_D > 0)) {
            brackets.emplace_back(prev_E, E);
        }
        prev_E = E;
        prev_D = D;
    }
    ASSERT_EQ(brackets.size(), reference::a1_weighted.size());
    for (std::size_t k = 0; k < brackets.size(); ++k) {
        EXPECT_LE(brackets[k].first, reference::a1_weighted[k]);
        EXPECT_GE(brackets[k].second, reference::a1_weighted[k]);
    }
}

TEST(MatchingDeterminant, UniformMediumBindsNothing)
{
    WellConfig cfg = light_core();
    cfg.m1 = cfg.m2 = 1.5;
    cfg.V0 = 0.0;
    BranchExponent const br{1.0, Branch::plus};
    EnergyWindow const w = bound_window(cfg);
    double const first = matching_determinant(w.lo + 1e-6, cfg, br).D;
    for (int i = 1; i < 2000; ++i) {
        double const E = w.lo + 1e-6 + (w.width() - 2e-6) * i / 1999.0;
        EXPECT_EQ(matching_determinant(E, cfg, br).D > 0, first > 0) << E;
    }
}

TEST(MatchingDeterminant, ScalingLeavesZerosInPlace)
{
    WellConfig const cfg = light_core(0.4);
    BranchExponent const br{0.6, Branch::plus};
    double const w1 = 1.0 / cfg.m1;
    double const w2 = 1.0 / cfg.m2;
    for (double c1 : {-3.7, 1e-5, 250.0}) {
        for (double c2 : {0.01, -9.0}) {
            for (double E = -0.7; E < 2.7; E += 0.173) {
                MatchingPoint const p = matching_determinant(E, cfg, br);
                double const scaled = w1 * (c1 * p.core.derivative) * (c2 * p.shell.value) - w2 * (c2 * p.shell.derivative) * (c1 * p.core.value);
                EXPECT_NEAR(scaled, c1 * c2 * p.D, 1e-12 * std::abs(c1 * c2) * p.scale);
            }
        }
    }
}

TEST(MatchingDeterminant, ContinuousAcrossWindow)
{
    for (double U0 : {0.0, 0.4}) {
        WellConfig const cfg = light_core(U0);
        for (auto const& br : admissible_branches(0, U0)) {
            EnergyWindow const w = bound_window(cfg);
            int const n = 10000;
            std::vector<double> d(n);
            for (int i = 0; i < n; ++i) {
                double const E = w.lo + 1e-6 + (w.width() - 2e-6) * i / (n - 1);
                d[i] = matching_determinant(E, cfg, br).normalized();
            }
            for (int i = 1; i + 2 < n; ++i) {
                double const step = std::abs(d[i + 1] - d[i]);
                double const local = std::max(std::abs(d[i] - d[i - 1]), std::abs(d[i + 2] - d[i + 1]));
                EXPECT_LE(step, 10.0 * local + 1e-12) << "U0=" << U0 << " a=" << br.a << " i=" << i;
            }
        }
    }
}

TEST(MatchingDeterminant, OutsideWindowThrows)
{
    WellConfig const cfg = light_core();
    BranchExponent const br{1.0, Branch::plus};
    EXPECT_THROW(matching_determinant(-0.75, cfg, br), coreshell::domain_error);
    EXPECT_THROW(matching_determinant(3.0, cfg, br), coreshell::domain_error);
}

TEST(UpperSpinor, Reductions)
{
    WellConfig cfg = light_core();
    RadialSolution const zero{0.0, 0.0, Region::core};
    EXPECT_EQ(reconstruct_upper_spinor(1.0, zero, cfg, 0.7), 0.0);

    double const E = reference::a1_weighted[0];
    RadialSolution const g = inner_solution(1.0, 1.0, region_energy(E, cfg, Region::core));
    EXPECT_NEAR(reconstruct_upper_spinor(1.0, g, cfg, E), g.derivative / (cfg.m1 - E), 1e-15);

    RegionEnergy const shell = region_energy(E, cfg, Region::shell);
    RadialSolution const s = outer_solution(6.0, 1.0, shell);
    EXPECT_NEAR(reconstruct_upper_spinor(6.0, s, cfg, E), s.derivative / (cfg.m2 - E), 1e-15);
}

TEST(UpperSpinor, FiniteDifferenceSpotCheck)
{
    WellConfig cfg = light_core(0.4);
    cfg.kappa = 1;
    cfg.sigma0 = 0.3;
    double const a = admissible_branches(cfg.kappa, cfg.U0)[0].a;
    double const E = 0.8;
    RegionEnergy const e = region_energy(E, cfg, Region::core);
    double const r = 1.0;
    double const h = 1e-5;
    RadialSolution const g = inner_solution(r, a, e);
    double const fd = (inner_solution(r + h, a, e).value - inner_solution(r - h, a, e).value) / (2 * h);
    RadialSolution const sampled{g.value, fd, Region::core};
    double const f = reconstruct_upper_spinor(r, g, cfg, E);
    EXPECT_NEAR(reconstruct_upper_spinor(r, sampled, cfg, E) / f, 1.0, 1e-8);
    double const want = (g.derivative - cfg.kappa / r * g.value - cfg.U0 / r * g.value) / (cfg.m1 - E + cfg.sigma0);
    EXPECT_NEAR(f, want, 1e-15);
}

TEST(UpperSpinor, SingularEnergyThrows)
{
    WellConfig cfg = light_core();
    RadialSolution const g{1.0, 1.0, Region::core};
    EXPECT_THROW(reconstruct_upper_spinor(1.0, g, cfg, cfg.m1), coreshell::domain_error);
    EXPECT_THROW(reconstruct_upper_spinor(0.0, g, cfg, 0.3), coreshell::domain_error);
}
