#include <cmath>

#include <gtest/gtest.h>

#include "coreshell/well_model.hpp"

using namespace coreshell;

TEST(TensorStrength, Examples)
{
    EXPECT_EQ(tensor_strength_f(0, 0.0), 0.0);
    EXPECT_NEAR(tensor_strength_f(0, 0.5), -0.25, 1e-15);
    EXPECT_NEAR(tensor_strength_f(0, 0.4), -0.24, 1e-15);
    EXPECT_NEAR(tensor_strength_f(2, 0.3), 3 * 0.3 + 0.09, 1e-15);
}

TEST(RadialExponents, Examples)
{
    auto const half = radial_exponents(0, 0.5);
    EXPECT_NEAR(half.plus, 0.5, 1e-12);
    EXPECT_NEAR(half.minus, 0.5, 1e-12);
    auto const two = radial_exponents(0, 0.4);
    EXPECT_NEAR(two.plus, 0.6, 1e-12);
    EXPECT_NEAR(two.minus, 0.4, 1e-12);
    auto const free = radial_exponents(0, 0.0);
    EXPECT_NEAR(free.plus, 1.0, 1e-15);
    EXPECT_NEAR(free.minus, 0.0, 1e-15);
}

TEST(RadialExponents, RootProperties)
{
    for (int kappa = -3; kappa <= 3; ++kappa) {
        for (double U0 = -1.0; U0 <= 2.0; U0 += 0.05) {
            auto const ex = radial_exponents(kappa, U0);
            EXPECT_NEAR(ex.plus + ex.minus, 1.0, 1e-12);
            double const lambda = centrifugal_strength(kappa, U0);
            EXPECT_NEAR(ex.plus * (ex.plus - 1.0), lambda, 1e-12 * std::max(1.0, std::abs(lambda)));
            EXPECT_NEAR(ex.minus * (ex.minus - 1.0), lambda, 1e-12 * std::max(1.0, std::abs(lambda)));
            EXPECT_GE(ex.plus, ex.minus);
        }
    }
}

TEST(RadialExponents, HalfPointSymmetry)
{
    for (double U0 = 0.0; U0 <= 1.0; U0 += 0.0625) {
        auto const x = radial_exponents(0, U0);
        auto const y = radial_exponents(0, 1.0 - U0);
        EXPECT_EQ(x.plus, y.plus) << U0;
        EXPECT_EQ(x.minus, y.minus) << U0;
    }
    EXPECT_EQ(radial_exponents(0, 0.0).plus, radial_exponents(0, 1.0).plus);
}

TEST(AdmissibleBranches, Examples)
{
    auto const two = admissible_branches(0, 0.4);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_NEAR(two[0].a, 0.6, 1e-12);
    EXPECT_EQ(two[0].branch, Branch::plus);
    EXPECT_NEAR(two[1].a, 0.4, 1e-12);
    EXPECT_EQ(two[1].branch, Branch::minus);

    auto const one = admissible_branches(0, 0.0);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].a, 1.0);

    auto const strong = admissible_branches(0, 1.2);
    ASSERT_EQ(strong.size(), 1u);
    EXPECT_NEAR(strong[0].a, 1.2, 1e-12);

    auto const dbl = admissible_branches(0, 0.5);
    ASSERT_EQ(dbl.size(), 1u);
    EXPECT_NEAR(dbl[0].a, 0.5, 1e-12);
}

TEST(RadialExponents, PerfectSquareDiscriminant)
{
    // 1/4 + kappa(kappa-1) + f = (kappa - 1/2 + U0)^2
    for (int kappa = -3; kappa <= 3; ++kappa) {
        for (double U0 = -1.0; U0 <= 2.0; U0 += 0.1) {
            double const root = std::abs(kappa - 0.5 + U0);
            auto const ex = radial_exponents(kappa, U0);
            EXPECT_NEAR(ex.plus, 0.5 + root, 1e-12);
            EXPECT_NEAR(ex.minus, 0.5 - root, 1e-12);
        }
    }
}

TEST(RegionEnergy, Examples)
{
    WellConfig cfg;
    cfg.m1 = 1.5;
    cfg.V0 = 0.0;
    auto const a = region_energy(0.0, cfg, Region::core);
    EXPECT_NEAR(a.eps, 2.25, 1e-15);
    EXPECT_NEAR(a.wave.real(), 1.5, 1e-15);

    cfg.V0 = 1.0;
    auto const b = region_energy(0.2, cfg, Region::core);
    EXPECT_NEAR(b.eps, 0.81, 1e-14);
    EXPECT_NEAR(b.wave.real(), 0.9, 1e-14);
    EXPECT_EQ(b.wave.imag(), 0.0);

    auto const c = region_energy(1.0, cfg, Region::core);
    EXPECT_NEAR(c.eps, -1.75, 1e-14);
    EXPECT_EQ(c.wave.real(), 0.0);
    EXPECT_NEAR(c.wave.imag(), std::sqrt(1.75), 1e-14);
    EXPECT_EQ(c.region, Region::core);

    cfg.m2 = 1.75;
    auto const s = region_energy(0.5, cfg, Region::shell);
    EXPECT_NEAR(s.eps, 1.75 * 1.75 - 0.25, 1e-14);
    EXPECT_EQ(s.region, Region::shell);
}

TEST(BoundWindow, Examples)
{
    WellConfig cfg;
    cfg.m2 = 1.75;
    cfg.V0 = 1.0;
    EXPECT_NEAR(bound_window(cfg).lo, -0.75, 1e-15);
    EXPECT_NEAR(bound_window(cfg).hi, 2.75, 1e-15);
    cfg.m2 = 1.5;
    EXPECT_NEAR(bound_window(cfg).lo, -0.5, 1e-15);
    EXPECT_NEAR(bound_window(cfg).hi, 2.5, 1e-15);
    cfg.V0 = 0.0;
    EXPECT_NEAR(bound_window(cfg).lo, -1.5, 1e-15);
    EXPECT_NEAR(bound_window(cfg).hi, 1.5, 1e-15);
    EXPECT_TRUE(bound_window(cfg).contains(0.0));
    EXPECT_FALSE(bound_window(cfg).contains(1.5));
}

TEST(WellConfig, Validation)
{
    WellConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.m1 = 0.0;
    EXPECT_THROW(cfg.validate(), coreshell::domain_error);
    cfg = {};
    cfg.r0 = -1.0;
    EXPECT_THROW(cfg.validate(), coreshell::domain_error);
    cfg = {};
    cfg.V0 = std::nan("");
    EXPECT_THROW(cfg.validate(), coreshell::domain_error);
}
