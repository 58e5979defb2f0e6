#pragma once

/** \file well_model.hpp
 *
 *  \brief Core/shell well configuration, small-r exponent algebra and region energies.
 *
 *  Natural units throughout: masses, energies and potentials in fm^-1, lengths in fm.
 *  The core (r < r0) carries rest mass m1 and scalar potential -V0, the shell (r >= r0)
 *  rest mass m2 and potential +V0. With the Coulomb tensor U(r) = -U0/r the lower
 *  spinor obeys
 *
 *      G'' - [kappa(kappa-1) + f(U0)] / r^2 G - eps_i G = 0,
 *      f(U0) = (2 kappa - 1) U0 + U0^2,
 *
 *  and G ~ r^a near the origin with a(a-1) = kappa(kappa-1) + f(U0).
 */

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "coreshell/errors.hpp"

namespace coreshell {

enum class Region
{
    core,
    shell
};

enum class Branch
{
    plus,
    minus
};

/// Boundary condition on the derivative at r0: (1/m1) G1' = (1/m2) G2' or plain G1' = G2'.
enum class MatchingRule
{
    weighted,
    plain
};

inline std::string to_string(Branch b)
{
    return b == Branch::plus ? "plus" : "minus";
}

inline std::string to_string(Region r)
{
    return r == Region::core ? "core" : "shell";
}

inline std::string to_string(MatchingRule m)
{
    return m == MatchingRule::weighted ? "weighted" : "plain";
}

struct WellConfig
{
    double m1{1.5};    ///< core rest mass [fm^-1]
    double m2{1.75};   ///< shell rest mass [fm^-1]
    double V0{1.0};    ///< half-depth of the potential step [fm^-1]
    double r0{4.0};    ///< core radius [fm]
    double U0{0.0};    ///< Coulomb tensor strength (dimensionless)
    int kappa{0};      ///< spin-orbit quantum number
    double sigma0{0};  ///< constant pseudospin potential; enters only the upper-spinor reconstruction

    void validate() const
    {
        auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(m1) || !finite(m2) || !finite(V0) || !finite(r0) || !finite(U0) || !finite(sigma0)) {
            throw domain_error("WellConfig: non-finite parameter");
        }
        if (!(m1 > 0.0) || !(m2 > 0.0)) {
            throw domain_error("WellConfig: masses must be positive");
        }
        if (!(r0 > 0.0)) {
            throw domain_error("WellConfig: r0 must be positive");
        }
    }
};

/// One admissible small-r exponent.
struct BranchExponent
{
    double a;
    Branch branch;
};

struct ExponentPair
{
    double plus;
    double minus;
};

struct RegionEnergy
{
    double eps;                ///< fm^-2
    Region region;
    std::complex<double> wave; ///< b with b^2 = eps; purely imaginary (Im > 0) when eps < 0
};

/// Open energy interval in which the shell solution decays.
struct EnergyWindow
{
    double lo;
    double hi;

    bool contains(double E) const
    {
        return E > lo && E < hi;
    }

    double width() const
    {
        return hi - lo;
    }
};

/// f(U0) = (2 kappa - 1) U0 + U0^2.
inline double tensor_strength_f(int kappa, double U0)
{
    return (2.0 * kappa - 1.0) * U0 + U0 * U0;
}

/// Effective centrifugal strength kappa(kappa-1) + f(U0) = a(a-1).
inline double centrifugal_strength(int kappa, double U0)
{
    double const k = kappa;
    return k * (k - 1.0) + tensor_strength_f(kappa, U0);
}

/// Roots a+ >= a- of a(a-1) = kappa(kappa-1) + f(U0).
inline ExponentPair radial_exponents(int kappa, double U0)
{
    double disc = 0.25 + centrifugal_strength(kappa, U0);
    // rounding in the sum can leave a double root slightly negative
    if (disc < 0.0 && disc > -1e-14) {
        disc = 0.0;
    }
    if (disc < 0.0) {
        throw domain_error("radial_exponents: complex exponents for kappa=" + std::to_string(kappa)
                           + ", U0=" + std::to_string(U0));
    }
    double const root = std::sqrt(disc);
    return {0.5 + root, 0.5 - root};
}

/// Exponents with a > 0, the plus branch first. A double root is reported once, as plus.
inline std::vector<BranchExponent> admissible_branches(int kappa, double U0)
{
    std::vector<BranchExponent> out;
    double const disc = 0.25 + centrifugal_strength(kappa, U0);
    if (disc < -1e-14) {
        return out;
    }
    ExponentPair const ex = radial_exponents(kappa, U0);
    if (ex.plus > 0.0) {
        out.push_back({ex.plus, Branch::plus});
    }
    if (ex.minus > 0.0 && ex.plus != ex.minus) {
        out.push_back({ex.minus, Branch::minus});
    }
    return out;
}

/// eps_1 = m1^2 - (E + V0)^2 in the core, eps_2 = m2^2 - (E - V0)^2 in the shell.
inline RegionEnergy region_energy(double E, WellConfig const& cfg, Region region)
{
    double const eps = (region == Region::core) ? cfg.m1 * cfg.m1 - (E + cfg.V0) * (E + cfg.V0)
                                                : cfg.m2 * cfg.m2 - (E - cfg.V0) * (E - cfg.V0);
    std::complex<double> const wave = (eps >= 0.0) ? std::complex<double>(std::sqrt(eps), 0.0)
                                                   : std::complex<double>(0.0, std::sqrt(-eps));
    return {eps, region, wave};
}

/// (V0 - m2, V0 + m2): the shell solution decays only for |E - V0| < m2.
inline EnergyWindow bound_window(WellConfig const& cfg)
{
    return {cfg.V0 - cfg.m2, cfg.V0 + cfg.m2};
}

} // namespace coreshell
