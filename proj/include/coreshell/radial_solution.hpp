#pragma once

/** \file radial_solution.hpp
 *
 *  \brief Closed-form region solutions of the reduced radial equation and the matching determinant.
 *
 *  Core:  G1(r) = r^a e^{-br} M(a, 2a; 2br), regular at the origin with unit leading coefficient.
 *         For eps1 < 0 the wave number is b = iq and the product is real (it equals a Bessel J).
 *  Shell: G2(r) = r^a e^{-br} U(a, 2a; 2br), decaying at infinity.
 */

#include <cmath>
#include <complex>
#include <string>

#include "coreshell/errors.hpp"
#include "coreshell/specfun.hpp"
#include "coreshell/well_model.hpp"

namespace coreshell {

/// Unnormalized G and dG/dr in one region.
struct RadialSolution
{
    double value;
    double derivative;
    Region region;
};

struct MatchingPoint
{
    double E;
    /// w1 G1'(r0) G2(r0) - w2 G2'(r0) G1(r0), with w_i = 1/m_i (weighted) or 1 (plain)
    double D;
    RadialSolution core;
    RadialSolution shell;
    /// |w1 G1' G2| + |w2 G2' G1|, the natural size of D at this energy.
    double scale{0};

    double normalized() const
    {
        return scale > 0.0 ? D / scale : D;
    }
};

inline constexpr double realness_tolerance = 1e-10;

namespace detail {

inline void check_real(std::complex<double> v, double scale, char const* what)
{
    if (std::abs(v.imag()) > realness_tolerance * scale) {
        throw realness_error(std::string(what) + ": imaginary residue " + std::to_string(v.imag())
                             + " exceeds tolerance at scale " + std::to_string(scale));
    }
}

} // namespace detail

/// Regular core solution at r. Oscillatory when eps1 < 0.
inline RadialSolution inner_solution(double r, double a, RegionEnergy const& eps1)
{
    if (!(r > 0.0)) {
        throw domain_error("inner_solution: r must be positive");
    }
    if (!(a > 0.0)) {
        throw domain_error("inner_solution: inadmissible exponent a=" + std::to_string(a));
    }
    std::complex<double> const b = eps1.wave;
    specfun::KummerValue const m = specfun::kummer_m_with_derivative({a, 2.0 * a, 2.0 * b * r});

    std::complex<double> const pre = std::pow(r, a) * std::exp(-b * r);
    std::complex<double> const slope = a / r - b;
    std::complex<double> const value = pre * m.value;
    std::complex<double> const derivative = pre * (slope * m.value + 2.0 * b * m.derivative);

    double const mag = std::abs(pre);
    detail::check_real(value, mag * (std::abs(m.value) + std::abs(m.derivative)), "inner_solution value");
    detail::check_real(derivative, mag * (std::abs(slope) * std::abs(m.value) + 2.0 * std::abs(b) * std::abs(m.derivative)),
                       "inner_solution derivative");
    return {value.real(), derivative.real(), eps1.region};
}

/// Decaying shell solution at r; requires eps2 > 0.
inline RadialSolution outer_solution(double r, double a, RegionEnergy const& eps2)
{
    if (!(r > 0.0)) {
        throw domain_error("outer_solution: r must be positive");
    }
    if (!(a > 0.0)) {
        throw domain_error("outer_solution: inadmissible exponent a=" + std::to_string(a));
    }
    if (!(eps2.eps > 0.0)) {
        throw domain_error("outer_solution: energy outside the bound window (eps=" + std::to_string(eps2.eps) + ")");
    }
    double const b = eps2.wave.real();
    specfun::TricomiValue const u = specfun::decaying_companion_with_derivative({a, 2.0 * a, 2.0 * b * r});
    double const pre = std::pow(r, a) * std::exp(-b * r);
    return {pre * u.value, pre * ((a / r - b) * u.value + 2.0 * b * u.derivative), eps2.region};
}

/// Matching determinant at trial energy E; its zeros are the bound-state energies.
inline MatchingPoint matching_determinant(double E, WellConfig const& cfg, BranchExponent const& branch,
                                          MatchingRule rule = MatchingRule::weighted)
{
    EnergyWindow const window = bound_window(cfg);
    if (!window.contains(E)) {
        throw domain_error("matching_determinant: E=" + std::to_string(E) + " outside the bound window ("
                           + std::to_string(window.lo) + ", " + std::to_string(window.hi) + ")");
    }
    RadialSolution const g1 = inner_solution(cfg.r0, branch.a, region_energy(E, cfg, Region::core));
    RadialSolution const g2 = outer_solution(cfg.r0, branch.a, region_energy(E, cfg, Region::shell));

    double const w1 = rule == MatchingRule::weighted ? 1.0 / cfg.m1 : 1.0;
    double const w2 = rule == MatchingRule::weighted ? 1.0 / cfg.m2 : 1.0;
    double const left = w1 * g1.derivative * g2.value;
    double const right = w2 * g2.derivative * g1.value;
    return {E, left - right, g1, g2, std::abs(left) + std::abs(right)};
}

/// Upper spinor F = [G' - (kappa/r) G + U(r) G] / (m0 - E + sigma0), with U(r) = -U0/r and
/// m0 the rest mass of G's region. Diagnostic only.
inline double reconstruct_upper_spinor(double r, RadialSolution const& G, WellConfig const& cfg, double E)
{
    if (!(r > 0.0)) {
        throw domain_error("reconstruct_upper_spinor: r must be positive");
    }
    double const m0 = G.region == Region::core ? cfg.m1 : cfg.m2;
    double const denom = m0 - E + cfg.sigma0;
    if (std::abs(denom) <= 1e-12 * (std::abs(m0) + std::abs(E) + std::abs(cfg.sigma0))) {
        throw domain_error("reconstruct_upper_spinor: spinor-singular energy E=" + std::to_string(E)
                           + " (m0 - E + sigma0 = 0)");
    }
    double const tensor = -cfg.U0 / r;
    return (G.derivative - (cfg.kappa / r) * G.value + tensor * G.value) / denom;
}

} // namespace coreshell
