#pragma once

/** \file specfun.hpp
 *
 *  \brief Confluent hypergeometric functions M(a, b; z) and U(a, b; z) for real parameters.
 *
 *  M is evaluated for real or complex argument; U only for real positive argument, which is
 *  all the radial solutions need. The evaluation routes are
 *
 *   - b == 2a on the real or imaginary axis: M(a, 2a; z) = e^{z/2} 0F1(; a + 1/2; z^2/16),
 *     a real series in x = z^2/16 (accumulated in __float128 when x < 0 and terms alternate);
 *   - Re z < 0: Kummer's transformation M(a, b; z) = e^z M(b - a, b; -z);
 *   - |z| <= 40: Taylor series with term-ratio recurrence, in double when all terms share
 *     a sign and in __float128 otherwise;
 *   - |z| > 40: the two-sided large-|z| expansion.
 *
 *  U is taken from its Laplace-type integral representation, which has no cancellation.
 */

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "coreshell/detail/quad_complex.hpp"
#include "coreshell/errors.hpp"

namespace coreshell::specfun {

using complex = std::complex<double>;

/// Parameters of a confluent hypergeometric evaluation. In this library b = 2a at every call site.
struct HypergeometricArgs
{
    double a{0};
    double b{0};
    complex z{};
};

struct KummerValue
{
    complex value;
    /// dM/dz
    complex derivative;
};

struct TricomiValue
{
    double value;
    /// dU/dz
    double derivative;
};

inline constexpr int series_term_cap = 10000;
inline constexpr double series_tolerance = 1e-16;
/// Above this |z| the series is replaced by the large-argument expansion.
inline constexpr double asymptotic_threshold = 40.0;
/// Upper |z| for the 0F1 route on the imaginary axis; quad precision still leaves > 13 digits here.
inline constexpr double half_order_imaginary_limit = 80.0;

/// Gamma function, Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
inline double gamma(double x)
{
    constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                         771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                         -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double pi = std::numbers::pi;
    if (x < 0.5) {
        return pi / (std::sin(pi * x) * gamma(1.0 - x));
    }
    x -= 1.0;
    double s = c[0];
    for (int i = 1; i < 9; ++i) {
        s += c[i] / (x + i);
    }
    double const t = x + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, x + 0.5) * std::exp(-t) * s;
}

/// 1/Gamma(x); exactly zero at the poles 0, -1, -2, ...
inline double reciprocal_gamma(double x)
{
    constexpr double pi = std::numbers::pi;
    if (x <= 0.0 && x == std::floor(x)) {
        return 0.0;
    }
    if (x < 0.5) {
        return std::sin(pi * x) * gamma(1.0 - x) / pi;
    }
    return 1.0 / gamma(x);
}

namespace detail {

using coreshell::detail::abs_real;
using coreshell::detail::basic_complex;
using coreshell::detail::l1_norm;

/// Taylor series of M(a, b; z) and dM/dz, summed in Real.
template <typename Real>
KummerValue kummer_series(double a, double b, complex z)
{
    using C = basic_complex<Real>;
    C const zz(z);
    Real const ar = a;
    Real const br = b;
    Real const tol = series_tolerance;
    double const zabs = std::abs(z);

    C term(Real(1));
    C sum(Real(1));
    C dsum(Real(0)); // sum of k t_k; dM/dz = dsum / z

    for (int k = 0; k < series_term_cap; ++k) {
        Real const kk = k;
        Real const ratio = (ar + kk) / ((br + kk) * (kk + 1));
        term = term * zz;
        term *= ratio;
        sum += term;
        dsum += term * (kk + 1);

        double const growth = std::abs(static_cast<double>(ratio)) * zabs;
        if (growth < 1.0) {
            Real const slack = tol * Real(1.0 - growth);
            Real const t = l1_norm(term);
            Real const s = l1_norm(sum);
            Real const ds = l1_norm(dsum);
            if (t <= slack * s && t * (kk + 1) <= slack * (s > ds ? s : ds)) {
                complex const value = sum.to_std();
                complex const derivative = (zabs == 0.0) ? complex(a / b) : dsum.to_std() / z;
                return {value, derivative};
            }
        }
    }
    throw convergence_error("kummer_m: series did not converge within " + std::to_string(series_term_cap)
                            + " terms (a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

/// 0F1(; c; x) and its x-derivative for real x.
template <typename Real>
std::pair<double, double> hyp0f1_series(double c, double x)
{
    Real const cr = c;
    Real const xr = x;
    Real const tol = series_tolerance;
    Real term = 1;
    Real sum = 1;
    Real dsum = 0;
    for (int k = 0; k < series_term_cap; ++k) {
        Real const kk = k;
        Real const ratio = xr / ((cr + kk) * (kk + 1));
        term *= ratio;
        sum += term;
        dsum += term * (kk + 1);
        double const growth = std::abs(static_cast<double>(ratio));
        if (growth < 1.0) {
            Real const slack = tol * Real(1.0 - growth);
            Real const t = abs_real(term);
            Real const s = abs_real(sum);
            Real const ds = abs_real(dsum);
            if (t <= slack * s && t * (kk + 1) <= slack * (s > ds ? s : ds)) {
                double const f = static_cast<double>(sum);
                double const fp = (x == 0.0) ? 1.0 / c : static_cast<double>(dsum) / x;
                return {f, fp};
            }
        }
    }
    throw convergence_error("hyp0f1: series did not converge");
}

/// M(a, 2a; z) for z on the real or imaginary axis via e^{z/2} 0F1(; a + 1/2; z^2/16).
inline KummerValue kummer_half_order(double a, complex z)
{
    double const c = a + 0.5;
    complex prefactor;
    std::pair<double, double> f;
    if (z.imag() == 0.0) {
        double const x = z.real() * z.real() / 16.0;
        f = hyp0f1_series<double>(c, x);
        prefactor = std::exp(0.5 * z.real());
    } else {
        double const x = -z.imag() * z.imag() / 16.0;
        f = hyp0f1_series<coreshell::detail::quad>(c, x);
        prefactor = std::polar(1.0, 0.5 * z.imag());
    }
    complex const value = prefactor * f.first;
    complex const derivative = prefactor * (0.5 * f.first + z / 8.0 * f.second);
    return {value, derivative};
}

/// Large-|z| expansion of M(a, b; z) for Re z >= 0.
inline complex kummer_asymptotic_value(double a, double b, complex z)
{
    constexpr double pi = std::numbers::pi;
    constexpr int max_terms = 400;
    auto sum_series = [&](double p, double q, complex w) {
        // sum_s (p)_s (q)_s / s! w^{-s}, stopped at the smallest term
        complex term = 1.0;
        complex sum = 1.0;
        double last = 1.0;
        for (int s = 0; s < max_terms; ++s) {
            complex const next = term * ((p + s) * (q + s) / (s + 1.0)) / w;
            double const mag = std::abs(next);
            if (mag > last) {
                break;
            }
            term = next;
            sum += term;
            last = mag;
            if (mag <= series_tolerance * std::abs(sum)) {
                return sum;
            }
        }
        if (last > 1e-12 * std::abs(sum)) {
            throw convergence_error("kummer_m: asymptotic expansion too inaccurate at |z|="
                                    + std::to_string(std::abs(w)));
        }
        return sum;
    };

    complex const s1 = sum_series(b - a, 1.0 - a, z);
    complex const s2 = sum_series(a, a - b + 1.0, -z);

    complex phase;
    if (z.imag() > 0.0) {
        phase = std::polar(1.0, pi * a);
    } else if (z.imag() < 0.0) {
        phase = std::polar(1.0, -pi * a);
    } else {
        phase = std::cos(pi * a);
    }
    complex const dominant = reciprocal_gamma(a) * std::exp(z) * std::pow(z, a - b) * s1;
    complex const recessive = reciprocal_gamma(b - a) * phase * std::pow(z, -a) * s2;
    return gamma(b) * (dominant + recessive);
}

inline KummerValue kummer_asymptotic(double a, double b, complex z)
{
    complex const value = kummer_asymptotic_value(a, b, z);
    complex const derivative = (a == 0.0) ? complex(0.0) : (a / b) * kummer_asymptotic_value(a + 1.0, b + 1.0, z);
    return {value, derivative};
}

inline void check_args(HypergeometricArgs const& args)
{
    if (!std::isfinite(args.a) || !std::isfinite(args.b) || !std::isfinite(args.z.real())
        || !std::isfinite(args.z.imag())) {
        throw domain_error("kummer_m: non-finite argument");
    }
    if (!(args.b > 0.0)) {
        throw domain_error("kummer_m: b must be positive, got " + std::to_string(args.b));
    }
}

} // namespace detail

/// M(a, b; z) together with dM/dz, sharing one evaluation.
inline KummerValue kummer_m_with_derivative(HypergeometricArgs const& args)
{
    detail::check_args(args);
    double const a = args.a;
    double const b = args.b;
    complex const z = args.z;

    if (z == complex(0.0)) {
        return {1.0, a / b};
    }
    if (a == 0.0) {
        return {1.0, 0.0};
    }

    double const zabs = std::abs(z);
    bool const on_real_axis = z.imag() == 0.0;
    bool const on_imaginary_axis = z.real() == 0.0;
    if (b == 2.0 * a && ((on_real_axis && zabs <= asymptotic_threshold)
                         || (on_imaginary_axis && zabs <= half_order_imaginary_limit))) {
        return detail::kummer_half_order(a, z);
    }

    if (z.real() < 0.0) {
        KummerValue const w = kummer_m_with_derivative({b - a, b, -z});
        complex const e = std::exp(z);
        return {e * w.value, e * (w.value - w.derivative)};
    }

    if (zabs > asymptotic_threshold) {
        return detail::kummer_asymptotic(a, b, z);
    }
    if (on_real_axis && a > 0.0) {
        return detail::kummer_series<double>(a, b, z);
    }
    return detail::kummer_series<coreshell::detail::quad>(a, b, z);
}

/// Kummer's function M(a, b; z).
inline complex kummer_m(HypergeometricArgs const& args)
{
    return kummer_m_with_derivative(args).value;
}

/// dM/dz = (a/b) M(a+1, b+1; z).
inline complex kummer_m_derivative(HypergeometricArgs const& args)
{
    return kummer_m_with_derivative(args).derivative;
}

/// Tricomi's U(a, b; z) and dU/dz for a > 0 and real z > 0.
///
/// U(a, b; z) = z^{-a} / Gamma(a) * int_0^inf e^{-t} t^{a-1} (1 + t/z)^{b-a-1} dt, and
/// dU/dz = -a U(a+1, b+1; z) shares the factor (1 + t/z)^{b-a-1}.
inline TricomiValue decaying_companion_with_derivative(HypergeometricArgs const& args)
{
    double const a = args.a;
    double const b = args.b;
    if (args.z.imag() != 0.0) {
        throw domain_error("decaying_companion: argument must be real");
    }
    double const x = args.z.real();
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw domain_error("decaying_companion: argument must be positive, got " + std::to_string(x));
    }
    if (!(a > 0.0) || !std::isfinite(b)) {
        throw domain_error("decaying_companion: requires a > 0, got a=" + std::to_string(a));
    }

    double const c = b - a - 1.0;
    auto log_kernel = [=](double t) { return c * std::log1p(t / x) - t; };
    auto f0 = [&](double t) {
        if (!(t > 0.0) || t > 1e4) {
            return 0.0;
        }
        return std::exp((a - 1.0) * std::log(t) + log_kernel(t));
    };
    auto f1 = [&](double t) {
        if (!(t > 0.0) || t > 1e4) {
            return 0.0;
        }
        return std::exp(a * std::log(t) + log_kernel(t));
    };

    thread_local boost::math::quadrature::exp_sinh<double> integrator;
    constexpr double tol = 1e-14;
    double err0 = 0;
    double l1_0 = 0;
    double err1 = 0;
    double l1_1 = 0;
    double const i0 = integrator.integrate(f0, tol, &err0, &l1_0);
    double const i1 = integrator.integrate(f1, tol, &err1, &l1_1);
    if (err0 > 1e-10 * l1_0 || err1 > 1e-10 * l1_1) {
        throw convergence_error("decaying_companion: quadrature did not converge (a=" + std::to_string(a)
                                + ", z=" + std::to_string(x) + ")");
    }

    double const rg = reciprocal_gamma(a);
    double const log_x = std::log(x);
    double const value = std::exp(-a * log_x) * i0 * rg;
    double const derivative = -std::exp(-(a + 1.0) * log_x) * i1 * rg;
    return {value, derivative};
}

/// U(a, b; z), the solution of Kummer's equation that decays like z^{-a} as z -> +inf.
inline double decaying_companion(HypergeometricArgs const& args)
{
    return decaying_companion_with_derivative(args).value;
}

inline double decaying_companion_derivative(HypergeometricArgs const& args)
{
    return decaying_companion_with_derivative(args).derivative;
}

} // namespace coreshell::specfun
