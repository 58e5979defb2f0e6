#pragma once

#include <complex>

namespace coreshell::detail {

/// Minimal complex type over an arbitrary real scalar.
///
/// std::complex is only specified for float, double and long double; the series
/// kernels also run on __float128, which needs nothing beyond ring operations.
template <typename Real>
struct basic_complex
{
    Real re{0};
    Real im{0};

    basic_complex() = default;

    constexpr basic_complex(Real r, Real i = Real(0))
        : re(r)
        , im(i)
    {
    }

    explicit basic_complex(std::complex<double> z)
        : re(static_cast<Real>(z.real()))
        , im(static_cast<Real>(z.imag()))
    {
    }

    std::complex<double> to_std() const
    {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    basic_complex& operator+=(basic_complex const& o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }

    basic_complex& operator*=(Real s)
    {
        re *= s;
        im *= s;
        return *this;
    }

    friend basic_complex operator*(basic_complex const& x, basic_complex const& y)
    {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }

    friend basic_complex operator*(basic_complex const& x, Real s)
    {
        return {x.re * s, x.im * s};
    }
};

template <typename Real>
inline Real abs_real(Real x)
{
    return x < Real(0) ? -x : x;
}

/// L1 magnitude |re| + |im|; within a factor sqrt(2) of the modulus, enough for stopping tests.
template <typename Real>
inline Real l1_norm(basic_complex<Real> const& z)
{
    return abs_real(z.re) + abs_real(z.im);
}

using quad = __float128;

} // namespace coreshell::detail
