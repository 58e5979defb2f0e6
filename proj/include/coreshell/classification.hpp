#pragma once

/** \file classification.hpp
 *
 *  \brief Normal (N-EL) / anomalous (A-EL) tagging of level curves and inter-level gaps.
 *
 *  A normal level falls as the well widens, an anomalous one rises. The decision is a strict sign
 *  test on every finite-difference slope of the curve; anything mixed or flat is non-monotonic.
 */

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "coreshell/errors.hpp"
#include "coreshell/spectrum.hpp"

namespace coreshell {

enum class LevelTag
{
    normal,
    anomalous,
    non_monotonic
};

inline std::string to_string(LevelTag t)
{
    switch (t) {
        case LevelTag::normal:
            return "N-EL";
        case LevelTag::anomalous:
            return "A-EL";
        default:
            return "non-monotonic";
    }
}

struct SlopeStats
{
    double min;
    double max;
    double mean;
};

struct LevelClass
{
    LevelTag tag;
    SlopeStats slopes; ///< dE/dr0 [fm^-1 / fm]
};

enum class Monotonicity
{
    strictly_decreasing,
    strictly_increasing,
    neither
};

struct GapPoint
{
    double r0;
    double dE;
};

struct TransitionSeries
{
    std::vector<GapPoint> gaps;
    Monotonicity trend;
};

/// dE/dr0 at every point of the curve: central differences inside, one-sided at the ends.
/// Uneven spacing (from bisected sweep steps) is handled by differencing the neighbours directly.
inline std::vector<double> curve_slopes(LevelCurve const& curve)
{
    auto const& p = curve.points;
    std::size_t const n = p.size();
    std::vector<double> slopes(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t const lo = i == 0 ? 0 : i - 1;
        std::size_t const hi = i + 1 == n ? n - 1 : i + 1;
        slopes[i] = (p[hi].E - p[lo].E) / (p[hi].r0 - p[lo].r0);
    }
    return slopes;
}

inline LevelClass classify_level_curve(LevelCurve const& curve)
{
    if (curve.points.size() < 3) {
        throw domain_error("classify_level_curve: need at least 3 points, got " + std::to_string(curve.points.size()));
    }
    std::vector<double> const slopes = curve_slopes(curve);
    auto const [mn, mx] = std::minmax_element(slopes.begin(), slopes.end());
    double sum = 0;
    for (double s : slopes) {
        sum += s;
    }
    SlopeStats const stats{*mn, *mx, sum / static_cast<double>(slopes.size())};

    LevelTag tag = LevelTag::non_monotonic;
    if (stats.max < 0.0) {
        tag = LevelTag::normal;
    } else if (stats.min > 0.0) {
        tag = LevelTag::anomalous;
    }
    return {tag, stats};
}

/// E_B(r0) - E_A(r0) on the r0 samples the two curves share.
inline TransitionSeries transition_energies(LevelCurve const& curve_a, LevelCurve const& curve_b)
{
    TransitionSeries out;
    std::size_t j = 0;
    auto const& pb = curve_b.points;
    for (auto const& pa : curve_a.points) {
        while (j < pb.size() && pb[j].r0 < pa.r0 && std::abs(pb[j].r0 - pa.r0) > 1e-12 * std::abs(pa.r0)) {
            ++j;
        }
        if (j < pb.size() && std::abs(pb[j].r0 - pa.r0) <= 1e-12 * std::abs(pa.r0)) {
            out.gaps.push_back({pa.r0, pb[j].E - pa.E});
        }
    }
    if (out.gaps.size() < 3) {
        throw domain_error("transition_energies: curves share fewer than 3 r0 samples");
    }

    bool down = true;
    bool up = true;
    for (std::size_t i = 1; i < out.gaps.size(); ++i) {
        down = down && out.gaps[i].dE < out.gaps[i - 1].dE;
        up = up && out.gaps[i].dE > out.gaps[i - 1].dE;
    }
    out.trend = down ? Monotonicity::strictly_decreasing : (up ? Monotonicity::strictly_increasing : Monotonicity::neither);
    return out;
}

} // namespace coreshell
