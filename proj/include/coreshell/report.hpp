#pragma once

/** \file report.hpp
 *
 *  \brief CSV, text and SVG writers for the CLI.
 *
 *  Numbers are emitted with 17 significant digits, so every value re-parses to the same double.
 */

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "coreshell/classification.hpp"
#include "coreshell/spectrum.hpp"
#include "coreshell/well_model.hpp"

namespace coreshell::report {

inline std::string format_double(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

/// Shortest form; for labels and comment lines only.
inline std::string format_short(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string describe(WellConfig const& cfg, MatchingRule rule)
{
    return "m1=" + format_short(cfg.m1) + " m2=" + format_short(cfg.m2) + " V0=" + format_short(cfg.V0)
        + " U0=" + format_short(cfg.U0) + " kappa=" + std::to_string(cfg.kappa) + " sigma0=" + format_short(cfg.sigma0)
        + " matching=" + to_string(rule);
}

inline void write_diagnostic_lines(std::ostream& os, std::vector<Diagnostic> const& diags)
{
    for (auto const& d : diags) {
        os << "# flagged: " << d.kind << " r0=" << format_short(d.r0) << " bracket=[" << format_double(d.bracket.first)
           << ", " << format_double(d.bracket.second) << "] " << d.message << '\n';
    }
}

struct EigenRow
{
    EigenResult level;
    int nodes;
};

inline void write_eigenvalues_csv(std::ostream& os, WellConfig const& cfg, MatchingRule rule, std::vector<EigenRow> const& rows,
                                  std::vector<Diagnostic> const& diags)
{
    os << "# E in fm^-1, r0 in fm; r0=" << format_short(cfg.r0) << ' ' << describe(cfg, rule) << '\n';
    write_diagnostic_lines(os, diags);
    os << "kappa,branch,n,E,residual,nodes\n";
    for (auto const& r : rows) {
        os << cfg.kappa << ',' << to_string(r.level.branch.branch) << ',' << r.level.n << ',' << format_double(r.level.E)
           << ',' << format_double(r.level.residual) << ',' << r.nodes << '\n';
    }
}

/// Class column for a curve: N-EL, A-EL, non-monotonic, or "short" below three points.
inline std::string curve_class(LevelCurve const& c)
{
    if (c.points.size() < 3) {
        return "short";
    }
    return to_string(classify_level_curve(c).tag);
}

inline void write_levels_csv(std::ostream& os, WellConfig const& cfg, MatchingRule rule, std::vector<LevelCurve> const& curves,
                             std::vector<Diagnostic> const& diags)
{
    os << "# E in fm^-1, r0 in fm; " << describe(cfg, rule) << '\n';
    write_diagnostic_lines(os, diags);
    os << "r0,kappa,branch,n,E,class\n";
    for (auto const& c : curves) {
        std::string const cls = curve_class(c);
        for (auto const& p : c.points) {
            os << format_double(p.r0) << ',' << c.label.kappa << ',' << to_string(c.label.branch) << ',' << c.label.n << ','
               << format_double(p.E) << ',' << cls << '\n';
        }
    }
}

inline void write_degeneracy_report(std::ostream& os, WellConfig const& cfg_a, WellConfig const& cfg_b, DegeneracyReport const& rep)
{
    auto exps = [](std::vector<BranchExponent> const& v) {
        std::string s;
        for (auto const& b : v) {
            s += (s.empty() ? "" : " ") + to_string(b.branch) + ":" + format_double(b.a);
        }
        return s.empty() ? std::string("none") : s;
    };
    os << "# E in fm^-1, r0 in fm; r0=" << format_short(cfg_a.r0) << '\n';
    os << "channel_a: kappa=" << cfg_a.kappa << " U0=" << format_short(cfg_a.U0) << " exponents=" << exps(rep.exponents_a) << '\n';
    os << "channel_b: kappa=" << cfg_b.kappa << " U0=" << format_short(cfg_b.U0) << " exponents=" << exps(rep.exponents_b) << '\n';
    os << "degenerate: " << (rep.degenerate ? "true" : "false") << '\n';
    os << "spectra_agree: " << (rep.spectra_agree ? "true" : "false") << '\n';
    os << "max_splitting: " << format_double(rep.max_splitting) << '\n';
    os << "unpaired_levels: " << rep.unpaired_levels << '\n';
    write_diagnostic_lines(os, rep.diagnostics);
    os << "branch,n,E_a,E_b,splitting\n";
    for (auto const& s : rep.splittings) {
        os << to_string(s.branch) << ',' << s.n << ',' << format_double(s.E_a) << ',' << format_double(s.E_b) << ','
           << format_double(s.splitting) << '\n';
    }
}

struct OracleRow
{
    Branch branch;
    int n;
    double E_analytic;
    double E_oracle;
    int nodes_analytic;
    int nodes_oracle;
};

inline void write_oracle_csv(std::ostream& os, WellConfig const& cfg, MatchingRule rule, std::vector<OracleRow> const& rows,
                             std::vector<Diagnostic> const& diags)
{
    os << "# E in fm^-1, r0 in fm; r0=" << format_short(cfg.r0) << ' ' << describe(cfg, rule) << '\n';
    write_diagnostic_lines(os, diags);
    os << "kappa,branch,n,E_analytic,E_oracle,difference,nodes_analytic,nodes_oracle\n";
    for (auto const& r : rows) {
        os << cfg.kappa << ',' << to_string(r.branch) << ',' << r.n << ',' << format_double(r.E_analytic) << ','
           << format_double(r.E_oracle) << ',' << format_double(r.E_oracle - r.E_analytic) << ',' << r.nodes_analytic << ','
           << r.nodes_oracle << '\n';
    }
}

namespace detail {

/// 1, 2 or 5 times a power of ten, giving roughly `target` intervals over span.
inline double nice_step(double span, int target)
{
    double const raw = span / target;
    double const p = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0}) {
        if (m * p >= raw) {
            return m * p;
        }
    }
    return 10.0 * p;
}

} // namespace detail

/// Standalone SVG line plot of E(r0) for every curve.
inline void write_level_plot(std::ostream& os, std::string const& title, std::vector<LevelCurve> const& curves)
{
    double x0 = 0;
    double x1 = 1;
    double y0 = 0;
    double y1 = 1;
    bool first = true;
    for (auto const& c : curves) {
        for (auto const& p : c.points) {
            if (first) {
                x0 = x1 = p.r0;
                y0 = y1 = p.E;
                first = false;
            }
            x0 = std::min(x0, p.r0);
            x1 = std::max(x1, p.r0);
            y0 = std::min(y0, p.E);
            y1 = std::max(y1, p.E);
        }
    }
    if (x1 - x0 < 1e-12) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    double const pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    constexpr double W = 640;
    constexpr double H = 480;
    constexpr double L = 80;
    constexpr double R = 20;
    constexpr double T = 40;
    constexpr double B = 60;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(6);
        s << v;
        return s.str();
    };

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" << title
       << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    double const sx = detail::nice_step(x1 - x0, 7);
    for (double x = std::ceil(x0 / sx) * sx; x <= x1 + 1e-9 * sx; x += sx) {
        os << "<line x1=\"" << num(px(x)) << "\" y1=\"" << H - B << "\" x2=\"" << num(px(x)) << "\" y2=\"" << H - B + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(px(x)) << "\" y=\"" << H - B + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << num(std::abs(x) < 1e-12 * sx ? 0.0 : x)
           << "</text>\n";
    }
    double const sy = detail::nice_step(y1 - y0, 6);
    for (double y = std::ceil(y0 / sy) * sy; y <= y1 + 1e-9 * sy; y += sy) {
        os << "<line x1=\"" << L - 5 << "\" y1=\"" << num(py(y)) << "\" x2=\"" << L << "\" y2=\"" << num(py(y))
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << L - 8 << "\" y=\"" << num(py(y) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << num(std::abs(y) < 1e-12 * sy ? 0.0 : y)
           << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">r0 (fm)</text>\n";
    os << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\""
       << " transform=\"rotate(-90 20 " << (T + H - B) / 2 << ")\">E (fm^-1)</text>\n";

    static char const* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    for (std::size_t i = 0; i < curves.size(); ++i) {
        auto const& c = curves[i];
        char const* colour = palette[i % (sizeof palette / sizeof *palette)];
        std::string const dash = c.label.branch == Branch::minus ? " stroke-dasharray=\"6 3\"" : "";
        if (c.points.size() == 1) {
            os << "<circle cx=\"" << num(px(c.points[0].r0)) << "\" cy=\"" << num(py(c.points[0].E)) << "\" r=\"2.5\" fill=\""
               << colour << "\"/>\n";
            continue;
        }
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"" << dash << " points=\"";
        for (std::size_t k = 0; k < c.points.size(); ++k) {
            os << (k ? " " : "") << num(px(c.points[k].r0)) << ',' << num(py(c.points[k].E));
        }
        os << "\"><title>n=" << c.label.n << " kappa=" << c.label.kappa << " branch=" << to_string(c.label.branch)
           << "</title></polyline>\n";
    }
    os << "</svg>\n";
}

} // namespace coreshell::report
