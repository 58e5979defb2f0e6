#pragma once

/** \file config.hpp
 *
 *  \brief Run configuration: a sectioned key = value text file.
 *
 *      [well]      m1, m2, V0, r0 | r0_start r0_stop r0_step, U0, kappa, sigma0
 *      [solver]    n_max, scan_points, tol_E, matching (weighted|plain)
 *      [output]    dir, plots (true|false)
 *      [compare]   kappa, U0        second channel for the degeneracy report
 *
 *  Lines starting with '#' or ';' are comments. Every diagnostic names the offending line.
 */

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coreshell/errors.hpp"
#include "coreshell/spectrum.hpp"
#include "coreshell/well_model.hpp"

namespace coreshell::cli {

struct IniEntry
{
    std::string value;
    int line;
};

struct IniSection
{
    int line{0};
    std::map<std::string, IniEntry> entries;
};

using IniDocument = std::map<std::string, IniSection>;

namespace detail {

inline std::string trim(std::string const& s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

inline IniDocument parse_ini(std::istream& in)
{
    IniDocument doc;
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string const line = detail::trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw config_error("line " + std::to_string(line_no) + ": malformed section header '" + line + "'", line_no);
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            if (doc.count(section)) {
                throw config_error("line " + std::to_string(line_no) + ": duplicate section [" + section + "]", line_no);
            }
            doc[section].line = line_no;
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'", line_no);
        }
        if (section.empty()) {
            throw config_error("line " + std::to_string(line_no) + ": entry outside of any section", line_no);
        }
        std::string const key = detail::trim(line.substr(0, eq));
        std::string const value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error("line " + std::to_string(line_no) + ": empty key", line_no);
        }
        auto& entries = doc[section].entries;
        if (entries.count(key)) {
            throw config_error("line " + std::to_string(line_no) + ": duplicate key '" + key + "' in [" + section + "]",
                               line_no);
        }
        entries[key] = {value, line_no};
    }
    return doc;
}

struct CompareChannel
{
    int kappa;
    double U0;
};

struct RunConfig
{
    WellConfig well;
    /// r0 from [well] r0, if given.
    std::optional<double> r0;
    /// r0_start + i * r0_step up to r0_stop, if given.
    std::vector<double> r0_range;
    SolverOptions solver;
    std::string output_dir{"out"};
    bool plots{true};
    std::optional<CompareChannel> compare;

    /// Sweep grid: the range if present, otherwise the single r0.
    std::vector<double> sweep_grid() const
    {
        if (!r0_range.empty()) {
            return r0_range;
        }
        return r0 ? std::vector<double>{*r0} : std::vector<double>{};
    }
};

namespace detail {

inline std::string where(std::string const& section, std::string const& key, IniEntry const& e)
{
    return "line " + std::to_string(e.line) + ": [" + section + "] " + key;
}

inline double parse_double(std::string const& section, std::string const& key, IniEntry const& e)
{
    double v = 0;
    char const* first = e.value.data();
    char const* last = first + e.value.size();
    auto const res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
        throw config_error(where(section, key, e) + ": expected a number, got '" + e.value + "'", e.line);
    }
    return v;
}

inline int parse_int(std::string const& section, std::string const& key, IniEntry const& e)
{
    int v = 0;
    char const* first = e.value.data();
    char const* last = first + e.value.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto const res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw config_error(where(section, key, e) + ": expected an integer, got '" + e.value + "'", e.line);
    }
    return v;
}

inline bool parse_bool(std::string const& section, std::string const& key, IniEntry const& e)
{
    if (e.value == "true") {
        return true;
    }
    if (e.value == "false") {
        return false;
    }
    throw config_error(where(section, key, e) + ": expected true or false, got '" + e.value + "'", e.line);
}

class SectionReader
{
  public:
    SectionReader(IniDocument const& doc, std::string name, std::set<std::string> allowed)
        : name_(std::move(name))
    {
        auto it = doc.find(name_);
        if (it == doc.end()) {
            return;
        }
        section_ = &it->second;
        for (auto const& [key, entry] : section_->entries) {
            if (!allowed.count(key)) {
                throw config_error(where(name_, key, entry) + ": unknown key", entry.line);
            }
        }
    }

    bool present() const
    {
        return section_ != nullptr;
    }

    int line() const
    {
        return section_ ? section_->line : 0;
    }

    IniEntry const* find(std::string const& key) const
    {
        if (!section_) {
            return nullptr;
        }
        auto it = section_->entries.find(key);
        return it == section_->entries.end() ? nullptr : &it->second;
    }

    IniEntry const& require(std::string const& key) const
    {
        IniEntry const* e = find(key);
        if (!e) {
            throw config_error("[" + name_ + "] missing required key '" + key + "'", line());
        }
        return *e;
    }

    double number(std::string const& key) const
    {
        return parse_double(name_, key, require(key));
    }

    std::optional<double> optional_number(std::string const& key) const
    {
        IniEntry const* e = find(key);
        return e ? std::optional<double>(parse_double(name_, key, *e)) : std::nullopt;
    }

    int integer(std::string const& key) const
    {
        return parse_int(name_, key, require(key));
    }

    std::optional<int> optional_integer(std::string const& key) const
    {
        IniEntry const* e = find(key);
        return e ? std::optional<int>(parse_int(name_, key, *e)) : std::nullopt;
    }

    std::string const& name() const
    {
        return name_;
    }

  private:
    std::string name_;
    IniSection const* section_{nullptr};
};

} // namespace detail

/// r0_start, r0_start + step, ... up to r0_stop (inclusive within rounding).
inline std::vector<double> make_r0_range(double start, double stop, double step)
{
    if (!(step > 0.0) || !(stop >= start)) {
        throw config_error("r0 range needs r0_step > 0 and r0_stop >= r0_start");
    }
    long long const count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
    if (count > 1000000) {
        throw config_error("r0 range has too many points");
    }
    std::vector<double> out;
    out.reserve(count + 1);
    for (long long i = 0; i <= count; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

inline RunConfig parse_config(std::istream& in)
{
    IniDocument const doc = parse_ini(in);
    for (auto const& [name, section] : doc) {
        if (name != "well" && name != "solver" && name != "output" && name != "compare") {
            throw config_error("line " + std::to_string(section.line) + ": unknown section [" + name + "]", section.line);
        }
    }

    RunConfig cfg;
    detail::SectionReader const well(doc, "well", {"m1", "m2", "V0", "r0", "r0_start", "r0_stop", "r0_step", "U0", "kappa", "sigma0"});
    if (!well.present()) {
        throw config_error("missing section [well]");
    }
    cfg.well.m1 = well.number("m1");
    cfg.well.m2 = well.number("m2");
    cfg.well.V0 = well.number("V0");
    cfg.well.U0 = well.number("U0");
    cfg.well.kappa = well.integer("kappa");
    cfg.well.sigma0 = well.optional_number("sigma0").value_or(0.0);
    if (!(cfg.well.m1 > 0.0)) {
        throw config_error(detail::where("well", "m1", well.require("m1")) + ": must be positive", well.require("m1").line);
    }
    if (!(cfg.well.m2 > 0.0)) {
        throw config_error(detail::where("well", "m2", well.require("m2")) + ": must be positive", well.require("m2").line);
    }

    cfg.r0 = well.optional_number("r0");
    if (cfg.r0 && !(*cfg.r0 > 0.0)) {
        throw config_error(detail::where("well", "r0", well.require("r0")) + ": must be positive", well.require("r0").line);
    }
    bool const any_range = well.find("r0_start") || well.find("r0_stop") || well.find("r0_step");
    if (any_range) {
        double const start = well.number("r0_start");
        double const stop = well.number("r0_stop");
        double const step = well.number("r0_step");
        if (!(start > 0.0)) {
            throw config_error(detail::where("well", "r0_start", well.require("r0_start")) + ": must be positive",
                               well.require("r0_start").line);
        }
        try {
            cfg.r0_range = make_r0_range(start, stop, step);
        } catch (config_error const& e) {
            throw config_error(detail::where("well", "r0_step", well.require("r0_step")) + ": " + e.what(),
                               well.require("r0_step").line);
        }
    }
    if (!cfg.r0 && cfg.r0_range.empty()) {
        throw config_error("[well] needs r0 or r0_start/r0_stop/r0_step", well.line());
    }
    cfg.well.r0 = cfg.r0 ? *cfg.r0 : cfg.r0_range.front();

    detail::SectionReader const solver(doc, "solver", {"n_max", "scan_points", "tol_E", "matching"});
    if (auto v = solver.optional_integer("n_max")) {
        if (*v < 0) {
            throw config_error(detail::where("solver", "n_max", solver.require("n_max")) + ": must be >= 0",
                               solver.require("n_max").line);
        }
        cfg.solver.n_max = *v;
    }
    if (auto v = solver.optional_integer("scan_points")) {
        if (*v < 2) {
            throw config_error(detail::where("solver", "scan_points", solver.require("scan_points")) + ": must be >= 2",
                               solver.require("scan_points").line);
        }
        cfg.solver.scan_points = *v;
    }
    if (auto v = solver.optional_number("tol_E")) {
        if (!(*v > 0.0)) {
            throw config_error(detail::where("solver", "tol_E", solver.require("tol_E")) + ": must be positive",
                               solver.require("tol_E").line);
        }
        cfg.solver.tol_E = *v;
    }
    if (IniEntry const* m = solver.find("matching")) {
        if (m->value == "weighted") {
            cfg.solver.matching = MatchingRule::weighted;
        } else if (m->value == "plain") {
            cfg.solver.matching = MatchingRule::plain;
        } else {
            throw config_error(detail::where("solver", "matching", *m) + ": expected weighted or plain, got '" + m->value + "'",
                               m->line);
        }
    }

    detail::SectionReader const output(doc, "output", {"dir", "plots"});
    if (IniEntry const* d = output.find("dir")) {
        if (d->value.empty()) {
            throw config_error(detail::where("output", "dir", *d) + ": must not be empty", d->line);
        }
        cfg.output_dir = d->value;
    }
    if (IniEntry const* p = output.find("plots")) {
        cfg.plots = detail::parse_bool("output", "plots", *p);
    }

    detail::SectionReader const compare(doc, "compare", {"kappa", "U0"});
    if (compare.present()) {
        cfg.compare = CompareChannel{compare.integer("kappa"), compare.number("U0")};
    }
    return cfg;
}

inline RunConfig load_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

} // namespace coreshell::cli
