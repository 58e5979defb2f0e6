// coreshell: spectra of a spherical core/shell well from a config file.

#include <iostream>

#include <CLI11.hpp>

#include "coreshell/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Bound-state spectra of a spherical core/shell well"};
    coreshell::cli::RunManifest m;
    app.add_option("--config", m.config_path, "configuration file")->required();
    app.add_option("--command", m.command, "what to compute")
        ->required()
        ->check(CLI::IsMember({"solve", "sweep", "degeneracy", "oracle-check"}));
    app.add_option("--out", m.output_dir, "output directory (overrides [output] dir)");
    app.add_flag("--force", m.force, "overwrite existing outputs");
    app.add_flag("--quiet", m.quiet, "no progress messages");
    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const rc = app.exit(e);
        return rc == 0 ? 0 : coreshell::cli::exit_validation;
    }
    return coreshell::cli::run(m, std::cout, std::cerr);
}
