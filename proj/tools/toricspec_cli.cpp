// toricspec: forward invariants, f_u curves and profile reconstruction from the command line.

#include "toricspec/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using namespace toricspec;

    CLI::App app{"Equivariant spectral invariants of U(n)-invariant toric metrics on CP^n"};
    app.require_subcommand(1);

    std::string config_path;
    CommandOptions opt;
    std::uint64_t seed = 0;
    double tol = 0.0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "override the configured seed");
        sub->add_option("--tol", tol, "override the round-trip tolerance");
    };

    CLI::App* forward = app.add_subcommand("forward", "spectral invariant for a bump test function");
    CLI::App* fu = app.add_subcommand("fu", "f_u on a nu grid (CSV nu,s1,f_u)");
    CLI::App* reconstruct = app.add_subcommand("reconstruct", "recover h'' from an f_u CSV");
    CLI::App* roundtrip = app.add_subcommand("roundtrip", "f_u from the config profile, then reconstruct it");
    CLI::App* verify = app.add_subcommand("verify", "cross-oracle suites");
    for (CLI::App* sub : {forward, fu, reconstruct, roundtrip, verify})
        common(sub);
    reconstruct->add_option("--input", opt.input, "f_u CSV written by `fu`")->required();
    reconstruct->add_flag("--compare", opt.compare, "report errors against the config profile");
    roundtrip->add_option("--scale-fu", opt.scale_fu, "multiply the generated f_u before inverting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_invalid;
    }

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--seed"))
        opt.seed = seed;
    if (chosen->count("--tol"))
        opt.tol = tol;

    RunConfig cfg;
    if (!config_path.empty()) {
        try {
            cfg = load_config(config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_invalid;
        }
    }
    return run_command(chosen->get_name(), cfg, opt, std::cout, std::cerr);
}
