#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using royal::cli::Command;
using royal::cli::JobConfig;

namespace {

void add_common(CLI::App* sub, JobConfig& cfg, bool input_required) {
    auto* in = sub->add_option("--input", cfg.input, "input JSON file");
    if (input_required) in->required();
    sub->add_option("--output", cfg.output, "output file (stdout when omitted)");
    sub->add_option("--tol", cfg.tol, "residual tolerance for verification");
    sub->add_option("--omega-grid", cfg.omega_grid, "number of equispaced omega (or zeta) samples");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Royal-node Gamma-inner function construction and verification"};
    app.require_subcommand(1);
    JobConfig cfg;

    auto* solve = app.add_subcommand("solve", "solve the royal interpolation problem for Blaschke data");
    add_common(solve, cfg, true);
    auto* verify = app.add_subcommand("verify", "verify a Gamma-inner function against royal data");
    add_common(verify, cfg, true);
    auto* sweep = app.add_subcommand("sweep", "tabulate the one-parameter solution family as CSV");
    add_common(sweep, cfg, true);
    sweep->add_flag("--plot", cfg.plot, "also write an SVG beside the output");
    auto* blaschke = app.add_subcommand("blaschke", "solve the Blaschke interpolation problem over a zeta grid");
    add_common(blaschke, cfg, true);
    auto* roundtrip = app.add_subcommand("roundtrip", "extract royal data from h, re-solve, and look for h");
    add_common(roundtrip, cfg, false);
    roundtrip->add_option("--generator", cfg.generator, "built-in test function")->check(CLI::IsMember({"h_nu"}));
    roundtrip->add_option("--nu", cfg.nu, "h_nu parameter nu");
    roundtrip->add_option("--r", cfg.r, "h_nu parameter r in (0, 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return royal::cli::kInputError;
    }

    if (const char* seed = std::getenv("ROYAL_GAMMA_SEED_TAU")) {
        try {
            size_t used = 0;
            cfg.tau_start = std::stoi(seed, &used);
            if (used != std::string(seed).size()) throw std::invalid_argument(seed);
        } catch (const std::exception&) {
            std::cerr << "input error: ROYAL_GAMMA_SEED_TAU must be an integer\n";
            return royal::cli::kInputError;
        }
    }

    if (solve->parsed()) cfg.command = Command::Solve;
    else if (verify->parsed()) cfg.command = Command::Verify;
    else if (sweep->parsed()) cfg.command = Command::Sweep;
    else if (blaschke->parsed()) cfg.command = Command::Blaschke;
    else cfg.command = Command::Roundtrip;

    return royal::cli::run(cfg, std::cerr);
}
