#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "json_config.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"

using namespace rieszlab::cli;

int main(int argc, char** argv) {
    CLI::App app{"rieszlab: fractional Laplacians, Riesz potentials and sparse stochastic processes"};
    app.require_subcommand(1);

    GlobalOptions global;
    ApplyOptions apply;
    VerifyOptions verify;
    SimulateOptions simulate;
    CharfunOptions charfun;

    // Subcommands copy this setting when they are created, so it must precede add_apply and friends.
    app.fallthrough();
    app.add_option("--config", global.config, "JSON file with option values (flags override it)");
    app.add_option("--out", global.out, "Output directory (default: $RIESZLAB_OUT)");
    app.add_option("--seed", global.seed, "Seed for all stochastic output")->capture_default_str();
    app.add_option("--threads", global.threads, "Worker threads (0: all cores, 1: bit-stable)")->capture_default_str();
    add_apply(app, apply);
    add_verify(app, verify);
    add_simulate(app, simulate);
    add_charfun(app, charfun);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kConfigError;
    }

    try {
        if (const std::string cfg = find_config_path(argc, argv); !cfg.empty()) apply_json_config(cfg, app);
        rieszlab::set_thread_count(global.threads);

        if (app.got_subcommand("apply")) return run_apply(global, apply);
        if (app.got_subcommand("verify")) {
            CLI::App* sub = app.get_subcommand("verify");
            verify.gamma_override = sub->get_option("--gamma1")->count() + sub->get_option("--gamma2")->count() > 0;
            return run_verify(global, verify);
        }
        if (app.got_subcommand("simulate")) return run_simulate(global, simulate);
        if (app.got_subcommand("charfun")) return run_charfun(global, charfun);
    } catch (const rieszlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.error_class() == rieszlab::ErrorClass::config ? kConfigError : kNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericError;
    }
    return kConfigError;
}
