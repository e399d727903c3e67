#include "lamwave/commands.hpp"
#include "lamwave/config.hpp"
#include "lamwave/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

struct Args {
    std::string config;
    std::string out;
    int threads = 0;
    long seed = 0; // accepted for interface symmetry; nothing is random
};

int run(lamwave::Command cmd, const Args& args)
{
    try {
        const lamwave::RunConfig cfg = lamwave::load_config(args.config);
        lamwave::RunOptions opt;
        if (!args.out.empty()) {
            opt.out_dir = args.out;
        } else if (const char* env = std::getenv("LAMWAVE_OUT"); env && *env) {
            opt.out_dir = env;
        }
        opt.threads = args.threads;
        std::cout << lamwave::run_command(cmd, cfg, opt).summary_json;
        return 0;
    } catch (const lamwave::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const lamwave::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Waves in soft magneto-active laminates"};
    app.require_subcommand(1);
    Args args;
    lamwave::Command chosen = lamwave::Command::Effective;

    for (lamwave::Command cmd : lamwave::all_commands()) {
        const std::string name(lamwave::to_string(cmd));
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config, "YAML run configuration")->required();
        sub->add_option("--out", args.out, "output directory (default $LAMWAVE_OUT or ./out)");
        sub->add_option("--threads", args.threads, "worker threads for sweeps")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", args.seed, "ignored");
        sub->callback([&chosen, cmd] { chosen = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    return run(chosen, args);
}
