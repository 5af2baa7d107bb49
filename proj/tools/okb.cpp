#include "okb/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    okb::cli::Options opts;
    CLI::App app{"Exact Okounkov bodies, Zariski chambers and Minkowski bases of surfaces"};
    app.add_option("command", opts.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(okb::cli::commands()));
    app.add_option("instance", opts.instance, "Instance JSON file")->required();
    app.add_option("--divisor,-d", opts.divisor, "Divisor class, comma-separated rationals in the instance basis");
    app.add_option("--out,-o", opts.out, "Write JSON here instead of stdout");
    app.add_option("--svg", opts.svg, "Write a figure (body, fiber, mbase, mchambers)");
    app.add_option("--seed", opts.seed, "Sampler seed")->capture_default_str();
    app.add_option("--samples", opts.samples, "Number of samples for verify")->capture_default_str();
    app.add_option("--jobs,-j", opts.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--source", opts.source, "Generator set for global/fiber")
        ->check(CLI::IsMember({"surface", "base"}))
        ->capture_default_str();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : okb::cli::ExitCode::bad_input;
    }

    const auto report = okb::cli::run(opts);
    if (!opts.out) std::cout << report.json;
    std::cerr << report.diagnostics;
    return report.exit_code;
}
