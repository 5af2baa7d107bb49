#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace okb::cli {

struct Options {
    std::string command;
    std::string instance;
    std::optional<std::string> divisor;  // comma-separated rationals
    std::optional<std::string> out;      // JSON destination; stdout when absent
    std::optional<std::string> svg;      // figure destination
    std::uint64_t seed = 1;
    std::size_t samples = 50;
    int jobs = 1;
    std::string source = "surface";  // global: "surface" or "base"
};

enum ExitCode : int { ok = 0, failed = 1, bad_input = 2 };

struct RunReport {
    int exit_code = ExitCode::ok;
    std::string json;         // pretty-printed, newline terminated
    std::string diagnostics;  // human-readable lines for stderr
};

const std::vector<std::string>& commands();

/// Executes one command. Never throws: errors become exit codes and
/// diagnostics. Writes --out and --svg files when requested.
RunReport run(const Options& opts);

}  // namespace okb::cli
