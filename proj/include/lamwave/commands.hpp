#pragma once

#include "lamwave/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lamwave {

enum class Command { Effective, Dispersion, Bandgap, Soliton, Magnetostatic, SimulateFv, SimulateMkdv, Sweep };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);
const std::vector<Command>& all_commands();

struct RunOptions {
    std::filesystem::path out_dir = "out";
    int threads = 0; // 0 keeps the value from the config
};

struct CommandOutput {
    std::string summary_json;        // also written as <command>_<hash>.json
    std::vector<std::string> files;  // names relative to the output directory
};

/// Runs one command and writes its artifacts. Numerical failures propagate as lamwave::Error.
CommandOutput run_command(Command command, const RunConfig& config, const RunOptions& options);

} // namespace lamwave
