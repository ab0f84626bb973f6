#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

namespace rieszlab::cli {

// Returns the value of `--config <path>` (or `--config=<path>`) from argv, or "" when absent.
std::string find_config_path(int argc, char** argv);

// Loads a JSON config and feeds its values to options that were not given on the command line.
// Top-level keys address options of `app`; an object under a subcommand's name addresses that
// subcommand. Keys match long option names with '-' or '_'. Arrays become repeated values.
// Unknown keys throw ConfigError so typos do not silently fall back to defaults.
void apply_json_config(const std::string& path, CLI::App& app);

}  // namespace rieszlab::cli
