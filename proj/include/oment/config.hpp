#pragma once

#include <map>
#include <string>
#include <vector>

#include "oment/correlators.hpp"
#include "oment/model.hpp"

namespace oment {

/// Fully resolved run configuration. Physical keys land in typed fields;
/// command-specific keys (grids, brackets, output) stay in options for the
/// command to interpret. Precedence is built-in default < config file <
/// command-line flag; the CLI applies layers in that order through apply().
struct RunConfig {
    SystemParams system{1.0, 1e5, 1e5, 1e4, 1e4, 0.0, 0.0, 0.0};
    FilterSpec filter{0.0, 10.0, 0.0, 0.0};
    std::map<std::string, std::string> options;

    /// Applies one key=value pair. Known physical keys parse as numbers
    /// (InvalidParams on garbage); unknown keys are stored as options.
    void apply(const std::string& key, const std::string& value);
};

/// Parses flat key=value lines; '#' starts a comment, blank lines are
/// skipped. Returns pairs in file order.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Reads and parses a config file. Throws InvalidParams when unreadable.
std::vector<std::pair<std::string, std::string>> load_config_file(const std::string& path);

}  // namespace oment
