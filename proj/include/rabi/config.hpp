// config.hpp — `key = value` run configuration shared by config files and CLI flags

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rabi/models.hpp"

namespace rabi::cli {

/// Everything one CLI invocation needs. Defaults apply to keys never set;
/// `given` records which keys were set by a file or a flag.
struct RunConfig {
    std::optional<ModelId> model;
    ModelConfig params;
    std::size_t n_max = 0;  // 0: model default

    double g_min = 0.0;
    double g_max = 1.2;
    std::size_t g_steps = 240;
    std::size_t levels = 6;
    std::optional<std::size_t> pair;
    std::optional<double> tol;

    double t_max_T = 2.0;
    std::size_t steps = 2000;
    int n = 1;

    double eps_min = 0.0;
    double eps_max = 2.0;
    std::size_t eps_steps = 20;

    std::string out;
    std::string in;
    std::string x_col;
    std::vector<std::string> y_cols;

    std::set<std::string> given;

    bool has(std::string_view key) const { return given.count(std::string(key)) != 0; }
};

/// All keys accepted in config files, in canonical (underscore) spelling.
const std::vector<std::string>& known_keys();

/// Parses `value` into the field named `key`. Throws ValidationError for an
/// unknown key or an unparsable value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses the text of a config file. `source` prefixes error messages.
RunConfig parse_config(std::string_view text, std::string_view source = "<config>");

/// Reads and parses a config file.
RunConfig load_config(const std::filesystem::path& path);

/// Range checks that do not depend on the model: ω > 0, |U| < ω, λ ≠ 0, ...
void check_values(const RunConfig& cfg);

/// Keys a command needs for `model`; used to report the first missing one.
std::vector<std::string> required_keys(ModelId model, std::string_view command);

/// Throws ValidationError naming the first missing key.
void require_keys(const RunConfig& cfg, std::string_view command);

}  // namespace rabi::cli
