#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "omega/levy_model.hpp"

namespace omega {

/// Model and contract parameters as read from a TOML or JSON file.
struct ModelConfig {
    double gamma = 0.0;
    double sigma = 0.0;
    double lambda = 0.0;
    std::vector<Phase> phases;
    double r = 0.0;
    double q = 0.0;
    double strike_K = 0.0;
    std::optional<double> level_y;

    [[nodiscard]] LevyModel model() const;
};

/// Parse "key=value,key=value"; throws ConfigError on malformed pairs.
std::vector<std::pair<std::string, std::string>> parse_overrides(const std::string& text);

/// Build from a JSON document after applying overrides; throws ConfigError.
ModelConfig config_from_json(nlohmann::json doc, const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Load a .toml or .json file (chosen by extension).
ModelConfig load_config(const std::string& path,
                        const std::vector<std::pair<std::string, std::string>>& overrides = {});

nlohmann::json to_json(const ModelConfig& cfg);

}  // namespace omega
