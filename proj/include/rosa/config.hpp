#pragma once

#include "rosa/matcher.hpp"
#include "rosa/policy.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace rosa {

struct Config {
    std::filesystem::path kb_path;
    std::string host = "127.0.0.1";
    int port = 8080;
    // Overrides the policy stored in the KB when set.
    std::optional<CompatibilityPolicy> default_policy;
    MatchLimits limits;
    // Directory of the browser client, served at "/" when set.
    std::optional<std::filesystem::path> ui_dir;
};

// JSON config. Relative paths resolve against `base_dir`. The ROSA_KB
// environment variable, when set, overrides kb_path.
Config parse_config(const std::string & text, const std::filesystem::path & base_dir = {});
Config load_config(const std::filesystem::path & path);

} // namespace rosa
