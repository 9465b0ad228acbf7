#include "rosa/config.hpp"

#include "rosa/error.hpp"
#include "rosa/kb_io.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace rosa {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path & base, const std::string & p)
{
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
}

std::size_t positive(const json & j, const char * key, std::size_t fallback)
{
    if (!j.contains(key))
        return fallback;
    const auto & v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        fail(ErrorCode::ConfigError, std::string("limits.") + key + " must be an integer >= 1");
    return v.get<std::size_t>();
}

} // namespace

Config parse_config(const std::string & text, const std::filesystem::path & base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error & e) {
        fail(ErrorCode::ConfigError, e.what());
    }
    if (!j.is_object())
        fail(ErrorCode::ConfigError, "config must be a JSON object");
    // catches misspelt keys that would otherwise be silently ignored
    static const std::set<std::string> known = {"kb_path", "listen_address", "default_policy", "match_limits", "ui_dir"};
    for (const auto & [key, value] : j.items())
        if (!known.contains(key))
            fail(ErrorCode::ConfigError, "unknown config key '" + key + "'");

    Config cfg;
    try {
        if (j.contains("kb_path"))
            cfg.kb_path = resolve(base_dir, j.at("kb_path").get<std::string>());
        if (j.contains("listen_address")) {
            auto addr = j.at("listen_address").get<std::string>();
            auto colon = addr.rfind(':');
            if (colon == std::string::npos)
                fail(ErrorCode::ConfigError, "listen_address must be host:port");
            cfg.host = addr.substr(0, colon);
            try {
                cfg.port = std::stoi(addr.substr(colon + 1));
            } catch (const std::exception &) {
                fail(ErrorCode::ConfigError, "invalid port in listen_address '" + addr + "'");
            }
            if (cfg.port < 0 || cfg.port > 65535)
                fail(ErrorCode::ConfigError, "port out of range in listen_address '" + addr + "'");
        }
        if (j.contains("default_policy")) {
            try {
                cfg.default_policy = policy_from_json(j.at("default_policy"), "/default_policy");
            } catch (const Error & e) {
                fail(ErrorCode::ConfigError, e.what());
            }
            auto t = cfg.default_policy->threshold;
            if (!(t >= 0.0 && t <= 1.0))
                fail(ErrorCode::ConfigError, "default_policy.threshold must lie in [0,1]");
        }
        if (j.contains("match_limits")) {
            const auto & l = j.at("match_limits");
            cfg.limits.max_mappings = positive(l, "max_mappings", cfg.limits.max_mappings);
            cfg.limits.max_results = positive(l, "max_results", cfg.limits.max_results);
        }
        if (j.contains("ui_dir"))
            cfg.ui_dir = resolve(base_dir, j.at("ui_dir").get<std::string>());
    } catch (const json::exception & e) {
        fail(ErrorCode::ConfigError, e.what());
    }

    if (const char * env = std::getenv("ROSA_KB"); env && *env)
        cfg.kb_path = env;
    if (cfg.kb_path.empty())
        fail(ErrorCode::ConfigError, "kb_path is not set (config file or ROSA_KB)");
    return cfg;
}

Config load_config(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::ConfigError, "cannot open config '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.parent_path());
}

} // namespace rosa
