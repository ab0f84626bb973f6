#include "json_config.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "rieszlab/errors.hpp"

namespace rieszlab::cli {

namespace {

using nlohmann::json;

std::string scalar_text(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) {
        // Round-trip precision so a config reproduces the same doubles as the equivalent flags.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw ConfigError("config key '" + key + "' must be a number, string, boolean or array of those");
}

CLI::Option* find_option(CLI::App& app, std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    for (CLI::Option* opt : app.get_options()) {
        const auto& names = opt->get_lnames();
        if (std::find(names.begin(), names.end(), key) != names.end()) return opt;
    }
    return nullptr;
}

void apply_object(const json& obj, CLI::App& app) {
    for (const auto& [key, value] : obj.items()) {
        if (key == "config") throw ConfigError("config files cannot include other config files");
        if (value.is_object()) {
            CLI::App* sub = nullptr;
            try {
                sub = app.get_subcommand(key);
            } catch (const CLI::OptionNotFound&) {
                throw ConfigError("config section '" + key + "' does not name a command");
            }
            apply_object(value, *sub);
            continue;
        }
        CLI::Option* opt = find_option(app, key);
        if (opt == nullptr) throw ConfigError("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;  // the command line wins
        std::vector<std::string> parts;
        if (value.is_array()) {
            for (const auto& v : value) parts.push_back(scalar_text(v, key));
        } else {
            parts.push_back(scalar_text(value, key));
        }
        try {
            opt->clear();
            for (const auto& p : parts) opt->add_result(p);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }
}

}  // namespace

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) return argv[i + 1];
        if (a.rfind("--config=", 0) == 0) return a.substr(9);
    }
    return {};
}

void apply_json_config(const std::string& path, CLI::App& app) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");
    apply_object(doc, app);
}

}  // namespace rieszlab::cli
