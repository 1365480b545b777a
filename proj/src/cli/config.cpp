#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cmisog/cli.hpp"

namespace cmisog::cli {

namespace {

const std::map<std::string, double> kDefaultTolerances = {
    {"gkz_rel", 1e-6},       // |LHS - RHS| / |RHS|
    {"kappa_spread", 1e-8},  // relative spread of the measured normalization
    {"green_rel", 1e-10},    // target relative error of each Green value
};

}  // namespace

double RunConfig::tol(const std::string& key) const {
    if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
    throw ConfigError("unknown tolerance '" + key + "'");
}

RunConfig default_config() {
    RunConfig c;
    for (auto [a, b] : {std::pair{-3, -4}, {-4, -7}, {-3, -8}, {-7, -8}}) c.pairs.push_back(DiscriminantPair::make(a, b));
    c.tolerances = kDefaultTolerances;
    return c;
}

RunConfig parse_config(const std::string& text) {
    RunConfig c = default_config();
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!root || root.IsNull()) return c;
    if (!root.IsMap()) throw ConfigError("config: top level must be a mapping");
    try {
        for (const auto& kv : root) {
            auto key = kv.first.as<std::string>();
            const YAML::Node& v = kv.second;
            if (key == "pairs") {
                c.pairs.clear();
                for (const auto& p : v) {
                    if (!p.IsSequence() || p.size() != 2) throw ConfigError("config: each pair is [D1, D2]");
                    try {
                        c.pairs.push_back(DiscriminantPair::make(p[0].as<i64>(), p[1].as<i64>()));
                    } catch (const quadfield::UnsupportedConfig& e) {
                        throw ConfigError(std::string("config: ") + e.what());
                    }
                }
            } else if (key == "m_max") {
                c.m_max = v.as<i64>();
            } else if (key == "p_max") {
                c.p_max = v.as<u64>();
            } else if (key == "tolerances") {
                for (const auto& t : v) {
                    auto name = t.first.as<std::string>();
                    if (!kDefaultTolerances.count(name)) throw ConfigError("config: unknown tolerance '" + name + "'");
                    c.tolerances[name] = t.second.as<double>();
                }
            } else if (key == "cache_dir") {
                c.cache_dir = v.as<std::string>();
            } else if (key == "output_format") {
                c.output_format = v.as<std::string>();
            } else if (key == "parallelism") {
                c.parallelism = v.as<int>();
            } else if (key == "seed") {
                c.seed = v.as<u64>();
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        }
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("config: cannot read " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const RunConfig& c) {
    if (c.pairs.empty()) throw ConfigError("config: no discriminant pairs");
    for (const auto& p : c.pairs) DiscriminantPair::make(p.D1, p.D2);  // rethrows UnsupportedConfig
    if (c.m_max < 1) throw ConfigError("config: m_max must be >= 1");
    if (c.p_max < 2) throw ConfigError("config: p_max must be >= 2");
    for (const auto& [k, v] : c.tolerances)
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError("config: tolerance '" + k + "' must be positive");
    if (c.output_format != "json" && c.output_format != "csv" && c.output_format != "table")
        throw ConfigError("config: output_format is one of json, csv, table");
    if (c.parallelism < 1) throw ConfigError("config: parallelism must be >= 1");
}

}  // namespace cmisog::cli
