#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmisog/modpoly.hpp"
#include "cmisog/quadfield.hpp"

namespace cmisog::cli {

using quadfield::DiscriminantPair;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CorruptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::vector<DiscriminantPair> pairs;
    i64 m_max = 8;
    u64 p_max = 500;
    std::map<std::string, double> tolerances;
    std::filesystem::path cache_dir;  // empty: no disk cache
    std::string output_format = "json";
    int parallelism = 1;
    u64 seed = 20240601;  // re-verification sample

    double tol(const std::string& key) const;  // throws ConfigError on unknown key
};

// the four acceptance configurations, m_max = 8
RunConfig default_config();
// YAML; keys absent from the file keep their defaults
RunConfig load_config(const std::filesystem::path& file);
RunConfig parse_config(const std::string& yaml_text);
void validate(const RunConfig& cfg);
inline constexpr const char* kCacheEnv = "CMISOG_CACHE_DIR";

// One TSV file per (D1, D2, m). The last column is the SHA-256 of the rest of
// the line; load also re-checks the residual and the coset count.
class Cache {
public:
    explicit Cache(std::filesystem::path dir);
    const std::filesystem::path& dir() const { return dir_; }
    std::optional<modpoly::EvalCertificate> get(i64 D1, i64 D2, i64 m) const;
    void put(const modpoly::EvalCertificate& cert) const;
    std::vector<modpoly::EvalCertificate> all() const;
    std::filesystem::path path_for(i64 D1, i64 D2, i64 m) const;

    static std::string encode(const modpoly::EvalCertificate& cert);
    static modpoly::EvalCertificate decode(const std::string& line);

private:
    std::filesystem::path dir_;
};

std::string sha256_hex(const std::string& data);

// Full command line (argv[0] is skipped). Exit status: 0 every assertion
// held, 1 some failed, 2 usage error, 3 runtime error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmisog::cli
