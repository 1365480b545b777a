#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmisog/cli.hpp"

namespace cmisog::cli {

namespace fs = std::filesystem;
using modpoly::EvalCertificate;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::path_for(i64 D1, i64 D2, i64 m) const {
    return dir_ / ("phi_" + std::to_string(D1) + "_" + std::to_string(D2) + "_" + std::to_string(m) + ".tsv");
}

// residual as a hex float so the round trip is bit-exact
std::string Cache::encode(const EvalCertificate& c) {
    char res[64];
    std::snprintf(res, sizeof res, "%a", c.residual);
    std::ostringstream body;
    body << c.D1 << '\t' << c.D2 << '\t' << c.m << '\t' << c.value.get_str() << '\t' << res << '\t'
         << c.precision_bits << '\t' << c.coset_count;
    std::string b = body.str();
    return b + '\t' + sha256_hex(b);
}

EvalCertificate Cache::decode(const std::string& line) {
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw CorruptionError("cache: malformed record");
    std::string body = line.substr(0, tab), sum = line.substr(tab + 1);
    if (sha256_hex(body) != sum) throw CorruptionError("cache: checksum mismatch");

    std::vector<std::string> f;
    std::stringstream ss(body);
    for (std::string s; std::getline(ss, s, '\t');) f.push_back(s);
    if (f.size() != 7) throw CorruptionError("cache: wrong field count");
    EvalCertificate c;
    try {
        c.D1 = std::stoll(f[0]);
        c.D2 = std::stoll(f[1]);
        c.m = std::stoll(f[2]);
        if (c.value.set_str(f[3], 10) != 0) throw CorruptionError("cache: bad integer");
        c.residual = std::strtod(f[4].c_str(), nullptr);
        c.precision_bits = std::stol(f[5]);
        c.coset_count = std::stoull(f[6]);
    } catch (const std::logic_error&) {
        throw CorruptionError("cache: unparsable field");
    }
    // the invariants a certificate must satisfy, independent of the checksum
    if (c.m < 1 || c.coset_count != modpoly::psi_index(c.m))
        throw CorruptionError("cache: coset count does not match ψ(m)");
    if (!(c.residual >= 0 && c.residual < std::ldexp(1.0, -10)))
        throw CorruptionError("cache: residual outside the certificate bound");
    try {
        DiscriminantPair::make(c.D1, c.D2);
    } catch (const std::exception&) {
        throw CorruptionError("cache: invalid discriminant pair");
    }
    return c;
}

std::optional<EvalCertificate> Cache::get(i64 D1, i64 D2, i64 m) const {
    if (dir_.empty()) return std::nullopt;
    auto p = path_for(D1, D2, m);
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::string line;
    std::getline(in, line);
    EvalCertificate c = decode(line);
    if (c.D1 != D1 || c.D2 != D2 || c.m != m) throw CorruptionError("cache: key mismatch in " + p.string());
    return c;
}

void Cache::put(const EvalCertificate& c) const {
    if (dir_.empty()) return;
    fs::create_directories(dir_);
    auto p = path_for(c.D1, c.D2, c.m);
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        out << encode(c) << '\n';
    }
    fs::rename(tmp, p);
}

std::vector<EvalCertificate> Cache::all() const {
    std::vector<EvalCertificate> out;
    if (dir_.empty() || !fs::exists(dir_)) return out;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir_))
        if (e.path().extension() == ".tsv" && e.path().filename().string().rfind("phi_", 0) == 0)
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);
        out.push_back(decode(line));
    }
    return out;
}

}  // namespace cmisog::cli
