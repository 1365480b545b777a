#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <deque>
#include <exception>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "cmisog/cli.hpp"
#include "cmisog/eisenstein.hpp"
#include "cmisog/ffisogeny.hpp"
#include "cmisog/green.hpp"
#include "cmisog/petersson.hpp"

namespace cmisog::cli {

namespace {

using json = nlohmann::json;
using modpoly::EvalCertificate;

struct Report {
    std::string command;
    json params = json::object();
    std::vector<json> records;
    std::vector<json> failures;
};

json pair_key(const DiscriminantPair& c) { return {{"d1", c.D1}, {"d2", c.D2}}; }

void fail(Report& rep, const std::string& check, json key, const std::string& detail) {
    json f = {{"check", check}, {"detail", detail}};
    f["key"] = std::move(key);
    rep.failures.push_back(std::move(f));
}

// Runs f(i) for i < n on a bounded pool; results land in index order so the
// merge is deterministic. The first exception (by index) is rethrown.
template <class R>
std::vector<R> pool_map(std::size_t n, int threads, const std::function<R(std::size_t)>& f) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                out[i] = f(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    int t = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), std::max<std::size_t>(n, 1)));
    std::vector<std::thread> pool;
    for (int i = 1; i < t; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

// All cache writes go through one thread.
class CacheWriter {
public:
    explicit CacheWriter(const Cache& c) : cache_(c), th_([this] { loop(); }) {}
    ~CacheWriter() { close(); }
    void push(EvalCertificate c) {
        {
            std::lock_guard<std::mutex> l(mu_);
            q_.push_back(std::move(c));
        }
        cv_.notify_one();
    }
    void close() {
        {
            std::lock_guard<std::mutex> l(mu_);
            if (done_) return;
            done_ = true;
        }
        cv_.notify_one();
        th_.join();
        if (err_) std::rethrow_exception(err_);
    }

private:
    void loop() {
        std::unique_lock<std::mutex> l(mu_);
        for (;;) {
            cv_.wait(l, [this] { return done_ || !q_.empty(); });
            while (!q_.empty()) {
                EvalCertificate c = std::move(q_.front());
                q_.pop_front();
                l.unlock();
                try {
                    cache_.put(c);
                } catch (...) {
                    if (!err_) err_ = std::current_exception();
                }
                l.lock();
            }
            if (done_) return;
        }
    }
    const Cache& cache_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<EvalCertificate> q_;
    bool done_ = false;
    std::exception_ptr err_;
    std::thread th_;
};

struct Context {
    RunConfig cfg;
    std::ostream* log = nullptr;
};

// Load or compute φ_m(j1, j2) for every key and seed the in-memory memo.
// A seeded 10% of the cache hits is recomputed and compared exactly.
void prepare_phi(const Context& ctx, const std::vector<std::pair<DiscriminantPair, i64>>& keys, Report& rep) {
    Cache cache(ctx.cfg.cache_dir);
    std::vector<EvalCertificate> hits;
    std::vector<std::size_t> miss;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto& [c, m] = keys[i];
        if (auto got = cache.get(c.D1, c.D2, m)) {
            modpoly::phi_seed(*got);
            hits.push_back(std::move(*got));
        } else {
            miss.push_back(i);
        }
    }
    {
        CacheWriter writer(cache);
        std::function<EvalCertificate(std::size_t)> job = [&](std::size_t i) {
            const auto& [c, m] = keys[miss[i]];
            EvalCertificate cert = modpoly::phi_value(m, c);
            writer.push(cert);
            return cert;
        };
        for (const auto& cert : pool_map(miss.size(), ctx.cfg.parallelism, job)) modpoly::phi_seed(cert);
        writer.close();
    }

    std::vector<std::size_t> order(hits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(ctx.cfg.seed);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize((hits.size() + 9) / 10);
    std::sort(order.begin(), order.end());
    std::function<bool(std::size_t)> check = [&](std::size_t i) {
        const auto& h = hits[order[i]];
        auto fresh = modpoly::phi_value(h.m, DiscriminantPair::make(h.D1, h.D2));
        return fresh.value == h.value && fresh.coset_count == h.coset_count;
    };
    auto same = pool_map(order.size(), ctx.cfg.parallelism, check);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& h = hits[order[i]];
        if (!same[i])
            fail(rep, "cache_coherence", {{"d1", h.D1}, {"d2", h.D2}, {"m", h.m}},
                 "cached value differs from a fresh evaluation");
    }
    if (ctx.log)
        *ctx.log << "phi cache: " << hits.size() << " hit, " << miss.size() << " computed, " << order.size()
                 << " re-verified\n";
}

std::vector<std::pair<DiscriminantPair, i64>> phi_keys(const std::vector<DiscriminantPair>& pairs, i64 m_lo, i64 m_hi) {
    std::vector<std::pair<DiscriminantPair, i64>> k;
    for (const auto& c : pairs)
        for (i64 m = m_lo; m <= m_hi; ++m) k.emplace_back(c, m);
    return k;
}

json u64_list(const std::vector<u64>& v) {
    json a = json::array();
    for (u64 x : v) a.push_back(x);
    return a;
}

// --- subcommands -----------------------------------------------------------

void cmd_pi_set(const Context& ctx, std::optional<i64> m_only, Report& rep) {
    i64 lo = m_only.value_or(1), hi = m_only.value_or(ctx.cfg.m_max);
    rep.params = {{"m_lo", lo}, {"m_hi", hi}};
    prepare_phi(ctx, phi_keys(ctx.cfg.pairs, lo, hi), rep);
    for (const auto& c : ctx.cfg.pairs)
        for (i64 m = lo; m <= hi; ++m) {
            auto pi = modpoly::pi_set(m, c);
            u64 bound = modpoly::support_bound(m, c);
            json r = pair_key(c);
            r["m"] = m;
            r["pi"] = u64_list(pi);
            r["support_bound"] = bound;
            r["phi"] = modpoly::phi_cached(m, c).value.get_str();
            rep.records.push_back(r);
            if (pi.empty()) fail(rep, "pi_nonempty", r, "π(m) is empty");
            for (u64 p : pi)
                if (p > bound) fail(rep, "pi_support", r, "member " + std::to_string(p) + " exceeds D m^2/4");
        }
}

void cmd_gz_ledger(const Context& ctx, bool strict, Report& rep) {
    rep.params = {{"m_max", ctx.cfg.m_max}, {"strict", strict}};
    prepare_phi(ctx, phi_keys(ctx.cfg.pairs, 1, ctx.cfg.m_max), rep);
    for (const auto& c : ctx.cfg.pairs)
        for (i64 m = 1; m <= ctx.cfg.m_max; ++m)
            for (const auto& row : modpoly::gz_ledger(m, c)) {
                json r = pair_key(c);
                r["m"] = m;
                r["p"] = row.p;
                r["predicted"] = row.predicted;
                r["ord_phi"] = row.ord_phi;
                r["ord_hecke"] = row.ord_hecke;
                r["predicted_cyclic"] = row.predicted_cyclic;
                bool literal = static_cast<i64>(row.predicted) == row.ord_phi;
                r["literal_match"] = literal;
                rep.records.push_back(r);
                if (static_cast<i64>(row.predicted) != row.ord_hecke)
                    fail(rep, "gz_hecke", r, "predicted valuation differs from ord_p of the Hecke product");
                if (row.predicted_cyclic != row.ord_phi)
                    fail(rep, "gz_cyclic", r, "Möbius-inverted prediction differs from ord_p φ_m");
                if (strict && !literal) fail(rep, "gz_literal", r, "predicted valuation differs from ord_p φ_m");
            }
}

void cmd_gkz(const Context& ctx, const std::vector<int>& ks, i64 m_hi, Report& rep) {
    rep.params = {{"k", ks}, {"m_max", m_hi}};
    struct Item {
        DiscriminantPair c;
        int k;
        i64 m;
    };
    std::vector<Item> items;
    for (const auto& c : ctx.cfg.pairs)
        for (int k : ks)
            for (i64 m = 1; m <= m_hi; ++m) items.push_back({c, k, m});
    double tol = ctx.cfg.tol("gkz_rel"), rel = ctx.cfg.tol("green_rel");
    std::function<green::GkzReport(std::size_t)> job = [&](std::size_t i) {
        return green::gkz_verify(items[i].k, items[i].m, items[i].c, tol, rel);
    };
    auto res = pool_map(items.size(), ctx.cfg.parallelism, job);
    std::map<std::pair<i64, i64>, std::pair<double, double>> spread;  // min, max of κ per pair
    for (const auto& g : res) {
        json r = {{"d1", g.D1}, {"d2", g.D2}, {"k", g.k}, {"m", g.m}, {"lhs", g.lhs}, {"rhs", g.rhs},
                  {"rel_err", g.rel_err}, {"kappa_norm", g.kappa_norm}, {"kappa_measured", g.kappa_measured},
                  {"kappa_error", g.kappa_error}, {"terms", g.terms}, {"pass", g.pass}};
        rep.records.push_back(r);
        if (!g.pass || !(g.rel_err < tol)) fail(rep, "gkz_identity", r, "relative error above tolerance");
        auto [it, fresh] = spread.try_emplace({g.D1, g.D2}, g.kappa_measured, g.kappa_measured);
        if (!fresh) {
            it->second.first = std::min(it->second.first, g.kappa_measured);
            it->second.second = std::max(it->second.second, g.kappa_measured);
        }
    }
    double lim = ctx.cfg.tol("kappa_spread");
    for (const auto& [key, mm] : spread) {
        double s = (mm.second - mm.first) / std::abs(mm.second);
        json r = {{"d1", key.first}, {"d2", key.second}, {"kappa_spread", s}};
        if (!(s < lim)) fail(rep, "kappa_spread", r, "measured normalization varies across (k, m)");
    }
}

void cmd_est_check(const Context& ctx, int omax, i64 m_hi, Report& rep) {
    rep.params = {{"omax", omax}, {"m_max", m_hi}};
    for (u64 p : {2u, 3u, 5u, 7u})
        for (int o = 0; o <= omax; ++o) {
            bool ok = eisenstein::est_identity_check(o, p);
            json r = {{"kind", "local"}, {"p", p}, {"o", o}, {"ok", ok}};
            rep.records.push_back(r);
            if (!ok) fail(rep, "est_local", r, "local matching identity failed");
        }
    for (const auto& c : ctx.cfg.pairs)
        for (i64 m = 1; m <= m_hi; ++m) {
            eisenstein::TraceTable T(m, c);
            u64 checked = 0, bad = 0;
            for (const auto& row : T.rows())
                for (const auto& [P, e] : row.f.factors) {
                    if (!P.inert_in_K) continue;
                    ++checked;
                    if (!eisenstein::matching_identity(row.x, P, c)) ++bad;
                }
            json r = pair_key(c);
            r["kind"] = "rho";
            r["m"] = m;
            r["checked"] = checked;
            r["ok"] = bad == 0;
            rep.records.push_back(r);
            if (bad) fail(rep, "est_rho", r, std::to_string(bad) + " elements fail the ideal-level identity");
        }
}

petersson::FormData form_for(u64 level) {
    switch (level) {
        case 1: return petersson::delta_form();
        case 4: return petersson::level4_form();
        case 11: return petersson::level11_form();
    }
    throw ConfigError("petersson-audit: no built-in form of level " + std::to_string(level) + " (1, 4 or 11)");
}

void cmd_petersson(const Context&, std::optional<u64> level, std::optional<int> weight, const std::vector<double>& Ys,
                   Report& rep) {
    std::vector<u64> levels = level ? std::vector<u64>{*level} : std::vector<u64>{1, 11, 4};
    rep.params = {{"levels", levels}, {"Y", Ys}};
    for (u64 N : levels) {
        auto f = form_for(N);
        if (weight && *weight != f.kappa)
            throw ConfigError("petersson-audit: the level " + std::to_string(N) + " form has weight " +
                              std::to_string(f.kappa));
        for (double Y : Ys) {
            auto a = petersson::theorem_audit(f, Y);
            json r = {{"level", a.N}, {"weight", a.kappa}, {"Y", a.Y}, {"norm", a.norm}, {"norm_error", a.norm_error},
                      {"supnorm", a.supnorm}, {"I_f", a.I_f}, {"volume_bound", a.volume_bound},
                      {"volume_mc", a.volume_mc}, {"rhs", a.rhs}, {"inequality_ok", a.inequality_ok},
                      {"rhs_mc", a.rhs_mc}, {"inequality_ok_mc", a.inequality_ok_mc}};
            rep.records.push_back(r);
            if (!a.inequality_ok) fail(rep, "petersson_chain", r, "norm exceeds the truncation bound");
        }
    }
}

json degree_json(const DiscriminantPair& c, const ffisogeny::DegreeRecord& d) {
    json r = pair_key(c);
    r["p"] = d.p;
    r["j1_mod"] = d.j1_mod;
    r["j2_mod"] = d.j2_mod;
    r["m_min"] = d.m_min;
    r["elkies_bound"] = d.elkies_bound;
    r["within_bound"] = d.m_min <= d.elkies_bound;
    return r;
}

void cmd_min_degree(const Context& ctx, u64 p, Report& rep) {
    rep.params = {{"p", p}};
    for (const auto& c : ctx.cfg.pairs) {
        json r = pair_key(c);
        r["p"] = p;
        if (!ffisogeny::is_good_prime(p, c)) {
            r["good"] = false;
            rep.records.push_back(r);
            continue;
        }
        auto s = ffisogeny::supersingular_config(p, c);
        if (!s.supersingular) {
            r["good"] = true;
            r["supersingular"] = false;
            rep.records.push_back(r);
            continue;
        }
        try {
            json d = degree_json(c, ffisogeny::min_isogeny_degree(p, c, p - 1));
            d["good"] = true;
            d["supersingular"] = true;
            rep.records.push_back(d);
        } catch (const ffisogeny::NotFoundError& e) {
            fail(rep, "min_degree", r, e.what());
        }
    }
}

void cmd_elkies(const Context& ctx, u64 pmax, Report& rep) {
    rep.params = {{"p_max", pmax}};
    for (const auto& c : ctx.cfg.pairs) {
        auto a = ffisogeny::elkies_audit(pmax, c);
        for (const auto& row : a.rows) {
            json r = degree_json(c, row);
            rep.records.push_back(r);
            if (!(row.m_min <= row.elkies_bound))
                fail(rep, "elkies_bound", r, row.j1_mod == row.j2_mod ? "m_min above bound (j1 = j2 mod p)" : "m_min above bound");
        }
    }
}

void cmd_dichotomy(const Context& ctx, double x, double delta, double eta, double C, Report& rep) {
    rep.params = {{"x", x}, {"delta", delta}, {"eta", eta}, {"C", C}};
    for (const auto& c : ctx.cfg.pairs) {
        auto d = ffisogeny::dichotomy_counts(x, delta, eta, C, c);
        json r = pair_key(c);
        r["count1"] = d.count1;
        r["count2"] = d.count2;
        rep.records.push_back(r);
    }
}

void cmd_bound_ledger(const Context& ctx, Report& rep) {
    const std::vector<int> ks = {1, 3, 5, 7};
    rep.params = {{"m_max", ctx.cfg.m_max}, {"k", ks}};
    prepare_phi(ctx, phi_keys(ctx.cfg.pairs, 1, ctx.cfg.m_max), rep);
    struct Item {
        DiscriminantPair c;
        i64 m;
    };
    std::vector<Item> items;
    for (const auto& c : ctx.cfg.pairs)
        for (i64 m = 1; m <= ctx.cfg.m_max; ++m) items.push_back({c, m});
    std::function<std::vector<eisenstein::CoefficientRecord>(std::size_t)> job = [&](std::size_t i) {
        eisenstein::TraceTable T(items[i].m, items[i].c);
        return eisenstein::ck_table(T, ks);
    };
    auto tables = pool_map(items.size(), ctx.cfg.parallelism, job);
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& [c, m] = items[i];
        std::set<u64> support;
        std::map<int, double> partial;  // Σ_{p, r} c_k log p
        for (const auto& rec : tables[i]) {
            if (rec.value.is_zero()) continue;
            support.insert(rec.p);
            partial[rec.k] += rec.value.to_double() * std::log(static_cast<double>(rec.p));
        }
        auto pi = modpoly::pi_set(m, c);
        std::set<u64> piset(pi.begin(), pi.end());
        json r = pair_key(c);
        r["m"] = m;
        r["pi"] = u64_list(pi);
        r["support"] = u64_list({support.begin(), support.end()});
        json ps = json::object();
        for (int k : ks) ps["k" + std::to_string(k)] = partial[k];
        r["partial_sums"] = ps;
        for (u64 p : primes_up_to(modpoly::support_bound(m, c))) {
            if (m % static_cast<i64>(p) == 0) continue;
            if (support.count(p) != piset.count(p)) {
                json k = r;
                k["p"] = p;
                fail(rep, "ck_vanishing", k,
                     support.count(p) ? "nonzero coefficient at a prime outside π(m)" : "all coefficients vanish at a prime of π(m)");
            }
        }
        r["ok"] = support == piset;
        rep.records.push_back(r);
    }
}

void cmd_ck_table(const Context& ctx, i64 m, const std::vector<int>& ks, Report& rep) {
    rep.params = {{"m", m}, {"k", ks}};
    for (const auto& c : ctx.cfg.pairs) {
        eisenstein::TraceTable T(m, c);
        for (const auto& rec : eisenstein::ck_table(T, ks)) {
            json r = pair_key(c);
            r["m"] = m;
            r["p"] = rec.p;
            r["r"] = rec.r;
            r["k"] = rec.k;
            r["value"] = rec.value.str();
            rep.records.push_back(r);
        }
    }
}

// --- output ------------------------------------------------------------------

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

json config_json(const RunConfig& c) {
    json pairs = json::array();
    for (const auto& p : c.pairs) pairs.push_back({p.D1, p.D2});
    return {{"pairs", pairs}, {"m_max", c.m_max}, {"p_max", c.p_max}, {"tolerances", c.tolerances}, {"seed", c.seed}};
}

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + cell(v[i]);
        return s;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) o += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return o + "\"";
}

std::vector<std::string> columns(const std::vector<json>& rows) {
    std::vector<std::string> cols;
    for (const auto& r : rows)
        for (auto it = r.begin(); it != r.end(); ++it)
            if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
    return cols;
}

void emit(const Report& rep, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    bool ok = rep.failures.empty();
    if (cfg.output_format == "json") {
        json j = {{"schema", 1}, {"command", rep.command}, {"timestamp", utc_now()}, {"config", config_json(cfg)},
                  {"params", rep.params}, {"records", rep.records}, {"failures", rep.failures}, {"ok", ok}};
        out << j.dump(2) << '\n';
        return;
    }
    auto cols = columns(rep.records);
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rep.records) {
        std::vector<std::string> row;
        for (const auto& c : cols) row.push_back(r.contains(c) ? cell(r[c]) : "");
        cells.push_back(std::move(row));
    }
    if (cfg.output_format == "csv") {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
        out << '\n';
        for (const auto& row : cells) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
            out << '\n';
        }
    } else {
        std::vector<std::size_t> w(cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) {
            w[i] = cols[i].size();
            for (const auto& row : cells) w[i] = std::max(w[i], row[i].size());
        }
        auto line = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "  " : "") << std::setw(static_cast<int>(w[i])) << row[i];
            out << '\n';
        };
        line(cols);
        for (const auto& row : cells) line(row);
    }
    for (const auto& f : rep.failures) err << "failure: " << f.dump() << '\n';
}

std::vector<DiscriminantPair> pick_pairs(const RunConfig& cfg, std::optional<i64> d1, std::optional<i64> d2) {
    if (!d1 && !d2) return cfg.pairs;
    if (!d1 || !d2) throw ConfigError("--d1 and --d2 go together");
    try {
        return {DiscriminantPair::make(*d1, *d2)};
    } catch (const quadfield::UnsupportedConfig& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CM singular moduli and isogeny verification suites", "cmisog"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file, format, cache_dir;
    int jobs = 0;
    std::optional<u64> seed;
    std::optional<i64> m_max, d1, d2;
    std::optional<u64> p_max;
    app.add_option("--config", config_file, "YAML run configuration")->check(CLI::ExistingFile);
    app.add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--cache-dir", cache_dir, "certificate cache directory");
    app.add_option("-j,--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "re-verification sample seed");
    app.add_option("--m-max", m_max, "largest m")->check(CLI::PositiveNumber);
    app.add_option("--p-max", p_max, "largest p");
    app.add_option("--d1", d1, "first discriminant (with --d2)");
    app.add_option("--d2", d2, "second discriminant (with --d1)");

    std::optional<i64> pi_m;
    auto* pi = app.add_subcommand("pi-set", "primes where the reductions become cyclically m-isogenous");
    pi->add_option("--m", pi_m, "single m (default 1..m_max)")->check(CLI::PositiveNumber);

    bool strict = false;
    auto* gz = app.add_subcommand("gz-ledger", "exact k = 1 valuation ledger");
    gz->add_flag("--strict", strict, "also require predicted = ord_p φ_m literally");

    std::vector<int> gkz_k = {3, 5, 7};
    i64 gkz_m = 5;
    auto* gkz = app.add_subcommand("gkz-verify", "higher Green function identity, k = 3, 5, 7");
    gkz->add_option("--k", gkz_k, "weights")->check(CLI::PositiveNumber);
    gkz->add_option("--mmax", gkz_m, "largest m")->check(CLI::PositiveNumber);

    int omax = 40;
    i64 est_m = 10;
    auto* est = app.add_subcommand("est-check", "local and ideal-level matching identity");
    est->add_option("--omax", omax, "largest local order")->check(CLI::NonNegativeNumber);
    est->add_option("--mmax", est_m, "largest trace for the ideal-level check")->check(CLI::PositiveNumber);

    std::optional<u64> level;
    std::optional<int> weight;
    std::vector<double> Ys = {0.5, 0.1, 0.05};
    auto* pet = app.add_subcommand("petersson-audit", "truncation inequality for the built-in cusp forms");
    pet->add_option("--level", level, "1, 4 or 11");
    pet->add_option("--weight", weight, "checked against the form");
    pet->add_option("--Y", Ys, "truncation heights")->check(CLI::PositiveNumber);

    u64 md_p = 0;
    auto* md = app.add_subcommand("min-degree", "least isogeny degree between supersingular reductions");
    md->add_option("--p", md_p, "prime")->required();

    std::optional<u64> el_pmax;
    auto* el = app.add_subcommand("elkies-audit", "m_min against the Elkies bound");
    el->add_option("--pmax", el_pmax, "largest prime (default p_max)");

    double dx = 0, ddelta = 0.1, deta = 0.2, dC = 1;
    auto* di = app.add_subcommand("dichotomy", "count both sides of the dichotomy up to x");
    di->add_option("--x", dx, "cutoff")->required();
    di->add_option("--delta", ddelta, "");
    di->add_option("--eta", deta, "");
    di->add_option("--C", dC, "");

    auto* bl = app.add_subcommand("bound-ledger", "coefficient vanishing off π(m)");

    i64 ck_m = 1;
    std::vector<int> ck_k = {1};
    auto* ck = app.add_subcommand("ck-table", "dump the coefficient table");
    ck->add_option("--m", ck_m, "trace")->check(CLI::PositiveNumber);
    ck->add_option("--k", ck_k, "weights")->check(CLI::PositiveNumber);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    RunConfig cfg;
    Report rep;
    try {
        cfg = config_file.empty() ? default_config() : load_config(config_file);
        if (const char* env = std::getenv(kCacheEnv); env && *env) cfg.cache_dir = env;
        if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
        if (!format.empty()) cfg.output_format = format;
        if (jobs > 0) cfg.parallelism = jobs;
        if (seed) cfg.seed = *seed;
        if (m_max) cfg.m_max = *m_max;
        if (p_max) cfg.p_max = *p_max;
        cfg.pairs = pick_pairs(cfg, d1, d2);
        validate(cfg);
    } catch (const std::invalid_argument& e) {
        err << "cmisog: " << e.what() << '\n';
        return 2;
    }

    Context ctx{cfg, &err};
    auto* sub = app.get_subcommands().front();
    rep.command = sub->get_name();
    try {
        if (sub == pi) cmd_pi_set(ctx, pi_m, rep);
        else if (sub == gz) cmd_gz_ledger(ctx, strict, rep);
        else if (sub == gkz) cmd_gkz(ctx, gkz_k, gkz_m, rep);
        else if (sub == est) cmd_est_check(ctx, omax, est_m, rep);
        else if (sub == pet) cmd_petersson(ctx, level, weight, Ys, rep);
        else if (sub == md) cmd_min_degree(ctx, md_p, rep);
        else if (sub == el) cmd_elkies(ctx, el_pmax.value_or(cfg.p_max), rep);
        else if (sub == di) cmd_dichotomy(ctx, dx, ddelta, deta, dC, rep);
        else if (sub == bl) cmd_bound_ledger(ctx, rep);
        else if (sub == ck) cmd_ck_table(ctx, ck_m, ck_k, rep);
    } catch (const std::invalid_argument& e) {
        err << "cmisog: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        rep.records.clear();
        fail(rep, "runtime", json::object(), e.what());
        emit(rep, cfg, out, err);
        return 3;
    }
    emit(rep, cfg, out, err);
    return rep.failures.empty() ? 0 : 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace cmisog::cli
