#include <cmath>
#include <map>
#include <optional>

#include "cmisog/eisenstein.hpp"
#include "cmisog/green.hpp"

namespace cmisog::green {

namespace {

// Σ_r c_k(m; p^{2r+1}) per prime
std::map<u64, ExactRational> coefficient_sums(i64 m, int k, const DiscriminantPair& cfg) {
    eisenstein::TraceTable T(m, cfg);
    std::map<u64, ExactRational> out;
    for (const auto& rec : eisenstein::ck_table(T, {k})) {
        auto it = out.try_emplace(rec.p, ExactRational(0L)).first;
        it->second = it->second + rec.value;
    }
    return out;
}

}  // namespace

ExactRational kappa_calibrate(const DiscriminantPair& cfg) {
    std::optional<ExactRational> kappa;
    const ExactRational w(static_cast<long>(cfg.w1 * cfg.w2));
    for (const auto& [p, c] : coefficient_sums(1, 1, cfg)) {
        int ord = modpoly::ord_phi(1, p, cfg);
        if (c.is_zero()) {
            if (ord != 0) throw std::logic_error("kappa_calibrate: valuation without coefficient at p = " + std::to_string(p));
            continue;
        }
        ExactRational kp = ExactRational(8L * ord) / (-(w * c));
        if (kappa && *kappa != kp) throw std::logic_error("kappa_calibrate: primes disagree");
        kappa = kp;
    }
    if (!kappa) throw std::logic_error("kappa_calibrate: no prime carries a coefficient");
    return *kappa;
}

GkzReport gkz_verify(int k, i64 m, const DiscriminantPair& cfg, double tol, double rel_tol) {
    GkzReport rep;
    rep.k = k, rep.m = m, rep.D1 = cfg.D1, rep.D2 = cfg.D2;
    const ExactRational kappa = kappa_calibrate(cfg);
    rep.kappa_norm = kappa.to_double();
    auto sums = coefficient_sums(m, k, cfg);
    double S = 0;
    for (const auto& [p, c] : sums) S += std::log(static_cast<double>(p)) * c.to_double();
    const double den = -static_cast<double>(cfg.w1 * cfg.w2) * S;
    rep.rhs = rep.kappa_norm * den;

    if (k == 1) {
        bool exact = true;
        double lhs = 0;
        const ExactRational w(static_cast<long>(cfg.w1 * cfg.w2));
        for (const auto& [p, c] : sums) {
            int ord = modpoly::ord_hecke(m, p, cfg);
            lhs += 8.0 * ord * std::log(static_cast<double>(p));
            if (ExactRational(8L * ord) != -(w * kappa * c)) exact = false;
        }
        rep.lhs = lhs;
        rep.rel_err = rep.rhs != 0 ? std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs) : std::abs(rep.lhs);
        rep.kappa_measured = den != 0 ? rep.lhs / den : 0;
        rep.pass = exact && rep.rel_err < tol;
        return rep;
    }

    const CMPoint z1 = CMPoint::of(cfg.D1), z2 = CMPoint::of(cfg.D2);
    // all summands are negative, so a coarse partial sum bounds |G| from below
    GreenRequest pilot{k, m, 1e-2, 0};
    double g0 = std::abs(green_value(pilot, z1, z2).value);
    GreenRequest req{k, m, rel_tol * g0, 0};
    GreenResult g = green_value(req, z1, z2);
    const double scale = 4 * std::pow(static_cast<double>(m), k - 1);
    rep.lhs = scale * g.value;
    rep.green_error = g.error;
    rep.radius = g.radius;
    rep.terms = g.terms;
    rep.rel_err = std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs);
    rep.kappa_measured = rep.lhs / den;
    rep.kappa_error = g.error / std::abs(g.value);
    rep.pass = rep.rel_err < tol;
    return rep;
}

}  // namespace cmisog::green
