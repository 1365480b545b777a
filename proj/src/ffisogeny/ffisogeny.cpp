#include "cmisog/ffisogeny.hpp"

#include <cmath>

namespace cmisog::ffisogeny {

bool is_good_prime(u64 p, const DiscriminantPair& cfg) {
    return is_prime(p) && p > 3 && cfg.D1 % static_cast<i64>(p) != 0 && cfg.D2 % static_cast<i64>(p) != 0;
}

SupersingularConfig supersingular_config(u64 p, const DiscriminantPair& cfg) {
    if (!is_good_prime(p, cfg)) throw BadPrimeError("prime " + std::to_string(p) + " divides 6·D1·D2 or is not prime");
    SupersingularConfig s;
    s.p = p;
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), cfg.j1.get_mpz_t(), p);
    s.j1_mod = r.get_ui();
    mpz_fdiv_r_ui(r.get_mpz_t(), cfg.j2.get_mpz_t(), p);
    s.j2_mod = r.get_ui();
    const i64 ip = static_cast<i64>(p);
    s.supersingular = kronecker(cfg.D1, ip) == -1 && kronecker(cfg.D2, ip) == -1;
    return s;
}

u64 elkies_bound(u64 p) {
    mpz_class rhs = mpz_class(8) * p * p;
    u64 b = 0;
    while (true) {
        mpz_class t = 4 * (b + 1) - 1;
        if (t * t * t > rhs) break;
        ++b;
    }
    return b;
}

DegreeRecord min_isogeny_degree(u64 p, const DiscriminantPair& cfg, u64 limit) {
    auto s = supersingular_config(p, cfg);
    if (!s.supersingular) throw DomainError("min_isogeny_degree: reductions are not supersingular at p = " + std::to_string(p));
    DegreeRecord r;
    r.p = p, r.j1_mod = s.j1_mod, r.j2_mod = s.j2_mod;
    r.elkies_bound = elkies_bound(p);
    const u64 top = limit ? limit : r.elkies_bound;
    for (u64 m = (s.j1_mod == s.j2_mod ? 2 : 1); m <= top; ++m) {
        const auto& cert = modpoly::phi_cached(static_cast<i64>(m), cfg);
        if (mpz_divisible_ui_p(cert.value.get_mpz_t(), p)) {
            r.m_min = m;
            return r;
        }
    }
    throw NotFoundError("no isogeny of degree <= " + std::to_string(top) + " at p = " + std::to_string(p));
}

ElkiesAudit elkies_audit(u64 p_max, const DiscriminantPair& cfg) {
    ElkiesAudit a;
    if (p_max < 5) return a;
    for (u64 p : primes_up_to(p_max)) {
        if (!is_good_prime(p, cfg) || !supersingular_config(p, cfg).supersingular) continue;
        DegreeRecord r;
        try {
            r = min_isogeny_degree(p, cfg);
        } catch (const NotFoundError&) {
            a.all_pass = false;
            a.failures.push_back(p);
            try {
                r = min_isogeny_degree(p, cfg, p - 1);
            } catch (const NotFoundError&) {
                r = {p, 0, 0, 0, elkies_bound(p)};
            }
        }
        if (r.m_min > 1)
            a.max_exponent = std::max(a.max_exponent, std::log(static_cast<double>(r.m_min)) / std::log(static_cast<double>(p)));
        a.rows.push_back(r);
    }
    return a;
}

DichotomyCounts dichotomy_counts(double x, double delta, double eta, double C, const DiscriminantPair& cfg) {
    if (!(delta > 0 && delta < 2.0 / 3) || !(eta > 0 && eta < 0.5) || !(C > 0))
        throw std::invalid_argument("dichotomy_counts: 0 < δ < 2/3, 0 < η < 1/2, C > 0");
    DichotomyCounts c;
    if (x < 2) return c;
    const u64 X = static_cast<u64>(std::floor(x));
    for (u64 p : primes_up_to(X)) {
        if (!is_good_prime(p, cfg) || !supersingular_config(p, cfg).supersingular) continue;
        DegreeRecord r;
        try {
            r = min_isogeny_degree(p, cfg, p - 1);
        } catch (const NotFoundError&) {
            continue;
        }
        if (static_cast<double>(r.m_min) <= std::pow(static_cast<double>(p), 2.0 / 3 - delta)) ++c.count1;
    }
    for (u64 m = 1; m <= X; ++m) {
        auto ps = modpoly::pi_set(static_cast<i64>(m), cfg);
        if (static_cast<double>(ps.size()) >= C * std::pow(static_cast<double>(m), 1 - eta)) ++c.count2;
    }
    return c;
}

}  // namespace cmisog::ffisogeny
