#include <cmath>

#include "cmisog/modpoly.hpp"

namespace cmisog::modpoly {

ExactRational predicted_valuation_raw(i64 m, u64 p, const DiscriminantPair& cfg) {
    eisenstein::TraceTable T(m, cfg);
    u64 sum = 0;
    for (const auto& P : quadfield::prime_profile(p, cfg))
        for (const auto& row : T.rows()) sum += eisenstein::incoherent_coeff(row.x, row.f, P);
    return ExactRational(static_cast<long>(cfg.w1 * cfg.w2)) * ExactRational(static_cast<long>(sum)) /
           ExactRational(8);
}

u64 predicted_valuation(i64 m, u64 p, const DiscriminantPair& cfg) {
    if (m % static_cast<i64>(p) == 0) throw std::invalid_argument("predicted_valuation: p must not divide m");
    ExactRational v = predicted_valuation_raw(m, p, cfg);
    if (!v.is_integer() || v.sign() < 0)
        throw NonIntegralError("predicted valuation " + v.str() + " is not a nonnegative integer");
    return v.numerator().get_ui();
}

int ord_phi(i64 m, u64 p, const DiscriminantPair& cfg) { return vp(phi_cached(m, cfg).value, p); }

int ord_hecke(i64 m, u64 p, const DiscriminantPair& cfg) {
    int s = 0;
    for (i64 d = 1; d * d <= m; ++d)
        if (m % (d * d) == 0) s += ord_phi(m / (d * d), p, cfg);
    return s;
}

i64 predicted_cyclic(i64 m, u64 p, const DiscriminantPair& cfg) {
    i64 s = 0;
    for (i64 d = 1; d * d <= m; ++d) {
        if (m % (d * d)) continue;
        int mu = moebius(static_cast<u64>(d));
        if (mu) s += mu * static_cast<i64>(predicted_valuation(m / (d * d), p, cfg));
    }
    return s;
}

std::vector<LedgerRow> gz_ledger(i64 m, const DiscriminantPair& cfg) {
    std::vector<LedgerRow> rows;
    for (u64 p : primes_up_to(support_bound(m, cfg))) {
        if (m % static_cast<i64>(p) == 0) continue;
        rows.push_back({m, p, predicted_valuation(m, p, cfg), ord_phi(m, p, cfg), ord_hecke(m, p, cfg),
                        predicted_cyclic(m, p, cfg)});
    }
    return rows;
}

bool s_unit_check(i64 m, const std::set<u64>& S, const DiscriminantPair& cfg) {
    mpz_class v = abs(phi_cached(m, cfg).value);
    for (u64 p : S)
        while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p)) mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    return v != 1;
}

TorsionReport torsion_divisibility_check(i64 m, const DiscriminantPair& cfg) {
    TorsionReport rep;
    for (u64 p : pi_set(m, cfg)) {
        if (p <= 3) continue;
        mpz_class t = ipow(mpz_class(static_cast<unsigned long>(p)), 12) - 1;
        t *= t;
        if (!mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(m))) {
            rep.ok = false;
            rep.offending.push_back(p);
        }
    }
    return rep;
}

bool prime_floor_check(i64 m, const DiscriminantPair& cfg) {
    const mpz_class M = static_cast<long>(m);
    bool squarefree = moebius(static_cast<u64>(m)) != 0;
    bool prime = is_prime(static_cast<u64>(m));
    for (u64 p : pi_set(m, cfg)) {
        if (p <= 3) continue;
        mpz_class P = static_cast<unsigned long>(p);
        if (ipow(P, 24) < M) return false;
        if (squarefree && ipow(P, 12) < M) return false;
        if (prime && ipow(P, 6) < M - 1) return false;
    }
    return true;
}

}  // namespace cmisog::modpoly
