#include "cmisog/eisenstein.hpp"

#include <cmath>
#include <stdexcept>

#include "cmisog/legendre.hpp"

namespace cmisog::eisenstein {

int whittaker_value(const WhittakerQuery& q) {
    if (q.o < 0) throw std::invalid_argument("whittaker_value: o must be nonnegative");
    if (q.delta != 0 && q.delta != 1) throw std::invalid_argument("whittaker_value: delta in {0,1}");
    return (q.o >= q.delta + 2 * q.r && (q.o - q.delta) % 2 == 0) ? 1 : 0;
}

ExactRational whittaker_deriv(const WhittakerQuery& q) {
    if (q.o < q.delta + 2 * q.r || (q.o - q.delta) % 2 == 0) return ExactRational(0);
    // (o-δ+1)/2 - r - p^{1-δ-2r}(1 - p^{δ+2r})/(p^2-1)
    const int s = q.delta + 2 * q.r;
    mpz_class p = static_cast<unsigned long>(q.p);
    ExactRational ps(ipow(p, s));
    ExactRational pw = (1 - s >= 0) ? ExactRational(ipow(p, 1 - s)) : ExactRational(1) / ExactRational(ipow(p, s - 1));
    ExactRational v = ExactRational(q.o - q.delta + 1) / ExactRational(2) - ExactRational(q.r);
    return v - pw * (ExactRational(1) - ps) / ExactRational(mpz_class(p * p - 1));
}

bool est_identity_check(int o, u64 p) {
    int lhs = 0;
    for (int r = 0; 2 * r <= o; ++r) lhs += whittaker_value({o, 1, r, p});
    ExactRational rhs = whittaker_deriv({o, 0, 0, p});
    ExactRational closed = (o % 2) ? ExactRational(o + 1) / ExactRational(2) : ExactRational(0);
    return ExactRational(lhs) == rhs && rhs == closed;
}

namespace {

int exponent_at(const IdealFactorization& f, const PrimeOfF& P) {
    auto it = f.factors.find(P);
    return it == f.factors.end() ? 0 : it->second;
}

IdealFactorization divide(const IdealFactorization& f, const PrimeOfF& P, int e) {
    IdealFactorization g = f;
    int left = exponent_at(f, P) - e;
    if (left < 0) throw std::invalid_argument("quotient not integral");
    if (left == 0)
        g.factors.erase(P);
    else
        g.factors[P] = left;
    return g;
}

}  // namespace

u64 coherent_coeff(const IdealFactorization& f, const PrimeOfF& P, int r) {
    if (!P.inert_in_K) throw std::invalid_argument("coherent_coeff: prime must be inert in K");
    if (exponent_at(f, P) < 2 * r + 1) return 0;
    return quadfield::rho_kf(divide(f, P, 2 * r + 1));
}

u64 coherent_coeff(const FieldElement& x, const PrimeOfF& P, int r, const DiscriminantPair& cfg) {
    return coherent_coeff(quadfield::factor_element(x, cfg), P, r);
}

u64 incoherent_coeff(const FieldElement& x, const IdealFactorization& f, const PrimeOfF& P) {
    (void)x;
    int e = exponent_at(f, P);
    if (!P.inert_in_K || e % 2 == 0) return 0;
    // Diff = {𝔭}: no other inert-in-K prime with odd exponent
    for (const auto& [Q, eq] : f.factors)
        if (!(Q == P) && Q.inert_in_K && eq % 2) return 0;
    return 2 * (1 + static_cast<u64>(e)) * quadfield::rho_kf(divide(f, P, 1));
}

u64 incoherent_coeff(const FieldElement& x, const PrimeOfF& P, const DiscriminantPair& cfg) {
    return incoherent_coeff(x, quadfield::factor_element(x, cfg), P);
}

bool matching_identity(const FieldElement& x, const PrimeOfF& P, const DiscriminantPair& cfg) {
    auto f = quadfield::factor_element(x, cfg);
    int o = exponent_at(f, P);
    u64 lhs = 0;
    for (int r = 0; 2 * r <= o; ++r) lhs += coherent_coeff(f, P, r);
    u64 rhs = (o % 2) ? static_cast<u64>(o + 1) / 2 * quadfield::rho_kf(divide(f, P, o)) : 0;
    return lhs == rhs;
}

TraceTable::TraceTable(i64 m, const DiscriminantPair& cfg) : m_(m), cfg_(cfg) {
    for (const auto& t : quadfield::enumerate_trace_m(m, cfg))
        rows_.push_back({t.a, t.tsqrtD, quadfield::factor_element(t.tsqrtD, cfg)});
}

std::optional<int> r_max(i64 m, u64 p, const DiscriminantPair& cfg) {
    mpz_class lim = mpz_class(static_cast<long>(m)) * m * cfg.D;  // 4 p^{2r+1} ≤ m^2 D
    mpz_class pp = static_cast<unsigned long>(p);
    if (4 * pp > lim) return std::nullopt;
    int r = 0;
    while (4 * ipow(pp, 2 * (r + 1) + 1) <= lim) ++r;
    return r;
}

ExactRational ck_coeff(const TraceTable& T, u64 p, int r, int k) {
    if (k != 1 && k != 3 && k != 5 && k != 7) throw std::invalid_argument("ck_coeff: k in {1,3,5,7}");
    const auto& cfg = T.cfg();
    const i64 m = T.m();
    auto rm = r_max(m, p, cfg);
    if (!rm || r > *rm) return ExactRational(0);
    ExactRational sum(0);
    for (const auto& P : quadfield::prime_profile(p, cfg)) {
        if (!P.inert_in_K) continue;
        for (const auto& row : T.rows()) {
            u64 c = coherent_coeff(row.f, P, r);
            if (!c) continue;
            // P_{k-1}(a/(m√D)) as a polynomial in a^2/(m^2 D)
            ExactRational x2(mpz_class(static_cast<long>(row.a)) * row.a, mpz_class(static_cast<long>(m)) * m * cfg.D);
            sum += ExactRational(static_cast<long>(c)) * legendre_p_even(static_cast<unsigned>(k - 1), x2);
        }
    }
    return sum * ExactRational(ipow(mpz_class(static_cast<long>(m)), static_cast<unsigned>(k - 1)));
}

ExactRational ck_coeff(i64 m, u64 p, int r, int k, const DiscriminantPair& cfg) {
    return ck_coeff(TraceTable(m, cfg), p, r, k);
}

std::vector<CoefficientRecord> ck_table(const TraceTable& T, const std::vector<int>& ks) {
    std::vector<CoefficientRecord> out;
    const auto& cfg = T.cfg();
    mpz_class lim = mpz_class(static_cast<long>(T.m())) * T.m() * cfg.D / 4;
    for (u64 p : primes_up_to(lim.get_ui())) {
        auto rm = r_max(T.m(), p, cfg);
        if (!rm) continue;
        for (int r = 0; r <= *rm; ++r)
            for (int k : ks) out.push_back({T.m(), p, r, k, ck_coeff(T, p, r, k)});
    }
    return out;
}

BoundAudit bound_audit(i64 m, u64 p, int r, int k, const DiscriminantPair& cfg) {
    ExactRational c = ck_coeff(m, p, r, k, cfg);
    double ratio = 0;
    if (!c.is_zero())
        ratio = std::abs(c.to_double()) * std::pow(static_cast<double>(p), 2 * r + 1) *
                std::sqrt(static_cast<double>(cfg.D)) / (std::pow(static_cast<double>(m), k) * std::log(m + 1.0));
    return {m, p, r, k, c, ratio};
}

}  // namespace cmisog::eisenstein
