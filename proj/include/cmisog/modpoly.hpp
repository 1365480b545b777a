#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "cmisog/bigfloat.hpp"
#include "cmisog/eisenstein.hpp"
#include "cmisog/quadfield.hpp"
#include "cmisog/rational.hpp"

namespace cmisog::modpoly {

using quadfield::DiscriminantPair;

struct NonIntegralError : std::logic_error {
    using std::logic_error::logic_error;
};

// j = Σ_{n ≥ -1} c(n) q^n; coefficients[0] holds c(-1)
struct QExpansion {
    std::vector<mpz_class> coefficients;
    std::size_t length() const { return coefficients.size(); }
    const mpz_class& c(long n) const { return coefficients.at(static_cast<std::size_t>(n + 1)); }
};

QExpansion j_series(std::size_t n_terms);
// shared, lazily grown table used by eval_j
std::shared_ptr<const QExpansion> j_table(std::size_t min_terms);

// z is reduced to the standard fundamental domain by an integer Möbius map
// applied to the ball, so only Im(z) > 0 is required.
ComplexBall eval_j(const ComplexBall& z, mpfr_prec_t prec);
ComplexBall cm_point(i64 D, mpfr_prec_t prec);  // (-B + √D)/2, B ≡ D mod 2

struct Coset {
    i64 a, b, d;
    auto operator<=>(const Coset&) const = default;
};
std::vector<Coset> cyclic_cosets(i64 m);
std::vector<Coset> hecke_cosets(i64 m);  // every (a,b,d), ad = m, 0 ≤ b < d
u64 psi_index(i64 m);                    // m ∏(1 + 1/p)

struct EvalCertificate {
    i64 D1 = 0, D2 = 0;
    i64 m = 0;
    mpz_class value;
    double residual = 0;  // |raw product - value|
    long precision_bits = 0;
    u64 coset_count = 0;
};

struct PhiOptions {
    long start_bits = 0;  // 0: twice the estimated target
    long max_bits = 1L << 17;
};

long phi_target_bits(i64 m, const DiscriminantPair& cfg);
// one attempt at a fixed precision; nullopt when the certificate fails
std::optional<EvalCertificate> phi_value_at(i64 m, const DiscriminantPair& cfg, long bits);
EvalCertificate phi_value(i64 m, const DiscriminantPair& cfg, const PhiOptions& opt = {});
// memoized per (D1, D2, m)
const EvalCertificate& phi_cached(i64 m, const DiscriminantPair& cfg);
// preload the memo (e.g. from a disk cache); an existing entry wins
void phi_seed(const EvalCertificate& cert);
bool reverify(const EvalCertificate& cert, const DiscriminantPair& cfg, long extra_bits = 64);

std::vector<u64> pi_set(i64 m, const DiscriminantPair& cfg, bool prefilter = true);
u64 support_bound(i64 m, const DiscriminantPair& cfg);  // floor(D m^2 / 4)
// |φ_m| with every prime ≤ D m²/4 divided out
mpz_class support_cofactor(i64 m, const DiscriminantPair& cfg);

ExactRational predicted_valuation_raw(i64 m, u64 p, const DiscriminantPair& cfg);
u64 predicted_valuation(i64 m, u64 p, const DiscriminantPair& cfg);
int ord_phi(i64 m, u64 p, const DiscriminantPair& cfg);
// ord_p of ∏_{d² | m} φ_{m/d²}
int ord_hecke(i64 m, u64 p, const DiscriminantPair& cfg);
// Σ_{d² | m} μ(d) · predicted(m/d²)
i64 predicted_cyclic(i64 m, u64 p, const DiscriminantPair& cfg);

struct LedgerRow {
    i64 m;
    u64 p;
    u64 predicted;
    int ord_phi;
    int ord_hecke;
    i64 predicted_cyclic;
};
// every prime p ≤ D m²/4 with p ∤ m
std::vector<LedgerRow> gz_ledger(i64 m, const DiscriminantPair& cfg);

bool s_unit_check(i64 m, const std::set<u64>& S, const DiscriminantPair& cfg);

struct TorsionReport {
    bool ok = true;
    std::vector<u64> offending;
};
TorsionReport torsion_divisibility_check(i64 m, const DiscriminantPair& cfg);
bool prime_floor_check(i64 m, const DiscriminantPair& cfg);

}  // namespace cmisog::modpoly
