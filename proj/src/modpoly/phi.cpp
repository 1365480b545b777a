#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "cmisog/modpoly.hpp"

namespace cmisog::modpoly {

namespace {

double reduced_height(std::complex<double> w) {
    double x = w.real(), y = w.imag();
    for (int it = 0; it < 10000; ++it) {
        x -= std::floor(x + 0.5);
        double r = x * x + y * y;
        if (r >= 1.0 - 1e-12) break;
        x = -x / r;
        y /= r;
    }
    return y;
}

}  // namespace

long phi_target_bits(i64 m, const DiscriminantPair& cfg) {
    // log2 of an upper estimate of |φ_m(j1, j2)|: each factor is at most
    // |j1| + |j(w)| with |j(w)| ≈ e^{2π Im w} after reduction
    double y2 = std::sqrt(static_cast<double>(-cfg.D2)) / 2;
    double x2 = -static_cast<double>((-cfg.D2) % 2) / 2;
    double lj1 = std::log2(std::abs(cfg.j1.get_d()) + 1.0);
    double bits = 0;
    for (const auto& c : cyclic_cosets(m)) {
        std::complex<double> w((c.a * x2 + c.b) / c.d, c.a * y2 / c.d);
        double lj = 2 * M_PI * reduced_height(w) / M_LN2;
        bits += std::max(lj, lj1) + 2;
    }
    return static_cast<long>(bits) + 10 + static_cast<long>(std::log2(static_cast<double>(psi_index(m)))) + 1;
}

std::optional<EvalCertificate> phi_value_at(i64 m, const DiscriminantPair& cfg, long bits) {
    const mpfr_prec_t prec = bits;
    ComplexBall z2 = cm_point(cfg.D2, prec);
    ComplexBall J1 = ComplexBall::exact(cfg.j1, prec);
    auto cosets = cyclic_cosets(m);
    ComplexBall prod = ComplexBall::exact(1, prec);
    for (const auto& c : cosets) {
        ComplexBall w = (z2 * c.a + c.b) / ComplexBall::exact(c.d, prec);
        prod = prod * (J1 - eval_j(w, prec));
    }
    mpz_class n = prod.re().round();
    BigFloat dre = prod.re() - BigFloat(n, prec + 64);
    BigFloat res(up::kBits);
    mpfr_hypot(res.raw(), dre.raw(), prod.im().raw(), MPFR_RNDU);
    BigFloat total = up::add(res, prod.rad());
    if (!(total < BigFloat::pow2(-10))) return std::nullopt;
    EvalCertificate cert;
    cert.D1 = cfg.D1;
    cert.D2 = cfg.D2;
    cert.m = m;
    cert.value = n;
    cert.residual = res.to_double();
    cert.precision_bits = bits;
    cert.coset_count = cosets.size();
    return cert;
}

EvalCertificate phi_value(i64 m, const DiscriminantPair& cfg, const PhiOptions& opt) {
    if (m < 1) throw std::invalid_argument("phi_value: m >= 1");
    long bits = opt.start_bits > 0 ? opt.start_bits : std::max(128L, 2 * phi_target_bits(m, cfg));
    for (; bits <= opt.max_bits; bits *= 2) {
        try {
            if (auto c = phi_value_at(m, cfg, bits)) return *c;
        } catch (const PrecisionError&) {
        }
    }
    throw PrecisionError("phi_value: precision escalation limit reached for m = " + std::to_string(m));
}

namespace {
std::mutex memo_mu;
std::map<std::tuple<i64, i64, i64>, EvalCertificate> memo;
}  // namespace

const EvalCertificate& phi_cached(i64 m, const DiscriminantPair& cfg) {
    auto key = std::make_tuple(cfg.D1, cfg.D2, m);
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    EvalCertificate c = phi_value(m, cfg);
    std::lock_guard<std::mutex> lock(memo_mu);
    return memo.emplace(key, std::move(c)).first->second;
}

void phi_seed(const EvalCertificate& cert) {
    std::lock_guard<std::mutex> lock(memo_mu);
    memo.emplace(std::make_tuple(cert.D1, cert.D2, cert.m), cert);
}

bool reverify(const EvalCertificate& cert, const DiscriminantPair& cfg, long extra_bits) {
    auto again = phi_value_at(cert.m, cfg, cert.precision_bits + extra_bits);
    return again && again->value == cert.value && again->coset_count == cert.coset_count;
}

u64 support_bound(i64 m, const DiscriminantPair& cfg) {
    return static_cast<u64>(cfg.D) * static_cast<u64>(m) * static_cast<u64>(m) / 4;
}

std::vector<u64> pi_set(i64 m, const DiscriminantPair& cfg, bool prefilter) {
    const mpz_class& v = phi_cached(m, cfg).value;
    std::vector<u64> out;
    if (v == 0) throw std::logic_error("pi_set: φ_m vanished; the curves are m-isogenous over C");
    for (u64 p : primes_up_to(support_bound(m, cfg))) {
        if (m % static_cast<i64>(p) == 0) continue;
        if (prefilter && (kronecker(cfg.D1, static_cast<i64>(p)) == 1 || kronecker(cfg.D2, static_cast<i64>(p)) == 1))
            continue;
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) out.push_back(p);
    }
    return out;
}

mpz_class support_cofactor(i64 m, const DiscriminantPair& cfg) {
    mpz_class v = abs(phi_cached(m, cfg).value);
    for (u64 p : primes_up_to(support_bound(m, cfg)))
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    return v;
}

}  // namespace cmisog::modpoly
