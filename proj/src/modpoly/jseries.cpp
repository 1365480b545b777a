#include <numeric>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "cmisog/modpoly.hpp"
#include "cmisog/series.hpp"

namespace cmisog::modpoly {

QExpansion j_series(std::size_t n_terms) {
    if (n_terms < 2) throw std::invalid_argument("j_series: need at least two terms");
    const std::size_t n = n_terms;
    auto sigma3 = divisor_sigma(3, n);
    Series e4(n, 0);
    e4[0] = 1;
    for (std::size_t i = 1; i < n; ++i) e4[i] = 240 * sigma3[i];
    Series e4c = series_mul(series_mul(e4, e4, n), e4, n);
    Series eta24 = euler_product_power(24, 1, n);  // Δ/q
    QExpansion j{series_div(e4c, eta24, n)};
    if (n >= 3 && j.c(1) != 196884) throw std::logic_error("j_series: c(1) != 196884");
    return j;
}

std::shared_ptr<const QExpansion> j_table(std::size_t min_terms) {
    static std::mutex mu;
    static std::shared_ptr<const QExpansion> table;
    std::lock_guard<std::mutex> lock(mu);
    if (!table || table->length() < min_terms) {
        std::size_t n = std::max<std::size_t>(min_terms, table ? 2 * table->length() : 256);
        table = std::make_shared<const QExpansion>(j_series(n));
    }
    return table;
}

namespace {

struct Mat {
    i64 a, b, c, d;
};

// SL2(Z) matrix taking (x + iy) into the standard fundamental domain
Mat reduce_matrix(double x, double y) {
    Mat g{1, 0, 0, 1};
    for (int it = 0; it < 10000; ++it) {
        double n = std::floor(x + 0.5);
        x -= n;
        i64 k = static_cast<i64>(n);
        g = {g.a - k * g.c, g.b - k * g.d, g.c, g.d};
        double r = x * x + y * y;
        if (r >= 1.0 - 1e-12) return g;
        x = -x / r;
        y = y / r;
        g = {-g.c, -g.d, g.a, g.b};
    }
    throw std::runtime_error("reduce_matrix: no convergence");
}

ComplexBall mobius(const Mat& g, const ComplexBall& z) {
    ComplexBall num = z * g.a + g.b;
    if (g.c == 0) {
        if (g.d == 1) return num;
        return num * g.d;  // d = -1
    }
    ComplexBall den = z * g.c + g.d;
    return num / den;
}

}  // namespace

ComplexBall cm_point(i64 D, mpfr_prec_t prec) {
    if (D >= 0) throw DomainError("cm_point: negative discriminant expected");
    i64 B = (-D) % 2;
    auto im = sqrt(BigFloatWithError::exact(-D, prec)) / BigFloatWithError::exact(2L, prec);
    auto re = BigFloatWithError::exact(mpq_class(-B, 2), prec);
    return ComplexBall(re.value(), im.value(), up::add(re.error_bound(), im.error_bound()));
}

ComplexBall eval_j(const ComplexBall& z, mpfr_prec_t prec) {
    if (z.im().sign() <= 0 || z.im() <= z.rad()) throw DomainError("eval_j: Im(z) must be positive");
    Mat g = reduce_matrix(z.re().to_double(), z.im().to_double());
    ComplexBall w = mobius(g, z);
    // q = exp(2πi w)
    BigFloatWithError two_pi = BigFloatWithError::pi(prec) * BigFloatWithError::exact(2L, prec);
    ComplexBall tpi(BigFloat(prec), two_pi.value(), two_pi.error_bound());
    ComplexBall q = exp(w * tpi);
    BigFloat qmag = q.mag_up();
    BigFloat lam_b(up::kBits);
    mpfr_log(lam_b.raw(), qmag.raw(), MPFR_RNDD);
    const double lambda = -lam_b.to_double();
    if (!(lambda > 2 * M_PI * 0.8)) throw PrecisionError("eval_j: reduced point too close to the real axis");
    // effective coefficient bound c(n) < e^{4π√n}; terms decay geometrically
    // once 2π/√n < λ, so the tail after N is at most e^{f(N+1)}/(1 - ρ)
    const double target = -static_cast<double>(prec) * M_LN2 - 20;
    std::size_t N = 1;
    double log_tail = 0;
    for (;; ++N) {
        double n1 = static_cast<double>(N + 1);
        double rho = std::exp(2 * M_PI / std::sqrt(n1) - lambda);
        log_tail = 4 * M_PI * std::sqrt(n1) - lambda * n1 - std::log1p(-rho);
        if (rho < 1 && log_tail < target) break;
        if (N > 200000) throw PrecisionError("eval_j: series too long for the requested precision");
    }
    auto tab = j_table(N + 2);
    ComplexBall s = ComplexBall::exact(tab->c(static_cast<long>(N)), prec);
    for (long n = static_cast<long>(N) - 1; n >= 0; --n) s = s * q + ComplexBall::exact(tab->c(n), prec);
    ComplexBall one = ComplexBall::exact(1, prec);
    ComplexBall j = one / q + s;
    BigFloat tail(up::kBits);
    mpfr_set_d(tail.raw(), log_tail + 1e-9 * std::abs(log_tail), MPFR_RNDU);
    j.inflate(up::exp(tail));
    return j;
}

std::vector<Coset> hecke_cosets(i64 m) {
    std::vector<Coset> out;
    for (i64 a = m; a >= 1; --a) {
        if (m % a) continue;
        i64 d = m / a;
        for (i64 b = 0; b < d; ++b) out.push_back({a, b, d});
    }
    return out;
}

std::vector<Coset> cyclic_cosets(i64 m) {
    if (m < 1) throw std::invalid_argument("cyclic_cosets: m >= 1");
    std::vector<Coset> out;
    for (const auto& c : hecke_cosets(m))
        if (std::gcd(std::gcd(c.a, c.b), c.d) == 1) out.push_back(c);
    return out;
}

u64 psi_index(i64 m) {
    u64 r = static_cast<u64>(m);
    for (auto [p, e] : factor(static_cast<u64>(m))) r = r / p * (p + 1);
    return r;
}

}  // namespace cmisog::modpoly
