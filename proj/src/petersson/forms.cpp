#include <cmath>
#include <complex>

#include "cmisog/bigfloat.hpp"
#include "cmisog/legendre.hpp"
#include "cmisog/petersson.hpp"
#include "cmisog/series.hpp"

namespace cmisog::petersson {

const mpz_class& FormData::a(u64 n) const {
    if (n < 1 || n > coeffs.size())
        throw InsufficientCoefficients("coefficient a(" + std::to_string(n) + ") not available");
    return coeffs[n - 1];
}

FormData FormData::scaled(long c) const {
    FormData g = *this;
    for (auto& x : g.coeffs) x *= c;
    g.scale *= c;
    return g;
}

std::vector<mpz_class> eta_product_coefficients(const std::vector<EtaFactor>& eta, std::size_t n) {
    long order24 = 0;
    for (auto [d, r] : eta) {
        if (d < 1) throw std::invalid_argument("eta: δ >= 1");
        order24 += static_cast<long>(d) * r;
    }
    if (order24 <= 0 || order24 % 24) throw std::invalid_argument("eta: order at ∞ must be a positive integer");
    const std::size_t e = static_cast<std::size_t>(order24 / 24);
    Series prod(n + 1, 0);
    prod[0] = 1;
    for (auto [d, r] : eta) prod = series_mul(prod, euler_product_power(r, static_cast<unsigned>(d), n + 1), n + 1);
    std::vector<mpz_class> a(n, 0);
    for (std::size_t k = 1; k <= n; ++k)
        if (k >= e) a[k - 1] = prod[k - e];
    return a;
}

namespace {

FormData eta_form(u64 N, int kappa, std::vector<EtaFactor> eta, std::size_t n) {
    FormData f;
    f.N = N;
    f.kappa = kappa;
    f.coeffs = eta_product_coefficients(eta, n);
    f.eta = std::move(eta);
    return f;
}

// log(Im(w)^{1/4} |η(w)|), an SL2(Z)-invariant
double log_h(double x, double y) {
    for (int it = 0; it < 100000; ++it) {
        x -= std::round(x);
        double r2 = x * x + y * y;
        if (r2 >= 1) break;
        x = -x / r2;
        y = y / r2;
    }
    // η = q^{1/24} Σ_k (-1)^k q^{k(3k-1)/2}, k ∈ Z
    const std::complex<double> q = std::exp(std::complex<double>(-2 * M_PI * y, 2 * M_PI * x));
    std::complex<double> s = 1;
    for (int k = 1; k < 20; ++k) {
        std::complex<double> t1 = std::pow(q, k * (3 * k - 1) / 2), t2 = std::pow(q, k * (3 * k + 1) / 2);
        double sg = (k % 2) ? -1.0 : 1.0;
        s += sg * (t1 + t2);
        if (std::abs(t1) < 1e-18) break;
    }
    return 0.25 * std::log(y) - M_PI * y / 12 + std::log(std::abs(s));
}

}  // namespace

FormData delta_form(std::size_t n) { return eta_form(1, 12, {{1, 24}}, n); }
FormData level11_form(std::size_t n) { return eta_form(11, 2, {{1, 2}, {11, 2}}, n); }
FormData level4_form(std::size_t n) { return eta_form(4, 6, {{2, 12}}, n); }

FormData zero_form(u64 N, int kappa, std::size_t n) {
    FormData f;
    f.N = N;
    f.kappa = kappa;
    f.coeffs.assign(n, 0);
    f.scale = 0;
    return f;
}

double density(const FormData& f, double x, double y) {
    if (!(y > 0)) throw DomainError("density: y > 0");
    if (f.scale == 0) return 0;
    if (f.eta) {
        // y^κ |f|^2 = scale^2 ∏ δ^{-r/2} H(δz)^{2r}, H = Im^{1/4}|η|
        double lg = 2 * std::log(std::abs(static_cast<double>(f.scale)));
        for (auto [d, r] : *f.eta) lg += r * (-0.5 * std::log(static_cast<double>(d)) + 2 * log_h(d * x, d * y));
        return std::exp(lg);
    }
    // plain q-expansion; only trusted well inside the upper half plane
    if (y < 0.5) throw DomainError("density: q-expansion path needs y >= 1/2");
    const double aq = std::exp(-2 * M_PI * y);
    if (aq < 1e-250) return 0;
    const std::complex<double> q = std::exp(std::complex<double>(-2 * M_PI * y, 2 * M_PI * x));
    std::complex<double> s = 0, qn = 1;
    double amax = 0;
    for (u64 n = 1; n <= f.length(); ++n) {
        qn *= q;
        double an = f.coeffs[n - 1].get_d();
        s += an * qn;
        amax = std::max(amax, std::abs(an));
        if (n > 5 && (amax + 1) * std::pow(aq, static_cast<double>(n)) * std::pow(n + 1.0, f.kappa) <= 1e-18 * std::abs(s))
            return std::pow(y, f.kappa) * std::norm(s);
    }
    throw InsufficientCoefficients("density: q-expansion did not converge");
}

ExactRational s_f(double X, const FormData& f) {
    ExactRational s(0L);
    if (X < 1) return s;
    u64 top = static_cast<u64>(std::floor(X));
    if (top > f.length()) throw InsufficientCoefficients("s_f: X beyond the coefficient table");
    for (u64 n = 1; n <= top; ++n) {
        const mpz_class& a = f.coeffs[n - 1];
        if (a == 0) continue;
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), n, static_cast<unsigned long>(f.kappa - 1));
        s = s + ExactRational(mpq_class(a * a, den));
    }
    return s;
}

TailSum i_f(double Y, const FormData& f, double rel_target) {
    if (!(Y > 0)) throw DomainError("i_f: Y > 0");
    TailSum r;
    bool zero = true;
    for (const auto& c : f.coeffs) zero = zero && c == 0;
    if (zero) return r;
    // majorant per term from |a(n)| <= d(n) n^{(κ-1)/2} <= 2 n^{κ/2}
    auto majorant = [&](u64 n) { return 4 * std::pow(static_cast<double>(n), f.kappa) * tail_integral(n, Y, f.kappa); };
    for (u64 n = 1;; ++n) {
        double bn = majorant(n);
        if (n > 1 && bn <= rel_target * r.value) {
            double ratio = std::min(majorant(n + 1) / bn, 0.999);
            r.tail = bn / (1 - ratio);
            break;
        }
        if (n > f.length()) throw InsufficientCoefficients("i_f: coefficient table too short for this Y");
        double a = f.coeffs[n - 1].get_d();
        if (a != 0) r.value += a * a * tail_integral(n, Y, f.kappa);
        r.terms = n;
    }
    return r;
}

DeligneAudit deligne_audit(const FormData& f, u64 n_max, double norm) {
    if (n_max > f.length()) throw InsufficientCoefficients("deligne_audit: n_max beyond the table");
    std::vector<u64> dn(n_max + 1, 0);
    for (u64 d = 1; d <= n_max; ++d)
        for (u64 k = d; k <= n_max; k += d) ++dn[k];
    DeligneAudit r;
    r.n_max = n_max;
    for (u64 n = 1; n <= n_max; ++n) {
        double a = std::abs(f.coeffs[n - 1].get_d());
        double sc = std::pow(static_cast<double>(n), (f.kappa - 1) / 2.0);
        double ratio = a / (static_cast<double>(dn[n]) * sc);
        if (ratio > r.max_ratio) r.max_ratio = ratio, r.argmax = n;
        if (norm > 0) r.effective_constant = std::max(r.effective_constant, a / (sc * std::sqrt(norm)));
    }
    return r;
}

}  // namespace cmisog::petersson
