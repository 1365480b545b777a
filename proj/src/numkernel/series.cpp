#include "cmisog/series.hpp"

#include <stdexcept>

namespace cmisog {

Series series_mul(const Series& a, const Series& b, std::size_t n) {
    Series c(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Series series_div(const Series& a, const Series& b, std::size_t n) {
    if (b.empty() || (b[0] != 1 && b[0] != -1)) throw std::invalid_argument("series_div: unit constant term needed");
    Series c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class s = i < a.size() ? a[i] : mpz_class(0);
        for (std::size_t k = 1; k <= i && k < b.size(); ++k)
            if (b[k] != 0) s -= b[k] * c[i - k];
        c[i] = b[0] == 1 ? s : mpz_class(-s);
    }
    return c;
}

Series euler_product_power(long alpha, unsigned step, std::size_t n) {
    if (step == 0) throw std::invalid_argument("euler_product_power: step >= 1");
    // G = ∏(1 - x^k) by Euler's pentagonal theorem, then x -> q^step
    Series g(n, 0);
    for (long k = 0;; ++k) {
        bool any = false;
        for (long s : {k, -k}) {
            if (k == 0 && s < 0) continue;
            long e = s * (3 * s - 1) / 2 * static_cast<long>(step);
            if (e < static_cast<long>(n)) {
                g[e] = (k % 2) ? -1 : 1;
                any = true;
            }
        }
        if (!any) break;
    }
    // F = G^alpha: n f_n = Σ_{k=1}^n ((alpha+1)k - n) g_k f_{n-k}
    std::vector<std::size_t> nz;
    for (std::size_t k = 1; k < n; ++k)
        if (g[k] != 0) nz.push_back(k);
    Series f(n, 0);
    if (n) f[0] = 1;
    for (std::size_t i = 1; i < n; ++i) {
        mpz_class s = 0;
        for (std::size_t k : nz) {
            if (k > i) break;
            s += ((alpha + 1) * static_cast<long>(k) - static_cast<long>(i)) * g[k] * f[i - k];
        }
        mpz_divexact_ui(f[i].get_mpz_t(), s.get_mpz_t(), i);
    }
    return f;
}

std::vector<mpz_class> divisor_sigma(unsigned k, std::size_t len) {
    std::vector<mpz_class> s(len, 0);
    for (std::size_t d = 1; d < len; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
        for (std::size_t m = d; m < len; m += d) s[m] += dk;
    }
    return s;
}

}  // namespace cmisog
