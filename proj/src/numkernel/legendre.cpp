#include "cmisog/legendre.hpp"

#include <cmath>
#include <vector>

namespace cmisog {

namespace {

template <class T>
T legendre_rec(unsigned n, const T& x, const T& one) {
    if (n == 0) return one;
    T p0 = one, p1 = x;
    for (unsigned k = 1; k < n; ++k) {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        T p2 = (T(2 * k + 1) * x * p1 - T(k) * p0) / T(k + 1);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

// coefficients of P_n as a rational polynomial, ascending powers
std::vector<ExactRational> legendre_coeffs(unsigned n) {
    std::vector<ExactRational> p0{1}, p1{0, 1};
    if (n == 0) return p0;
    for (unsigned k = 1; k < n; ++k) {
        std::vector<ExactRational> p2(k + 2, ExactRational(0));
        for (std::size_t i = 0; i < p1.size(); ++i) p2[i + 1] += ExactRational(2 * k + 1) * p1[i];
        for (std::size_t i = 0; i < p0.size(); ++i) p2[i] -= ExactRational(k) * p0[i];
        for (auto& c : p2) c /= ExactRational(k + 1);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

}  // namespace

ExactRational legendre_p(unsigned n, const ExactRational& x) {
    return legendre_rec<ExactRational>(n, x, ExactRational(1));
}

BigFloat legendre_p(unsigned n, const BigFloat& x) {
    mpfr_prec_t p = x.prec();
    if (n == 0) return BigFloat(1L, p);
    BigFloat p0(1L, p), p1 = x;
    for (unsigned k = 1; k < n; ++k) {
        BigFloat p2 = (x * p1 * static_cast<long>(2 * k + 1) - p0 * static_cast<long>(k)) /
                      BigFloat(static_cast<long>(k + 1), p);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

BigFloatWithError legendre_p(unsigned n, const BigFloatWithError& x) {
    mpfr_prec_t p = x.precision_bits();
    auto c = [p](long v) { return BigFloatWithError::exact(v, p); };
    if (n == 0) return c(1);
    BigFloatWithError p0 = c(1), p1 = x;
    for (unsigned k = 1; k < n; ++k) {
        BigFloatWithError p2 = (c(2 * k + 1) * x * p1 - c(k) * p0) / c(k + 1);
        p0 = std::move(p1);
        p1 = std::move(p2);
    }
    return p1;
}

ExactRational legendre_p_even(unsigned n, const ExactRational& x2) {
    if (n % 2) throw DomainError("legendre_p_even: odd degree");
    auto coeffs = legendre_coeffs(n);
    ExactRational acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (i % 2) continue;
        acc = acc * x2 + coeffs[i];
    }
    return acc;
}

BigFloatWithError legendre_q(unsigned n, const BigFloatWithError& t) {
    mpfr_prec_t p = t.precision_bits();
    auto one = BigFloatWithError::exact(1L, p);
    BigFloatWithError u = t - one;
    if (t.value() <= BigFloat(1L, p)) throw DomainError("legendre_q: t must exceed 1");
    BigFloatWithError half = BigFloatWithError::exact(mpq_class(1, 2), p);
    BigFloatWithError q0 = half * log((t + one) / u);
    if (n == 0) return q0;
    std::vector<BigFloatWithError> P;
    P.reserve(n + 1);
    for (unsigned k = 0; k <= n; ++k) P.push_back(legendre_p(k, t));
    BigFloatWithError w = BigFloatWithError::exact(0L, p);
    for (unsigned k = 1; k <= n; ++k)
        w = w + P[k - 1] * P[n - k] / BigFloatWithError::exact(static_cast<long>(k), p);
    return P[n] * q0 - w;
}

BigFloatWithError legendre_q(unsigned n, const BigFloat& t, double abs_tol) {
    if (t <= BigFloat(1L, t.prec())) throw DomainError("legendre_q: t must exceed 1");
    long target = static_cast<long>(std::ceil(-std::log2(abs_tol))) + 8;
    mpfr_prec_t p = 2 * std::max(target, 32L);
    for (int tries = 0; tries < 12; ++tries, p *= 2) {
        BigFloat tp(p);
        mpfr_set(tp.raw(), t.raw(), MPFR_RNDN);
        // t is taken as exact at its own precision
        auto q = legendre_q(n, BigFloatWithError(tp));
        if (q.error_double() <= abs_tol) return q;
    }
    throw PrecisionError("legendre_q: precision escalation limit");
}

double legendre_q_fast(unsigned n, double u) {
    if (!(u > 0)) throw DomainError("legendre_q_fast: t must exceed 1");
    double t = 1.0 + u;
    if (u < 0.1) {
        double q0 = 0.5 * std::log1p(2.0 / u);
        if (n == 0) return q0;
        double P[16];
        P[0] = 1;
        P[1] = t;
        for (unsigned k = 1; k < n; ++k) P[k + 1] = ((2 * k + 1) * t * P[k] - k * P[k - 1]) / (k + 1);
        double w = 0;
        for (unsigned k = 1; k <= n; ++k) w += P[k - 1] * P[n - k] / k;
        return P[n] * q0 - w;
    }
    // hypergeometric expansion in 1/t^2
    double pre = 1.0;
    for (unsigned k = 1; k <= n; ++k) pre *= static_cast<double>(k) / (2 * k + 1);
    pre /= std::pow(t, n + 1);
    double z = 1.0 / (t * t);
    double a = (n + 1) / 2.0, b = (n + 2) / 2.0, c = n + 1.5;
    double term = 1, sum = 1;
    for (int j = 0; j < 2000; ++j) {
        term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * z;
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return pre * sum;
}

}  // namespace cmisog
