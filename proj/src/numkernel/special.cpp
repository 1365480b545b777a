#include <cmath>

#include "cmisog/legendre.hpp"

namespace cmisog {

BigFloat tail_integral(unsigned n, const BigFloat& Y, int kappa, mpfr_prec_t prec) {
    if (n == 0 || kappa < 2) throw DomainError("tail_integral: need n >= 1, kappa >= 2");
    if (Y.sign() <= 0) throw DomainError("tail_integral: Y must be positive");
    const int s = kappa - 1;
    BigFloat lam = BigFloat::pi(prec) * static_cast<long>(4 * n);
    BigFloat yp(prec);
    mpfr_set(yp.raw(), Y.raw(), MPFR_RNDN);
    BigFloat x = lam * yp;
    // Γ(s, x) = (s-1)! e^{-x} Σ_{j<s} x^j / j!
    BigFloat term(1L, prec), sum(1L, prec);
    for (int j = 1; j < s; ++j) {
        term = term * x / BigFloat(static_cast<long>(j), prec);
        sum = sum + term;
    }
    BigFloat fact(1L, prec);
    for (int j = 2; j < s; ++j) fact = fact * static_cast<long>(j);
    BigFloat lam_s(1L, prec);
    for (int j = 0; j < s; ++j) lam_s = lam_s * lam;
    return fact * exp(-x) * sum / lam_s;
}

double tail_integral(unsigned n, double Y, int kappa) {
    return tail_integral(n, BigFloat(Y, 64), kappa, 64).to_double();
}

}  // namespace cmisog
