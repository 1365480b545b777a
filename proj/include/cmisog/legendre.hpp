#pragma once

#include "cmisog/bigfloat.hpp"
#include "cmisog/rational.hpp"

namespace cmisog {

ExactRational legendre_p(unsigned n, const ExactRational& x);
BigFloat legendre_p(unsigned n, const BigFloat& x);
BigFloatWithError legendre_p(unsigned n, const BigFloatWithError& x);
// P_n(x) for even n, given x^2 (exact even when x itself is irrational)
ExactRational legendre_p_even(unsigned n, const ExactRational& x_squared);

// Q_n(t) = P_n(t) Q_0(t) - W_{n-1}(t), propagated through ball arithmetic.
BigFloatWithError legendre_q(unsigned n, const BigFloatWithError& t);
// Escalates precision until the error bound is below abs_tol.
BigFloatWithError legendre_q(unsigned n, const BigFloat& t, double abs_tol);

// Double-precision evaluator for the orbit sums. u = t - 1 > 0 is passed
// directly so that points near the diagonal keep their relative accuracy.
double legendre_q_fast(unsigned n, double u);

// ∫_Y^∞ e^{-4πny} y^{κ-2} dy = Γ(κ-1, 4πnY) / (4πn)^{κ-1}
BigFloat tail_integral(unsigned n, const BigFloat& Y, int kappa, mpfr_prec_t prec = 128);
double tail_integral(unsigned n, double Y, int kappa);

}  // namespace cmisog
