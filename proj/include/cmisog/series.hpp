#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace cmisog {

// Truncated integer power series, index = exponent.
using Series = std::vector<mpz_class>;

Series series_mul(const Series& a, const Series& b, std::size_t n);
// b[0] must be ±1
Series series_div(const Series& a, const Series& b, std::size_t n);
// ∏_{n≥1} (1 - q^{step·n})^alpha to n terms; alpha may be negative
Series euler_product_power(long alpha, unsigned step, std::size_t n);
// σ_k(n) for n < len
std::vector<mpz_class> divisor_sigma(unsigned k, std::size_t len);

}  // namespace cmisog
