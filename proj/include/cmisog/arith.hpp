#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace cmisog {

using i64 = std::int64_t;
using u64 = std::uint64_t;

int kronecker(i64 a, i64 n);

bool is_prime(u64 n);
std::vector<u64> primes_up_to(u64 n);
// trial division; fine for the norms and levels used here
std::vector<std::pair<u64, int>> factor(u64 n);
std::vector<u64> divisors(u64 n);
int moebius(u64 n);
u64 euler_phi(u64 n);
int vp(const mpz_class& z, u64 p);  // p-adic valuation, z != 0
int vp(i64 z, u64 p);
mpz_class ipow(const mpz_class& b, unsigned e);
u64 isqrt(u64 n);
bool is_fundamental_discriminant(i64 d);

}  // namespace cmisog
