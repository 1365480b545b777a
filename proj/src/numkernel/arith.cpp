#include "cmisog/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmisog {

int kronecker(i64 a, i64 b) {
    static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (b & 1) == 0) return 0;
    int v = 0;
    while ((b & 1) == 0) {
        b >>= 1;
        ++v;
    }
    int k = (v & 1) ? tab2[a & 7] : 1;
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    for (;;) {
        if (a == 0) return b == 1 ? k : 0;
        v = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++v;
        }
        if (v & 1) k *= tab2[b & 7];
        if (a & b & 2) k = -k;
        i64 r = a < 0 ? -a : a;
        a = b % r;
        b = r;
    }
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        if (n % p == 0) return n == p;
    }
    for (u64 d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> comp(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

std::vector<std::pair<u64, int>> factor(u64 n) {
    if (n == 0) throw std::domain_error("factor(0)");
    std::vector<std::pair<u64, int>> f;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> d{1};
    for (auto [p, e] : factor(n)) {
        std::size_t s = d.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < s; ++j) d.push_back(d[j] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

int moebius(u64 n) {
    int mu = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

u64 euler_phi(u64 n) {
    u64 r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

int vp(const mpz_class& z, u64 p) {
    if (z == 0) throw std::domain_error("valuation of zero");
    mpz_class t = abs(z);
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

int vp(i64 z, u64 p) {
    if (z == 0) throw std::domain_error("valuation of zero");
    u64 t = z < 0 ? static_cast<u64>(-z) : static_cast<u64>(z);
    int v = 0;
    while (t % p == 0) {
        t /= p;
        ++v;
    }
    return v;
}

mpz_class ipow(const mpz_class& b, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    auto squarefree = [](u64 n) {
        for (auto [p, e] : factor(n))
            if (e > 1) return false;
        return true;
    };
    u64 a = d < 0 ? static_cast<u64>(-d) : static_cast<u64>(d);
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree(a);
    if (r != 0) return false;
    i64 q = d / 4;
    i64 q4 = ((q % 4) + 4) % 4;
    return (q4 == 2 || q4 == 3) && squarefree(a / 4);
}

}  // namespace cmisog
