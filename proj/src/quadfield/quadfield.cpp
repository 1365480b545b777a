#include "cmisog/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cmisog::quadfield {

const std::vector<i64>& class_number_one_discriminants() {
    static const std::vector<i64> d{-3, -4, -7, -8, -11, -19, -43, -67, -163};
    return d;
}

mpz_class cm_j_invariant(i64 d) {
    switch (d) {
        case -3: return 0;
        case -4: return 1728;
        case -7: return -3375;
        case -8: return 8000;
        case -11: return -32768;
        case -19: return -884736;
        case -43: return mpz_class("-884736000");
        case -67: return mpz_class("-147197952000");
        case -163: return mpz_class("-262537412640768000");
    }
    throw UnsupportedConfig("no class-number-one j-invariant for D = " + std::to_string(d));
}

int half_unit_count(i64 d) { return d == -3 ? 3 : d == -4 ? 2 : 1; }

DiscriminantPair DiscriminantPair::make(i64 D1, i64 D2) {
    const auto& ok = class_number_one_discriminants();
    for (i64 d : {D1, D2}) {
        if (std::find(ok.begin(), ok.end(), d) == ok.end())
            throw UnsupportedConfig("discriminant " + std::to_string(d) + " not in the class-number-one list");
        if (!is_fundamental_discriminant(d)) throw UnsupportedConfig("not fundamental: " + std::to_string(d));
    }
    if (std::gcd(D1, D2) != 1) throw UnsupportedConfig("discriminants must be coprime");
    DiscriminantPair c;
    c.D1 = D1;
    c.D2 = D2;
    c.D = D1 * D2;
    c.w1 = half_unit_count(D1);
    c.w2 = half_unit_count(D2);
    c.j1 = cm_j_invariant(D1);
    c.j2 = cm_j_invariant(D2);
    return c;
}

FieldElement::FieldElement(i64 a_, i64 b_, i64 D) : a(a_), b(b_) {
    if (((a - b * D) % 2 + 2) % 2 != 0) throw std::invalid_argument("FieldElement: a must be congruent to bD mod 2");
}

__int128 FieldElement::norm(i64 D) const {
    __int128 n = static_cast<__int128>(a) * a - static_cast<__int128>(b) * b * D;
    return n / 4;
}

PrimeOfF PrimeOfF::conjugate() const {
    PrimeOfF q = *this;
    if (kind == Splitting::split) q.root = (p == 2) ? 4 - root : p - root;
    return q;
}

mpz_class IdealFactorization::norm() const {
    mpz_class n = 1;
    for (const auto& [P, e] : factors) n *= ipow(mpz_class(static_cast<unsigned long>(P.residue_norm())), e);
    return n;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 mod_of(i64 a, u64 p) {
    i64 r = a % static_cast<i64>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

}  // namespace

u64 sqrt_mod_prime(i64 D, u64 p) {
    u64 n = mod_of(D, p);
    if (n == 0 || p == 2) return n;
    if (powmod(n, (p - 1) / 2, p) != 1) throw std::domain_error("not a square mod p");
    // Tonelli–Shanks
    u64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

mpz_class hensel_sqrt(i64 D, u64 p, u64 root, int k) {
    mpz_class Dz = static_cast<long>(D);
    if (p == 2) {
        // D ≡ 1 mod 8; fix x mod 2^{j-1} from x^2 ≡ D mod 2^j
        mpz_class x = static_cast<unsigned long>(root);
        for (int j = 3; j <= k + 1; ++j) {
            mpz_class mod = ipow(2, j + 1);
            mpz_class r = x * x - Dz;
            if (mpz_divisible_p(r.get_mpz_t(), mod.get_mpz_t()) == 0) x += ipow(2, j - 1);
        }
        return x;
    }
    mpz_class pz = static_cast<unsigned long>(p);
    mpz_class x = static_cast<unsigned long>(root), mod = pz;
    while (mod < ipow(pz, k)) {
        mod *= mod;
        mpz_class inv, two_x = 2 * x;
        mpz_invert(inv.get_mpz_t(), two_x.get_mpz_t(), mod.get_mpz_t());
        x = x - (x * x - Dz) * inv;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    }
    mpz_class pk = ipow(pz, k);
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pk.get_mpz_t());
    return x;
}

std::vector<PrimeOfF> prime_profile(u64 p, const DiscriminantPair& cfg) {
    if (!is_prime(p)) throw std::invalid_argument("prime_profile: p must be prime");
    int chi = kronecker(cfg.D, static_cast<i64>(p));
    std::vector<PrimeOfF> out;
    if (chi == 1) {
        bool inert = kronecker(cfg.D1, static_cast<i64>(p)) == -1;
        u64 r1, r2;
        if (p == 2) {
            r1 = 1;
            r2 = 3;
        } else {
            u64 r = sqrt_mod_prime(cfg.D, p);
            r1 = std::min(r, p - r);
            r2 = p - r1;
        }
        for (u64 r : {r1, r2}) out.push_back(PrimeOfF{p, Splitting::split, r, inert, false});
    } else if (chi == -1) {
        out.push_back(PrimeOfF{p, Splitting::inert, 0, false, false});
    } else {
        bool inert;
        if (cfg.D1 % static_cast<i64>(p) == 0)
            inert = kronecker(cfg.D2, static_cast<i64>(p)) == -1;
        else
            inert = kronecker(cfg.D1, static_cast<i64>(p)) == -1;
        out.push_back(PrimeOfF{p, Splitting::ramified, 0, inert, false});
    }
    return out;
}

int valuation(const FieldElement& x, const PrimeOfF& P, const DiscriminantPair& cfg) {
    if (x.is_zero()) throw ZeroElementError("valuation of zero");
    __int128 n = x.norm(cfg.D);
    if (n < 0) n = -n;
    int e = 0;
    while (n % P.p == 0) {
        n /= P.p;
        ++e;
    }
    if (P.kind == Splitting::inert) return e / 2;
    if (P.kind == Splitting::ramified || e == 0) return e;
    // split: value a + b·√D in Z_p through the chosen root
    int k = P.p == 2 ? e + 2 : e + 1;
    mpz_class root = hensel_sqrt(cfg.D, P.p, P.root, k);
    mpz_class mod = ipow(mpz_class(static_cast<unsigned long>(P.p)), k);
    mpz_class y = mpz_class(static_cast<long>(x.a)) + mpz_class(static_cast<long>(x.b)) * root;
    mpz_mod(y.get_mpz_t(), y.get_mpz_t(), mod.get_mpz_t());
    int v = (y == 0) ? k : vp(y, P.p);
    if (P.p == 2) v -= 1;
    return std::min(v, e);
}

IdealFactorization factor_element(const FieldElement& x, const DiscriminantPair& cfg) {
    if (x.is_zero()) throw ZeroElementError("factor_element of zero");
    __int128 n = x.norm(cfg.D);
    if (n < 0) n = -n;
    IdealFactorization I;
    if (n == 1) return I;
    for (auto [p, e] : factor(static_cast<u64>(n))) {
        for (const auto& P : prime_profile(p, cfg)) {
            int v = valuation(x, P, cfg);
            if (v > 0) I.factors[P] = v;
        }
    }
    return I;
}

u64 rho_kf(const IdealFactorization& I) {
    u64 r = 1;
    for (const auto& [P, e] : I.factors) {
        if (P.ramified_in_K) throw ConfigViolation("prime ramified in K/F");
        if (e < 0) throw std::invalid_argument("rho_kf: ideal not integral");
        if (P.inert_in_K) {
            if (e % 2) return 0;
        } else {
            r *= static_cast<u64>(e) + 1;
        }
    }
    return r;
}

std::vector<TraceElement> enumerate_trace_m(i64 m, const DiscriminantPair& cfg) {
    std::vector<TraceElement> out;
    if (m <= 0) return out;
    __int128 bound = static_cast<__int128>(m) * m * cfg.D;  // a^2 < m^2 D
    i64 amax = static_cast<i64>(std::sqrt(static_cast<long double>(bound))) + 1;
    for (i64 a = -amax; a <= amax; ++a) {
        if (static_cast<__int128>(a) * a >= bound) continue;
        if (((a - m * cfg.D) % 2 + 2) % 2) continue;
        out.push_back({a, FieldElement(a, m, cfg.D)});
    }
    return out;
}

std::set<PrimeOfF> diff_set(const FieldElement& x, const DiscriminantPair& cfg) {
    std::set<PrimeOfF> out;
    for (const auto& [P, e] : factor_element(x, cfg).factors)
        if (P.inert_in_K && e % 2) out.insert(P);
    return out;
}

}  // namespace cmisog::quadfield
