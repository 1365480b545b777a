#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "cmisog/arith.hpp"

namespace cmisog::quadfield {

struct UnsupportedConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ZeroElementError : std::domain_error {
    using std::domain_error::domain_error;
};
struct ConfigViolation : std::logic_error {
    using std::logic_error::logic_error;
};

const std::vector<i64>& class_number_one_discriminants();
mpz_class cm_j_invariant(i64 d);  // table lookup, class number one only
int half_unit_count(i64 d);

struct DiscriminantPair {
    i64 D1 = 0, D2 = 0, D = 0;
    int w1 = 0, w2 = 0;
    mpz_class j1, j2;

    static DiscriminantPair make(i64 D1, i64 D2);
    DiscriminantPair swapped() const { return make(D2, D1); }
};

// (a + b√D)/2 with a ≡ bD mod 2
struct FieldElement {
    i64 a = 0, b = 0;
    FieldElement() = default;
    FieldElement(i64 a_, i64 b_, i64 D);
    bool is_zero() const { return a == 0 && b == 0; }
    __int128 norm(i64 D) const;  // (a^2 - b^2 D)/4
    FieldElement conjugate(i64 D) const { return FieldElement(a, -b, D); }
    auto operator<=>(const FieldElement&) const = default;
};

enum class Splitting { split, inert, ramified };

struct PrimeOfF {
    u64 p = 0;
    Splitting kind = Splitting::inert;
    // split only: √D mod p (odd p) with the first-labelled prime below p/2,
    // or √D mod 4 ∈ {1, 3} for p = 2
    u64 root = 0;
    bool inert_in_K = false;
    bool ramified_in_K = false;  // never set for valid configurations

    u64 residue_norm() const { return kind == Splitting::inert ? p * p : p; }
    PrimeOfF conjugate() const;
    auto operator<=>(const PrimeOfF& o) const {
        if (auto c = p <=> o.p; c != 0) return c;
        return root <=> o.root;
    }
    bool operator==(const PrimeOfF& o) const { return p == o.p && root == o.root; }
};

struct IdealFactorization {
    std::map<PrimeOfF, int> factors;
    mpz_class norm() const;
};

struct TraceElement {
    i64 a;
    FieldElement tsqrtD;  // (a + m√D)/2
};

std::vector<PrimeOfF> prime_profile(u64 p, const DiscriminantPair& cfg);
int valuation(const FieldElement& x, const PrimeOfF& P, const DiscriminantPair& cfg);
IdealFactorization factor_element(const FieldElement& x, const DiscriminantPair& cfg);
u64 rho_kf(const IdealFactorization& I);
std::vector<TraceElement> enumerate_trace_m(i64 m, const DiscriminantPair& cfg);
std::set<PrimeOfF> diff_set(const FieldElement& x, const DiscriminantPair& cfg);

// square root of D modulo p^k (p odd: the lift of the given residue; p = 2:
// the lift congruent to the given residue mod 4)
mpz_class hensel_sqrt(i64 D, u64 p, u64 root, int k);
u64 sqrt_mod_prime(i64 D, u64 p);

}  // namespace cmisog::quadfield
