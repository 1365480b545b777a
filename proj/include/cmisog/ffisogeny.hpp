#pragma once

#include <stdexcept>
#include <vector>

#include "cmisog/modpoly.hpp"

namespace cmisog::ffisogeny {

using quadfield::DiscriminantPair;

struct BadPrimeError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SupersingularConfig {
    u64 p = 0;
    u64 j1_mod = 0, j2_mod = 0;
    bool supersingular = false;
};

SupersingularConfig supersingular_config(u64 p, const DiscriminantPair& cfg);
bool is_good_prime(u64 p, const DiscriminantPair& cfg);  // p ∤ 6 D1 D2

// ⌊p^{2/3}/2 + 1/4⌋, exactly: the largest b with (4b - 1)^3 <= 8 p^2
u64 elkies_bound(u64 p);

struct DegreeRecord {
    u64 p = 0;
    u64 j1_mod = 0, j2_mod = 0;
    u64 m_min = 0;  // 0: nothing found up to the search limit
    u64 elkies_bound = 0;
};

// Searches m = 1, 2, ... (from 2 when j1 ≡ j2 mod p) for p | φ_m(j1, j2).
// limit 0 means the Elkies bound; NotFoundError if the range is exhausted.
DegreeRecord min_isogeny_degree(u64 p, const DiscriminantPair& cfg, u64 limit = 0);

struct ElkiesAudit {
    std::vector<DegreeRecord> rows;
    bool all_pass = true;
    double max_exponent = 0;  // max log m_min / log p
    std::vector<u64> failures;
};
// Every good supersingular p <= p_max. A prime with no isogeny up to the bound
// is a failure; its row then carries the degree found by searching on to p - 1.
ElkiesAudit elkies_audit(u64 p_max, const DiscriminantPair& cfg);

struct DichotomyCounts {
    u64 count1 = 0;  // #{good supersingular p <= x : 0 < m_min(p) <= p^{2/3 - δ}}
    u64 count2 = 0;  // #{m <= x : #π(m) >= C m^{1 - η}}
};
DichotomyCounts dichotomy_counts(double x, double delta, double eta, double C, const DiscriminantPair& cfg);

}  // namespace cmisog::ffisogeny
