#pragma once

#include <optional>
#include <vector>

#include "cmisog/quadfield.hpp"
#include "cmisog/rational.hpp"

namespace cmisog::eisenstein {

using quadfield::DiscriminantPair;
using quadfield::FieldElement;
using quadfield::IdealFactorization;
using quadfield::PrimeOfF;

struct WhittakerQuery {
    int o = 0;      // ord of t√D at the prime
    int delta = 0;  // 0 incoherent, 1 coherent twist
    int r = 0;
    u64 p = 2;  // residue norm
};

int whittaker_value(const WhittakerQuery& q);
ExactRational whittaker_deriv(const WhittakerQuery& q);
bool est_identity_check(int o, u64 p = 2);

u64 coherent_coeff(const FieldElement& x, const PrimeOfF& P, int r, const DiscriminantPair& cfg);
u64 incoherent_coeff(const FieldElement& x, const PrimeOfF& P, const DiscriminantPair& cfg);

// Σ_{r ≤ o/2} coherent = [o odd]·(o+1)/2·ρ(x𝔭^{-o}), checked exactly
bool matching_identity(const FieldElement& x, const PrimeOfF& P, const DiscriminantPair& cfg);

// Trace-m elements with their factorizations, shared across (p, r, k).
class TraceTable {
public:
    TraceTable(i64 m, const DiscriminantPair& cfg);
    i64 m() const { return m_; }
    const DiscriminantPair& cfg() const { return cfg_; }
    struct Row {
        i64 a;
        FieldElement x;
        IdealFactorization f;
    };
    const std::vector<Row>& rows() const { return rows_; }

private:
    i64 m_;
    DiscriminantPair cfg_;
    std::vector<Row> rows_;
};

u64 coherent_coeff(const IdealFactorization& f, const PrimeOfF& P, int r);
u64 incoherent_coeff(const FieldElement& x, const IdealFactorization& f, const PrimeOfF& P);

struct CoefficientRecord {
    i64 m;
    u64 p;
    int r;
    int k;
    ExactRational value;
};

ExactRational ck_coeff(i64 m, u64 p, int r, int k, const DiscriminantPair& cfg);
ExactRational ck_coeff(const TraceTable& T, u64 p, int r, int k);
std::optional<int> r_max(i64 m, u64 p, const DiscriminantPair& cfg);
// all (p, r) with p^{2r+1} ≤ m^2 D/4, for each k given
std::vector<CoefficientRecord> ck_table(const TraceTable& T, const std::vector<int>& ks);

struct BoundAudit {
    i64 m;
    u64 p;
    int r;
    int k;
    ExactRational ck;
    double ratio;
};
BoundAudit bound_audit(i64 m, u64 p, int r, int k, const DiscriminantPair& cfg);

}  // namespace cmisog::eisenstein
