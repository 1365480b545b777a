#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmisog/arith.hpp"
#include "cmisog/rational.hpp"

namespace cmisog::petersson {

struct MismatchError : std::logic_error {
    using std::logic_error::logic_error;
};
struct InsufficientCoefficients : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CuspClass {
    i64 u;
    u64 v;
    u64 width;
};

std::vector<CuspClass> cusps(u64 N);
u64 cusp_count(u64 N);  // Σ_{v|N} φ(gcd(v, N/v))
u64 index_gamma0(u64 N);

struct PsiVol {
    u64 divisor_sum;
    u64 product;
};
// throws MismatchError if the two formulas disagree
PsiVol psi_vol(u64 N);

struct EtaFactor {
    int delta;
    int r;
};

struct FormData {
    u64 N = 1;
    int kappa = 12;
    std::vector<mpz_class> coeffs;  // coeffs[n-1] = a(n)
    // f = scale · ∏ η(δz)^r when present; lets f be evaluated away from ∞
    std::optional<std::vector<EtaFactor>> eta;
    long scale = 1;

    const mpz_class& a(u64 n) const;
    u64 length() const { return coeffs.size(); }
    FormData scaled(long c) const;
};

// Corpus, coefficients expanded from the η-products.
FormData delta_form(std::size_t n_coeffs = 2000);   // η(z)^24, N = 1, κ = 12
FormData level11_form(std::size_t n_coeffs = 2000); // η(z)^2 η(11z)^2, N = 11, κ = 2
FormData level4_form(std::size_t n_coeffs = 2000);  // η(2z)^12, N = 4, κ = 6
FormData zero_form(u64 N, int kappa, std::size_t n_coeffs = 10);
// product expansion; also the test for a well-formed signature
std::vector<mpz_class> eta_product_coefficients(const std::vector<EtaFactor>& eta, std::size_t n);

// y^κ |f(x + iy)|^2
double density(const FormData& f, double x, double y);

ExactRational s_f(double X, const FormData& f);

struct TailSum {
    double value = 0;
    double tail = 0;  // estimate of the discarded part
    u64 terms = 0;
};
TailSum i_f(double Y, const FormData& f, double rel_target = 1e-18);

struct NormResult {
    double value = 0;  // (1/index) ∫_{F_N} |f|^2 y^κ dμ
    double error = 0;  // quadrature estimate
    std::size_t evaluations = 0;
};
struct QuadOptions {
    double tol = 1e-10;
    unsigned max_depth = 15;
    bool fine = false;  // 61-point rule instead of 31
};
NormResult petersson_numeric(const FormData& f, const QuadOptions& opt = {});

struct SupResult {
    double value = 0;  // lower estimate of sup y^{κ/2}|f|
    double x = 0, y = 0;
    double grid_spacing = 0;
};
SupResult sup_norm_numeric(const FormData& f, unsigned grid = 120);

struct TailVolume {
    double bound = 0;
    double monte_carlo = 0;
    double stderr_mc = 0;
    u64 samples = 0;
};
double cusp_tail_bound(u64 N, double Y);  // 2Y Σ_{v|N, v≠N} (N v²/(v²,N)) φ((v,N/v))
TailVolume cusp_tail_volume(u64 N, double Y, u64 samples = 1000000, u64 seed = 12345);

struct AuditReport {
    u64 N = 0;
    int kappa = 0;
    double Y = 0;
    double norm = 0, norm_error = 0;
    double supnorm = 0;
    double I_f = 0;
    double volume_bound = 0, volume_mc = 0;
    double rhs = 0;
    bool inequality_ok = false;
    // same chain with the Monte-Carlo volume (+3σ) in place of the bound
    double rhs_mc = 0;
    bool inequality_ok_mc = false;
    double effective_c1 = 0;     // ‖f‖² · index / S_f(N^{2.1})
    u64 smallest_truncation = 0; // least X with ‖f‖² · index ≤ S_f(X)
};
AuditReport theorem_audit(const FormData& f, double Y);

double dim_bound(u64 N, int kappa);

struct DeligneAudit {
    u64 n_max = 0;
    double max_ratio = 0;  // max |a(n)| / (d(n) n^{(κ-1)/2})
    u64 argmax = 0;
    double effective_constant = 0;  // max |a(n)| / (n^{(κ-1)/2} ‖f‖)
};
DeligneAudit deligne_audit(const FormData& f, u64 n_max, double norm_sq);

}  // namespace cmisog::petersson
