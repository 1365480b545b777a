#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cmisog/bigfloat.hpp"
#include "cmisog/modpoly.hpp"
#include "cmisog/quadfield.hpp"

namespace cmisog::green {

using quadfield::DiscriminantPair;

struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};
struct OrbitCollisionError : std::domain_error {
    using std::domain_error::domain_error;
};

// z = (-B + √D)/(2A), A fixed to 1
struct CMPoint {
    i64 A = 1, B = 0, D = -4;
    static CMPoint of(i64 D);  // B ≡ D mod 2, B ∈ {0, 1}
    double x() const;
    double y() const;
    ComplexBall ball(mpfr_prec_t prec) const;
};

struct Mat2 {
    i64 a, b, c, d;
    bool operator==(const Mat2&) const = default;
};

struct DPoint {
    double x, y;
};

// Visits every M with det M = m, modulo ±1 (c > 0, or c = 0 and d > 0), whose
// cosh-distance t = cosh d(z1, M z2) satisfies t <= T (a few points slightly
// beyond T may also be visited). f receives M and u = t - 1.
void for_each_orbit_point(i64 m, DPoint z1, DPoint z2, double T, const std::function<void(const Mat2&, double)>& f);

std::vector<Mat2> hecke_orbit(i64 m, DPoint z1, DPoint z2, double R);

// -2 Q_{s-1}(1 + |z1 - z2|^2 / (2 y1 y2)), certified
BigFloatWithError green_kernel(const ComplexBall& z1, const ComplexBall& z2, int s);

struct GreenRequest {
    int k = 3;
    i64 m = 1;
    double tol = 1e-9;
    double radius = 0;  // hyperbolic truncation radius; 0 picks it from tol
};

struct GreenResult {
    double value = 0;
    double error = 0;  // tail bound + rounding bound
    double tail = 0;
    double radius = 0;
    double cosh_radius = 0;
    double packing = 0;  // A in N(t) <= A t
    std::size_t terms = 0;
};

// Constant A with #{M in Γ_m/±1 : cosh d(z1, M z2) <= t} <= A t for all t >= 1.
double packing_constant(i64 m, DPoint z2);
// Upper bound for Σ_{t_M > T} 2 Q_n(t_M).
double tail_bound(int n, double A, double T);

GreenResult green_value(const GreenRequest& req, const CMPoint& z1, const CMPoint& z2);

// κ from the exact k = 1 identity at m = 1; every prime must give the same value.
ExactRational kappa_calibrate(const DiscriminantPair& cfg);

struct GkzReport {
    int k = 0;
    i64 m = 0;
    i64 D1 = 0, D2 = 0;
    double lhs = 0, rhs = 0, rel_err = 0;
    double kappa_norm = 0;      // frozen, from kappa_calibrate
    double kappa_measured = 0;  // lhs / (-w1 w2 Σ log p Σ c_k)
    double kappa_error = 0;     // relative uncertainty of kappa_measured
    double radius = 0;
    std::size_t terms = 0;
    double green_error = 0;
    bool pass = false;
};

// k = 1 goes through exact valuations; odd k >= 3 sums the orbit numerically
// with absolute tolerance rel_tol * |G|.
GkzReport gkz_verify(int k, i64 m, const DiscriminantPair& cfg, double tol = 1e-6, double rel_tol = 1e-10);

}  // namespace cmisog::green
