#include <cmath>
#include <numeric>
#include <random>

#include "cmisog/bigfloat.hpp"
#include "cmisog/petersson.hpp"

namespace cmisog::petersson {

std::vector<CuspClass> cusps(u64 N) {
    if (N < 1) throw std::invalid_argument("cusps: N >= 1");
    std::vector<CuspClass> out;
    for (u64 v : divisors(N)) {
        u64 g = std::gcd(v, N / v);
        u64 width = N / std::gcd(N, v * v);
        for (u64 u0 = 0; u0 < g; ++u0) {
            if (std::gcd(u0, g) != 1) continue;
            // lift u0 mod g to some u coprime to v
            u64 u = u0;
            while (std::gcd(u, v) != 1) u += g;
            out.push_back({static_cast<i64>(u), v, width});
        }
    }
    return out;
}

u64 cusp_count(u64 N) {
    u64 s = 0;
    for (u64 v : divisors(N)) s += euler_phi(std::gcd(v, N / v));
    return s;
}

u64 index_gamma0(u64 N) {
    if (N < 1) throw std::invalid_argument("index_gamma0: N >= 1");
    u64 r = N;
    for (auto [p, e] : factor(N)) r = r / p * (p + 1);
    return r;
}

PsiVol psi_vol(u64 N) {
    PsiVol r{0, N * index_gamma0(N)};
    for (u64 v : divisors(N)) r.divisor_sum += N * (v * v / std::gcd(v * v, N)) * euler_phi(std::gcd(v, N / v));
    if (r.divisor_sum != r.product)
        throw MismatchError("psi_vol(" + std::to_string(N) + "): " + std::to_string(r.divisor_sum) +
                            " != " + std::to_string(r.product));
    return r;
}

double cusp_tail_bound(u64 N, double Y) {
    u64 s = 0;
    for (u64 v : divisors(N))
        if (v != N) s += N * (v * v / std::gcd(v * v, N)) * euler_phi(std::gcd(v, N / v));
    return 2 * Y * static_cast<double>(s);
}

namespace {

// Ford domain of Γ0(N): |x| <= 1/2 and |cz + d| >= 1 for every primitive (c, d)
// with N | c, c > 0.
bool in_ford_domain(u64 N, double x, double y) {
    if (std::abs(x) > 0.5) return false;
    const i64 n = static_cast<i64>(N);
    for (i64 c = n; static_cast<double>(c) * y < 1; c += n) {
        double cx = static_cast<double>(c) * x;
        i64 d0 = static_cast<i64>(std::llround(-cx));
        for (i64 d = d0 - 1; d <= d0 + 1; ++d) {
            double re = cx + static_cast<double>(d), im = static_cast<double>(c) * y;
            if (re * re + im * im < 1 && std::gcd(c, d) == 1) return false;
        }
    }
    return true;
}

}  // namespace

TailVolume cusp_tail_volume(u64 N, double Y, u64 samples, u64 seed) {
    if (!(Y > 0 && Y < 1)) throw std::invalid_argument("cusp_tail_volume: 0 < Y < 1");
    TailVolume r;
    r.bound = cusp_tail_bound(N, Y);
    r.samples = samples;
    // In s = 1/y the measure dx dy / y^2 becomes dx ds. Draw s = 1/(Y u), u
    // uniform, so s has density 1/(Y s^2) on [1/Y, ∞) and each hit has weight
    // Y s^2. Heights below 1e-4 Y are cut off.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uu(0.0, 1.0);
    double sum = 0, comp = 0, sum2 = 0;
    for (u64 i = 0; i < samples; ++i) {
        double x = ux(rng), u = 1.0 - uu(rng);  // u in (0, 1]
        if (u < 1e-4) continue;
        double s = 1 / (Y * u);
        if (!in_ford_domain(N, x, 1 / s)) continue;
        double w = Y * s * s;
        double t = sum + w;
        comp += std::abs(sum) >= w ? (sum - t) + w : (w - t) + sum;
        sum = t;
        sum2 += w * w;
    }
    double mean = (sum + comp) / static_cast<double>(samples);
    double var = sum2 / static_cast<double>(samples) - mean * mean;
    r.monte_carlo = mean;
    r.stderr_mc = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    return r;
}

double dim_bound(u64 N, int kappa) {
    if (N < 3) throw DomainError("dim_bound: N >= 3");
    if (kappa < 2) throw DomainError("dim_bound: weight >= 2");
    return kappa * static_cast<double>(N) * std::log(std::log(static_cast<double>(N)));
}

}  // namespace cmisog::petersson
