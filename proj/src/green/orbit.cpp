#include <cmath>
#include <complex>
#include <numeric>

#include "cmisog/green.hpp"

namespace cmisog::green {

namespace {

// s*x + t*y = g = gcd(x, y) >= 0
i64 egcd(i64 x, i64 y, i64& s, i64& t) {
    i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (y != 0) {
        i64 q = x / y;
        i64 r = x - q * y;
        x = y, y = r;
        i64 s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = s1, s1 = s2, t0 = t1, t1 = t2;
    }
    if (x < 0) x = -x, s0 = -s0, t0 = -t0;
    s = s0, t = t0;
    return x;
}

using cd = std::complex<double>;

}  // namespace

void for_each_orbit_point(i64 m, DPoint p1, DPoint p2, double T, const std::function<void(const Mat2&, double)>& f) {
    if (m < 1) throw std::invalid_argument("orbit: m >= 1");
    if (p1.y <= 0 || p2.y <= 0) throw DomainError("orbit: points must lie in the upper half plane");
    const cd z1(p1.x, p1.y), z2(p2.x, p2.y);
    const double x1 = p1.x, y1 = p1.y, y2 = p2.y;
    const double scale = 2.0 * static_cast<double>(m) * y1 * y2;
    // 2m y1 y2 cosh d(z1, M z2) = y1^2 |c z2 + d|^2 + |(a - x1 c) z2 + (b - x1 d)|^2
    const double K = scale * T * (1 + 1e-9);
    const i64 cmax = static_cast<i64>(std::floor(std::sqrt(K) / (y1 * y2)));
    for (i64 c = 0; c <= cmax; ++c) {
        double h2 = K / (y1 * y1) - static_cast<double>(c * c) * y2 * y2;
        if (h2 < 0) continue;
        double h = std::sqrt(h2), ctr = -static_cast<double>(c) * p2.x;
        i64 dlo = static_cast<i64>(std::floor(ctr - h)) - 1, dhi = static_cast<i64>(std::ceil(ctr + h)) + 1;
        if (c == 0) dlo = std::max<i64>(dlo, 1);
        for (i64 d = dlo; d <= dhi; ++d) {
            if (c == 0 && d <= 0) continue;
            i64 s, t;
            i64 g = egcd(d, c, s, t);  // s d + t c = g
            if (m % g) continue;
            cd u = static_cast<double>(c) * z2 + static_cast<double>(d);
            double rem = K - y1 * y1 * std::norm(u);
            if (rem < 0) continue;
            const i64 cg = c / g, dg = d / g;
            i64 a0 = (m / g) * s, b0 = -(m / g) * t;  // a0 d - b0 c = m
            cd v = u / static_cast<double>(g);
            auto alpha = [&](i64 a, i64 b) {
                return (static_cast<double>(a) - x1 * c) * z2 + (static_cast<double>(b) - x1 * d);
            };
            cd al = alpha(a0, b0);
            double vv = std::norm(v);
            i64 j0 = std::llround(-(al.real() * v.real() + al.imag() * v.imag()) / vv);
            a0 += j0 * cg, b0 += j0 * dg;
            al = alpha(a0, b0);
            double B = al.real() * v.real() + al.imag() * v.imag();
            double disc = B * B - vv * (std::norm(al) - rem);
            if (disc < 0) disc = 0;
            double sq = std::sqrt(disc);
            i64 jlo = static_cast<i64>(std::floor((-B - sq) / vv)) - 1;
            i64 jhi = static_cast<i64>(std::ceil((-B + sq) / vv)) + 1;
            for (i64 j = jlo; j <= jhi; ++j) {
                cd w = al + static_cast<double>(j) * v;
                double q = y1 * y1 * std::norm(u) + std::norm(w);
                if (q > K) continue;
                Mat2 M{a0 + j * cg, b0 + j * dg, c, d};
                double tm = q / scale, um = tm - 1;
                if (tm < 2) {
                    // near the diagonal: go through the image point directly
                    cd img = (static_cast<double>(M.a) * z2 + static_cast<double>(M.b)) / u;
                    um = std::norm(z1 - img) / (2 * y1 * img.imag());
                }
                f(M, um);
            }
        }
    }
}

std::vector<Mat2> hecke_orbit(i64 m, DPoint z1, DPoint z2, double R) {
    if (!(R >= 0)) throw std::invalid_argument("hecke_orbit: R >= 0");
    std::vector<Mat2> out;
    double T = std::cosh(R);
    for_each_orbit_point(m, z1, z2, T, [&](const Mat2& M, double u) {
        if (1 + u <= T) out.push_back(M);
    });
    return out;
}

}  // namespace cmisog::green
