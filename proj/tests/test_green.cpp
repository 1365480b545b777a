#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "cmisog/green.hpp"

using namespace cmisog;
using namespace cmisog::green;

namespace {

double q2_closed(double t) { return (3 * t * t - 1) / 2 * 0.5 * std::log((t + 1) / (t - 1)) - 1.5 * t; }

ComplexBall pt(double x, double y) { return ComplexBall(BigFloat(x, 128), BigFloat(y, 128), up::zero()); }

double cosh_dist(DPoint z1, const Mat2& M, DPoint z2) {
    std::complex<double> z(z2.x, z2.y), w = (double(M.a) * z + double(M.b)) / (double(M.c) * z + double(M.d));
    return 1 + std::norm(std::complex<double>(z1.x, z1.y) - w) / (2 * z1.y * w.imag());
}

// every det-m matrix mod ±1 in a box from ‖A_z1^{-1} M A_z2‖_F^2 = 2 m cosh d
std::vector<Mat2> brute_orbit(i64 m, DPoint z1, DPoint z2, double T) {
    auto fro = [](DPoint z) { return std::sqrt(z.y + z.x * z.x / z.y + 1 / z.y); };
    i64 B = static_cast<i64>(std::ceil(fro(z1) * fro(z2) * std::sqrt(2 * m * T))) + 1;
    std::vector<Mat2> out;
    for (i64 c = 0; c <= B; ++c)
        for (i64 d = -B; d <= B; ++d) {
            if (c == 0 && d <= 0) continue;
            for (i64 a = -B; a <= B; ++a)
                for (i64 b = -B; b <= B; ++b)
                    if (a * d - b * c == m && cosh_dist(z1, {a, b, c, d}, z2) <= T) out.push_back({a, b, c, d});
        }
    return out;
}

bool less(const Mat2& x, const Mat2& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
}

}  // namespace

TEST_CASE("green_kernel examples") {
    auto g = green_kernel(pt(0, 1), pt(0, 2), 3);
    CHECK(g.value().to_double() == doctest::Approx(-2 * q2_closed(1.25)).epsilon(1e-14));
    CHECK(g.error_double() < 1e-30);
    CHECK_THROWS_AS(green_kernel(pt(0, 1), pt(0, 1), 3), SingularityError);
    auto far = green_kernel(pt(0, 1), pt(1e6, 1), 3);
    CHECK(far.value().sign() < 0);
    CHECK(std::abs(far.value().to_double()) < 1e-15);
    for (int s : {1, 3, 5, 7})
        for (double y : {0.3, 1.0, 4.0}) CHECK(green_kernel(pt(0.2, 0.9), pt(-0.4, y), s).value().sign() < 0);
}

TEST_CASE("hecke_orbit examples") {
    DPoint w{0.1234, 2.0};
    auto id = hecke_orbit(1, w, w, 0.1);
    CHECK(std::find(id.begin(), id.end(), Mat2{1, 0, 0, 1}) != id.end());
    CHECK(hecke_orbit(1, {0.1, 1.3}, {0.3, 1.7}, 0).empty());
}

TEST_CASE("hecke_orbit is complete against a brute-force box search") {
    struct Case {
        i64 m;
        DPoint z1, z2;
        double T;
    };
    for (auto c : {Case{1, {0, 1}, {-0.5, 0.866}, 12}, Case{2, {0.1, 1.3}, {0.3, 0.8}, 10},
                   Case{3, {-0.5, std::sqrt(7.0) / 2}, {0, std::sqrt(2.0)}, 8}, Case{4, {0.2, 2.0}, {0.4, 0.6}, 6},
                   Case{6, {0, 1}, {0.45, 1.1}, 5}}) {
        auto fast = hecke_orbit(c.m, c.z1, c.z2, std::acosh(c.T));
        auto slow = brute_orbit(c.m, c.z1, c.z2, c.T);
        std::sort(fast.begin(), fast.end(), less);
        std::sort(slow.begin(), slow.end(), less);
        CHECK(slow.size() > 5);
        CHECK(fast.size() == slow.size());
        CHECK(fast == slow);
    }
}

TEST_CASE("orbit counts: ball volume times σ1(m), and the packing bound") {
    DPoint z1{0.11, 1.37}, z2{-0.23, 1.19};
    for (i64 m : {1, 2, 3}) {
        double T = 2000;
        std::size_t n = hecke_orbit(m, z1, z2, std::acosh(T)).size();
        double sigma = 0;
        for (u64 d : divisors(static_cast<u64>(m))) sigma += d;
        // area 2π(T-1) over area π/3 per Γ-orbit, σ1(m) orbits
        double expect = 6 * (T - 1) * sigma;
        CHECK(std::abs(n / expect - 1) < 0.05);
        double A = packing_constant(m, z2);
        for (double t : {1.5, 3.0, 10.0, 100.0, 2000.0}) CHECK(hecke_orbit(m, z1, z2, std::acosh(t)).size() <= A * t);
    }
}

TEST_CASE("green_value refuses k = 1 and orbit collisions") {
    CHECK_THROWS_AS(green_value({1, 1, 1e-6, 0}, CMPoint::of(-3), CMPoint::of(-4)), std::invalid_argument);
    CHECK_THROWS_AS(green_value({3, 1, 1e-6, 0}, CMPoint::of(-4), CMPoint::of(-4)), OrbitCollisionError);
    CHECK_THROWS_AS(green_value({3, 2, 1e-4, 0}, CMPoint::of(-7), CMPoint::of(-7)), OrbitCollisionError);
}

TEST_CASE("green_value: ζ-point against i is reproducible across R and R+1") {
    auto z1 = CMPoint::of(-3), z2 = CMPoint::of(-4);
    auto a = green_value({3, 1, 1e-8, 0}, z1, z2);
    auto b = green_value({3, 1, 0, a.radius + 1}, z1, z2);
    CHECK(a.value < 0);
    CHECK(a.error < 1e-8);
    CHECK(std::abs(a.value - b.value) <= a.error + b.error);
    CHECK(b.value <= a.value);
}

TEST_CASE("doubling R moves the value by less than the error bound") {
    struct Case {
        i64 D1, D2;
        int k;
        i64 m;
    };
    for (auto c : {Case{-3, -4, 3, 1}, Case{-3, -4, 3, 2}, Case{-3, -4, 5, 3}, Case{-4, -7, 3, 1}, Case{-4, -7, 5, 2},
                   Case{-4, -7, 7, 4}, Case{-3, -8, 3, 3}, Case{-7, -8, 5, 1}, Case{-7, -8, 3, 2}, Case{-3, -11, 7, 5}}) {
        auto z1 = CMPoint::of(c.D1), z2 = CMPoint::of(c.D2);
        auto r1 = green_value({c.k, c.m, 0, 4.5}, z1, z2);
        auto r2 = green_value({c.k, c.m, 0, 9.0}, z1, z2);
        CHECK(r2.value <= r1.value);
        CHECK(std::abs(r1.value - r2.value) <= r1.error + r2.error);
        CHECK(r1.value - r2.value <= r1.tail);
    }
}

TEST_CASE("symmetry under swapping the CM points") {
    for (auto [a, b] : std::vector<std::pair<i64, i64>>{{-3, -4}, {-4, -7}, {-7, -8}})
        for (i64 m : {1, 2, 3}) {
            double tol = 1e-7;
            auto x = green_value({3, m, tol, 0}, CMPoint::of(a), CMPoint::of(b));
            auto y = green_value({3, m, tol, 0}, CMPoint::of(b), CMPoint::of(a));
            CHECK(std::abs(x.value - y.value) <= 2 * tol);
            CHECK(x.value < 0);
        }
}

TEST_CASE("κ calibration and the k = 1 exact identity") {
    for (auto [a, b] : std::vector<std::pair<i64, i64>>{{-3, -4}, {-4, -7}, {-3, -8}, {-7, -8}})
        CHECK(kappa_calibrate(quadfield::DiscriminantPair::make(a, b)) == ExactRational(-4L));
    auto c = quadfield::DiscriminantPair::make(-3, -4);
    auto r = gkz_verify(1, 1, c);
    CHECK(r.pass);
    CHECK(r.lhs == doctest::Approx(8 * std::log(1728.0)).epsilon(1e-14));
    CHECK(r.rhs == doctest::Approx(6 * (8 * std::log(2.0) + 4 * std::log(3.0))).epsilon(1e-14));
    for (i64 m = 1; m <= 8; ++m) CHECK(gkz_verify(1, m, quadfield::DiscriminantPair::make(-4, -7)).pass);
}

TEST_CASE("GKZ numeric identity, small m") {
    auto c = quadfield::DiscriminantPair::make(-3, -4);
    for (int k : {3, 5}) {
        auto r = gkz_verify(k, 1, c, 1e-6, 1e-9);
        CHECK(r.pass);
        CHECK(r.kappa_measured == doctest::Approx(-4).epsilon(1e-8));
    }
}
