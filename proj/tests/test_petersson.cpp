#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cmisog/legendre.hpp"
#include "cmisog/petersson.hpp"
#include "oracles.hpp"

using namespace cmisog;
using namespace cmisog::petersson;

namespace {

const FormData& delta() {
    static FormData f = delta_form(10000);
    return f;
}

}  // namespace

TEST_CASE("cusps and index examples") {
    auto c1 = cusps(1);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].width == 1);
    CHECK(cusps(4).size() == 3);
    CHECK(cusps(12).size() == cusp_count(12));
    CHECK(cusp_count(12) == oracle::p1_orbit_lengths(12).size());
    CHECK(index_gamma0(1) == 1);
    CHECK(index_gamma0(11) == 12);
    CHECK(index_gamma0(12) == 24);
    for (const auto& c : cusps(60)) {
        CHECK(std::gcd(static_cast<u64>(std::abs(c.u)), c.v) == 1);
        CHECK(60 % c.v == 0);
    }
}

TEST_CASE("cusp counts and widths against P^1(Z/N) orbits, N <= 500") {
    for (u64 N = 1; N <= 500; ++N) {
        auto cs = cusps(N);
        auto orbits = oracle::p1_orbit_lengths(N);
        std::vector<u64> widths;
        u64 wsum = 0;
        for (const auto& c : cs) widths.push_back(c.width), wsum += c.width;
        std::sort(widths.begin(), widths.end());
        CHECK_MESSAGE(cs.size() == orbits.size(), N);
        CHECK_MESSAGE(widths == orbits, N);
        CHECK(wsum == index_gamma0(N));
        CHECK(cusp_count(N) == cs.size());
    }
}

TEST_CASE("psi_vol dual formula") {
    CHECK(psi_vol(1).product == 1);
    CHECK(psi_vol(12).divisor_sum == 288);
    for (u64 p : {2, 3, 5, 7, 101, 9973}) CHECK(psi_vol(p).product == p * p + p);
    for (u64 N = 1; N <= 100000; ++N) {
        auto v = psi_vol(N);
        REQUIRE(v.divisor_sum == v.product);
    }
}

TEST_CASE("corpus coefficients against independent oracles") {
    auto tau = oracle::ramanujan_tau(600);
    for (std::size_t n = 1; n <= 600; ++n) CHECK(delta().a(n) == tau[n - 1]);
    CHECK(delta().a(2) == -24);

    auto f11 = level11_form(2000);
    for (long p : cmisog::primes_up_to(200))
        if (p != 11) CHECK_MESSAGE(f11.a(p) == oracle::curve11a_ap(p), p);
    CHECK(f11.a(11) == 1);

    auto f4 = level4_form(2000);
    CHECK(f4.a(1) == 1);
    CHECK(f4.a(3) == -12);
    CHECK(f4.a(5) == 54);
    for (u64 n = 2; n <= 2000; n += 2) CHECK(f4.a(n) == 0);

    // Hecke relations a(mn) = a(m)a(n), a(p^2) = a(p)^2 - p^{κ-1} away from the level
    for (const FormData* f : std::vector<const FormData*>{&delta(), &f11, &f4}) {
        for (u64 m = 1; m <= 40; ++m)
            for (u64 n = 1; n <= 40; ++n)
                if (std::gcd(m, n) == 1) CHECK(f->a(m * n) == f->a(m) * f->a(n));
        for (u64 p : {3, 5, 7, 13, 17}) {
            if (f->N % p == 0) continue;
            mpz_class pk;
            mpz_ui_pow_ui(pk.get_mpz_t(), p, f->kappa - 1);
            CHECK(f->a(p * p) == f->a(p) * f->a(p) - pk);
        }
    }
    CHECK_THROWS_AS(delta().a(20000), InsufficientCoefficients);
}

TEST_CASE("s_f") {
    CHECK(s_f(0.5, delta()).is_zero());
    CHECK(s_f(2, delta()) == ExactRational(41, 32));
    CHECK(s_f(2, delta()).to_double() == 1.28125);
    ExactRational prev(0L);
    for (double X = 1; X < 50; X += 0.7) {
        auto s = s_f(X, delta());
        CHECK(s >= prev);
        prev = s;
    }
    CHECK_THROWS_AS(s_f(1e6, delta()), InsufficientCoefficients);
}

TEST_CASE("i_f") {
    auto big = i_f(20, delta());
    CHECK(big.value < 1e-90);
    CHECK(big.value < 1e-40 * i_f(10, delta()).value);
    auto one = i_f(1, delta());
    double first = tail_integral(1, 1.0, 12);
    CHECK(std::abs(one.value - first) / one.value < 1e-2);
    CHECK(one.value > first);
    double prev = 1e300;
    for (double Y : {0.05, 0.1, 0.3, 0.5, 1.0, 2.0}) {
        auto r = i_f(Y, delta());
        CHECK(r.value < prev);
        CHECK(r.tail < 1e-15 * r.value);
        prev = r.value;
    }
    CHECK(i_f(0.1, zero_form(1, 12)).value == 0);
}

TEST_CASE("η evaluation agrees with the q-expansion high in the half plane") {
    auto f11 = level11_form(400);
    for (const FormData* f : std::vector<const FormData*>{&delta(), &f11}) {
        FormData plain = *f;
        plain.eta.reset();
        for (double x : {-0.5, -0.13, 0.0, 0.31, 0.5})
            for (double y : {0.6, 0.9, 1.4, 2.5}) {
                double a = density(*f, x, y), b = density(plain, x, y);
                CHECK(std::abs(a - b) <= 1e-11 * b);
            }
    }
}

TEST_CASE("petersson_numeric") {
    auto r = petersson_numeric(delta());
    CHECK(r.value == doctest::Approx(1.0353620568043209e-6).epsilon(1e-9));
    auto fine = petersson_numeric(delta(), {1e-12, 15, true});
    CHECK(std::abs(fine.value - r.value) < 1e-4 * fine.value);
    CHECK(petersson_numeric(delta().scaled(2)).value == doctest::Approx(4 * r.value).epsilon(1e-12));
    CHECK(petersson_numeric(zero_form(1, 12)).value == 0);
    // the q-expansion path over F_1 gives the same number
    FormData plain = delta();
    plain.eta.reset();
    CHECK(petersson_numeric(plain).value == doctest::Approx(r.value).epsilon(1e-9));
    for (const auto& f : {level11_form(), level4_form()}) {
        auto a = petersson_numeric(f), b = petersson_numeric(f, {1e-12, 15, true});
        CHECK(a.value > 0);
        CHECK(std::abs(a.value - b.value) < 1e-6 * b.value);
    }
}

TEST_CASE("sup_norm_numeric against a dense grid") {
    auto tau = oracle::ramanujan_tau(40);
    auto g = [&](double x, double y) {
        std::complex<double> q = std::exp(std::complex<double>(-2 * M_PI * y, 2 * M_PI * x)), qn = 1, s = 0;
        for (const auto& t : tau) qn *= q, s += t.get_d() * qn;
        return std::pow(y, 6) * std::abs(s);
    };
    double gmax = 0, gx = 0, gy = 0;
    for (int i = 0; i <= 400; ++i) {
        double x = -0.5 + i / 400.0;
        for (int j = 0; j <= 400; ++j) {
            double y = std::sqrt(1 - x * x) + 2.0 * j / 400;
            double v = g(x, y);
            if (v > gmax) gmax = v, gx = x, gy = y;
        }
    }
    auto s = sup_norm_numeric(delta());
    CHECK(s.value >= gmax * (1 - 1e-12));
    CHECK(s.value <= gmax * (1 + 1e-3));
    CHECK(std::abs(std::abs(s.x) - std::abs(gx)) < 1e-2);
    CHECK(std::abs(s.y - gy) < 1e-2);
    CHECK(s.value == doctest::Approx(0.0020272).epsilon(1e-4));
    CHECK(sup_norm_numeric(delta().scaled(2)).value == doctest::Approx(2 * s.value).epsilon(1e-9));
    CHECK(sup_norm_numeric(zero_form(1, 12)).value == 0);
}

TEST_CASE("cusp_tail_volume") {
    CHECK(cusp_tail_volume(1, 0.05, 1000).bound == 0);
    CHECK(cusp_tail_volume(4, 0.01, 1000).bound == doctest::Approx(2 * 0.01 * (24 - 16)));
    for (u64 N = 1; N <= 12; ++N)
        for (double Y : {0.05, 0.01}) {
            auto v = cusp_tail_volume(N, Y, 400000);
            CHECK_MESSAGE(v.monte_carlo <= v.bound, N << " " << Y);
        }
    // same seed, growing window
    double prev = 0;
    for (double Y : {0.01, 0.05, 0.1, 0.3}) {
        double v = cusp_tail_volume(6, Y, 200000).monte_carlo;
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(prev < index_gamma0(6) * M_PI / 3);
}

TEST_CASE("theorem_audit") {
    for (double Y : {0.1, 0.5}) {
        auto r = theorem_audit(delta(), Y);
        CHECK(r.inequality_ok);
        CHECK(r.norm <= r.rhs);
    }
    auto z = theorem_audit(zero_form(1, 12), 0.1);
    CHECK(z.inequality_ok);
    CHECK(z.norm == 0);
    CHECK(z.rhs == 0);
}

TEST_CASE("dim_bound") {
    CHECK(dim_bound(3, 2) == doctest::Approx(6 * std::log(std::log(3.0))));
    CHECK(dim_bound(5, 4) > dim_bound(5, 2));
    CHECK(dim_bound(7, 4) > dim_bound(5, 4));
    CHECK_THROWS_AS(dim_bound(2, 2), DomainError);
}

TEST_CASE("Deligne-shape coefficient audit") {
    double norm = petersson_numeric(delta()).value;
    auto d = deligne_audit(delta(), 10000, norm);
    CHECK(d.max_ratio <= 1);
    CHECK(d.effective_constant > 0);
    auto f11 = level11_form(10000);
    CHECK(deligne_audit(f11, 10000, petersson_numeric(f11).value).max_ratio <= 1);
    auto f4 = level4_form(10000);
    CHECK(deligne_audit(f4, 10000, petersson_numeric(f4).value).max_ratio <= 1);
}
