#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmisog/quadfield.hpp"

using namespace cmisog;
using namespace cmisog::quadfield;

namespace {

const std::vector<std::pair<i64, i64>> kPairs{{-3, -4}, {-4, -7}, {-3, -8}, {-7, -8}, {-3, -11}, {-8, -19}, {-7, -163}};

PrimeOfF only(u64 p, const DiscriminantPair& c) {
    auto v = prime_profile(p, c);
    REQUIRE(v.size() == 1);
    return v[0];
}

// ord at a split prime by exhaustive search for the p-adic root
int split_valuation_oracle(const FieldElement& x, const PrimeOfF& P, i64 D, int e) {
    u64 mod = 1;
    for (int i = 0; i < e + 2; ++i) mod *= P.p;
    for (u64 r = 0; r < mod; ++r) {
        __int128 sq = static_cast<__int128>(r) * r - D;
        if (((sq % static_cast<__int128>(mod)) + mod) % mod) continue;
        if (P.p == 2 ? (r % 4 != P.root) : (r % P.p != P.root)) continue;
        __int128 y = static_cast<__int128>(x.a) + static_cast<__int128>(x.b) * r;
        y = ((y % static_cast<__int128>(mod)) + mod) % mod;
        int v = 0;
        while (y != 0 && y % P.p == 0 && v < e + 2) {
            y /= P.p;
            ++v;
        }
        if (y == 0) v = e + 2;
        if (P.p == 2) --v;
        return std::min(v, e);
    }
    FAIL("no root");
    return -1;
}

}  // namespace

TEST_CASE("configuration validation") {
    auto c = DiscriminantPair::make(-3, -4);
    CHECK(c.D == 12);
    CHECK(c.w1 == 3);
    CHECK(c.w2 == 2);
    CHECK(c.j2 == 1728);
    CHECK(DiscriminantPair::make(-7, -8).j1 == -3375);
    CHECK_THROWS_AS(DiscriminantPair::make(-3, -3), UnsupportedConfig);
    CHECK_THROWS_AS(DiscriminantPair::make(-4, -8), UnsupportedConfig);
    CHECK_THROWS_AS(DiscriminantPair::make(-3, -15), UnsupportedConfig);
    CHECK_THROWS_AS(DiscriminantPair::make(-3, -20), UnsupportedConfig);
}

TEST_CASE("prime_profile examples") {
    auto c = DiscriminantPair::make(-3, -4);
    auto v11 = prime_profile(11, c);
    REQUIRE(v11.size() == 2);
    for (auto& P : v11) {
        CHECK(P.kind == Splitting::split);
        CHECK(P.inert_in_K);
        CHECK(P.residue_norm() == 11);
    }
    CHECK(v11[0].root < 11 / 2.0);
    CHECK(v11[0].conjugate() == v11[1]);
    // 13 splits in Q(√3) and both primes split further in K
    auto v13 = prime_profile(13, c);
    REQUIRE(v13.size() == 2);
    CHECK_FALSE(v13[0].inert_in_K);
    auto P5 = only(5, c);
    CHECK(P5.kind == Splitting::inert);
    CHECK_FALSE(P5.inert_in_K);
    CHECK(P5.residue_norm() == 25);
    auto P3 = only(3, c);
    CHECK(P3.kind == Splitting::ramified);
    CHECK(P3.inert_in_K);
    auto P2 = only(2, c);
    CHECK(P2.kind == Splitting::ramified);
    CHECK(P2.inert_in_K);
}

TEST_CASE("kind matches kronecker(D, p)") {
    for (auto [d1, d2] : kPairs) {
        auto c = DiscriminantPair::make(d1, d2);
        for (u64 p : primes_up_to(300)) {
            auto v = prime_profile(p, c);
            int chi = kronecker(c.D, static_cast<i64>(p));
            CHECK(v.size() == (chi == 1 ? 2u : 1u));
            for (auto& P : v)
                CHECK(P.kind == (chi == 1 ? Splitting::split : chi == -1 ? Splitting::inert : Splitting::ramified));
        }
    }
}

TEST_CASE("valuation and factorization examples in D = 12") {
    auto c = DiscriminantPair::make(-3, -4);
    FieldElement s3(0, 1, 12), one_s3(2, 1, 12), two(4, 0, 12);
    CHECK(valuation(s3, only(3, c), c) == 1);
    CHECK(valuation(one_s3, only(2, c), c) == 1);
    CHECK(valuation(s3, only(5, c), c) == 0);
    CHECK_THROWS_AS(valuation(FieldElement(0, 0, 12), only(3, c), c), ZeroElementError);
    auto f = factor_element(s3, c);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors.begin()->first.p == 3);
    CHECK(f.factors.begin()->second == 1);
    auto g = factor_element(one_s3, c);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors.begin()->first.p == 2);
    auto h = factor_element(two, c);
    REQUIRE(h.factors.size() == 1);
    CHECK(h.factors.begin()->second == 2);
    CHECK(factor_element(FieldElement(2, 0, 12), c).factors.empty());
}

TEST_CASE("rho_kf examples") {
    IdealFactorization I;
    CHECK(rho_kf(I) == 1);
    PrimeOfF inert{7, Splitting::split, 1, true, false};
    I.factors[inert] = 1;
    CHECK(rho_kf(I) == 0);
    I.factors[inert] = 2;
    CHECK(rho_kf(I) == 1);
    IdealFactorization J;
    J.factors[PrimeOfF{13, Splitting::split, 4, false, false}] = 3;
    CHECK(rho_kf(J) == 4);
    IdealFactorization bad;
    bad.factors[PrimeOfF{5, Splitting::inert, 0, false, true}] = 1;
    CHECK_THROWS_AS(rho_kf(bad), ConfigViolation);
}

TEST_CASE("enumerate_trace_m examples") {
    auto c = DiscriminantPair::make(-3, -4);
    auto e = enumerate_trace_m(1, c);
    std::vector<i64> as;
    for (auto& t : e) as.push_back(t.a);
    CHECK(as == std::vector<i64>{-2, 0, 2});
    auto c21 = DiscriminantPair::make(-3, -7);
    as.clear();
    for (auto& t : enumerate_trace_m(1, c21)) as.push_back(t.a);
    CHECK(as == std::vector<i64>{-3, -1, 1, 3});
    CHECK(enumerate_trace_m(0, c).empty());
    for (auto& t : enumerate_trace_m(7, c)) CHECK(t.tsqrtD.b == 7);
}

TEST_CASE("diff_set examples") {
    auto c = DiscriminantPair::make(-3, -4);
    auto d1 = diff_set(FieldElement(0, 1, 12), c);
    REQUIRE(d1.size() == 1);
    CHECK(d1.begin()->p == 3);
    auto d2 = diff_set(FieldElement(2, 1, 12), c);
    REQUIRE(d2.size() == 1);
    CHECK(d2.begin()->p == 2);
    // 5 is inert in F hence split in K: no contribution
    CHECK(diff_set(FieldElement(10, 0, 12), c).empty());
}

TEST_CASE("split valuations agree with exhaustive p-adic roots") {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (auto [d1, d2] : kPairs) {
        auto c = DiscriminantPair::make(d1, d2);
        std::uniform_int_distribution<i64> U(-400, 400);
        for (int it = 0; it < 400; ++it) {
            i64 b = U(rng), a = U(rng);
            if ((a - b * c.D) % 2) ++a;
            FieldElement x(a, b, c.D);
            if (x.is_zero()) continue;
            __int128 n = x.norm(c.D);
            if (n < 0) n = -n;
            for (auto [p, e] : factor(static_cast<u64>(n))) {
                if (kronecker(c.D, p) != 1) continue;
                u64 pe = 1;
                for (int i = 0; i < e + 2; ++i) pe *= p;
                if (pe > 200000) continue;
                auto ps = prime_profile(p, c);
                int v0 = valuation(x, ps[0], c), v1 = valuation(x, ps[1], c);
                CHECK(v0 + v1 == e);
                CHECK(v0 == split_valuation_oracle(x, ps[0], c.D, e));
                CHECK(v1 == split_valuation_oracle(x, ps[1], c.D, e));
                CHECK(valuation(x.conjugate(c.D), ps[0], c) == v1);
                ++checked;
            }
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("norm consistency on random elements") {
    std::mt19937_64 rng(11);
    for (auto [d1, d2] : kPairs) {
        auto c = DiscriminantPair::make(d1, d2);
        std::uniform_int_distribution<i64> U(-3000, 3000);
        for (int it = 0; it < 500; ++it) {
            i64 a = U(rng), b = U(rng) / 10;
            if ((a - b * c.D) % 2) ++a;
            FieldElement x(a, b, c.D);
            if (x.is_zero()) continue;
            __int128 n = x.norm(c.D);
            if (n < 0) n = -n;
            mpz_class nz;
            mpz_import(nz.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, &n);
            CHECK(factor_element(x, c).norm() == nz);
        }
    }
}

TEST_CASE("conjugation symmetry and parity law of Diff") {
    for (auto [d1, d2] : kPairs) {
        auto c = DiscriminantPair::make(d1, d2);
        for (i64 m = 1; m <= 10; ++m) {
            for (auto& t : enumerate_trace_m(m, c)) {
                auto d = diff_set(t.tsqrtD, c);
                std::set<PrimeOfF> conj;
                for (auto& P : d) conj.insert(P.conjugate());
                CHECK(diff_set(FieldElement(t.a, -m, c.D), c) == conj);
                CHECK(diff_set(FieldElement(-t.a, m, c.D), c) == conj);
                CHECK(t.tsqrtD.norm(c.D) < 0);  // Nm(t) = -Nm(t√D)/D > 0
                CHECK(d.size() % 2 == 1);
            }
        }
    }
}
