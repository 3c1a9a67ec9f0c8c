#include "hwl/errors.hpp"
#include "hwl/kloosterman.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace hwl;

namespace {

// Direct sum of cos(2 pi (m x + n xbar) / c) with a brute-force inverse.
long double brute(std::uint64_t m, std::uint64_t n, std::uint64_t c) {
    if (c == 1) return 1;
    long double s = 0;
    const long double two_pi = 6.283185307179586476925286766559L;
    for (std::uint64_t x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        std::uint64_t xb = 1;
        while ((x * xb) % c != 1) ++xb;
        s += std::cos(two_pi * static_cast<long double>((m * x + n * xb) % c) / static_cast<long double>(c));
    }
    return s;
}

}  // namespace

TEST_CASE("Kloosterman sums against brute force") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t c = 1 + rng() % 500;
        const std::uint64_t m = 1 + rng() % 20, n = 1 + rng() % 20;
        const long double want = brute(m, n, c);
        const KloostermanModulus K(c);
        double err = 0;
        const long double ld = K.sum_ld(m, n, &err);
        INFO("m=" << m << " n=" << n << " c=" << c);
        REQUIRE(std::fabs(static_cast<double>(ld - want)) <= err + 1e-15);
        REQUIRE(std::fabs(K.sum(m, n, 200).to_double() - static_cast<double>(want)) <= 1e-12);
    }
}

TEST_CASE("Kloosterman identities") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 100; ++t) {
        const std::uint64_t c = 2 + rng() % 300;
        const std::uint64_t m = 1 + rng() % 50, n = 1 + rng() % 50;
        const Real s = kloosterman(m, n, c, 200);
        // Symmetry and the Weil bound.
        CHECK(abs(s - kloosterman(n, m, c, 200)).to_double() < 1e-50);
        CHECK(std::fabs(s.to_double()) <= weil_bound(m, n, c) + 1e-9);
        // S(m, n; c) depends on m, n mod c only.
        CHECK(abs(s - kloosterman(m + c, n + 2 * c, c, 200)).to_double() < 1e-50);
        // S(am, n; c) = S(m, an; c) for a coprime to c.
        const std::uint64_t a = 1 + rng() % 20;
        if (std::gcd(a, c) == 1)
            CHECK(abs(kloosterman(a * m, n, c, 200) - kloosterman(m, a * n, c, 200)).to_double() < 1e-50);
    }
}

TEST_CASE("small moduli") {
    CHECK(kloosterman(5, 7, 1, 100).to_double() == 1.0);
    // S(m, n; 2) = (-1)^{m+n}
    CHECK(kloosterman(1, 1, 2, 100).to_double() == doctest::Approx(1.0));
    CHECK(kloosterman(1, 2, 2, 100).to_double() == doctest::Approx(-1.0));
    CHECK(kloosterman(1, 1, 3, 100).to_double() == doctest::Approx(-1.0));
    CHECK(kloosterman(1, 1, 5, 100).to_double() == doctest::Approx(static_cast<double>(brute(1, 1, 5))));
    const KloostermanModulus K(12);
    CHECK(K.totient() == 4);
    CHECK_THROWS_AS(KloostermanModulus(0), ConfigError);
}

TEST_CASE("divisor counts") {
    for (std::uint64_t c = 1; c <= 2000; ++c) {
        std::uint64_t want = 0;
        for (std::uint64_t d = 1; d <= c; ++d) want += c % d == 0;
        REQUIRE(divisor_count(c) == want);
    }
}

TEST_CASE("folded histogram sums to the totient") {
    for (std::uint64_t c : {7u, 30u, 97u, 360u}) {
        const KloostermanModulus K(c);
        const auto h = K.folded_histogram(3, 11);
        std::uint64_t s = 0;
        for (auto v : h) s += v;
        CHECK(s == K.totient());
    }
}
