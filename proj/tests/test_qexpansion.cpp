#include "hwl/errors.hpp"
#include "hwl/qexpansion.hpp"

#include <doctest.h>

#include <random>

using namespace hwl;

namespace {

std::vector<mpz_class> schoolbook(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, std::size_t n) {
    std::vector<mpz_class> c(n, 0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<mpz_class> random_series(std::mt19937_64& rng, std::size_t len, unsigned bits) {
    gmp_randclass r(gmp_randinit_default);
    r.seed(static_cast<unsigned long>(rng()));
    std::vector<mpz_class> v(len);
    for (auto& x : v) {
        x = r.get_z_bits(1 + rng() % bits);
        if (rng() % 2) x = -x;
        if (rng() % 7 == 0) x = 0;
    }
    return v;
}

// Delta by expanding q prod (1 - q^n)^24 directly.
std::vector<mpz_class> delta_oracle(std::size_t M) {
    std::vector<mpz_class> p(M + 1, 0);
    p[0] = 1;
    for (std::size_t n = 1; n <= M; ++n)
        for (int rep = 0; rep < 24; ++rep)
            for (std::size_t i = M; i >= n; --i) p[i] -= p[i - n];
    std::vector<mpz_class> d(M + 1, 0);
    for (std::size_t i = 1; i <= M; ++i) d[i] = p[i - 1];
    return d;
}

}  // namespace

TEST_CASE("series products agree with schoolbook multiplication") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 25; ++t) {
        const std::size_t la = 1 + rng() % 400, lb = 1 + rng() % 400;
        const auto a = random_series(rng, la, 150);
        const auto b = random_series(rng, lb, 150);
        const std::size_t n = 1 + rng() % (la + lb);
        REQUIRE(multiply_series(a, b, n) == schoolbook(a, b, n));
    }
    // Squaring path.
    const auto a = random_series(rng, 300, 90);
    CHECK(multiply_series(a, a, 500) == schoolbook(a, a, 500));
}

TEST_CASE("Delta coefficients") {
    const QExpansion d = delta(400);
    const auto want = delta_oracle(400);
    for (std::size_t n = 0; n <= 400; ++n) REQUIRE(d[n] == want[n]);
    CHECK(d[1] == 1);
    CHECK(d[2] == -24);
    CHECK(d[3] == 252);
    CHECK(d[7] == -16744);
    CHECK(d.weight() == 12);
}

TEST_CASE("E4^3 - E6^2 = 1728 Delta") {
    const std::size_t M = 1500;
    const QExpansion e4 = eisenstein(4, M), e6 = eisenstein(6, M);
    const QExpansion lhs = power(e4, 3) - e6 * e6;
    CHECK(lhs == delta(M) * mpz_class(1728));
}

TEST_CASE("divisor sums against a direct loop") {
    for (unsigned r : {1u, 3u, 5u, 11u}) {
        const auto s = divisor_sums(r, 300);
        for (std::size_t n = 1; n <= 300; ++n) {
            mpz_class want = 0;
            for (std::size_t d = 1; d <= n; ++d) {
                if (n % d) continue;
                mpz_class p;
                mpz_ui_pow_ui(p.get_mpz_t(), d, r);
                want += p;
            }
            REQUIRE(s[n] == want);
        }
    }
}

TEST_CASE("Ramanujan congruence tau(n) = sigma_11(n) mod 691") {
    const QExpansion d = delta(2000);
    const auto s = divisor_sums(11, 2000);
    for (std::size_t n = 1; n <= 2000; ++n) {
        mpz_class diff = d[n] - s[n];
        REQUIRE(mpz_divisible_ui_p(diff.get_mpz_t(), 691) != 0);
    }
}

TEST_CASE("access and arithmetic checks") {
    const QExpansion d = delta(10);
    CHECK_THROWS_AS(d[11], PrecisionError);
    CHECK((d * d).weight() == 24);
    CHECK((d * d).precision() == 10);
    CHECK(power(d, 0)[0] == 1);
    CHECK(d.truncated(5).precision() == 5);
}
