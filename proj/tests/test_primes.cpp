#include "hwl/errors.hpp"
#include "hwl/primes.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace hwl;

namespace {

bool slow_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t slow_window(std::uint64_t n, double y) {
    std::uint64_t c = 0;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (static_cast<double>(p) > static_cast<double>(n) - y && slow_prime(p)) ++c;
    return c;
}

}  // namespace

TEST_CASE("sieve agrees with trial division on random ranges") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t lo = rng() % 3'000'000;
        const std::uint64_t hi = lo + rng() % 5000;
        const PrimeTable table = sieve_range(lo, hi);
        for (std::uint64_t m = lo; m <= hi; ++m) REQUIRE(table.is_prime(m) == slow_prime(m));
    }
}

TEST_CASE("segment boundaries and thread count do not change the table") {
    const std::uint64_t lo = kSieveSegment - 1000, hi = 3 * kSieveSegment + 77;
    const PrimeTable a = sieve_range(lo, hi, 1);
    const PrimeTable b = sieve_range(lo, hi, 3);
    CHECK(a == b);
    const PrimeTable left = sieve_range(lo, 2 * kSieveSegment);
    const PrimeTable right = sieve_range(2 * kSieveSegment + 1, hi);
    CHECK(PrimeTable::concat(left, right) == a);
}

TEST_CASE("prime counts") {
    CHECK(sieve_range(0, 100).count() == 25);
    CHECK(sieve_range(0, 1'000'000).count() == 78498);
    CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("window counts match a direct count") {
    for (double y : {0.5, 1.0, 2.3, 7.0, 13.81}) {
        const auto s = window_counts(3000, y);
        CHECK(s.width == static_cast<std::uint64_t>(std::ceil(y)));
        for (std::uint64_t n = 1; n <= 3000; n += 7) REQUIRE(s.counts[n] == slow_window(n, y));
    }
}

TEST_CASE("window moments are sums of powers") {
    const auto s = window_counts(5000, 8.5);
    for (unsigned j = 1; j <= 3; ++j) {
        mpz_class want = 0;
        for (std::uint64_t n = 1; n <= 5000; ++n) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), s.counts[n], j);
            want += p;
        }
        CHECK(window_moment(s, j) == want);
    }
}

TEST_CASE("tuple counts match a direct count") {
    const std::vector<std::uint64_t> d{1, 3, 7};
    std::uint64_t want = 0;
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        bool all = true;
        for (auto o : d) all = all && n >= o && slow_prime(n - o);
        want += all ? 1 : 0;
    }
    CHECK(tuple_count(20000, d) == want);
    CHECK_THROWS_AS(validate_offsets(std::vector<std::uint64_t>{3, 3}), ConfigError);
    CHECK_THROWS_AS(validate_offsets(std::vector<std::uint64_t>{0, 2}), ConfigError);
}

TEST_CASE("moment identity holds exactly for random parameters") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 12; ++t) {
        const std::uint64_t N = 100 + rng() % 20000;
        const double y = 0.3 + static_cast<double>(rng() % 1000) / 50.0;
        const unsigned j = 1 + static_cast<unsigned>(rng() % 3);
        const auto r = moment_identity_check(N, y, j);
        INFO("N=" << N << " y=" << y << " j=" << j);
        CHECK(r.equal);
        CHECK(r.lhs == window_moment(N, y, j));
    }
}

TEST_CASE("prime table round trip and corruption") {
    const PrimeTable t = sieve_range(1000, 9000);
    std::stringstream ss;
    write_prime_table(ss, t);
    CHECK(read_prime_table(ss) == t);
    std::stringstream bad("HWLX garbage");
    CHECK_THROWS(read_prime_table(bad));
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(window_width(0.0), ConfigError);
    CHECK_THROWS_AS(window_counts(1, 2.0), ConfigError);
    CHECK_THROWS_AS(sieve_range(10, 5), ConfigError);
}
