#include "hwl/eigenforms.hpp"
#include "hwl/errors.hpp"
#include "hwl/petersson.hpp"
#include "hwl/qexpansion.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hwl;

namespace {

// tau(n) / n^{11/2} from the product expansion of Delta.
double lambda_delta(const QExpansion& d, std::uint64_t n) {
    return d[n].get_d() / std::pow(static_cast<double>(n), 5.5);
}

}  // namespace

TEST_CASE("weight 14 has no cusp forms: H[m,n] vanishes") {
    PeterssonEvaluator ev({40, 1e-18, 200000, 1});
    std::mt19937_64 rng(14);
    for (int t = 0; t < 12; ++t) {
        const std::uint64_t m = 1 + rng() % 15, n = 1 + rng() % 15;
        const auto& v = ev.value(m, n, 14);
        INFO("m=" << m << " n=" << n);
        CHECK(std::fabs(v.value.to_double()) <= v.tail_bound + v.estimated_error + 1e-18);
    }
    CHECK_THROWS_AS(ev.value(1, 1, 10), ConfigError);
}

TEST_CASE("weight 12 against the norm of Delta") {
    // Gamma(11) / ((4 pi)^11 |Delta|^2), |Delta|^2 = 1.0353620568043209...e-6.
    const double w = 2.8402873751675005;
    PeterssonEvaluator ev({40, 1e-18, 200000, 1});
    CHECK(std::fabs(ev.value(1, 1, 12).value.to_double() - w) < 1e-14);
    const QExpansion d = delta(40);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 15; ++t) {
        const std::uint64_t m = 1 + rng() % 12, n = 1 + rng() % 12;
        const double want = w * lambda_delta(d, m) * lambda_delta(d, n);
        INFO("m=" << m << " n=" << n);
        CHECK(std::fabs(ev.value(m, n, 12).value.to_double() - want) < 1e-13);
    }
}

TEST_CASE("cache is symmetric and counts hits") {
    PeterssonEvaluator ev({30, 1e-15, 200000, 1});
    const auto& a = ev.value(2, 5, 16);
    const auto misses = ev.cache_misses();
    const auto& b = ev.value(5, 2, 16);
    CHECK(ev.cache_misses() == misses);
    CHECK(ev.cache_hits() >= 1);
    CHECK(&a == &b);
    // Batched and one-off evaluation agree.
    ev.prefetch({{1, 3}, {3, 4}, {2, 2}}, 16);
    const auto one = geometric_side(3, 4, 16, 0, 30, 1e-15);
    CHECK(std::fabs(ev.value(4, 3, 16).value.to_double() - one.value.to_double()) < 1e-15);
}

TEST_CASE("truncation plans") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t m = 1 + rng() % 30, n = 1 + rng() % 30;
        const int k = 12 + 2 * static_cast<int>(rng() % 20);
        const double tol = std::pow(10.0, -10.0 - static_cast<double>(rng() % 10));
        const auto p = plan_truncation(m, n, k, tol);
        INFO("m=" << m << " n=" << n << " k=" << k << " tol=" << tol);
        CHECK(p.tail + p.skipped <= tol);
        CHECK(p.c_max >= 1);
        // A tighter tolerance never needs fewer moduli.
        CHECK(plan_truncation(m, n, k, tol / 100).c_max >= p.c_max);
    }
    CHECK_THROWS_AS(plan_truncation(1, 1, 12, 1e-20, 3), ToleranceError);
    CHECK_THROWS_AS(plan_truncation(3481, 3481, 12, 1e-15, 0, 1000), ToleranceError);
    CHECK_THROWS_AS(geometric_side(1, 1, 12, 3, 30, 1e-20), ToleranceError);
    CHECK_NOTHROW(geometric_side(1, 1, 12, 2000, 30, 1e-20));
}

TEST_CASE("trace error bound") {
    // (log 3mn)^2 d(gcd) (mn)^{1/4} / sqrt(k)
    CHECK(trace_error_bound(1, 1, 16) == doctest::Approx(std::pow(std::log(3.0), 2) / 4.0));
    CHECK(trace_error_bound(4, 6, 100) ==
          doctest::Approx(std::pow(std::log(72.0), 2) * 2 * std::pow(24.0, 0.25) / 10.0));
    CHECK(trace_error_bound(6, 4, 100) == trace_error_bound(4, 6, 100));
}

TEST_CASE("harmonic weights for weight 24") {
    const auto forms = eigenforms(24, 80);
    PeterssonEvaluator ev({40, 1e-20, 200000, 1});
    const auto w = extract_weights(24, forms, {{1, 1}, {1, 2}}, {{2, 2}, {1, 3}, {2, 3}, {3, 5}}, ev);
    REQUIRE(w.weights.size() == 2);
    CHECK(w.residual.to_double() < 1e-15);
    CHECK(w.condition < 1e3);
    // sum of weights is H[1,1].
    CHECK(std::fabs((w.weights[0] + w.weights[1]).to_double() - ev.value(1, 1, 24).value.to_double()) < 1e-15);
    CHECK(w.weight_of(forms[0].label()).to_double() > 0);
    CHECK_THROWS_AS(w.weight_of("24.z"), ConfigError);
    // Least squares with extra fit pairs gives the same weights.
    const auto ls = extract_weights(24, forms, {{1, 1}, {1, 2}, {2, 2}, {1, 3}}, {{2, 3}, {3, 5}, {4, 7}}, ev);
    CHECK(std::fabs((ls.weights[0] - w.weights[0]).to_double()) < 1e-12);
    const Real L = scaled_lambda(forms[0], w, 2, 200);
    CHECK(std::fabs(L.to_double()) < 2 * std::pow(2.0, 0.25) * std::sqrt(w.weights[0].to_double()) + 1e-12);
}

TEST_CASE("weight extraction errors") {
    const auto forms = eigenforms(24, 80);
    PeterssonEvaluator ev({30, 1e-16, 200000, 1});
    CHECK_THROWS_AS(extract_weights(24, forms, {{1, 1}}, {{2, 2}, {1, 3}, {2, 3}}, ev), ConfigError);
    CHECK_THROWS_AS(extract_weights(24, forms, {{1, 1}, {1, 2}}, {{2, 2}}, ev), ConfigError);
    // Identical rows make the system singular.
    CHECK_THROWS_AS(extract_weights(24, forms, {{1, 2}, {2, 1}}, {{2, 2}, {1, 3}, {2, 3}}, ev), PrecisionError);
}
