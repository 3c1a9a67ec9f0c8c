#include "hwl/bessel.hpp"
#include "hwl/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hwl;

namespace {

// Correctly rounded reference from MPFR at generous precision.
Real jn_ref(long nu, const Real& x, mpfr_bits bits) {
    Real X(bits), out(bits);
    mpfr_set(X.raw(), x.raw(), MPFR_RNDN);
    mpfr_jn(out.raw(), nu, X.raw(), MPFR_RNDN);
    return out;
}

}  // namespace

TEST_CASE("series against the standard library in double precision") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.01, 1.0);
    for (int t = 0; t < 60; ++t) {
        const long nu = 1 + static_cast<long>(rng() % 40);
        const double x = U(rng) * 3.0 * static_cast<double>(nu + 5);
        if (x > 10.0 * static_cast<double>(nu)) continue;
        const auto v = bessel_j(nu, x, 30);
        const double want = std::cyl_bessel_j(static_cast<double>(nu), x);
        INFO("nu=" << nu << " x=" << x);
        CHECK(std::fabs(v.value.to_double() - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
        CHECK(v.certified);
    }
}

TEST_CASE("series error bounds hold against MPFR at 60 digits") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const long nu = 1 + static_cast<long>(rng() % 60);
        const double x = U(rng) * 4.0 * static_cast<double>(nu + 2);
        if (x > 10.0 * static_cast<double>(nu)) continue;
        const Real X(x, 400);
        const auto v = bessel_j(nu, X, 60);
        const Real ref = jn_ref(nu, X, 600);
        INFO("nu=" << nu << " x=" << x);
        CHECK(abs(v.value - ref).to_double() <= v.error_bound);
        CHECK(v.error_bound <= 1e-59 * std::max(1.0, std::fabs(ref.to_double())));
    }
}

TEST_CASE("series regime limits") {
    CHECK_THROWS_AS(bessel_j(5, 60.0, 20), PrecisionError);
    CHECK_THROWS_AS(bessel_j(0, 1.0, 20), ConfigError);
    CHECK(bessel_j(11, 0.0, 30).value.is_zero());
}

TEST_CASE("magnitude bounds dominate |J|") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(0.001, 1.5);
    for (int t = 0; t < 80; ++t) {
        const long nu = 1 + static_cast<long>(rng() % 3000);
        const double x = U(rng) * static_cast<double>(nu);
        const double j = std::fabs(jn_ref(nu, Real(x, 200), 200).to_double());
        if (j == 0) continue;
        INFO("nu=" << nu << " x=" << x);
        CHECK(std::log(j) <= log_first_term_bound(nu, x) + 1e-9);
        CHECK(std::log(j) <= log_bessel_bound(nu, x) + 1e-9);
        if (x <= static_cast<double>(nu)) CHECK(std::log(j) <= log_kapteyn_bound(nu, x) + 1e-9);
    }
}

TEST_CASE("recurrence against MPFR at large order") {
    for (long nu : {1000L, 10000L}) {
        for (double frac : {0.8, 0.95, 1.0, 1.3, 4.0}) {
            const double x = frac * static_cast<double>(nu);
            const Real X(x, 300);
            const auto r = bessel_recurrence(nu, X, 200);
            const Real ref = jn_ref(nu, X, 400);
            INFO("nu=" << nu << " x=" << x);
            CHECK_FALSE(r.certified);
            CHECK(abs(r.value - ref).to_double() <= r.error_bound);
        }
    }
}

TEST_CASE("kernel dispatch") {
    const Real x(628.0, 300);
    const auto a = bessel_kernel(11, x, 200);
    CHECK(a.certified);
    CHECK(abs(a.value - jn_ref(11, x, 400)).to_double() <= a.error_bound);
    const auto b = bessel_kernel(5000, Real(6000.0, 300), 200);
    CHECK_FALSE(b.certified);
    CHECK(abs(b.value - jn_ref(5000, Real(6000.0, 300), 400)).to_double() <= b.error_bound);
    const auto c = bessel_kernel(5000, Real(1000.0, 300), 200);
    CHECK(c.certified);
}
