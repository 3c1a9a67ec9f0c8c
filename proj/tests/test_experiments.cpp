#include "hwl/eigenforms.hpp"
#include "hwl/errors.hpp"
#include "hwl/experiments.hpp"
#include "hwl/petersson.hpp"
#include "hwl/primes.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hwl;

namespace {

// Direct oracle: sum over n <= N of (sum of lambda(p)^2 over primes in (n - y, n]) squared.
double direct_moment(const Eigenform& f, std::uint64_t N, double y) {
    double total = 0;
    for (std::uint64_t n = 2; n <= N; ++n) {
        double a = 0;
        for (std::uint64_t p = 2; p <= n; ++p) {
            bool prime = true;
            for (std::uint64_t q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
            if (prime && static_cast<double>(p) > static_cast<double>(n) - y) {
                const double l = f.lambda(p, 200).to_double();
                a += l * l;
            }
        }
        total += a * a;
    }
    return total;
}

}  // namespace

TEST_CASE("per-form routes agree with a direct oracle") {
    const auto forms = eigenforms(12, 400);
    for (double eta : {0.4, 1.0, 1.7}) {
        const auto r = per_form_second_moment(forms[0], 19, eta, 40);
        INFO("eta=" << eta);
        CHECK(r.routes_exact);
        CHECK(r.route_discrepancy == 0);
        CHECK(std::fabs(r.total.to_double() - direct_moment(forms[0], 19, r.y)) < 1e-9 * r.total.to_double());
        CHECK(r.prediction_conjectural == doctest::Approx(19 * (eta * eta + 2 * eta)));
        CHECK(r.pair_incidences == r.pair_tuple_sum);
    }
    CHECK_THROWS_AS(per_form_second_moment(forms[0], 30, 1.0), PrecisionError);
}

TEST_CASE("harmonic average matches weighted per-form sums") {
    const std::uint64_t N = 12;
    PeterssonEvaluator ev({40, 1e-22, 200000, 1});
    {
        const auto forms = eigenforms(12, N * N + 1);
        const auto h = harmonic_second_moment(12, N, 1.0, ev);
        const auto p = per_form_second_moment(forms[0], N, 1.0, 40);
        const double w = ev.value(1, 1, 12).value.to_double();
        CHECK(std::fabs(h.total.to_double() - w * p.total.to_double()) < 1e-12 * h.total.to_double());
        CHECK_FALSE(h.in_regime);
    }
    {
        const auto forms = eigenforms(24, N * N + 1);
        const auto w = extract_weights(24, forms, {{1, 1}, {1, 2}}, {{2, 2}, {1, 3}, {2, 3}}, ev);
        const auto h = harmonic_second_moment(24, N, 1.0, ev);
        double want = 0;
        for (std::size_t i = 0; i < forms.size(); ++i)
            want += w.weights[i].to_double() * per_form_second_moment(forms[i], N, 1.0, 40).total.to_double();
        CHECK(std::fabs(h.total.to_double() - want) < 1e-10 * want);
    }
}

TEST_CASE("short windows have no off-diagonal part") {
    const auto r = harmonic_second_moment(1000, 12, 0.3, 1e-20, 40);
    CHECK(r.width == 1);
    CHECK(r.off_diagonal.is_zero());
    CHECK(std::fabs((r.total - r.diagonal).to_double()) == 0);
    CHECK(r.in_regime);
}

TEST_CASE("budget shrinks as the weight grows") {
    double last = INFINITY;
    for (int k : {1000, 10000, 100000, 1000000}) {
        const auto r = harmonic_second_moment(k, 10, 1.0, 1e-20, 40);
        INFO("k=" << k);
        CHECK(r.diagonal_delta < last);
        CHECK(std::fabs(r.diagonal_ratio.to_double() - 2) <= r.diagonal_delta + 1e-12);
        CHECK(r.distinct_h_values > 0);
        last = r.diagonal_delta;
    }
}

TEST_CASE("large weight report") {
    PeterssonEvaluator ev({40, 1e-20, 200000, 1});
    const auto t = large_weight_report(100000, 20, 1.0, ev);
    CHECK(t.in_regime);
    CHECK(t.conjectural_target == doctest::Approx(3.0));
    CHECK(t.within_budget);
    const double w = static_cast<double>(t.moment.exact_prime_square_moment.get_d() +
                                         t.moment.exact_prime_first_moment.get_d()) /
                     20.0;
    CHECK(t.unconditional_target == doctest::Approx(w));
}

TEST_CASE("Gallagher table") {
    const auto t = gallagher_report(2000, {0.5, 1.0}, 3);
    REQUIRE(t.rows.size() == 6);
    for (const auto& r : t.rows) {
        INFO("eta=" << r.eta << " j=" << r.j);
        CHECK(r.identity_exact);
        CHECK(r.hl_conjectural > 0);
        if (r.j == 1) CHECK(r.relative_error < 0.3);
    }
    CHECK_THROWS_AS(gallagher_report(2000, {1.0}, 4), ConfigError);
}
