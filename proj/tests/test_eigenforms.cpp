#include "hwl/eigenforms.hpp"
#include "hwl/errors.hpp"
#include "hwl/modforms.hpp"
#include "hwl/primes.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace hwl;

namespace {

// Determinant by cofactor expansion, for the characteristic polynomial oracle.
mpz_class det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    mpz_class s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<mpz_class>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<mpz_class> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[i][c]);
            minor.push_back(row);
        }
        s += (j % 2 ? -1 : 1) * a[0][j] * det(minor);
    }
    return s;
}

mpz_class pow_ui(unsigned long b, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

}  // namespace

TEST_CASE("characteristic polynomial against determinants") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 1 + rng() % 4;
        Matrix<mpz_class> A(n, n, mpz_class(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) A(i, j) = static_cast<long>(rng() % 41) - 20;
        const auto cp = characteristic_polynomial(A);
        REQUIRE(cp.size() == n + 1);
        CHECK(cp[n] == 1);
        for (long x : {-3L, 0L, 2L, 7L}) {
            std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? x : 0) - A(i, j);
            mpz_class v = 0;
            for (std::size_t i = cp.size(); i-- > 0;) v = v * x + cp[i];
            REQUIRE(v == det(m));
        }
    }
}

TEST_CASE("Delta is the weight 12 eigenform") {
    const auto forms = eigenforms(12, 2000);
    REQUIRE(forms.size() == 1);
    const auto& f = forms[0];
    CHECK(f.exact());
    CHECK(f.label() == "12.a");
    const QExpansion d = delta(2000);
    for (std::uint64_t n = 1; n <= 2000; ++n) REQUIRE(f.a_exact(n) == QuadraticNumber(d[n]));
    // Hecke relation at primes and multiplicativity on coprime pairs.
    for (std::uint64_t p : primes_up_to(44)) {
        CHECK(f.a_exact(p) * f.a_exact(p) - f.a_exact(p * p) == QuadraticNumber(pow_ui(p, 11)));
        CHECK(f.lambda_squared_exact(p).to_real(300).to_double() - f.lambda(p * p, 300).to_double() ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const std::uint64_t a = 1 + rng() % 44, b = 1 + rng() % 44;
        if (std::gcd(a, b) != 1) continue;
        REQUIRE(f.a_exact(a) * f.a_exact(b) == f.a_exact(a * b));
    }
    CHECK_THROWS_AS(f.a_exact(2001), PrecisionError);
}

TEST_CASE("weight 24: conjugate pair in a real quadratic field") {
    const auto forms = eigenforms(24, 60);
    REQUIRE(forms.size() == 2);
    const auto T2 = hecke_operator_matrix(24, 2, 60);
    const mpz_class tr = T2.trace();
    const mpz_class dt = T2(0, 0) * T2(1, 1) - T2(0, 1) * T2(1, 0);
    for (const auto& f : forms) {
        const QuadraticNumber a2 = f.a_exact(2);
        CHECK(a2 * a2 - QuadraticNumber(tr) * a2 + QuadraticNumber(dt) == QuadraticNumber(0L));
        CHECK(a2.D() == 144169);
        for (std::uint64_t p : {2u, 3u, 5u, 7u})
            CHECK(f.a_exact(p) * f.a_exact(p) - f.a_exact(p * p) == QuadraticNumber(pow_ui(p, 23)));
    }
    CHECK(forms[0].a_exact(2) == forms[1].a_exact(2).conjugate());
    CHECK(forms[0].a(2, 200) < forms[1].a(2, 200));
    CHECK(tr == 1080);
}

TEST_CASE("numeric eigenforms for dimension 4 and 5") {
    for (int k : {48, 60}) {
        const int d = dim_cusp(k);
        const auto forms = eigenforms(k, 12 * d);
        REQUIRE(static_cast<int>(forms.size()) == d);
        const auto T2 = hecke_operator_matrix(k, 2, 12 * d);
        Real trace(0L, 300);
        for (const auto& f : forms) {
            CHECK_FALSE(f.exact());
            trace += f.a(2, 300);
            for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u}) CHECK(std::fabs(f.lambda(p, 200).to_double()) <= 2.0);
            const Real rel = abs(f.a(6, 300) - f.a(2, 300) * f.a(3, 300)) / abs(f.a(6, 300));
            CHECK(rel.to_double() < 1e-40);
            const Real hecke = f.a(2, 300) * f.a(2, 300) - f.a(4, 300) - pow2(k - 1, 300);
            CHECK((abs(hecke) / pow2(k - 1, 300)).to_double() < 1e-40);
        }
        CHECK((abs(trace - Real(T2.trace(), 300)) / Real(T2.trace(), 300)).to_double() < 1e-40);
        for (std::size_t i = 1; i < forms.size(); ++i) CHECK(forms[i - 1].a(2, 200) < forms[i].a(2, 200));
    }
    CHECK_THROWS_AS(eigenforms(48, 10), PrecisionError);
}

TEST_CASE("window eigen sums") {
    const auto forms = eigenforms(12, 500);
    const auto& f = forms[0];
    for (std::uint64_t n : {10u, 97u, 200u, 499u}) {
        const double y = std::log(500.0);
        QuadraticNumber want(0L);
        for (std::uint64_t p = 2; p <= n; ++p) {
            bool prime = true;
            for (std::uint64_t q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
            if (prime && static_cast<double>(p) > static_cast<double>(n) - y) want += f.lambda_squared_exact(p);
        }
        CHECK(window_eigen_sum_exact(f, n, y) == want);
        CHECK(std::fabs(window_eigen_sum(f, n, y, 200).to_double() - want.to_real(200).to_double()) < 1e-14);
    }
}

TEST_CASE("eigenvalue import") {
    const auto forms = eigenforms(12, 200);
    const auto& f = forms[0];
    std::stringstream good;
    write_eigenvalues_csv(good, f, 100);
    const std::string text = good.str();
    {
        std::istringstream in(text);
        const auto r = import_eigenvalues(in, 12, &f);
        CHECK(r.accepted);
        CHECK(r.rows == 100);
        REQUIRE(r.form);
        CHECK(r.form->a_exact(97) == f.a_exact(97));
    }
    {
        // tau(2) = -25 breaks the Hecke relation at 2.
        std::istringstream in("# k=12\nn,a\n1,1\n2,-25\n3,252\n4,-1472\n5,4830\n6,-6048\n");
        const auto r = import_eigenvalues(in, 12, &f);
        CHECK_FALSE(r.accepted);
        CHECK(std::find(r.relation_violations.begin(), r.relation_violations.end(), 2u) != r.relation_violations.end());
        CHECK_FALSE(r.mismatches.empty());
        CHECK(r.mismatches.front().n == 2);
    }
    {
        std::istringstream in("");
        CHECK_THROWS_AS(import_eigenvalues(in, 12), ParseError);
    }
    {
        std::istringstream in("1,1\n2,-24\n2,-24\n");
        CHECK_THROWS_AS(import_eigenvalues(in, 12), ParseError);
    }
    {
        std::istringstream in("1,1\n2,abc\n");
        CHECK_THROWS_AS(import_eigenvalues(in, 12), ParseError);
    }
    {
        std::istringstream in("# k=16\n1,1\n2,216\n");
        CHECK_THROWS_AS(import_eigenvalues(in, 12), ConfigError);
    }
}

TEST_CASE("weight 24 exchange format round trip") {
    const auto forms = eigenforms(24, 60);
    std::stringstream ss;
    write_eigenvalues_csv(ss, forms[1], 40);
    const auto r = import_eigenvalues(ss, 24, &forms[1]);
    CHECK(r.accepted);
    CHECK(r.mismatches.empty());
}
