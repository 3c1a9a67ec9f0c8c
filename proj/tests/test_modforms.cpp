#include "hwl/errors.hpp"
#include "hwl/modforms.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace hwl;

namespace {

// dim S_k by counting solutions of 4a + 6b = k, minus the Eisenstein series.
int dim_oracle(int k) {
    int count = 0;
    for (int a = 0; 4 * a <= k; ++a)
        if ((k - 4 * a) % 6 == 0) ++count;
    return count - 1;
}

Matrix<mpz_class> product(const Matrix<mpz_class>& a, const Matrix<mpz_class>& b) { return a * b; }

}  // namespace

TEST_CASE("cusp form dimensions") {
    for (int k = 4; k <= 200; k += 2) REQUIRE(dim_cusp(k) == dim_oracle(k));
    CHECK(dim_cusp(12) == 1);
    CHECK(dim_cusp(24) == 2);
    CHECK(dim_cusp(14) == 0);
    CHECK_THROWS_AS(dim_cusp(13), ConfigError);
}

TEST_CASE("Victor Miller basis shape") {
    for (int k : {12, 24, 36, 48, 60}) {
        const int d = dim_cusp(k);
        const auto basis = victor_miller_basis(k, 5 * d + 10);
        REQUIRE(static_cast<int>(basis.size()) == d);
        for (int i = 1; i <= d; ++i) {
            const auto& g = basis[i - 1];
            CHECK(g.weight() == k);
            CHECK(g[0] == 0);
            for (int j = 1; j <= d; ++j) CHECK(g[j] == (i == j ? 1 : 0));
        }
    }
    CHECK(victor_miller_basis(12, 30)[0] == delta(30));
}

TEST_CASE("Hecke matrices commute and multiply") {
    for (int k : {24, 36, 48}) {
        const int d = dim_cusp(k);
        const auto basis = victor_miller_basis(k, 6 * d * 5 + 10);
        const auto T2 = hecke_operator_matrix(basis, 2);
        const auto T3 = hecke_operator_matrix(basis, 3);
        const auto T5 = hecke_operator_matrix(basis, 5);
        const auto T6 = hecke_operator_matrix(basis, 6);
        CHECK(product(T2, T3) == product(T3, T2));
        CHECK(product(T2, T5) == product(T5, T2));
        CHECK(product(T2, T3) == T6);
        // T_4 = T_2^2 - 2^{k-1}
        const auto T4 = hecke_operator_matrix(basis, 4);
        auto want = product(T2, T2);
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), 2, static_cast<unsigned long>(k - 1));
        for (int i = 0; i < d; ++i) want(i, i) -= pk;
        CHECK(T4 == want);
    }
    CHECK(hecke_operator_matrix(24, 2, 40).trace() == 1080);
    CHECK(hecke_operator_matrix(12, 2, 10)(0, 0) == -24);
    CHECK_THROWS_AS(hecke_operator_matrix(24, 7, 10), PrecisionError);
}

TEST_CASE("Hecke action on Delta scales it by tau(n)") {
    const QExpansion d = delta(400);
    for (std::uint64_t n : {2u, 3u, 6u, 7u}) {
        const QExpansion t = hecke_action(d, n, 400 / n);
        for (std::size_t m = 0; m <= 400 / n; ++m) REQUIRE(t[m] == d[n] * d[m]);
    }
}

TEST_CASE("Catalan numbers") {
    for (unsigned j = 0; j <= 30; ++j) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), 2 * j, j);
        REQUIRE(catalan(j) == c / (j + 1));
    }
}

TEST_CASE("power decomposition matches the Chebyshev identity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(0.0, 3.14159);
    for (unsigned m = 1; m <= 16; ++m) {
        const auto pd = power_decomposition(m);
        for (int t = 0; t < 10; ++t) {
            const double th = U(rng);
            const double lhs = std::pow(2 * std::cos(th), static_cast<double>(m));
            REQUIRE(pd.evaluate_chebyshev(th) == doctest::Approx(lhs).epsilon(1e-9).scale(std::pow(2.0, m)));
        }
        CHECK(pd.constant() == (m % 2 ? mpz_class(0) : catalan(m / 2)));
    }
    CHECK(power_decomposition(2).coeffs == std::vector<mpz_class>{1, 0, 1});
    CHECK(power_decomposition(4).coeffs == std::vector<mpz_class>{2, 0, 3, 0, 1});
    CHECK_THROWS_AS(power_decomposition(0), ConfigError);
}

TEST_CASE("basis cache round trip and corruption recovery") {
    const auto dir = std::filesystem::temp_directory_path() / "hwl_test_basis_cache";
    std::filesystem::remove_all(dir);
    bool hit = true;
    const auto a = victor_miller_basis_cached(36, 40, dir.string(), &hit);
    CHECK_FALSE(hit);
    const auto b = victor_miller_basis_cached(36, 40, dir.string(), &hit);
    CHECK(hit);
    CHECK(a == b);
    // Flip a payload byte: the checksum catches it and the basis is rebuilt.
    const auto file = dir / "vm_k36_M40.bin";
    REQUIRE(std::filesystem::exists(file));
    {
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(20);
        f.put('\x7f');
    }
    const auto c = victor_miller_basis_cached(36, 40, dir.string(), &hit);
    CHECK_FALSE(hit);
    CHECK(c == a);
    std::stringstream ss("HWLVxxxxxxxx");
    int k = 0;
    std::size_t M = 0;
    CHECK_THROWS_AS(read_basis(ss, k, M), ParseError);
    std::filesystem::remove_all(dir);
}
