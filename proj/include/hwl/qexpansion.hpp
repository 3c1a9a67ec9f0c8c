#pragma once

// Truncated q-expansions with exact integer coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace hwl {

class QExpansion {
public:
    QExpansion() = default;
    /// coeffs[n] = b_n for n = 0..M; precision is M = coeffs.size() - 1.
    QExpansion(int weight, std::vector<mpz_class> coeffs);

    int weight() const { return weight_; }
    std::size_t precision() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const mpz_class& operator[](std::size_t n) const;
    std::span<const mpz_class> coeffs() const { return coeffs_; }
    bool is_cuspidal() const { return !coeffs_.empty() && coeffs_[0] == 0; }

    QExpansion truncated(std::size_t M) const;

    QExpansion& operator+=(const QExpansion& o);
    QExpansion& operator-=(const QExpansion& o);
    QExpansion& operator*=(const mpz_class& s);

    /// Row operation this -= s * o, without allocating a temporary.
    void subtract_multiple(const mpz_class& s, const QExpansion& o);

private:
    int weight_ = 0;
    std::vector<mpz_class> coeffs_;
};

QExpansion operator+(QExpansion a, const QExpansion& b);
QExpansion operator-(QExpansion a, const QExpansion& b);
QExpansion operator*(QExpansion a, const mpz_class& s);
/// Product truncated at the smaller precision; weights add.
QExpansion operator*(const QExpansion& a, const QExpansion& b);
bool operator==(const QExpansion& a, const QExpansion& b);

/// a^e for e >= 0, truncated at the precision of a.
QExpansion power(const QExpansion& a, unsigned e);

/// First n coefficients of the product of two integer series. Large inputs go
/// through a single big-integer multiplication (Kronecker substitution).
std::vector<mpz_class> multiply_series(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t n);

/// sigma_r(n) for n = 0..M (entry 0 is 0), r in {1, 3, 5, 7, 9, 11, 13}.
std::vector<mpz_class> divisor_sums(unsigned r, std::size_t M);

/// E_4 or E_6 to precision M.
QExpansion eisenstein(int series_weight, std::size_t M);

/// Delta = q prod (1 - q^n)^24 to precision M, via the Jacobi cube identity.
QExpansion delta(std::size_t M);

}  // namespace hwl
