#pragma once

// Kloosterman sums S(m, n; c) = sum over units x mod c of e((m x + n xbar) / c).

#include "hwl/real.hpp"

#include <cstdint>
#include <vector>

namespace hwl {

/// Per-modulus tables shared by every (m, n) at the same c.
class KloostermanModulus {
public:
    explicit KloostermanModulus(std::uint64_t c);

    std::uint64_t modulus() const { return c_; }
    std::uint64_t totient() const { return units_.size(); }

    /// Folded counts N_r + N_{c-r}, r = 0..c/2, of m x + n xbar mod c over units x.
    std::vector<std::uint64_t> folded_histogram(std::uint64_t m, std::uint64_t n) const;

    /// S(m, n; c) at `bits` of precision (cosines carry extra guard bits).
    Real sum(std::uint64_t m, std::uint64_t n, mpfr_bits bits) const;
    /// S(m, n; c) in long double; |error| <= *error_bound.
    long double sum_ld(std::uint64_t m, std::uint64_t n, double* error_bound) const;

private:
    const std::vector<Real>& cos_table(mpfr_bits bits) const;
    const std::vector<long double>& cos_table_ld() const;

    std::uint64_t c_;
    std::vector<std::uint64_t> units_;
    std::vector<std::uint64_t> inverses_;
    mutable std::vector<Real> cos_;
    mutable mpfr_bits cos_bits_ = 0;
    mutable std::vector<long double> cos_ld_;
};

/// S(m, n; c) in high precision.
Real kloosterman(std::uint64_t m, std::uint64_t n, std::uint64_t c, mpfr_bits bits = Real::kDefaultBits);

/// Number of divisors of c.
std::uint64_t divisor_count(std::uint64_t c);

/// d(c) sqrt(c) sqrt(gcd(m, n, c)).
double weil_bound(std::uint64_t m, std::uint64_t n, std::uint64_t c);

}  // namespace hwl
