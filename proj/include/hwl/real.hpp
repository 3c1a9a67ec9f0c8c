#pragma once

// RAII wrapper around an MPFR value. Every Real carries its own precision;
// binary operations produce a result at the larger of the two operand
// precisions, so mixed-precision code never silently truncates.

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hwl {

using mpfr_bits = mpfr_prec_t;

/// Number of bits needed to carry `digits` decimal digits (plus a small guard).
mpfr_bits bits_for_digits(int digits);

class Real {
public:
    static constexpr mpfr_bits kDefaultBits = 256;

    explicit Real(mpfr_bits bits = kDefaultBits);
    Real(long v, mpfr_bits bits);
    Real(double v, mpfr_bits bits);
    Real(const mpz_class& v, mpfr_bits bits);
    Real(const mpq_class& v, mpfr_bits bits);
    Real(const std::string& decimal, mpfr_bits bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_bits precision() const { return mpfr_get_prec(v_); }
    /// Rounds the stored value to a new precision.
    void set_precision(mpfr_bits bits);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    /// Scientific notation with `digits` significant digits.
    std::string str(int digits = 30) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// log2 of |value| (approximate, via exponent); -inf for zero.
    double log2_abs() const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator*=(long o);
    Real& operator/=(long o);
    Real operator-() const;

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real cos(const Real& a);
Real sin(const Real& a);
Real pow(const Real& a, const Real& e);
Real pow(const Real& a, long e);
/// log Gamma(x) for x > 0.
Real lgamma(const Real& a);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real pi(mpfr_bits bits);
/// 2^e at the given precision (e may be hugely negative).
Real pow2(long e, mpfr_bits bits);
/// exp(x) where x is a double log-magnitude; handles values far below double range.
Real exp_of(double log_value, mpfr_bits bits);

}  // namespace hwl
