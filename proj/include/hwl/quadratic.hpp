#pragma once

#include "hwl/real.hpp"

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace hwl {

/// x + y sqrt(D) with rational x, y and a fixed non-square D >= 2. Rational
/// values carry y = 0 and D = 0 and combine with any field.
class QuadraticNumber {
public:
    QuadraticNumber() = default;
    QuadraticNumber(long v) : x_(v) {}  // NOLINT(google-explicit-constructor)
    QuadraticNumber(const mpz_class& v) : x_(v) {}  // NOLINT
    QuadraticNumber(const mpq_class& v) : x_(v) {}  // NOLINT
    QuadraticNumber(mpq_class x, mpq_class y, mpz_class D);

    const mpq_class& x() const { return x_; }
    const mpq_class& y() const { return y_; }
    const mpz_class& D() const { return D_; }
    bool is_rational() const { return y_ == 0; }
    bool is_zero() const { return x_ == 0 && y_ == 0; }

    /// Galois conjugate x - y sqrt(D).
    QuadraticNumber conjugate() const;
    /// Embedding with the positive square root.
    Real to_real(mpfr_bits bits) const;
    std::string str() const;

    QuadraticNumber& operator+=(const QuadraticNumber& o);
    QuadraticNumber& operator-=(const QuadraticNumber& o);
    QuadraticNumber& operator*=(const QuadraticNumber& o);
    QuadraticNumber& operator/=(const QuadraticNumber& o);
    QuadraticNumber operator-() const;

    friend bool operator==(const QuadraticNumber& a, const QuadraticNumber& b);

private:
    void normalize();
    static mpz_class common_field(const QuadraticNumber& a, const QuadraticNumber& b);

    mpq_class x_ = 0;
    mpq_class y_ = 0;
    mpz_class D_ = 0;
};

QuadraticNumber operator+(QuadraticNumber a, const QuadraticNumber& b);
QuadraticNumber operator-(QuadraticNumber a, const QuadraticNumber& b);
QuadraticNumber operator*(QuadraticNumber a, const QuadraticNumber& b);
QuadraticNumber operator/(QuadraticNumber a, const QuadraticNumber& b);
inline bool operator!=(const QuadraticNumber& a, const QuadraticNumber& b) { return !(a == b); }
std::ostream& operator<<(std::ostream& os, const QuadraticNumber& q);

/// Writes n = s^2 * D with D free of prime-square factors below `trial_limit`.
/// D is not a perfect square unless n is.
void split_square(const mpz_class& n, mpz_class& s, mpz_class& D, unsigned long trial_limit = 1'000'000);

}  // namespace hwl
