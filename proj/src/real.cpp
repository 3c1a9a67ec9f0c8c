#include "hwl/real.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hwl {

namespace {
constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_bits wider(const Real& a, const Real& b) {
    return std::max(a.precision(), b.precision());
}
}  // namespace

mpfr_bits bits_for_digits(int digits) {
    if (digits < 1) throw std::invalid_argument("digits must be positive");
    return static_cast<mpfr_bits>(std::ceil(digits * 3.3219280948873626)) + 16;
}

Real::Real(mpfr_bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, kRnd);
}

Real::Real(double v, mpfr_bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, kRnd);
}

Real::Real(const mpz_class& v, mpfr_bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, v.get_mpz_t(), kRnd);
}

Real::Real(const mpq_class& v, mpfr_bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, v.get_mpq_t(), kRnd);
}

Real::Real(const std::string& decimal, mpfr_bits bits) {
    mpfr_init2(v_, bits);
    if (mpfr_set_str(v_, decimal.c_str(), 10, kRnd) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("not a decimal number: " + decimal);
    }
}

Real::Real(const Real& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, kRnd);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

void Real::set_precision(mpfr_bits bits) { mpfr_prec_round(v_, bits, kRnd); }

std::string Real::str(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

double Real::log2_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpfr_get_d_2exp(&exp2, v_, kRnd);
    return std::log2(std::fabs(mant)) + static_cast<double>(exp2);
}

Real& Real::operator+=(const Real& o) {
    if (o.precision() > precision()) set_precision(o.precision());
    mpfr_add(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator-=(const Real& o) {
    if (o.precision() > precision()) set_precision(o.precision());
    mpfr_sub(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator*=(const Real& o) {
    if (o.precision() > precision()) set_precision(o.precision());
    mpfr_mul(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator/=(const Real& o) {
    if (o.precision() > precision()) set_precision(o.precision());
    mpfr_div(v_, v_, o.v_, kRnd);
    return *this;
}

Real& Real::operator*=(long o) {
    mpfr_mul_si(v_, v_, o, kRnd);
    return *this;
}

Real& Real::operator/=(long o) {
    mpfr_div_si(v_, v_, o, kRnd);
    return *this;
}

Real Real::operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, kRnd);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(wider(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), kRnd);
    return r;
}

Real operator*(const Real& a, long b) {
    Real r(a.precision());
    mpfr_mul_si(r.raw(), a.raw(), b, kRnd);
    return r;
}

Real operator*(long a, const Real& b) { return b * a; }

Real operator/(const Real& a, long b) {
    Real r(a.precision());
    mpfr_div_si(r.raw(), a.raw(), b, kRnd);
    return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

Real abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.raw(), a.raw(), kRnd);
    return r;
}

#define HWL_UNARY(name, fn)                 \
    Real name(const Real& a) {              \
        Real r(a.precision());              \
        fn(r.raw(), a.raw(), kRnd);         \
        return r;                           \
    }

HWL_UNARY(sqrt, mpfr_sqrt)
HWL_UNARY(exp, mpfr_exp)
HWL_UNARY(log, mpfr_log)
HWL_UNARY(cos, mpfr_cos)
HWL_UNARY(sin, mpfr_sin)

#undef HWL_UNARY

Real lgamma(const Real& a) {
    Real r(a.precision());
    int sign = 0;
    mpfr_lgamma(r.raw(), &sign, a.raw(), kRnd);
    return r;
}

Real pow(const Real& a, const Real& e) {
    Real r(wider(a, e));
    mpfr_pow(r.raw(), a.raw(), e.raw(), kRnd);
    return r;
}

Real pow(const Real& a, long e) {
    Real r(a.precision());
    mpfr_pow_si(r.raw(), a.raw(), e, kRnd);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pi(mpfr_bits bits) {
    Real r(bits);
    mpfr_const_pi(r.raw(), kRnd);
    return r;
}

Real pow2(long e, mpfr_bits bits) {
    Real r(1L, bits);
    mpfr_mul_2si(r.raw(), r.raw(), e, kRnd);
    return r;
}

Real exp_of(double log_value, mpfr_bits bits) {
    if (std::isinf(log_value) && log_value < 0) return Real(bits);
    Real x(log_value, bits);
    return exp(x);
}

}  // namespace hwl
