#include "hwl/bessel.hpp"

#include "hwl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hwl {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

}  // namespace

double log_first_term_bound(long nu, double x) {
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    const double v = static_cast<double>(nu);
    return v * std::log(x / 2) - std::lgamma(v + 1);
}

double log_kapteyn_bound(long nu, double x) {
    const double v = static_cast<double>(nu);
    if (x <= 0) return -std::numeric_limits<double>::infinity();
    if (x >= v) return 0;
    const double z = x / v;
    const double s = std::sqrt((1 - z) * (1 + z));
    return v * (std::log(z) + s - std::log1p(s));
}

double log_bessel_bound(long nu, double x) {
    double b = 0;
    if (nu >= 1) b = std::min(b, log_first_term_bound(nu, x));
    if (nu >= 1 && x < static_cast<double>(nu)) b = std::min(b, log_kapteyn_bound(nu, x));
    return b;
}

BesselValue bessel_j(long order, const Real& x, int digits) {
    if (order < 1) throw ConfigError("bessel_j: order must be at least 1");
    if (digits < 1) throw ConfigError("bessel_j: digits must be positive");
    if (x.sign() < 0) throw ConfigError("bessel_j: x must be nonnegative");
    const double xd = x.to_double();
    const double nu = static_cast<double>(order);
    if (xd > 10 * nu) {
        throw PrecisionError("bessel_j: x > 10 * order is outside the power-series regime");
    }
    BesselValue out;
    const mpfr_bits out_bits = bits_for_digits(digits);
    if (x.is_zero()) {
        out.value = Real(0L, out_bits);
        return out;
    }
    // Partial sums never exceed a_0 e^{x^2/(4(nu+1))} in magnitude, a_0 = (x/2)^nu / nu!;
    // carry that many extra bits.
    const double log_a0 = nu * std::log(xd / 2) - std::lgamma(nu + 1);
    const double cancel_bits = std::max(0.0, (log_a0 + xd * xd / (4 * (nu + 1))) / kLn2);
    if (cancel_bits > 200000) {
        throw PrecisionError("bessel_j: series cancellation exceeds the precision budget");
    }
    const double nterms_est = std::max(8.0, 2.0 * xd + 64);
    const mpfr_bits bits = out_bits + static_cast<mpfr_bits>(cancel_bits) +
                           static_cast<mpfr_bits>(std::log2(nterms_est)) + 32;

    Real half(bits);
    mpfr_div_2ui(half.raw(), x.raw(), 1, MPFR_RNDN);
    const Real q = half * half;  // x^2 / 4
    Real a = exp(Real(static_cast<long>(order), bits) * log(half) - lgamma(Real(order + 1, bits)));
    Real sum = a;
    Real abs_sum = a;
    const Real eps = pow2(-static_cast<long>(bits) + 8, bits);
    long t = 0;
    for (;; ++t) {
        a *= q;
        a /= (t + 1);
        a /= (t + 1 + order);
        a = -a;
        const double ratio = xd * xd / 4 / ((t + 2.0) * (t + 2.0 + nu));
        if (ratio < 1 && abs(a) <= eps * abs(sum)) {
            // Alternating with decreasing magnitudes from here: the remainder is below |a|.
            out.error_bound = abs(a).to_double();
            break;
        }
        sum += a;
        abs_sum += abs(a);
    }
    // Each of the t+2 additions, and the exp/lgamma start, contributes at most a few ulps.
    const Real rounding = abs_sum * pow2(-static_cast<long>(bits) + 4, bits) * static_cast<long>(t + 8);
    out.error_bound += rounding.to_double();
    out.value = sum;
    out.value.set_precision(out_bits);
    out.error_bound += std::ldexp(std::max(1.0, std::fabs(out.value.to_double())), -static_cast<int>(out_bits));
    return out;
}

BesselValue bessel_j(long order, double x, int digits) {
    return bessel_j(order, Real(x, bits_for_digits(digits) + 64), digits);
}

BesselValue bessel_recurrence(long nu, const Real& x, mpfr_bits bits) {
    if (nu < 0) throw ConfigError("bessel_recurrence: order must be nonnegative");
    if (x.sign() <= 0) throw ConfigError("bessel_recurrence: x must be positive");
    const double xd = x.to_double();
    double amp_bits = 0;
    if (xd < static_cast<double>(nu)) amp_bits = -2 * log_kapteyn_bound(nu, xd) / kLn2;
    const mpfr_bits p = bits + 32 + static_cast<mpfr_bits>(std::ceil(std::log2(nu + 2.0))) +
                        static_cast<mpfr_bits>(std::ceil(amp_bits));
    Real X(p);
    mpfr_set(X.raw(), x.raw(), MPFR_RNDN);
    Real j0(p), j1(p), j2(p), inv(p), t(p);
    mpfr_j0(j0.raw(), X.raw(), MPFR_RNDN);
    mpfr_j1(j1.raw(), X.raw(), MPFR_RNDN);
    BesselValue out;
    out.certified = false;
    if (nu == 0) {
        out.value = j0;
    } else {
        mpfr_ui_div(inv.raw(), 2, X.raw(), MPFR_RNDN);
        for (long n = 1; n < nu; ++n) {
            mpfr_mul_ui(t.raw(), inv.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
            mpfr_fms(j2.raw(), t.raw(), j1.raw(), j0.raw(), MPFR_RNDN);
            mpfr_swap(j0.raw(), j1.raw());
            mpfr_swap(j1.raw(), j2.raw());
        }
        out.value = j1;
    }
    out.value.set_precision(bits);
    out.error_bound = std::ldexp(1.0, -static_cast<int>(bits) + 4);
    return out;
}

BesselValue bessel_kernel(long nu, const Real& x, mpfr_bits bits) {
    if (nu < 0) throw ConfigError("bessel_kernel: order must be nonnegative");
    const double xd = x.to_double();
    const double v = static_cast<double>(nu);
    const bool use_mpfr = (nu <= 400 && xd <= 40 * (v + 25)) || xd <= 0.5 * v;
    if (!use_mpfr) return bessel_recurrence(nu, x, bits);
    BesselValue out;
    out.value = Real(bits);
    mpfr_jn(out.value.raw(), nu, x.raw(), MPFR_RNDN);
    // Correct rounding, plus the rounding of x itself (|J'| <= 1).
    out.error_bound = std::ldexp(1.0 + 2 * xd, -static_cast<int>(std::min(bits, x.precision())) + 1);
    return out;
}

}  // namespace hwl
