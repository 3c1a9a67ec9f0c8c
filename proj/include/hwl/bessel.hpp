#pragma once

// Bessel functions J_nu(x) of integer order in arbitrary precision, with
// magnitude bounds used to certify truncations of the trace formula.

#include "hwl/real.hpp"

namespace hwl {

struct BesselValue {
    Real value;
    double error_bound = 0;  // absolute
    bool certified = true;   // false when error_bound is an estimate
};

/// Ascending power series, absolute error below 10^-digits (relative to max(1, |J|)).
/// Requires order >= 1 and x <= 10 * order; throws PrecisionError outside that
/// regime or when the cancellation would need more than 200000 bits.
BesselValue bessel_j(long order, const Real& x, int digits);
BesselValue bessel_j(long order, double x, int digits);

/// ln of (x/2)^nu / nu!, an upper bound on |J_nu(x)| for x >= 0.
double log_first_term_bound(long nu, double x);
/// ln of (z e^{sqrt(1-z^2)} / (1 + sqrt(1-z^2)))^nu with z = x/nu, valid for 0 < x <= nu.
double log_kapteyn_bound(long nu, double x);
/// ln of the smallest of the bounds above and |J| <= 1.
double log_bessel_bound(long nu, double x);

/// Forward three-term recurrence from J_0(x), J_1(x). The precision is raised to
/// absorb the growth of rounding errors when x < nu; the error is an estimate.
BesselValue bessel_recurrence(long nu, const Real& x, mpfr_bits bits);

/// J_nu(x) at `bits` of precision: the correctly rounded MPFR routine where it is
/// fast (small orders, or x well below nu), the recurrence otherwise.
BesselValue bessel_kernel(long nu, const Real& x, mpfr_bits bits);

}  // namespace hwl
