#pragma once

#include <cstddef>

// Modified Bessel function of the first kind, order zero, for real z >= 0.
//
// Products of e^{-a} I0(a) over macrofractions of 1e3..1e6 oscillators
// underflow quickly, so everything downstream works with logarithms.
//
//   z <= 20 : power series  sum_k (z^2/4)^k / (k!)^2  (positive terms)
//   z  > 20 : Hankel asymptotic series  e^z / sqrt(2 pi z) * sum_k c_k / z^k,
//             truncated once terms drop below machine epsilon. The neglected
//             remainder is O(e^{-2z}).
namespace qbm::specfun {

struct I0Result {
    double value{1.0};      // overflows to +inf beyond z ~ 713
    double log_value{0.0};
};

I0Result bessel_i0(double z);

// log(e^{-z} I0(z)), accurate for all z >= 0. This is the per-oscillator
// log time-averaged factor.
double log_scaled_i0(double z);

// (1/pi) * int_0^pi exp(z cos t) dt by the composite trapezoid rule on
// `panels` panels. Independent of bessel_i0; intended as a test oracle.
double bessel_i0_oracle(double z, std::size_t panels);

// Same integral scaled by e^{-z}, usable for large z.
double bessel_i0_oracle_scaled(double z, std::size_t panels);

// Leading-order asymptotic in log form: z - ln(2 pi z) / 2.
double i0_asymptotic(double z);

} // namespace qbm::specfun
