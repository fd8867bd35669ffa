#pragma once

#include "conecalib/catalog.hpp"

namespace conecalib {

// Pointwise calibration formulas.  Notation used throughout:
//   c = cos(theta), s = sin(theta)
//   phi(theta)   = c^p s^q / tau          (peak-normalised weight; s^q for HalfDisc)
//   D(theta)     = q*cot(theta) - p*tan(theta)   ("slope gap"; p = 0 for HalfDisc)
//   psi_beta     = phi^(2b-1) * (1 + (b/alpha)^2 D^2)
// psi_beta is the squared pointwise norm of the degree-b test form; a cone is
// certified once psi_beta <= 1 on the whole sector (or a subinterval).

double envelope(double theta, const MetricParams& P);  // tau * phi = raw weight
double phi(double theta, const MetricParams& P);
double phi_deriv(double theta, const MetricParams& P);  // = phi * D
double slope_gap(double theta, const MetricParams& P);  // D

double eta(double theta, const MetricParams& P, double beta);
double psi(double theta, const MetricParams& P, double beta);
double psi_deriv(double theta, const MetricParams& P, double beta);  // = phi^(2b-1) * D * eta

// One-sided limits of psi at the sector ends.  Returns +inf when the weight
// vanishes too slowly to tame the cot/tan blow-up (exponent*(2b-1) < 2),
// the finite boundary value when the race is exactly balanced (== 2), and 0
// otherwise.
double psi_limit_at_zero(const MetricParams& P, double beta);
double psi_limit_at_end(const MetricParams& P, double beta);
bool psi_bounded(const MetricParams& P, double beta);

// Sign test for eta away from theta0: (4 alpha^2 / b^2) * eta * tan^2(theta)
// equals A Y^2 + B Y + C in Y = tan^2(theta).  A negative discriminant with
// A > 0 certifies eta > 0 on the whole sector.  Coefficients are computed in
// 64-bit integer arithmetic when b = 1 and the exponents are integral.
struct QuadraticTest {
  double A = 0, B = 0, C = 0;
  double discriminant = 0;
  bool exact = false;  // true when evaluated in integer arithmetic
};
QuadraticTest quadratic_test(const MetricParams& P, double beta);

// Row-1 shortcut at b = 1: 4 alpha^2 eta >= (S-2)(S-18) pointwise, with
// S = p + q = 2(r+s) - 4.  Returns (S-2)(S-18); nonnegative means eta >= 0
// on the whole sector and the shortcut applies.
double sigma_bound(const MetricParams& P);

}  // namespace conecalib
