#pragma once

#include "conecalib/catalog.hpp"
#include "conecalib/profile.hpp"

#include <vector>

namespace conecalib {

// Exact-comass exponent calibration for the row-3, k = 4 cone, the one shape
// the power-law routes cannot certify.  A variable exponent bump lambda(theta)
// rides the comass ceiling exactly: along solutions of the ODE below the
// squared comass of the calibrating form is identically 1.

// Dense-output ODE solution (Dormand-Prince 5(4), cubic Hermite between
// accepted steps).
struct OdeSolution {
  std::vector<double> knots, values, derivs;
  double theta_start = 0, theta_end = 0;
  long steps = 0;
  double max_err_est = 0;   // largest accepted per-step error estimate
  bool clamp_flag = false;  // square-root argument fell below -1e-12
  double clamp_theta = 0;

  double eval(double theta) const;
  double eval_deriv(double theta) const;
  std::vector<double> zeros() const;  // interior sign changes, bisected
};

// Squared comass along the exponent profile (value, derivative) at theta,
// for the k = 4 geometry.  Identically 1 on exact ODE solutions.
double star_comass_sq(double theta, double lambda_val, double lambda_deriv);

// Integrates the ceiling-riding exponent lambda1 with lambda1(theta_start)=0.
// abs/rel tolerance 1e-10, max step 5e-4.  The square-root argument is
// clamped at zero; a dip below -1e-12 before theta_end means the profile left
// the admissible region, which throws std::runtime_error.
OdeSolution solve_lambda1(double theta_start = 1.007, double theta_end = 1.2);

// General entry point (nonzero initial exponent allowed); solve_lambda1 is
// the lambda0 = 0 case.
OdeSolution solve_lambda1_from(double theta_start, double lambda0,
                               double theta_end);

// Tapers lambda1 to zero outside [theta_start, theta1 + w] where theta1 is
// lambda1's second interior zero (the upward crossing near 1.21): smooth
// exponential steps of width w on [start, start+w] and [theta1, theta1+w],
// identity in between, zero outside.  Both windows start at w = 0.01 and are
// halved together (<= 10 times) until the glued profile's comass passes
// <= 1 + 1e-6 on a verification grid plus certified tails.
AngularProfile glue_lambda1(const OdeSolution& sol, double window = 0.01);

// C-infinity step: 0 at u<=0, 1 at u>=1, exp(-1/u)/(exp(-1/u)+exp(-1/(1-u)))
// between.
double smooth_step(double u);

}  // namespace conecalib
