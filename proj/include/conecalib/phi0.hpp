#pragma once

#include "conecalib/catalog.hpp"
#include "conecalib/profile.hpp"

#include <string>
#include <utility>
#include <vector>

namespace conecalib {

// Compactly supported radial calibration profile Phi0: equals a comass-
// admissible seed near theta0, is steered to zero on both sides along the
// steepest admissible slope field y' = +-alpha*sqrt(E - y^2) (E = envelope),
// then globally mollified.  The result is smooth, vanishes off a compact
// sub-sector, hits 1 at theta0, and keeps the slope-field residual
// y^2 + (y'/alpha)^2 - E nonpositive up to the stated budget.

struct Phi0Profile {
  AngularProfile profile;
  double support_lo = 0, support_hi = 0;  // Phi0 == 0 outside
  double theta_c = 0, theta_d = 0;        // splice points seed -> descent
  double mollify_eps = 0;
  double residual_max = 0;   // max over the verification grid
  double residual_mean = 0;
  double value_at_theta0 = 0;
};

// Power-law seed phi^beta (Stretched rows).
AngularProfile power_seed(const MetricParams& P, double beta);

// HalfDisc rows: seed sin^m with the smallest admissible integer exponent.
int half_disc_seed_exponent(const MetricParams& P);
AngularProfile half_disc_seed(const MetricParams& P);

// Row-3 k = 4 seed from the glued ODE calibration (comass <= 1 + 5.7e-7, so
// Phi0 built on it carries a relaxed residual budget of 1e-6).
AngularProfile ode_calibrated_seed();

// offset: initial distance of the splice points from theta0 (halved toward
// theta0, <= 10 times, if a descent curve fails to reach zero inside the
// sector).  Throws std::runtime_error if the seed is not admissible at the
// splice points or the residual budget cannot be met.
Phi0Profile build_phi0(const MetricParams& P, const AngularProfile& seed,
                       double offset = 0.1, double eps = 3e-6,
                       double residual_budget = 1e-9);

// Spot check that the descent slope field points the right way: for samples
// (theta, y) with 0 < y < sqrt(envelope), the steered slope is real and its
// magnitude grows with envelope headroom.
bool slope_field_monotonicity_check(
    const MetricParams& P, const std::vector<std::pair<double, double>>& grid);

}  // namespace conecalib
