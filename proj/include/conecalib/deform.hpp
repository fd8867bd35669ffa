#pragma once

#include "conecalib/catalog.hpp"
#include "conecalib/profile.hpp"

#include <string>
#include <utility>
#include <vector>

namespace conecalib {

// Compactly supported exponent bumps that push a calibration's density all
// the way to an end of the sector without breaking the comass bound.  The
// bump raises the local vanishing order from t to N near the chosen end and
// dies off through a log-sine ramp on (x/2, x).

enum class Side { NearZero, NearPiOver2 };

struct DeformationSpec {
  double k = 0, t = 0;  // exponent pair of the undeformed density (k = b*p, t = b*q)
  double C = 0;         // normalisation; C = tau^-b reproduces psi when the bump is off
  int N = 0;            // target vanishing order at the deformed end
  double x0 = 0;        // bump support radius (in the distance-to-end variable)
  double eps = 0;       // mollification width
  Side side = Side::NearZero;
};

// integral of 1/log(sin) over [a, b], 0 < a <= b < pi.  The integrand extends
// continuously by 0 to gamma = 0.  Adaptive Simpson, |error| <= 1e-12.
double log_sin_integral(double a, double b);

// The raw (Lipschitz) ramp: N-t on [0, x/2], log-sine decay on (x/2, x), 0
// beyond.  `theta` is measured from the deformed end.
double lambda_x(double theta, double x, double N, double t);
double lambda_x_deriv(double theta, double x, double N, double t);

// Smooths a profile by a 64-node discrete bump convolution of width eps.
// Convex weights: constants (and any locally constant stretch, eps-deep) are
// reproduced exactly.
AngularProfile mollify(const AngularProfile& in, double eps);

// Squared comass density of the deformed form at angle theta, given the bump
// value/derivative there.  Arranged so lambda == 0 recovers psi_beta exactly.
double deformed_comass_sq(double theta, const MetricParams& P,
                          const DeformationSpec& spec, double lambda_val,
                          double lambda_deriv);

// Local slope ratio of the mollified ramp against the ideal log-sine slope;
// == 1 on the unmollified ramp interior, and must stay <= 2 across the
// mollified transition for the comass estimate to close.
double slope_ratio(const AngularProfile& mollified, double theta, double x0,
                   double N_minus_t);

// (sin^rho(x) / log_sin_integral(x/2, x))^2 for each x: the squared headroom
// factor that must decay to 0 as the bump support shrinks.
std::vector<double> vanishing_limit_check(double rho,
                                          const std::vector<double>& xs);

// Ambient-dimension parity gate for the codimension-one glueing: both sphere
// factors even and >= 4.
bool ambient_parity_check(int r, int s);

struct DeformationReport {
  double max_residual = 0;  // max over grids of (deformed comass^2 - 1)
  double x0 = 0, eps = 0;   // final accepted bump geometry (shared by both ends)
  bool parity_c1 = false;   // true when the parity gate makes the bump unnecessary
  int halvings = 0;         // support shrink steps taken before acceptance
  std::string note;
};

// Builds the two-ended exponent bump for a row-1 cone (r, s) at exponent
// beta: requires certify(P, beta) == Global.  N_zero / N_end are the target
// orders at theta = 0 / pi/2; each must exceed t (resp. k) with
// N - q/2 - 1 (resp. N - p/2 - 1) a positive even integer.  x0 is halved
// (with eps = x0/6 tracking it) until the deformed comass stays <= 1 + 1e-6
// on a 1e5-point grid plus clustered samples at the bump breakpoints.
std::pair<AngularProfile, DeformationReport> build_theorem_c_deformation(
    const MetricParams& P, double beta, int N_zero, int N_end, double x0 = 0.1,
    double eps = -1);

}  // namespace conecalib
