#pragma once

#include "conecalib/catalog.hpp"

namespace conecalib {

// Just enough outward-rounded interval arithmetic to bound psi on a cell.
// libm results are padded by a fixed ulp margin rather than tracking exact
// rounding; ULP_PAD = 4 dominates the <= 2 ulp error of every function used.

struct Ival {
  double lo = 0, hi = 0;
};

inline constexpr int ULP_PAD = 4;

double pad_up(double x, int ulps = ULP_PAD);
double pad_down(double x, int ulps = ULP_PAD);

Ival ival(double a, double b);       // unordered endpoints accepted
Ival exact(double x);

Ival add(Ival a, Ival b);
Ival sub(Ival a, Ival b);
Ival mul(Ival a, Ival b);
Ival sqr(Ival a);
Ival scale(Ival a, double k);

// base must be positive; exponent e >= 0.  Monotone in the base.
Ival pow_pos(Ival base, double e);

// Enclosures on a sub-cell of (0, domain_end); the cell must stay strictly
// inside the open sector.
Ival sin_on(Ival th, double domain_end);
Ival cos_on(Ival th, double domain_end);

// Enclosure of psi_beta over the cell.  Internally picks the algebraic form
// (sD or cD grouping) that stays well-conditioned near the cell's end of the
// sector, so cells hugging an endpoint still get tight bounds.
Ival psi_enclosure(Ival cell, const MetricParams& P, double beta);

// Enclosure of the derivative of psi_beta over the cell.  First-order tight
// where the derivative vanishes, which makes mean-value bounds collapse fast
// around a flat maximum.
Ival psi_prime_enclosure(Ival cell, const MetricParams& P, double beta);

}  // namespace conecalib
