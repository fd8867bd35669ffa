#include "conecalib/interval.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>

namespace conecalib {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

double pad_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
  return x;
}

double pad_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

Ival ival(double a, double b) {
  return a <= b ? Ival{a, b} : Ival{b, a};
}

Ival exact(double x) { return {x, x}; }

Ival add(Ival a, Ival b) {
  return {pad_down(a.lo + b.lo, 1), pad_up(a.hi + b.hi, 1)};
}

Ival sub(Ival a, Ival b) {
  return {pad_down(a.lo - b.hi, 1), pad_up(a.hi - b.lo, 1)};
}

Ival mul(Ival a, Ival b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {pad_down(std::min({p1, p2, p3, p4}), 1),
          pad_up(std::max({p1, p2, p3, p4}), 1)};
}

Ival sqr(Ival a) {
  if (a.lo >= 0) return {pad_down(a.lo * a.lo, 1), pad_up(a.hi * a.hi, 1)};
  if (a.hi <= 0) return {pad_down(a.hi * a.hi, 1), pad_up(a.lo * a.lo, 1)};
  return {0.0, pad_up(std::max(a.lo * a.lo, a.hi * a.hi), 1)};
}

Ival scale(Ival a, double k) {
  assert(k >= 0 && "scale expects a nonnegative factor");
  return {pad_down(a.lo * k, 1), pad_up(a.hi * k, 1)};
}

Ival pow_pos(Ival base, double e) {
  assert(base.lo > 0 && "pow_pos requires a positive base");
  if (e == 0.0) return {1.0, 1.0};
  if (e > 0)
    return {pad_down(std::pow(base.lo, e)), pad_up(std::pow(base.hi, e))};
  return {pad_down(std::pow(base.hi, e)), pad_up(std::pow(base.lo, e))};
}

Ival sin_on(Ival th, double domain_end) {
  assert(th.lo > 0 && th.hi < domain_end && "cell must be interior");
  (void)domain_end;
  if (th.hi <= kHalfPi)  // rising flank (all Stretched cells land here)
    return {pad_down(std::sin(th.lo)), pad_up(std::sin(th.hi))};
  if (th.lo >= kHalfPi)  // falling flank
    return {pad_down(std::sin(th.hi)), pad_up(std::sin(th.lo))};
  // cell straddles the peak
  return {pad_down(std::min(std::sin(th.lo), std::sin(th.hi))), 1.0};
}

Ival cos_on(Ival th, double domain_end) {
  assert(th.lo > 0 && th.hi < domain_end && "cell must be interior");
  (void)domain_end;
  return {pad_down(std::cos(th.hi)), pad_up(std::cos(th.lo))};  // decreasing on (0, pi)
}

namespace {

// s*D = q*c - p*s^2/c: smooth through theta -> 0, strictly decreasing.
double sD_point(double th, double p, double q) {
  const double c = std::cos(th), s = std::sin(th);
  double v = q * c;
  if (p != 0.0) v -= p * s * s / c;
  return v;
}

// c*D = q*c^2/s - p*s: smooth through theta -> pi/2, strictly decreasing.
double cD_point(double th, double p, double q) {
  const double c = std::cos(th), s = std::sin(th);
  return q * c * c / s - p * s;
}

// Enclosure of a decreasing function from its (padded) endpoint values.
Ival decreasing_enclosure(double v_at_hi, double v_at_lo) {
  return {pad_down(v_at_hi, 8), pad_up(v_at_lo, 8)};
}

}  // namespace

Ival psi_prime_enclosure(Ival cell, const MetricParams& P, double beta) {
  const double tb = 2.0 * beta - 1.0;
  const double p = P.p_eff(), q = P.q;
  const double ba2 = (beta / P.alpha) * (beta / P.alpha);
  const double tp = std::pow(P.tau, 1.0 - 2.0 * beta);
  // Constants assembled from a handful of double ops; 4 ulps dominates their
  // accumulated rounding just like the per-op pads elsewhere.
  auto cst = [](double x) { return Ival{pad_down(x), pad_up(x)}; };

  // Weight power phi^(2b-1).
  Ival w = mul(cst(tp), pow_pos(sin_on(cell, P.domain_end), q * tb));
  if (P.family == Family::Stretched)
    w = mul(w, pow_pos(cos_on(cell, P.domain_end), p * tb));

  // cot decreases across the whole sector and tan increases on (0, pi/2), so
  // endpoint values bracket both; the slope gap D = q*cot - p*tan follows.
  auto cot_at = [](double th) { return std::cos(th) / std::sin(th); };
  const Ival cot = decreasing_enclosure(cot_at(cell.hi), cot_at(cell.lo));
  Ival D = scale(cot, q);
  Ival eta_iv = add(cst(tb - 2.0 * ba2 * (tb * p * q + p + q)),
                    mul(cst(ba2 * (tb * q * q - 2.0 * q)), sqr(cot)));
  if (p != 0.0) {
    auto tan_at = [](double th) { return std::sin(th) / std::cos(th); };
    const Ival tan = {pad_down(tan_at(cell.lo), 8), pad_up(tan_at(cell.hi), 8)};
    D = sub(D, scale(tan, p));
    eta_iv = add(eta_iv, mul(cst(ba2 * (tb * p * p - 2.0 * p)), sqr(tan)));
  }
  return mul(mul(w, D), eta_iv);
}

Ival psi_enclosure(Ival cell, const MetricParams& P, double beta) {
  const double tb = 2.0 * beta - 1.0;
  const double Qe = P.q * tb;
  const double Pe = P.p_eff() * tb;
  const double ba = beta / P.alpha;
  const double ba2 = ba * ba;
  const double tp = std::pow(P.tau, 1.0 - 2.0 * beta);
  const Ival tau_pow = {pad_down(tp), pad_up(tp)};

  const Ival s = sin_on(cell, P.domain_end);

  // Two algebraically identical groupings; each keeps the blowing-up factor
  // (cot near 0, tan near pi/2) fused with the vanishing power it rides on,
  // so the enclosure stays tight on cells hugging that end.
  const bool near_far_end =
      P.family == Family::Stretched && 0.5 * (cell.lo + cell.hi) > P.theta0;

  if (!near_far_end) {
    // psi = tau^(1-2b) * c^Pe * s^(Qe-2) * [s^2 + (b/a)^2 (sD)^2]
    Ival cP = {1.0, 1.0};
    if (P.family == Family::Stretched)
      cP = pow_pos(cos_on(cell, P.domain_end), Pe);
    const Ival sQ = pow_pos(s, Qe - 2.0);
    const Ival sd = decreasing_enclosure(sD_point(cell.hi, P.p_eff(), P.q),
                                         sD_point(cell.lo, P.p_eff(), P.q));
    const Ival bracket = add(sqr(s), scale(sqr(sd), ba2));
    return mul(mul(mul(tau_pow, cP), sQ), bracket);
  }

  // psi = tau^(1-2b) * s^Qe * c^(Pe-2) * [c^2 + (b/a)^2 (cD)^2]
  const Ival c = cos_on(cell, P.domain_end);
  const Ival sQ = pow_pos(s, Qe);
  const Ival cP = pow_pos(c, Pe - 2.0);
  const Ival cd = decreasing_enclosure(cD_point(cell.hi, P.p, P.q),
                                       cD_point(cell.lo, P.p, P.q));
  const Ival bracket = add(sqr(c), scale(sqr(cd), ba2));
  return mul(mul(mul(tau_pow, sQ), cP), bracket);
}

}  // namespace conecalib
