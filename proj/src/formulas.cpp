#include "conecalib/formulas.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace conecalib {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_domain(double theta, const MetricParams& P) {
  if (!(theta >= 0.0) || !(theta <= P.domain_end))
    throw std::domain_error("theta outside [0, domain_end]");
}
}  // namespace

double envelope(double theta, const MetricParams& P) {
  check_domain(theta, P);
  const double s = std::sin(theta);
  const double sq = std::pow(s, P.q);
  if (P.family == Family::HalfDisc) return sq;
  return std::pow(std::cos(theta), P.p) * sq / P.tau;
}

double phi(double theta, const MetricParams& P) {
  // The angular weight coincides with the slope-field envelope: the half-disc
  // rows carry no cosine factor and are normalised with tau = 1.
  return envelope(theta, P);
}

double slope_gap(double theta, const MetricParams& P) {
  const double c = std::cos(theta), s = std::sin(theta);
  double d = P.q * (c / s);
  const double p = P.p_eff();
  if (p != 0.0) d -= p * (s / c);
  return d;
}

double phi_deriv(double theta, const MetricParams& P) {
  return phi(theta, P) * slope_gap(theta, P);
}

double eta(double theta, const MetricParams& P, double beta) {
  const double p = P.p_eff(), q = P.q;
  const double ba = beta / P.alpha, ba2 = ba * ba;
  const double tb = 2.0 * beta - 1.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const double cot = c / s;
  double v = tb - 2.0 * ba2 * (tb * p * q + p + q) +
             ba2 * (tb * q * q - 2.0 * q) * cot * cot;
  if (p != 0.0) {
    const double tan = s / c;
    v += ba2 * (tb * p * p - 2.0 * p) * tan * tan;
  }
  return v;
}

namespace {

double psi_interior(double theta, const MetricParams& P, double beta) {
  const double d = slope_gap(theta, P);
  const double ba = beta / P.alpha;
  return std::pow(phi(theta, P), 2.0 * beta - 1.0) * (1.0 + ba * ba * d * d);
}

// Shared endpoint rule: the weight vanishes like u^vanish_exp at the end, so
// psi ~ tau^(1-2b) * u^(vanish_exp*(2b-1) - 2) * (b*vanish_exp/alpha)^2 there.
double endpoint_limit(double vanish_exp, const MetricParams& P, double beta) {
  const double E = vanish_exp * (2.0 * beta - 1.0);
  if (std::abs(E - 2.0) <= 1e-12) {
    const double a = beta * vanish_exp / P.alpha;
    return a * a * std::pow(P.tau, 1.0 - 2.0 * beta);
  }
  return E > 2.0 ? 0.0 : kInf;
}

}  // namespace

double psi_limit_at_zero(const MetricParams& P, double beta) {
  return endpoint_limit(P.q, P, beta);
}

double psi_limit_at_end(const MetricParams& P, double beta) {
  // HalfDisc sectors end where sin vanishes again; Stretched ones where cos does.
  return endpoint_limit(P.family == Family::HalfDisc ? P.q : P.p, P, beta);
}

bool psi_bounded(const MetricParams& P, double beta) {
  return std::isfinite(psi_limit_at_zero(P, beta)) &&
         std::isfinite(psi_limit_at_end(P, beta));
}

double psi(double theta, const MetricParams& P, double beta) {
  check_domain(theta, P);
  if (theta == 0.0) return psi_limit_at_zero(P, beta);
  if (theta == P.domain_end) return psi_limit_at_end(P, beta);
  return psi_interior(theta, P, beta);
}

double psi_deriv(double theta, const MetricParams& P, double beta) {
  check_domain(theta, P);
  return std::pow(phi(theta, P), 2.0 * beta - 1.0) * slope_gap(theta, P) *
         eta(theta, P, beta);
}

QuadraticTest quadratic_test(const MetricParams& P, double beta) {
  QuadraticTest t;
  // Integer exponents at b = 1 admit an exact evaluation; bail out to doubles
  // for exponents large enough to overflow the discriminant in 128 bits.
  if (P.integral && beta == 1.0 && P.li < (1LL << 30)) {
    const long long p = P.pi, q = P.qi, L = P.li + 2;
    const long long A = 4 * (p * p - 2 * p);
    const long long B = L * L - 8 * (p * q + p + q);
    const long long C = 4 * (q * q - 2 * q);
    const __int128 disc = static_cast<__int128>(B) * B -
                          static_cast<__int128>(4) * A * C;
    t.A = static_cast<double>(A);
    t.B = static_cast<double>(B);
    t.C = static_cast<double>(C);
    t.discriminant = static_cast<double>(disc);
    t.exact = true;
    return t;
  }
  const double p = P.p_eff(), q = P.q;
  const double tb = 2.0 * beta - 1.0;
  const double a2 = P.alpha * P.alpha, b2 = beta * beta;
  t.A = 4.0 * (tb * p * p - 2.0 * p);
  t.B = 4.0 * a2 * tb / b2 - 8.0 * (tb * p * q + p + q);
  t.C = 4.0 * (tb * q * q - 2.0 * q);
  t.discriminant = t.B * t.B - 4.0 * t.A * t.C;
  t.exact = false;
  return t;
}

double sigma_bound(const MetricParams& P) {
  if (P.row_id != 1)
    throw std::domain_error("sigma bound is specific to row 1");
  const double S = P.p + P.q;
  return (S - 2.0) * (S - 18.0);
}

}  // namespace conecalib
