#pragma once

#include "conecalib/formulas.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace conecalib {

enum class Verdict { Global, Local, NoCertificate };
enum class Method { AnalyticSigmaBound, AnalyticDiscriminant, CertifiedSup };

const char* to_string(Verdict v);
const char* to_string(Method m);

struct ComassVerdict {
  Verdict verdict = Verdict::NoCertificate;
  Method method = Method::CertifiedSup;
  double beta = 1;
  double tol = 1e-9;
  // Certified upper bound for psi over the whole sector; +inf when an
  // endpoint limit diverges.  Populated for every verdict.
  double sup_psi = 0;
  double sup_location = 0;  // argmax estimate (endpoint when the sup lives there)
  std::optional<std::pair<double, double>> local_interval;  // Local only
  std::vector<double> eta_roots;
};

// Interior roots of eta, found by uniform scan (>= 1000 points) plus
// bisection to 1e-12; candidates are kept only if |eta| <= 1e-10 there.
std::vector<double> find_eta_roots(const MetricParams& P, double beta,
                                   int scan_points = 10000);

struct SupResult {
  double upper = 0;    // certified: true sup <= upper <= true sup + tol
  double arg_est = 0;  // location of the best sampled value
};

// Branch-and-bound upper bound for psi over [lo, hi].  Endpoints touching the
// sector boundary are absorbed into analytic boundary strips; if the limit at
// a touched endpoint diverges the sup does not exist and this throws
// std::runtime_error("unbounded comass").
SupResult certified_sup(const MetricParams& P, double beta, double lo,
                        double hi, double tol);

// Certification pipeline, cheapest route first:
//   (i)   row-1 sigma shortcut (beta = 1, with endpoint-limit guard),
//   (ii)  negative quadratic discriminant,
//   (iii) certified full-sector sup <= 1 + tol,
//   (iv)  local fallback: maximal interval around theta0 on which psi <= 1.
// Route (iv) reports Local only when eta(theta0) > 0; the interval runs from
// the nearest psi = 1 crossing (or sector end with admissible limit) on each
// side and is itself certified by (iii)'s machinery.
ComassVerdict certify(const MetricParams& P, double beta, double tol = 1e-9);

struct SweepCell {
  int r = 0, s = 0;
  double best_beta = 0;
  ComassVerdict best;
};

// Runs certify over the row-1 shape grid 2 <= r, s <= r_max/s_max for each
// exponent in betas, keeping the best verdict per shape (Global > Local >
// NoCertificate; Local ties broken by wider interval).  Remaining betas are
// skipped once one certifies Global.
std::vector<SweepCell> sweep_row1(int r_max, int s_max,
                                  const std::vector<double>& betas);

}  // namespace conecalib
