#include "conecalib/certify.hpp"

#include "conecalib/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace conecalib {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Global: return "Global";
    case Verdict::Local: return "Local";
    default: return "NoCertificate";
  }
}

const char* to_string(Method m) {
  switch (m) {
    case Method::AnalyticSigmaBound: return "AnalyticSigmaBound";
    case Method::AnalyticDiscriminant: return "AnalyticDiscriminant";
    default: return "CertifiedSup";
  }
}

std::vector<double> find_eta_roots(const MetricParams& P, double beta,
                                   int scan_points) {
  if (scan_points < 1000) scan_points = 1000;
  std::vector<double> roots;
  const double a = P.domain_end / (scan_points + 1);
  const double h = (P.domain_end - 2 * a) / (scan_points - 1);
  double prev_th = a, prev_v = eta(prev_th, P, beta);
  for (int i = 1; i < scan_points; ++i) {
    const double th = a + h * i;
    const double v = eta(th, P, beta);
    if (prev_v == 0.0) roots.push_back(prev_th);
    if ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0)) {
      double lo = prev_th, hi = th, flo = prev_v;
      while (hi - lo > 1e-12) {
        const double m = 0.5 * (lo + hi);
        const double fm = eta(m, P, beta);
        if (fm == 0.0) {
          lo = hi = m;
          break;
        }
        if ((flo < 0) == (fm < 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      const double root = 0.5 * (lo + hi);
      if (std::abs(eta(root, P, beta)) <= 1e-10) roots.push_back(root);
    }
    prev_th = th;
    prev_v = v;
  }
  return roots;
}

namespace {

// First angle past `from` (moving toward `to`, either direction) where psi
// recrosses 1, located by scan + bisection.  The returned angle sits on the
// sub-unit side of the crossing.  nullopt when psi stays below 1 throughout.
std::optional<double> crossing_toward(const MetricParams& P, double beta,
                                      double from, double to) {
  const int n = 20000;
  const double h = (to - from) / n;
  double below = from + h;
  if (psi(below, P, beta) >= 1.0) return below;  // degenerate sliver
  for (int i = 2; i <= n; ++i) {
    // the final probe stops half a step short of `to` to stay interior
    const double probe = from + h * (i == n ? n - 0.5 : double(i));
    if (psi(probe, P, beta) >= 1.0) {
      double lo = below, hi = probe;  // lo: psi < 1 side
      for (int it = 0; it < 100 && std::abs(hi - lo) > 1e-12; ++it) {
        const double m = 0.5 * (lo + hi);
        if (psi(m, P, beta) < 1.0)
          lo = m;
        else
          hi = m;
      }
      return lo;
    }
    below = probe;
  }
  return std::nullopt;
}

int rank(Verdict v) {
  switch (v) {
    case Verdict::Global: return 2;
    case Verdict::Local: return 1;
    default: return 0;
  }
}

}  // namespace

ComassVerdict certify(const MetricParams& P, double beta, double tol) {
  if (!(tol > 0) || tol > 1e-3)
    throw std::invalid_argument("certify tol must lie in (0, 1e-3]");

  ComassVerdict out;
  out.beta = beta;
  out.tol = tol;
  out.eta_roots = find_eta_roots(P, beta);

  const double lim0 = psi_limit_at_zero(P, beta);
  const double limE = psi_limit_at_end(P, beta);
  const bool bounded = std::isfinite(lim0) && std::isfinite(limE);

  // Full-sector certified sup is part of the report whatever the verdict.
  // Bounds are tightened to tol/2 so that a sup touching 1 exactly still
  // clears the <= 1 + tol test despite the enclosure's rounding pads.
  if (bounded) {
    const SupResult sr = certified_sup(P, beta, 0.0, P.domain_end, 0.5 * tol);
    out.sup_psi = sr.upper;
    out.sup_location = sr.arg_est;
    const double interior_best = psi(sr.arg_est, P, beta);
    if (limE > interior_best && limE >= lim0)
      out.sup_location = P.domain_end;
    else if (lim0 > interior_best)
      out.sup_location = 0.0;
  } else {
    out.sup_psi = kInf;
    out.sup_location = std::isfinite(lim0) ? P.domain_end : 0.0;
  }

  // (i) row-1 shortcut: the sigma bound dominates eta everywhere, so a
  // nonnegative value pins psi under its peak; the endpoint guard keeps the
  // route honest when a borderline limit is in play.
  if (P.row_id == 1 && beta == 1.0 && sigma_bound(P) >= 0.0 && lim0 <= 1.0 &&
      limE <= 1.0) {
    out.verdict = Verdict::Global;
    out.method = Method::AnalyticSigmaBound;
    return out;
  }

  // (ii) positive-definite quadratic: eta > 0 on the whole sector.  This
  // forces both tail exponents above the borderline, so no endpoint check.
  const QuadraticTest qt = quadratic_test(P, beta);
  if (qt.A > 0 && qt.discriminant < 0) {
    out.verdict = Verdict::Global;
    out.method = Method::AnalyticDiscriminant;
    return out;
  }

  // (iii) certified sup over the full sector.
  if (bounded && out.sup_psi <= 1.0 + tol) {
    out.verdict = Verdict::Global;
    out.method = Method::CertifiedSup;
    return out;
  }

  // (iv) local interval: psi has a strict interior max at theta0 only when
  // eta is positive there; otherwise psi pushes through 1 immediately.
  out.method = Method::CertifiedSup;
  if (eta(P.theta0, P, beta) > 0.0) {
    // Maximal closure: run to the nearest recrossing on each side, or to the
    // sector end when psi never comes back up (certified_sup re-checks the
    // endpoint limit there, so a missed crossing cannot sneak through).
    double hi = P.domain_end;
    if (const auto c = crossing_toward(P, beta, P.theta0, P.domain_end))
      hi = *c;
    double lo = 0.0;
    if (const auto c = crossing_toward(P, beta, P.theta0, 0.0)) lo = *c;

    if (lo > hi) std::swap(lo, hi);
    if (hi > lo) {
      try {
        const SupResult sr = certified_sup(P, beta, lo, hi, 0.5 * tol);
        if (sr.upper <= 1.0 + tol) {
          out.verdict = Verdict::Local;
          out.local_interval = std::make_pair(lo, hi);
          return out;
        }
      } catch (const std::runtime_error&) {
        // divergent tail inside the candidate interval: no certificate
      }
    }
  }

  out.verdict = Verdict::NoCertificate;
  return out;
}

std::vector<SweepCell> sweep_row1(int r_max, int s_max,
                                  const std::vector<double>& betas) {
  if (r_max < 2 || s_max < 2 || r_max > 12)
    throw std::invalid_argument("sweep range must satisfy 2 <= r <= 12");
  if (betas.empty()) throw std::invalid_argument("sweep needs at least one beta");

  std::vector<std::pair<int, int>> shapes;
  for (int r = 2; r <= r_max; ++r)
    for (int s = 2; s <= s_max; ++s) shapes.emplace_back(r, s);

  std::vector<SweepCell> cells(shapes.size());
  parallel_for(static_cast<long>(shapes.size()), [&](long i) {
    const auto [r, s] = shapes[static_cast<size_t>(i)];
    const MetricParams P = row1_params(r, s);
    SweepCell cell;
    cell.r = r;
    cell.s = s;
    bool have = false;
    for (const double b : betas) {
      const ComassVerdict v = certify(P, b);
      const bool better =
          !have || rank(v.verdict) > rank(cell.best.verdict) ||
          (v.verdict == Verdict::Local &&
           cell.best.verdict == Verdict::Local && v.local_interval &&
           cell.best.local_interval &&
           v.local_interval->second - v.local_interval->first >
               cell.best.local_interval->second -
                   cell.best.local_interval->first);
      if (better) {
        cell.best = v;
        cell.best_beta = b;
        have = true;
      }
      if (cell.best.verdict == Verdict::Global) break;
    }
    cells[static_cast<size_t>(i)] = std::move(cell);
  });
  return cells;
}

}  // namespace conecalib
