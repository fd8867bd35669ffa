#include "conecalib/phi0.hpp"

#include "conecalib/deform.hpp"
#include "conecalib/formulas.hpp"
#include "conecalib/odecal.hpp"
#include "conecalib/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

namespace conecalib {

namespace {

// Steepest admissible slope magnitude at (theta, y).
double field(const MetricParams& P, double theta, double y) {
  const double head = envelope(theta, P) - y * y;
  return P.alpha * std::sqrt(std::max(head, 0.0));
}

}  // namespace

AngularProfile power_seed(const MetricParams& P, double beta) {
  auto Pc = std::make_shared<MetricParams>(P);
  const double b = beta;
  auto val = [Pc, b](double th) -> double {
    if (th <= 0.0 || th >= Pc->domain_end) return 0.0;
    return std::pow(phi(th, *Pc), b);
  };
  auto der = [Pc, b, val](double th) -> double {
    if (th <= 0.0 || th >= Pc->domain_end) return 0.0;
    return b * val(th) * slope_gap(th, *Pc);
  };
  AngularProfile out;
  out.tag = Smoothness::Smooth;
  out.value_fn = val;
  out.deriv_fn = der;
  const int n = 4001;
  out.samples.reserve(n);
  for (int i = 1; i < n; ++i) {
    const double th = Pc->domain_end * i / double(n);
    out.samples.push_back({th, val(th), der(th)});
  }
  return out;
}

int half_disc_seed_exponent(const MetricParams& P) {
  if (P.family != Family::HalfDisc)
    throw std::domain_error("sine-power seeds apply to half-disc rows only");
  // Smallest integer m with sin^m admissible under the envelope s^q:
  //   u^{m-q/2-1} [u + (m/alpha)^2 (1-u)] <= 1 on u in [0,1], u = sin^2.
  const int m_lo = static_cast<int>(P.q / 2.0) + 1;
  const int m_cap = static_cast<int>(4.0 * P.q) + 8;
  for (int m = m_lo; m <= m_cap; ++m) {
    const double K = (m / P.alpha) * (m / P.alpha);
    const double e = m - P.q / 2.0 - 1.0;
    bool ok = true;
    for (int i = 0; i <= 100000 && ok; ++i) {
      const double u = i / 100000.0;
      const double h = std::pow(u, e) * (u + K * (1.0 - u));
      if (h > 1.0 + 1e-12) ok = false;
    }
    if (ok) return m;
  }
  throw std::runtime_error("no admissible sine-power seed below the exponent cap");
}

AngularProfile half_disc_seed(const MetricParams& P) {
  const int m = half_disc_seed_exponent(P);
  const double end = P.domain_end;
  auto val = [end, m](double th) -> double {
    if (th <= 0.0 || th >= end) return 0.0;
    return std::pow(std::sin(th), m);
  };
  auto der = [end, m](double th) -> double {
    if (th <= 0.0 || th >= end) return 0.0;
    return m * std::pow(std::sin(th), m - 1) * std::cos(th);
  };
  AngularProfile out;
  out.tag = Smoothness::Smooth;
  out.value_fn = val;
  out.deriv_fn = der;
  const int n = 4001;
  for (int i = 1; i < n; ++i) {
    const double th = end * i / double(n);
    out.samples.push_back({th, val(th), der(th)});
  }
  return out;
}

AngularProfile ode_calibrated_seed() {
  const MetricParams P = params_for_row(3, Shape{{}, {}, 4});
  OdeSolution sol = solve_lambda1();
  auto lam = std::make_shared<AngularProfile>(glue_lambda1(sol));
  auto Pc = std::make_shared<MetricParams>(P);
  const double inv_tau = 1.0 / P.tau;

  auto val = [lam, Pc, inv_tau](double th) -> double {
    if (th <= 0.0 || th >= Pc->domain_end) return 0.0;
    const double lv = lam->value_at(th);
    return inv_tau * std::pow(std::cos(th), 4.0 + lv) *
           std::pow(std::sin(th), 10.0);
  };
  auto der = [lam, Pc, val](double th) -> double {
    if (th <= 0.0 || th >= Pc->domain_end) return 0.0;
    const double c = std::cos(th), s = std::sin(th);
    const double lv = lam->value_at(th);
    const double ld = lam->deriv_at(th);
    const double T = ld * std::log(c) + 10.0 * (c / s) - (4.0 + lv) * (s / c);
    return val(th) * T;
  };
  AngularProfile out;
  out.tag = Smoothness::Smooth;
  out.value_fn = val;
  out.deriv_fn = der;
  const int n = 4001;
  for (int i = 1; i < n; ++i) {
    const double th = P.domain_end * i / double(n);
    out.samples.push_back({th, val(th), der(th)});
  }
  return out;
}

namespace {

// One RK4 step along theta -> theta + dir*h of the steered profile.  Moving
// away from theta0 in either direction the height sheds at the steepest
// admissible rate, so y always loses h*field per step; only the angular
// argument follows dir.
double rk4_step(const MetricParams& P, double th, double y, double h,
                double dir) {
  const double k1 = field(P, th, y);
  const double k2 = field(P, th + dir * 0.5 * h, y - 0.5 * h * k1);
  const double k3 = field(P, th + dir * 0.5 * h, y - 0.5 * h * k2);
  const double k4 = field(P, th + dir * h, y - h * k3);
  return y - h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct DescentCurve {
  std::vector<double> th, y;  // ascending theta; y hits 0 at the outer end
  bool ok = false;
};

// Integrate the steered profile from (start, y0) toward the chosen end until
// it crosses zero.  dir = -1 descends toward theta = 0, dir = +1 toward the
// far end of the sector.
DescentCurve descend(const MetricParams& P, double start, double y0,
                     double dir) {
  constexpr double h = 2e-6;
  DescentCurve out;
  std::vector<double> th{start}, y{y0};
  double t = start, v = y0;
  const double limit = dir < 0 ? h : P.domain_end - h;
  while (true) {
    if ((dir < 0 && t <= limit) || (dir > 0 && t >= limit)) return out;  // ran out of room
    // Moving away from theta0 the envelope shrinks; the steered profile must
    // shrink with it.  dir*slope < 0 on both sides.
    double vn = rk4_step(P, t, v, h, dir);
    double tn = t + dir * h;
    if (vn <= 0.0) {
      double fa = 0.0, fb = 1.0;  // step fractions bracketing the zero
      for (int it = 0; it < 60; ++it) {
        const double fm = 0.5 * (fa + fb);
        (rk4_step(P, t, v, fm * h, dir) > 0.0 ? fa : fb) = fm;
      }
      tn = t + dir * 0.5 * (fa + fb) * h;
      th.push_back(tn);
      y.push_back(0.0);
      break;
    }
    th.push_back(tn);
    y.push_back(vn);
    t = tn;
    v = vn;
  }
  if (dir < 0) {
    std::reverse(th.begin(), th.end());
    std::reverse(y.begin(), y.end());
  }
  out.th = std::move(th);
  out.y = std::move(y);
  out.ok = true;
  return out;
}

double interp_curve(const std::vector<double>& th, const std::vector<double>& y,
                    double t) {
  const auto it = std::upper_bound(th.begin(), th.end(), t);
  if (it == th.begin()) return y.front();
  if (it == th.end()) return y.back();
  const size_t i = static_cast<size_t>(it - th.begin());
  const double f = (t - th[i - 1]) / (th[i] - th[i - 1]);
  return y[i - 1] * (1.0 - f) + y[i] * f;
}

}  // namespace

Phi0Profile build_phi0(const MetricParams& P, const AngularProfile& seed,
                       double offset, double eps, double residual_budget) {
  if (!(offset > 0) || !(eps > 0) || !(residual_budget > 0))
    throw std::invalid_argument("offset, eps and budget must be positive");

  auto seedp = std::make_shared<AngularProfile>(seed);
  auto Pc = std::make_shared<MetricParams>(P);

  std::string last_fail = "splice points never fit inside the sector";
  for (int attempt = 0; attempt <= 10; ++attempt) {
    const double off = offset * std::pow(0.5, attempt);
    const double tc = P.theta0 - off, td = P.theta0 + off;
    if (!(tc > 0) || !(td < P.domain_end)) continue;

    const double yc = seedp->value_at(tc), yd = seedp->value_at(td);
    if (!(yc > 0) || !(yd > 0) || yc * yc >= envelope(tc, P) ||
        yd * yd >= envelope(td, P)) {
      last_fail = "seed leaves no envelope headroom at a splice point";
      continue;
    }

    const DescentCurve g1 = descend(P, tc, yc, -1.0);
    const DescentCurve g2 = descend(P, td, yd, +1.0);
    if (!g1.ok || !g2.ok) {
      last_fail = "a steered curve ran out of room before reaching zero";
      continue;
    }
    const double lo = g1.th.front(), hi = g2.th.back();

    auto g1p = std::make_shared<DescentCurve>(g1);
    auto g2p = std::make_shared<DescentCurve>(g2);
    AngularProfile raw;
    raw.tag = Smoothness::Lipschitz;
    raw.value_fn = [g1p, g2p, seedp, lo, hi, tc, td](double th) -> double {
      if (th <= lo || th >= hi) return 0.0;
      if (th < tc) return interp_curve(g1p->th, g1p->y, th);
      if (th <= td) return seedp->value_at(th);
      return interp_curve(g2p->th, g2p->y, th);
    };
    raw.deriv_fn = [g1p, g2p, seedp, Pc, lo, hi, tc, td,
                    val = raw.value_fn](double th) -> double {
      if (th <= lo || th >= hi) return 0.0;
      if (th < tc) return field(*Pc, th, val(th));
      if (th <= td) return seedp->deriv_at(th);
      return -field(*Pc, th, val(th));
    };

    AngularProfile smooth = mollify(raw, eps);

    const long n = 100000;
    std::vector<double> res(n);
    parallel_for(n, [&](long i) {
      const double th = P.domain_end * (i + 0.5) / double(n);
      const double v = smooth.value_at(th);
      const double d = smooth.deriv_at(th) / P.alpha;
      res[static_cast<size_t>(i)] = v * v + d * d - envelope(th, P);
    });
    double rmax = res[0], rsum = 0;
    for (const double r : res) {
      rmax = std::max(rmax, r);
      rsum += r;
    }
    const double v0 = smooth.value_fn(P.theta0);
    if (rmax > residual_budget || std::abs(v0 - 1.0) > 1e-10) {
      last_fail = "residual budget exceeded after mollification";
      continue;
    }

    Phi0Profile out;
    out.support_lo = lo - eps;
    out.support_hi = hi + eps;
    out.theta_c = tc;
    out.theta_d = td;
    out.mollify_eps = eps;
    out.residual_max = rmax;
    out.residual_mean = rsum / double(n);
    out.value_at_theta0 = v0;
    out.profile = std::move(smooth);
    out.profile.samples.clear();
    const int m = 8001;
    out.profile.samples.reserve(m);
    for (int i = 1; i < m; ++i) {
      const double th = P.domain_end * i / double(m);
      out.profile.samples.push_back(
          {th, out.profile.value_fn(th), out.profile.deriv_fn(th)});
    }
    return out;
  }
  throw std::runtime_error("compact calibration profile failed: " + last_fail);
}

bool slope_field_monotonicity_check(
    const MetricParams& P,
    const std::vector<std::pair<double, double>>& grid) {
  for (const auto& [th, y] : grid) {
    if (!(th > 0) || !(th < P.domain_end)) return false;
    const double E = envelope(th, P);
    if (!(y >= 0) || y * y > E) return false;
    const double head = std::sqrt(E) - y;
    if (head <= 0) continue;  // boundary: slope 0, nothing above to compare
    const double dy = std::min(1e-6, 0.5 * head);
    if (y + dy == y) continue;
    if (!(field(P, th, y + dy) < field(P, th, y))) return false;
  }
  return true;
}

}  // namespace conecalib
