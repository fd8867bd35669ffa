#include "conecalib/odecal.hpp"

#include "conecalib/certify.hpp"
#include "conecalib/formulas.hpp"
#include "conecalib/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace conecalib {

// Geometry constants of the row-3, k = 4 cone.
namespace {
constexpr double kP = 4.0, kQ = 10.0, kAlpha = 7.5;
constexpr double kInvTau = 823543.0 / 12500.0;  // (14/4)^2 * (14/10)^5

double weight(double theta, double lambda) {
  const double c = std::cos(theta), s = std::sin(theta);
  return kInvTau * std::pow(c, kP + 2.0 * lambda) * std::pow(s, kQ);
}

// d(lambda)/d(theta) on the comass ceiling.  Written so that the bracketed
// combination below equals -alpha*sqrt(1/Phi - 1) along exact solutions.
double ceiling_rhs(double theta, double lambda) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double arg = 1.0 / weight(theta, lambda) - 1.0;
  if (arg < -1e-12)
    throw std::runtime_error(
        "exponent profile left the admissible region at theta=" +
        std::to_string(theta));
  const double root = std::sqrt(std::max(arg, 0.0));
  return (kAlpha * root + kQ * (c / s) - (kP + lambda) * (s / c)) /
         (-std::log(c));
}

}  // namespace

double star_comass_sq(double theta, double lambda_val, double lambda_deriv) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double T = lambda_deriv * std::log(c) + kQ * (c / s) -
                   (kP + lambda_val) * (s / c);
  const double r = T / kAlpha;
  return weight(theta, lambda_val) * (1.0 + r * r);
}

double OdeSolution::eval(double theta) const {
  if (knots.empty()) throw std::logic_error("empty solution");
  if (theta <= knots.front()) return values.front();
  if (theta >= knots.back()) return values.back();
  const auto it = std::upper_bound(knots.begin(), knots.end(), theta);
  const size_t i = static_cast<size_t>(it - knots.begin()) - 1;
  const double h = knots[i + 1] - knots[i];
  const double u = (theta - knots[i]) / h;
  const double u2 = u * u, u3 = u2 * u;
  return values[i] * (2 * u3 - 3 * u2 + 1) + derivs[i] * h * (u3 - 2 * u2 + u) +
         values[i + 1] * (-2 * u3 + 3 * u2) + derivs[i + 1] * h * (u3 - u2);
}

double OdeSolution::eval_deriv(double theta) const {
  if (knots.empty()) throw std::logic_error("empty solution");
  if (theta <= knots.front()) return derivs.front();
  if (theta >= knots.back()) return derivs.back();
  const auto it = std::upper_bound(knots.begin(), knots.end(), theta);
  const size_t i = static_cast<size_t>(it - knots.begin()) - 1;
  const double h = knots[i + 1] - knots[i];
  const double u = (theta - knots[i]) / h;
  const double u2 = u * u;
  return (values[i] * (6 * u2 - 6 * u) + derivs[i] * h * (3 * u2 - 4 * u + 1) +
          values[i + 1] * (6 * u - 6 * u2) + derivs[i + 1] * h * (3 * u2 - 2 * u)) /
         h;
}

std::vector<double> OdeSolution::zeros() const {
  std::vector<double> out;
  int last_sign = 0;
  double last_theta = 0;
  for (size_t i = 0; i < knots.size(); ++i) {
    const double v = values[i];
    if (v == 0.0) {
      if (i > 0 && last_sign != 0) out.push_back(knots[i]);
      last_sign = 0;
      continue;
    }
    const int sign = v > 0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      double lo = last_theta, hi = knots[i];
      double flo = eval(lo);
      for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = eval(m);
        if (fm == 0.0) {
          lo = hi = m;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    last_sign = sign;
    last_theta = knots[i];
  }
  return out;
}

OdeSolution solve_lambda1_from(double theta_start, double lambda0,
                               double theta_end) {
  if (!(theta_start > 0) || !(theta_end > theta_start) ||
      !(theta_end < std::numbers::pi / 2))
    throw std::invalid_argument("bad integration range");

  // Dormand-Prince 5(4), FSAL, embedded error control.
  static constexpr double A21 = 1.0 / 5;
  static constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
  static constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
  static constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187,
                          A53 = 64448.0 / 6561, A54 = -212.0 / 729;
  static constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33,
                          A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                          A65 = -5103.0 / 18656;
  static constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                          B5 = -2187.0 / 6784, B6 = 11.0 / 84;
  static constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695,
                          E4 = B4 - 393.0 / 640, E5 = B5 + 92097.0 / 339200,
                          E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;
  static constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5,
                          C5 = 8.0 / 9;
  constexpr double kTol = 1e-10, kMaxStep = 5e-4;

  OdeSolution S;
  S.theta_start = theta_start;
  S.theta_end = theta_end;

  double t = theta_start, y = lambda0;
  double k1 = ceiling_rhs(t, y);
  S.knots.push_back(t);
  S.values.push_back(y);
  S.derivs.push_back(k1);

  double h = 1e-6;
  while (t < theta_end) {
    h = std::min({h, kMaxStep, theta_end - t});
    if (h < 1e-14) throw std::runtime_error("step size underflow");

    const double k2 = ceiling_rhs(t + C2 * h, y + h * (A21 * k1));
    const double k3 = ceiling_rhs(t + C3 * h, y + h * (A31 * k1 + A32 * k2));
    const double k4 =
        ceiling_rhs(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
    const double k5 = ceiling_rhs(
        t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    const double k6 = ceiling_rhs(
        t + h, y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
    const double ynew =
        y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    const double k7 = ceiling_rhs(t + h, ynew);

    const double err = std::abs(
        h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7));
    const double scale =
        kTol + kTol * std::max(std::abs(y), std::abs(ynew));
    if (err <= scale) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      S.knots.push_back(t);
      S.values.push_back(y);
      S.derivs.push_back(k1);
      ++S.steps;
      S.max_err_est = std::max(S.max_err_est, err);
    }
    const double factor =
        err > 0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return S;
}

OdeSolution solve_lambda1(double theta_start, double theta_end) {
  return solve_lambda1_from(theta_start, 0.0, theta_end);
}

double smooth_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

namespace {

double smooth_step_deriv(double u) {
  if (u <= 0 || u >= 1) return 0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  const double s = a + b;
  return a * b * (1.0 / (u * u) + 1.0 / ((1 - u) * (1 - u))) / (s * s);
}

}  // namespace

AngularProfile glue_lambda1(const OdeSolution& sol, double window) {
  if (!(window > 0) || window > 0.05)
    throw std::invalid_argument("glue window must lie in (0, 0.05]");

  const double a = sol.theta_start;

  // The taper needs the second interior zero plus a window beyond it;
  // re-integrate when the supplied solution stops short.
  auto owned = std::make_shared<OdeSolution>(sol);
  {
    auto zs = owned->zeros();
    if (zs.size() < 2 || owned->theta_end < zs.back() + window) {
      *owned = solve_lambda1_from(a, sol.values.front(), 1.24);
      zs = owned->zeros();
    }
    if (zs.size() < 2)
      throw std::runtime_error("calibrated exponent has no second zero");
  }
  const double theta1 = owned->zeros().back();
  if (!(theta1 > 1.15 && theta1 < 1.25))
    throw std::runtime_error("second zero outside the expected band");

  // Fixed tails are exactly the undeformed profile; certify them once.
  const MetricParams P = [] {
    Shape sh;
    sh.k = 4;
    return params_for_row(3, sh);
  }();
  const double cut_lo = 0.9, cut_hi = 1.3;
  if (certified_sup(P, 1.0, 0.0, cut_lo, 1e-9).upper > 1.0 ||
      certified_sup(P, 1.0, cut_hi, P.domain_end, 1e-9).upper > 1.0)
    throw std::runtime_error("undeformed tails are not admissible");

  for (int attempt = 0; attempt <= 10; ++attempt) {
    const double w = window * std::pow(0.5, attempt);
    const double b = theta1 + w;

    auto chi = [a, w, theta1, b](double th) -> double {
      if (th <= a || th >= b) return 0.0;
      if (th < a + w) return smooth_step((th - a) / w);
      if (th <= theta1) return 1.0;
      return smooth_step((b - th) / w);
    };
    auto chi_d = [a, w, theta1, b](double th) -> double {
      if (th <= a || th >= b) return 0.0;
      if (th < a + w) return smooth_step_deriv((th - a) / w) / w;
      if (th <= theta1) return 0.0;
      return -smooth_step_deriv((b - th) / w) / w;
    };
    auto value = [owned, chi, a, b](double th) -> double {
      if (th <= a || th >= b) return 0.0;
      return chi(th) * owned->eval(th);
    };
    auto deriv = [owned, chi, chi_d, a, b](double th) -> double {
      if (th <= a || th >= b) return 0.0;
      return chi_d(th) * owned->eval(th) + chi(th) * owned->eval_deriv(th);
    };

    // Verify the glued profile across the active band.
    const long n = 100000;
    const MaxResult worst = parallel_max(n, [&](long i) {
      const double th = cut_lo + (cut_hi - cut_lo) * (i + 0.5) / n;
      return star_comass_sq(th, value(th), deriv(th));
    });
    if (worst.value <= 1.0 + 1e-6) {
      AngularProfile out;
      out.tag = Smoothness::Smooth;
      out.value_fn = value;
      out.deriv_fn = deriv;
      const int m = 6001;
      out.samples.reserve(m);
      for (int i = 0; i < m; ++i) {
        const double th = 0.98 + (1.28 - 0.98) * i / double(m - 1);
        out.samples.push_back({th, value(th), deriv(th)});
      }
      return out;
    }
  }
  throw std::runtime_error("taper window halving failed to meet the budget");
}

}  // namespace conecalib
