#include "conecalib/deform.hpp"

#include "conecalib/certify.hpp"
#include "conecalib/formulas.hpp"
#include "conecalib/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace conecalib {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// 1/log(sin g), extended continuously by 0 at g = 0.
double inv_log_sin(double g) {
  if (g <= 0) return 0.0;
  return 1.0 / std::log(std::sin(g));
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(double a, double b, double fa, double fm, double fb, double whole,
             double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = inv_log_sin(lm), frm = inv_log_sin(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth > 50 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double log_sin_integral(double a, double b) {
  if (!(a >= 0) || !(b >= a) || !(b < kHalfPi))
    throw std::invalid_argument("log_sin_integral needs 0 <= a <= b < pi/2");
  if (a == b) return 0.0;
  const double fa = inv_log_sin(a), fb = inv_log_sin(b);
  const double fm = inv_log_sin(0.5 * (a + b));
  return adapt(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-12, 0);
}

double lambda_x(double theta, double x, double N, double t) {
  if (!(x > 0) || !(x < kHalfPi)) throw std::invalid_argument("bad ramp radius");
  if (theta <= 0.5 * x) return N - t;
  if (theta >= x) return 0.0;
  return (N - t) * (1.0 - log_sin_integral(0.5 * x, theta) /
                              log_sin_integral(0.5 * x, x));
}

double lambda_x_deriv(double theta, double x, double N, double t) {
  if (!(x > 0) || !(x < kHalfPi)) throw std::invalid_argument("bad ramp radius");
  if (theta <= 0.5 * x || theta >= x) return 0.0;
  return -(N - t) /
         (log_sin_integral(0.5 * x, x) * std::log(std::sin(theta)));
}

// --- mollification kernel -------------------------------------------------

namespace {

struct Kernel {
  // 64 Gauss-Legendre nodes on [-1, 1] reweighted by the standard bump
  // exp(-1/(1-v^2)) and renormalised; convex by construction, symmetric by
  // construction (so odd moments vanish and constants are reproduced).
  double node[64];
  double w[64];
};

const Kernel& kernel() {
  static const Kernel K = [] {
    Kernel k{};
    constexpr int n = 64;
    // Newton iteration on the Legendre recurrence for the positive nodes.
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      const double glw = 2.0 / ((1.0 - x * x) * pp * pp);
      const double bump = std::exp(-1.0 / (1.0 - x * x));
      // mirror pair (x > 0 here)
      k.node[n / 2 + i] = x;
      k.node[n / 2 - 1 - i] = -x;
      k.w[n / 2 + i] = glw * bump;
      k.w[n / 2 - 1 - i] = glw * bump;
    }
    double sum = 0;
    for (double wi : k.w) sum += wi;
    for (double& wi : k.w) wi /= sum;
    return k;
  }();
  return K;
}

}  // namespace

AngularProfile mollify(const AngularProfile& in, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("mollify width must be positive");
  auto src = std::make_shared<AngularProfile>(in);
  const Kernel& K = kernel();

  auto val = [src, eps, &K](double th) {
    double acc = 0;
    for (int i = 0; i < 64; ++i)
      acc += K.w[i] * src->value_at(th - eps * K.node[i]);
    return acc;
  };
  auto der = [src, eps, &K](double th) {
    double acc = 0;
    for (int i = 0; i < 64; ++i)
      acc += K.w[i] * src->deriv_at(th - eps * K.node[i]);
    return acc;
  };

  AngularProfile out;
  out.tag = Smoothness::Smooth;
  out.value_fn = val;
  out.deriv_fn = der;
  out.samples.reserve(in.samples.size());
  for (const ProfileSample& s : in.samples)
    out.samples.push_back({s.theta, val(s.theta), der(s.theta)});
  return out;
}

double deformed_comass_sq(double theta, const MetricParams& P,
                          const DeformationSpec& spec, double lambda_val,
                          double lambda_deriv) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double k = spec.k, t = spec.t;
  const double base = P.tau * spec.C * spec.C;
  double V, T;
  if (spec.side == Side::NearZero) {
    V = base * std::pow(c, 2 * k - P.p) *
        std::pow(s, 2 * t + 2 * lambda_val - P.q);
    T = lambda_deriv * std::log(s) + (t + lambda_val) * (c / s) -
        k * (s / c);
  } else {
    V = base * std::pow(c, 2 * k + 2 * lambda_val - P.p) *
        std::pow(s, 2 * t - P.q);
    T = lambda_deriv * std::log(c) + t * (c / s) - (k + lambda_val) * (s / c);
  }
  const double r = T / P.alpha;
  return V * (1.0 + r * r);
}

double slope_ratio(const AngularProfile& mollified, double theta, double x0,
                   double N_minus_t) {
  const double I = log_sin_integral(0.5 * x0, x0);
  return -mollified.deriv_at(theta) * I * std::log(std::sin(theta)) /
         N_minus_t;
}

std::vector<double> vanishing_limit_check(double rho,
                                          const std::vector<double>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const double x : xs) {
    const double r = std::pow(std::sin(x), rho) / log_sin_integral(0.5 * x, x);
    out.push_back(r * r);
  }
  return out;
}

bool ambient_parity_check(int r, int s) {
  return r >= 4 && s >= 4 && r % 2 == 0 && s % 2 == 0;
}

// --- two-ended builder ------------------------------------------------------

namespace {

// Dense uniform-grid table of one side's mollified ramp, in that side's own
// distance-to-end coordinate.  Zero beyond u_max.
struct SideTable {
  double u0 = 0, h = 0, u_max = 0;
  std::vector<double> val, der;

  double value(double u) const {
    if (u >= u_max) return 0.0;
    if (u <= u0) return val.front();
    const double x = (u - u0) / h;
    const size_t i = std::min(val.size() - 2, static_cast<size_t>(x));
    const double f = x - double(i);
    return val[i] * (1 - f) + val[i + 1] * f;
  }
  double deriv(double u) const {
    if (u >= u_max || u <= u0) return 0.0;
    const double x = (u - u0) / h;
    const size_t i = std::min(der.size() - 2, static_cast<size_t>(x));
    const double f = x - double(i);
    return der[i] * (1 - f) + der[i + 1] * f;
  }
};

SideTable build_side_table(double x0, double eps, double Nmt) {
  // Cumulative fine-Simpson table of the log-sine integral over the ramp.
  const int M = 20000;
  const double ra = 0.5 * x0, rb = x0;
  const double rh = (rb - ra) / M;
  std::vector<double> cum(M + 1, 0.0);
  for (int j = 1; j <= M; ++j) {
    const double a = ra + rh * (j - 1), b = ra + rh * j;
    cum[j] = cum[j - 1] + simpson(a, b, inv_log_sin(a),
                                  inv_log_sin(0.5 * (a + b)), inv_log_sin(b));
  }
  const double I = cum[M];

  auto raw_val = [&](double u) -> double {
    if (u <= ra) return Nmt;  // plateau extends through u <= 0
    if (u >= rb) return 0.0;
    const double x = (u - ra) / rh;
    const size_t i = std::min<size_t>(M - 1, static_cast<size_t>(x));
    const double f = x - double(i);
    const double li = cum[i] * (1 - f) + cum[i + 1] * f;
    return Nmt * (1.0 - li / I);
  };
  auto raw_der = [&](double u) -> double {
    if (u <= ra || u >= rb) return 0.0;
    return -Nmt / (I * std::log(std::sin(u)));
  };

  const Kernel& K = kernel();
  SideTable T;
  T.u_max = rb + eps;
  T.u0 = 0.0;
  const long NT = 400000;
  T.h = T.u_max / NT;
  T.val.resize(NT + 1);
  T.der.resize(NT + 1);
  parallel_for(NT + 1, [&](long j) {
    const double u = T.u0 + T.h * j;
    double v = 0, d = 0;
    for (int i = 0; i < 64; ++i) {
      const double uu = u - eps * K.node[i];
      v += K.w[i] * raw_val(uu);
      d += K.w[i] * raw_der(uu);
    }
    T.val[static_cast<size_t>(j)] = v;
    T.der[static_cast<size_t>(j)] = d;
  });
  T.val.back() = 0.0;
  T.der.back() = 0.0;
  return T;
}

void check_order(double N, double floor_exp, double half_exp,
                 const char* side) {
  if (!(N > floor_exp))
    throw std::domain_error(std::string("target order on the ") + side +
                            " side must exceed the undeformed exponent");
  const double m = N - half_exp - 1.0;
  const double mr = std::round(m);
  if (std::abs(m - mr) > 1e-9 || mr <= 0 ||
      static_cast<long long>(mr) % 2 != 0)
    throw std::domain_error(
        std::string("target order on the ") + side +
        " side must sit a positive even integer above half the volume "
        "exponent plus one");
}

}  // namespace

std::pair<AngularProfile, DeformationReport> build_theorem_c_deformation(
    const MetricParams& P, double beta, int N_zero, int N_end, double x0,
    double eps) {
  if (P.row_id != 1)
    throw std::domain_error("the two-ended deformation covers row-1 shapes");
  if (!(x0 > 0) || x0 > 0.5)
    throw std::invalid_argument("bump radius must lie in (0, 0.5]");

  const ComassVerdict cv = certify(P, beta);
  if (cv.verdict != Verdict::Global)
    throw std::domain_error(
        "deformation requires an exponent certified on the whole sector");

  const double k = beta * P.p, t = beta * P.q;
  check_order(N_zero, t, P.q / 2.0, "vanishing");
  check_order(N_end, k, P.p / 2.0, "far");

  DeformationReport rep;
  rep.parity_c1 = ambient_parity_check(*P.shape.r, *P.shape.s);

  DeformationSpec left{k, t, std::pow(P.tau, -beta), N_zero, x0, eps,
                       Side::NearZero};
  DeformationSpec right{k, t, left.C, N_end, x0, eps, Side::NearPiOver2};

  if (rep.parity_c1) {
    // Even ambient factors let the undeformed form glue directly; the bump
    // degenerates to zero.
    AngularProfile flat;
    flat.tag = Smoothness::Smooth;
    flat.value_fn = [](double) { return 0.0; };
    flat.deriv_fn = [](double) { return 0.0; };
    for (int i = 0; i <= 2000; ++i)
      flat.samples.push_back({kHalfPi * i / 2000.0, 0.0, 0.0});
    rep.max_residual = cv.sup_psi - 1.0;
    rep.x0 = x0;
    rep.eps = eps > 0 ? eps : x0 / 6.0;
    rep.note = "C1 parity applies";
    return {std::move(flat), rep};
  }

  const double mid = P.theta0;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    const double x = x0 * std::pow(0.5, attempt);
    const double e = (attempt == 0 && eps > 0) ? eps : x / 6.0;
    if (!(e < 0.5 * x))
      throw std::invalid_argument("mollification width must stay below x0/2");

    const SideTable L = build_side_table(x, e, N_zero - t);
    const SideTable R = build_side_table(x, e, N_end - k);

    auto residual_at = [&](double th) -> double {
      if (th < mid)
        return deformed_comass_sq(th, P, left, L.value(th), L.deriv(th)) - 1.0;
      const double g = kHalfPi - th;
      return deformed_comass_sq(th, P, right, R.value(g), -R.deriv(g)) - 1.0;
    };

    const long n_uniform = 100000;
    MaxResult worst = parallel_max(n_uniform, [&](long i) {
      return residual_at(kHalfPi * (i + 0.5) / n_uniform);
    });

    // Clustered samples straddling each ramp breakpoint on each side.
    std::vector<double> cluster;
    for (const double bp : {0.5 * x, x}) {
      for (int i = 0; i < 250; ++i) {
        const double u =
            std::max(1e-9, bp - 2 * e + 4 * e * i / 249.0);
        cluster.push_back(u);              // vanishing end (theta = u)
        cluster.push_back(kHalfPi - u);    // far end (gamma = u)
      }
    }
    for (const double th : cluster) {
      const double v = residual_at(th);
      if (v > worst.value) worst = {v, -1};
    }

    if (worst.value <= 1e-6) {
      rep.max_residual = worst.value;
      rep.x0 = x;
      rep.eps = e;
      rep.halvings = attempt;

      auto lp = std::make_shared<SideTable>(L);
      auto rp = std::make_shared<SideTable>(R);
      AngularProfile out;
      out.tag = Smoothness::Smooth;
      out.value_fn = [lp, rp, mid](double th) {
        return th < mid ? lp->value(th) : rp->value(kHalfPi - th);
      };
      out.deriv_fn = [lp, rp, mid](double th) {
        return th < mid ? lp->deriv(th) : -rp->deriv(kHalfPi - th);
      };
      const int m = 20001;
      out.samples.reserve(m);
      for (int i = 0; i < m; ++i) {
        const double th = kHalfPi * i / double(m - 1);
        out.samples.push_back(
            {th, out.value_fn(th), out.deriv_fn(th)});
      }
      return {std::move(out), rep};
    }
  }
  throw std::runtime_error("bump radius halving failed to meet the budget");
}

}  // namespace conecalib
