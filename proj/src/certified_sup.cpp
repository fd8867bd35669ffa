#include "conecalib/certify.hpp"
#include "conecalib/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace conecalib {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Analytic bound for psi on a tail (0, delta] measured from a vanishing end:
// with u = sin(delta) and Qe = q_side*(2b-1),
//   psi <= tau^(1-2b) * (u^Qe + (b*q_side/alpha)^2 * u^(Qe-2)).
// Valid while the competing power stays subdominant (delta below the critical
// angle of that side); the bound decreases to the endpoint limit as delta -> 0,
// so halving delta tightens it as far as needed.
double tail_bound(const MetricParams& P, double beta, double q_side,
                  double delta) {
  const double Qe = q_side * (2.0 * beta - 1.0);
  const double u = std::sin(delta);
  const double a = beta * q_side / P.alpha;
  const double v = std::pow(P.tau, 1.0 - 2.0 * beta) *
                   (std::pow(u, Qe) + a * a * std::pow(u, Qe - 2.0));
  return pad_up(v, 16);
}

// Shrinks delta until the tail bound drops within tol of what the rest of the
// interval already guarantees.  Returns the final delta; the bound value is
// written to *bound.
double shrink_tail(const MetricParams& P, double beta, double q_side,
                   double delta0, double target, double tol, double* bound) {
  double delta = delta0;
  double b = tail_bound(P, beta, q_side, delta);
  for (int i = 0; i < 200 && b > target + tol; ++i) {
    delta *= 0.5;
    b = tail_bound(P, beta, q_side, delta);
  }
  if (b > target + tol)
    throw std::runtime_error("tail bound failed to converge");
  *bound = b;
  return delta;
}

struct Node {
  double a = 0, b = 0;
  double upper = 0, lower = 0;  // psi enclosure over [a, b]
};
struct NodeLess {
  bool operator()(const Node& l, const Node& r) const {
    return l.upper < r.upper;  // max-heap: most promising cell first
  }
};

}  // namespace

SupResult certified_sup(const MetricParams& P, double beta, double lo,
                        double hi, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  if (!(lo >= 0.0) || !(hi <= P.domain_end) || !(lo <= hi))
    throw std::invalid_argument("bad sup interval");
  if (lo == hi) return {pad_up(psi(lo, P, beta), 4), lo};

  const double width = hi - lo;
  const bool touch_lo = lo <= 1e-12;
  const bool touch_hi = hi >= P.domain_end - 1e-12;

  const double lim_lo = psi_limit_at_zero(P, beta);
  const double lim_hi = psi_limit_at_end(P, beta);
  if ((touch_lo && !std::isfinite(lim_lo)) ||
      (touch_hi && !std::isfinite(lim_hi)))
    throw std::runtime_error("unbounded comass");

  // Point scan: lower bound for the sup and the argmax estimate.  Interior
  // sampling only; the tails are handled analytically below.
  const int kScan = 2001;
  const double margin = width * 1e-7;
  double best_lower = -kInf, best_arg = 0.5 * (lo + hi);
  for (int i = 0; i < kScan; ++i) {
    const double th =
        (lo + margin) + (width - 2 * margin) * i / double(kScan - 1);
    const double v = psi(th, P, beta);
    if (v > best_lower) {
      best_lower = v;
      best_arg = th;
    }
  }

  // Tail strips at touched sector ends.  The vanishing exponent is q at
  // theta = 0, and p (Stretched) or q again (HalfDisc) at the far end.
  double inner_lo = lo, inner_hi = hi;
  double tail_lo_bound = -kInf, tail_hi_bound = -kInf;
  if (touch_lo) {
    const double cap = std::min({0.3, 0.5 * P.theta0, width / 3.0});
    tail_lo_bound = 0;
    inner_lo = shrink_tail(P, beta, P.q, cap, std::max(best_lower, lim_lo),
                           tol, &tail_lo_bound);
  }
  if (touch_hi) {
    const double q_side = P.family == Family::HalfDisc ? P.q : P.p;
    const double cap =
        std::min({0.3, 0.5 * (P.domain_end - P.theta0), width / 3.0});
    tail_hi_bound = 0;
    const double delta =
        shrink_tail(P, beta, q_side, cap, std::max(best_lower, lim_hi), tol,
                    &tail_hi_bound);
    inner_hi = P.domain_end - delta;
  }

  double retired = std::max(tail_lo_bound, tail_hi_bound);

  // Best-first branch and bound over the interior part.  Each cell gets the
  // intersection of the product-form enclosure with a mean-value form
  //   psi(cell) in psi(mid) +- max|psi'| * halfwidth,
  // whose width shrinks quadratically around a flat maximum; near a sup that
  // touches the threshold this cuts the cell count from ~1/sqrt(tol) to a few
  // dozen.  Both forms are valid enclosures, so the true range lies in their
  // intersection and the endpoints cannot cross.
  std::priority_queue<Node, std::vector<Node>, NodeLess> queue;
  auto make_node = [&](double a, double b) {
    const Ival e = psi_enclosure({a, b}, P, beta);
    const double m = 0.5 * (a + b);
    const Ival pm = psi_enclosure({m, m}, P, beta);
    const Ival dp = psi_prime_enclosure({a, b}, P, beta);
    const double slope = std::max(std::abs(dp.lo), std::abs(dp.hi));
    const double r = pad_up(slope * pad_up(std::max(m - a, b - m)), 4);
    return Node{a, b, std::min(e.hi, pad_up(pm.hi + r)),
                std::max(e.lo, pad_down(pm.lo - r))};
  };
  if (inner_lo < inner_hi) queue.push(make_node(inner_lo, inner_hi));

  long expansions = 0;
  while (!queue.empty()) {
    const Node n = queue.top();
    queue.pop();
    if (n.upper <= best_lower + tol) {
      // Best-first order: every remaining cell is at least as settled.
      retired = std::max(retired, n.upper);
      break;
    }
    if (n.upper - n.lower <= tol) {  // enclosure converged on this cell
      retired = std::max(retired, n.upper);
      continue;
    }
    if (++expansions > 20'000'000)
      throw std::runtime_error("certified sup did not converge");
    const double m = 0.5 * (n.a + n.b);
    const double vm = psi(m, P, beta);
    if (vm > best_lower) {
      best_lower = vm;
      best_arg = m;
    }
    for (const Node& child : {make_node(n.a, m), make_node(m, n.b)}) {
      if (child.upper <= best_lower + tol)
        retired = std::max(retired, child.upper);
      else
        queue.push(child);
    }
  }

  return {std::max(retired, best_lower), best_arg};
}

}  // namespace conecalib
