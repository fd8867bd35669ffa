#include "conecalib/formulas.hpp"

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace conecalib;

namespace {

// Central finite difference with a step small enough for ~1e-7 relative
// accuracy on these smooth profiles.
double fd(double (*f)(double, const MetricParams&), double th,
          const MetricParams& P) {
  const double h = 1e-6;
  return (f(th + h, P) - f(th - h, P)) / (2 * h);
}

const std::vector<MetricParams> kSamples = {
    row1_params(3, 5),
    row1_params(4, 4),
    row1_params(2, 7),
    row1_params(7, 9),
    params_for_row(2, Shape{{}, {}, 9}),
    params_for_row(3, Shape{{}, {}, 4}),
    params_for_row(4, Shape{{}, {}, 2}),
    params_for_row(5),
    params_for_row(6),
    params_for_row(9),
    params_for_row(13),
};

}  // namespace

TEST_CASE("the squared test-form norm is exactly 1 at the critical angle") {
  for (const MetricParams& P : kSamples) {
    for (const double beta : {0.8, 1.0, 1.2, 1.7}) {
      CAPTURE(P.row_id);
      CAPTURE(beta);
      CHECK(psi(P.theta0, P, beta) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("slope identities match finite differences") {
  for (const MetricParams& P : kSamples) {
    for (int i = 1; i <= 8; ++i) {
      const double th = P.domain_end * i / 9.0;
      CAPTURE(P.row_id);
      CAPTURE(th);
      const double dphi = phi_deriv(th, P);
      CHECK(dphi == doctest::Approx(fd(&phi, th, P)).epsilon(2e-6));

      const double beta = 1.2;
      const double dpsi = psi_deriv(th, P, beta);
      const double h = 1e-6;
      const double fd_psi =
          (psi(th + h, P, beta) - psi(th - h, P, beta)) / (2 * h);
      // scale-aware comparison: psi can be tiny near the ends
      CHECK(dpsi == doctest::Approx(fd_psi).epsilon(2e-6).scale(
                        std::max(1.0, std::abs(psi(th, P, beta)))));
    }
  }
}

TEST_CASE("eta expands to the quadratic in tan^2") {
  // (4 alpha^2 / b^2) * eta * tan^2 == A Y^2 + B Y + C with Y = tan^2.
  for (const MetricParams& P :
       {row1_params(3, 5), row1_params(2, 7), params_for_row(9)}) {
    for (const double beta : {1.0, 1.2}) {
      const QuadraticTest qt = quadratic_test(P, beta);
      for (int i = 1; i <= 15; ++i) {
        const double th = P.domain_end * i / 16.0;
        const double Y = std::pow(std::tan(th), 2);
        const double lhs = 4.0 * P.alpha * P.alpha / (beta * beta) *
                           eta(th, P, beta) * Y;
        const double rhs = (qt.A * Y + qt.B) * Y + qt.C;
        CAPTURE(P.row_id);
        CAPTURE(beta);
        CAPTURE(th);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(
                         std::max(1.0, std::abs(rhs))));
      }
    }
  }
}

TEST_CASE("quadratic sign test, exact integer path") {
  SUBCASE("(3,5) at unit exponent") {
    const QuadraticTest qt = quadratic_test(row1_params(3, 5), 1.0);
    CHECK(qt.exact);
    CHECK(qt.A == 32.0);
    CHECK(qt.B == -156.0);
    CHECK(qt.C == 192.0);
    CHECK(qt.discriminant == -240.0);
  }
  SUBCASE("(4,4) at unit exponent") {
    const QuadraticTest qt = quadratic_test(row1_params(4, 4), 1.0);
    CHECK(qt.exact);
    CHECK(qt.A == 96.0);
    CHECK(qt.B == -188.0);
    CHECK(qt.C == 96.0);
    CHECK(qt.discriminant == -1520.0);
  }
  SUBCASE("(2,7) at exponent 1.2 leaves the integer path") {
    const QuadraticTest qt = quadratic_test(row1_params(2, 7), 1.2);
    CHECK_FALSE(qt.exact);
    CHECK(qt.A == doctest::Approx(6.4).epsilon(1e-14));
    CHECK(qt.discriminant == doctest::Approx(-785.6988).epsilon(1e-5));
  }
  SUBCASE("(2,8) at exponent 1.2") {
    const QuadraticTest qt = quadratic_test(row1_params(2, 8), 1.2);
    CHECK(qt.discriminant == doctest::Approx(-9203.8).epsilon(1e-4));
  }
}

TEST_CASE("row-1 sigma shortcut") {
  CHECK(sigma_bound(row1_params(2, 9)) == 0.0);   // S = 18 exactly
  CHECK(sigma_bound(row1_params(3, 5)) == -60.0);
  CHECK(sigma_bound(row1_params(7, 7)) == 132.0);
  CHECK(sigma_bound(row1_params(12, 12)) == 1092.0);
  CHECK_THROWS_AS(sigma_bound(params_for_row(2, Shape{{}, {}, 5})),
                  std::domain_error);
}

TEST_CASE("one-sided limits at the sector ends") {
  SUBCASE("fast vanishing gives limit 0") {
    const MetricParams P = row1_params(3, 5);
    CHECK(psi_limit_at_zero(P, 1.0) == 0.0);
    CHECK(psi_limit_at_end(P, 1.0) == 0.0);
    CHECK(psi_bounded(P, 1.0));
  }
  SUBCASE("borderline exponent race gives the finite boundary value") {
    // p = 2 rows at unit exponent race cos^2 against tan^2 at the far end:
    // the limit is (b p / alpha)^2 / tau.
    const MetricParams A = row1_params(2, 6);
    CHECK(psi_limit_at_end(A, 1.0) ==
          doctest::Approx(4.0 / 49.0 * 46656.0 / 3125.0).epsilon(1e-13));

    const MetricParams B = row1_params(2, 8);
    CHECK(psi_limit_at_end(B, 1.0) ==
          doctest::Approx((4.0 / 81.0) / (0.125 * std::pow(0.875, 7)))
              .epsilon(1e-13));

    const MetricParams C = params_for_row(13);  // q = 2 at the vanishing end
    CHECK(psi_limit_at_zero(C, 1.0) ==
          doctest::Approx((12.0 / 7.0) * (12.0 / 7.0)).epsilon(1e-13));
    CHECK(psi_limit_at_end(C, 1.0) ==
          doctest::Approx((12.0 / 7.0) * (12.0 / 7.0)).epsilon(1e-13));
  }
  SUBCASE("slow vanishing diverges") {
    const MetricParams C = params_for_row(13);
    CHECK(std::isinf(psi_limit_at_zero(C, 0.9)));
    CHECK_FALSE(psi_bounded(C, 0.9));
    CHECK(std::isinf(psi_limit_at_end(row1_params(2, 6), 0.9)));
  }
  SUBCASE("psi takes its limit value at an exact endpoint") {
    const MetricParams P = row1_params(2, 6);
    CHECK(psi(0.0, P, 1.0) == psi_limit_at_zero(P, 1.0));
    CHECK(psi(P.domain_end, P, 1.0) == psi_limit_at_end(P, 1.0));
  }
}

TEST_CASE("angular weight forms") {
  SUBCASE("stretched weight is cos^p sin^q / tau") {
    const MetricParams P = row1_params(3, 5);
    const double th = 0.7;
    CHECK(phi(th, P) ==
          doctest::Approx(std::pow(std::cos(th), 4) * std::pow(std::sin(th), 8) /
                          P.tau)
              .epsilon(1e-14));
    CHECK(envelope(th, P) == phi(th, P));
  }
  SUBCASE("half-disc weight is sin^q") {
    const MetricParams P = params_for_row(9);
    const double th = 2.0;  // past pi/2: no cosine factor to go negative
    CHECK(phi(th, P) == doctest::Approx(std::pow(std::sin(th), 8)).epsilon(1e-14));
    CHECK(phi(th, P) > 0.0);
  }
  SUBCASE("slope gap loses the tangent term on the half disc") {
    const MetricParams P = params_for_row(9);
    const double th = 2.0;
    CHECK(slope_gap(th, P) ==
          doctest::Approx(8.0 * std::cos(th) / std::sin(th)).epsilon(1e-14));
  }
  SUBCASE("out-of-sector angles are rejected") {
    const MetricParams P = row1_params(3, 5);
    CHECK_THROWS_AS(psi(-0.1, P, 1.0), std::domain_error);
    CHECK_THROWS_AS(phi(P.domain_end + 0.1, P), std::domain_error);
  }
}
