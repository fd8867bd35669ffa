#include "conecalib/phi0.hpp"

#include "conecalib/formulas.hpp"
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace conecalib;

TEST_CASE("seed profiles") {
  SUBCASE("power-law seed peaks at the critical angle") {
    const MetricParams P = row1_params(3, 5);
    const AngularProfile seed = power_seed(P, 1.0);
    CHECK(seed.value_at(P.theta0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(seed.deriv_at(P.theta0)) < 1e-10);
    CHECK(seed.value_at(0.5) == doctest::Approx(phi(0.5, P)).epsilon(1e-13));
    CHECK(seed.value_at(-0.1) == 0.0);
    CHECK(seed.value_at(P.domain_end + 0.1) == 0.0);
    const AngularProfile shifted = power_seed(P, 1.2);
    CHECK(shifted.value_at(0.5) ==
          doctest::Approx(std::pow(phi(0.5, P), 1.2)).epsilon(1e-13));
  }
  SUBCASE("sine-power seed exponents") {
    CHECK(half_disc_seed_exponent(params_for_row(9)) == 6);
    CHECK(half_disc_seed_exponent(params_for_row(10)) == 10);
    CHECK_THROWS_AS(half_disc_seed_exponent(row1_params(3, 5)),
                    std::domain_error);
    // the shallow-weight quotients admit no sine power below the cap
    for (const int row : {7, 8, 11, 12, 13})
      CHECK_THROWS_AS(half_disc_seed_exponent(params_for_row(row)),
                      std::runtime_error);
  }
  SUBCASE("sine-power seed evaluates as sin^m") {
    const MetricParams P = params_for_row(9);
    const AngularProfile seed = half_disc_seed(P);
    CHECK(seed.value_at(P.theta0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(seed.value_at(1.0) ==
          doctest::Approx(std::pow(std::sin(1.0), 6)).epsilon(1e-13));
  }
  SUBCASE("calibrated seed rides the envelope up to the glued exponent") {
    const MetricParams P = params_for_row(3, Shape{{}, {}, 4});
    const AngularProfile seed = ode_calibrated_seed();
    CHECK(seed.value_at(P.theta0) == doctest::Approx(1.0).epsilon(1e-9));
    // left of the taper the bump is off: the seed is the bare envelope
    CHECK(seed.value_at(0.95) ==
          doctest::Approx(envelope(0.95, P)).epsilon(1e-12));
    // admissibility on the build window
    for (int i = 0; i <= 400; ++i) {
      const double th = 0.91 + (1.11 - 0.91) * i / 400.0;
      const double y = seed.value_at(th);
      CHECK(y * y <= envelope(th, P) * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("slope field sanity") {
  const MetricParams P = row1_params(3, 5);
  CHECK(slope_field_monotonicity_check(
      P, {{0.5, 0.1}, {0.7, 0.5}, {1.0, 0.3}, {P.theta0, 0.9}}));
  CHECK_FALSE(slope_field_monotonicity_check(P, {{0.5, 10.0}}));
  CHECK_FALSE(slope_field_monotonicity_check(P, {{-0.1, 0.1}}));
}

TEST_CASE("compact calibration profile construction") {
  SUBCASE("argument validation") {
    const MetricParams P = row1_params(3, 5);
    const AngularProfile seed = power_seed(P, 1.0);
    CHECK_THROWS_AS(build_phi0(P, seed, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_phi0(P, seed, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_phi0(P, seed, 0.1, 3e-6, 0.0),
                    std::invalid_argument);
  }
  SUBCASE("a seed pinned at the envelope leaves no headroom") {
    const MetricParams P = row1_params(3, 5);
    AngularProfile ones;
    ones.value_fn = [](double) { return 1.0; };
    ones.deriv_fn = [](double) { return 0.0; };
    CHECK_THROWS_AS(build_phi0(P, ones), std::runtime_error);
  }
  SUBCASE("(3,5) with the power seed") {
    const MetricParams P = row1_params(3, 5);
    const Phi0Profile r = build_phi0(P, power_seed(P, 1.0));
    CHECK(r.value_at_theta0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.residual_max <= 1e-9);
    CHECK(r.support_lo == doctest::Approx(0.603611).epsilon(2e-3));
    CHECK(r.support_hi == doctest::Approx(1.334550).epsilon(2e-3));
    CHECK(r.theta_c < P.theta0);
    CHECK(P.theta0 < r.theta_d);
    CHECK(r.support_lo < r.theta_c);
    CHECK(r.theta_d < r.support_hi);
    CHECK(r.profile.tag == Smoothness::Smooth);
    // vanishes identically on neighbourhoods of the support ends
    CHECK(r.profile.value_at(r.support_lo - 1e-4) == 0.0);
    CHECK(r.profile.value_at(r.support_hi + 1e-4) == 0.0);
    CHECK(r.profile.value_at(0.3) == 0.0);
    CHECK(r.profile.value_at(1.45) == 0.0);
    // independent residual spot check: y^2 + (y'/alpha)^2 <= E + budget
    for (int i = 0; i <= 20000; ++i) {
      const double th =
          r.support_lo + (r.support_hi - r.support_lo) * i / 20000.0;
      const double y = r.profile.value_at(th);
      const double d = r.profile.deriv_at(th);
      const double resid =
          y * y + (d / P.alpha) * (d / P.alpha) - envelope(th, P);
      CHECK(resid <= 2e-9);
    }
  }
  SUBCASE("half-disc build on the sine seed") {
    const MetricParams P = params_for_row(9);
    const Phi0Profile r = build_phi0(P, half_disc_seed(P));
    CHECK(r.value_at_theta0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.residual_max <= 1e-9);
    CHECK(r.support_lo == doctest::Approx(0.898170).epsilon(2e-3));
    CHECK(r.support_hi == doctest::Approx(2.243423).epsilon(2e-3));
    CHECK(r.profile.value_at(0.5) == 0.0);
    CHECK(r.profile.value_at(2.5) == 0.0);
  }
  SUBCASE("calibrated-seed build carries the relaxed budget") {
    const MetricParams P = params_for_row(3, Shape{{}, {}, 4});
    const Phi0Profile r =
        build_phi0(P, ode_calibrated_seed(), 0.1, 3e-6, 1e-6);
    CHECK(r.value_at_theta0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.residual_max <= 1e-6);
    CHECK(r.support_lo == doctest::Approx(0.678582).epsilon(2e-3));
    CHECK(r.support_hi == doctest::Approx(1.372325).epsilon(2e-3));
  }
}
