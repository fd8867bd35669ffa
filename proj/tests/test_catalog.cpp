#include "conecalib/catalog.hpp"
#include "conecalib/formulas.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace conecalib;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("catalog lists the thirteen families with their row data") {
  const auto& rows = list_catalog();
  REQUIRE(rows.size() == 13);

  SUBCASE("row ids are 1..13 in order") {
    for (int i = 0; i < 13; ++i) CHECK(rows[i].row_id == i + 1);
  }

  SUBCASE("groups, links and flags") {
    CHECK(rows[0].group == "SO(r) x SO(s)");
    CHECK(rows[0].link == "S^(r-1) x S^(s-1)");
    CHECK(rows[0].takes_rs);
    CHECK_FALSE(rows[0].takes_k);

    CHECK(rows[1].group == "SO(2) x SO(k)");
    CHECK(rows[1].link == "SO(2) x SO(k) / (Z2 x SO(k-2))");
    CHECK(rows[1].takes_k);

    CHECK(rows[2].group == "SU(2) x SU(k)");
    CHECK(rows[3].group == "Sp(2) x Sp(k)");
    CHECK(rows[4].group == "U(5)");
    CHECK(rows[4].note == "same quotient arises from SU(5)");
    CHECK(rows[5].group == "U(1) . Spin(10)");

    CHECK(rows[6].link == "SO(3) / (Z2 + Z2)");
    CHECK(rows[8].link == "Sp(3) / Sp(1)^3");
    CHECK(rows[12].link == "SO(4) / (Z2 + Z2)");
    for (int i = 4; i < 13; ++i) {
      CHECK_FALSE(rows[i].takes_rs);
      CHECK_FALSE(rows[i].takes_k);
    }
  }

  SUBCASE("families and angles") {
    for (int i = 0; i < 6; ++i) CHECK(rows[i].family == Family::Stretched);
    for (int i = 6; i < 13; ++i) CHECK(rows[i].family == Family::HalfDisc);

    CHECK(rows[0].angle.num == 1);
    CHECK(rows[0].angle.den == 2);
    for (int i = 1; i < 6; ++i) CHECK(rows[i].angle.den == 4);
    // half-disc rows open an angle of pi over the cosine exponent
    CHECK(rows[6].angle.den == 3);
    CHECK(rows[10].angle.den == 4);
    CHECK(rows[11].angle.den == 6);
    CHECK(rows[12].angle.den == 6);
    CHECK(rows[6].angle.radians() == doctest::Approx(kPi / 3).epsilon(1e-15));
  }
}

TEST_CASE("row resolution produces the documented exponents") {
  SUBCASE("sphere-product shape (3,5)") {
    const MetricParams P = row1_params(3, 5);
    CHECK(P.p == 4.0);
    CHECK(P.q == 8.0);
    CHECK(P.l == 12.0);
    CHECK(P.alpha == 7.0);
    CHECK(P.tau == doctest::Approx(16.0 / 729.0).epsilon(1e-15));
    CHECK(P.theta0 == doctest::Approx(std::atan(std::sqrt(2.0))).epsilon(1e-15));
    CHECK(P.domain_end == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(P.integral);
    CHECK(P.li == 12);
    CHECK(P.pi == 4);
    CHECK(P.qi == 8);
    CHECK(P.p_eff() == 4.0);
  }

  SUBCASE("same volume exponents, different radial weight") {
    // (2,8) on the sphere-product row and k=9 on the circle-times-rotation
    // row share (p, q) = (2, 14) but not l, so alpha must differ.
    const MetricParams A = row1_params(2, 8);
    const MetricParams B = params_for_row(2, Shape{{}, {}, 9});
    CHECK(A.p == B.p);
    CHECK(A.q == B.q);
    CHECK(A.l == 16.0);
    CHECK(B.l == 15.0);
    CHECK(A.alpha == 9.0);
    CHECK(B.alpha == 8.5);
    CHECK(B.tau == doctest::Approx(0.125 * std::pow(0.875, 7)).epsilon(1e-15));
  }

  SUBCASE("unitary-pair shape k=4") {
    const MetricParams P = params_for_row(3, Shape{{}, {}, 4});
    CHECK(P.p == 4.0);
    CHECK(P.q == 10.0);
    CHECK(P.l == 13.0);
    CHECK(P.alpha == 7.5);
    CHECK(1.0 / P.tau == doctest::Approx(823543.0 / 12500.0).epsilon(1e-14));
    CHECK(P.theta0 == doctest::Approx(std::atan(std::sqrt(2.5))).epsilon(1e-15));
  }

  SUBCASE("rigid rows") {
    const MetricParams r5 = params_for_row(5);
    CHECK(r5.p == 8.0);
    CHECK(r5.q == 10.0);
    CHECK(r5.l == 17.0);

    const MetricParams r6 = params_for_row(6);
    CHECK(r6.p == 12.0);
    CHECK(r6.q == 18.0);
    CHECK(r6.l == 29.0);
  }

  SUBCASE("half-disc rows carry tau = 1 and a peak at pi/2") {
    const double l_expected[7] = {2.0 / 3, 8.0 / 3,  20.0 / 3, 44.0 / 3,
                                  2.5,     7.0 / 3,  1.0 / 3};
    for (int row = 7; row <= 13; ++row) {
      const MetricParams P = params_for_row(row);
      CAPTURE(row);
      CHECK(P.family == Family::HalfDisc);
      CHECK(P.tau == 1.0);
      CHECK(P.theta0 == doctest::Approx(kPi / 2).epsilon(1e-15));
      CHECK(P.domain_end == doctest::Approx(kPi).epsilon(1e-15));
      CHECK(P.p_eff() == 0.0);
      CHECK(P.l == doctest::Approx(l_expected[row - 7]).epsilon(1e-15));
      CHECK(2.0 * P.alpha == doctest::Approx(P.l + 2.0).epsilon(1e-15));
    }
    const MetricParams r9 = params_for_row(9);
    CHECK(r9.p == 3.0);
    CHECK(r9.q == 8.0);
    const MetricParams r13 = params_for_row(13);
    CHECK(r13.p == 6.0);
    CHECK(r13.q == 2.0);
  }

  SUBCASE("the weight peaks at exactly 1 at theta0 for every row") {
    for (const ConeEntry& e : list_catalog()) {
      Shape sh;
      if (e.takes_rs) {
        sh.r = 3;
        sh.s = 4;
      } else if (e.takes_k) {
        sh.k = 5;
      }
      const MetricParams P = derive_params(e, sh);
      CAPTURE(e.row_id);
      CHECK(envelope(P.theta0, P) == doctest::Approx(1.0).epsilon(1e-13));
      // interior critical point: the weight is below peak on both sides
      CHECK(envelope(P.theta0 * 0.9, P) < 1.0);
      CHECK(envelope(P.theta0 + 0.1 * (P.domain_end - P.theta0), P) < 1.0);
    }
  }
}

TEST_CASE("shape validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(row1_params(1, 5), std::domain_error);
  CHECK_THROWS_AS(row1_params(3, 1), std::domain_error);
  CHECK_THROWS_AS(params_for_row(1), std::domain_error);          // r,s missing
  CHECK_THROWS_AS(params_for_row(2, Shape{{}, {}, 2}), std::domain_error);
  CHECK_THROWS_AS(params_for_row(3, Shape{{}, {}, 1}), std::domain_error);
  CHECK_THROWS_AS(params_for_row(4, Shape{{}, {}, 1}), std::domain_error);
  CHECK_THROWS_AS(params_for_row(2), std::domain_error);          // k missing
  CHECK_THROWS_AS(params_for_row(5, Shape{{}, {}, 3}), std::domain_error);
  CHECK_THROWS_AS(params_for_row(7, Shape{3, 4, {}}), std::domain_error);
  CHECK_THROWS_AS(catalog_row(0), std::out_of_range);
  CHECK_THROWS_AS(catalog_row(14), std::out_of_range);
  CHECK_NOTHROW(params_for_row(2, Shape{{}, {}, 3}));
  CHECK_NOTHROW(params_for_row(3, Shape{{}, {}, 2}));
  CHECK_NOTHROW(params_for_row(4, Shape{{}, {}, 2}));
}
