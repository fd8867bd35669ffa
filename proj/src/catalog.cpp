#include "conecalib/catalog.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace conecalib {

double ConeAngle::radians() const {
  return num * std::numbers::pi / den;
}

double MetricParams::p_eff() const {
  return family == Family::HalfDisc ? 0.0 : p;
}

const std::vector<ConeEntry>& list_catalog() {
  static const std::vector<ConeEntry> table = [] {
    std::vector<ConeEntry> t;
    auto add = [&t](ConeEntry e) { t.push_back(std::move(e)); };

    add({1, "SO(r) x SO(s)", "S^(r-1) x S^(s-1)", {1, 2}, Family::Stretched,
         {"c * x^(2r-2) * y^(2s-2)", 0, 0}, true, false, ""});
    add({2, "SO(2) x SO(k)", "SO(2) x SO(k) / (Z2 x SO(k-2))", {1, 4},
         Family::Stretched, {"c * (xy)^(2k-4) * (x^2-y^2)^2", 0, 0}, false,
         true, ""});
    add({3, "SU(2) x SU(k)", "SU(2) x SU(k) / (T^1 x SU(k-2))", {1, 4},
         Family::Stretched, {"c * (xy)^(4k-6) * (x^2-y^2)^4", 0, 0}, false,
         true, ""});
    add({4, "Sp(2) x Sp(k)", "Sp(2) x Sp(k) / (Sp(1)^2 x Sp(k-2))", {1, 4},
         Family::Stretched, {"c * (xy)^(8k-10) * (x^2-y^2)^8", 0, 0}, false,
         true, ""});
    add({5, "U(5)", "U(5) / (SU(2) x SU(2) x T^1)", {1, 4}, Family::Stretched,
         {"c * (xy)^2 * Im{(x+iy)^4}^8", 4, 8}, false, false,
         "same quotient arises from SU(5)"});
    add({6, "U(1) . Spin(10)", "U(1) . Spin(10) / (T^1 . SU(4))", {1, 4},
         Family::Stretched, {"c * (xy)^6 * Im{(x+iy)^4}^12", 4, 12}, false,
         false, ""});

    add({7, "SO(3)", "SO(3) / (Z2 + Z2)", {1, 3}, Family::HalfDisc,
         {"c * Im{(x+iy)^3}^2", 3, 2}, false, false, ""});
    add({8, "SU(3)", "SU(3) / T^2", {1, 3}, Family::HalfDisc,
         {"c * Im{(x+iy)^3}^4", 3, 4}, false, false, ""});
    add({9, "Sp(3)", "Sp(3) / Sp(1)^3", {1, 3}, Family::HalfDisc,
         {"c * Im{(x+iy)^3}^8", 3, 8}, false, false, ""});
    add({10, "F4", "F4 / Spin(8)", {1, 3}, Family::HalfDisc,
         {"c * Im{(x+iy)^3}^16", 3, 16}, false, false, ""});
    add({11, "Sp(2)", "Sp(2) / T^2", {1, 4}, Family::HalfDisc,
         {"c * Im{(x+iy)^4}^4", 4, 4}, false, false, ""});
    add({12, "G2", "G2 / T^2", {1, 6}, Family::HalfDisc,
         {"c * Im{(x+iy)^6}^4", 6, 4}, false, false, ""});
    add({13, "SO(4)", "SO(4) / (Z2 + Z2)", {1, 6}, Family::HalfDisc,
         {"c * Im{(x+iy)^6}^2", 6, 2}, false, false, ""});
    return t;
  }();
  return table;
}

const ConeEntry& catalog_row(int row_id) {
  const auto& t = list_catalog();
  if (row_id < 1 || row_id > static_cast<int>(t.size()))
    throw std::out_of_range("catalog row must be in 1..13, got " +
                            std::to_string(row_id));
  return t[static_cast<size_t>(row_id - 1)];
}

namespace {

// Fills everything downstream of (l, p, q) for a stretched row.  The closed
// form for tau avoids the cancellation of pow(cos(atan(...))) chains.
MetricParams finish_stretched(int row_id, long long l, long long p,
                              long long q, Shape shape) {
  MetricParams m;
  m.family = Family::Stretched;
  m.row_id = row_id;
  m.l = static_cast<double>(l);
  m.p = static_cast<double>(p);
  m.q = static_cast<double>(q);
  m.alpha = (m.l + 2.0) / 2.0;
  m.theta0 = std::atan(std::sqrt(m.q / m.p));
  const double sum = m.p + m.q;
  m.tau = std::pow(m.p / sum, m.p / 2.0) * std::pow(m.q / sum, m.q / 2.0);
  m.domain_end = std::numbers::pi / 2.0;
  m.integral = true;
  m.li = l;
  m.pi = p;
  m.qi = q;
  m.shape = shape;
  return m;
}

MetricParams finish_half_disc(int row_id, int p, int q) {
  MetricParams m;
  m.family = Family::HalfDisc;
  m.row_id = row_id;
  m.p = p;
  m.q = q;
  // 2*alpha - 2 = q - (2p-2)/p; rarely an integer, so no exact mirror.
  m.alpha = (q + 2.0 - (2.0 * p - 2.0) / p) / 2.0;
  m.l = 2.0 * m.alpha - 2.0;
  m.theta0 = std::numbers::pi / 2.0;
  m.tau = 1.0;
  m.domain_end = std::numbers::pi;
  m.integral = false;
  return m;
}

[[noreturn]] void reject(const std::string& what) {
  throw std::domain_error(what);
}

}  // namespace

MetricParams derive_params(const ConeEntry& e, const Shape& shape) {
  if (!e.takes_rs && (shape.r || shape.s))
    reject("row " + std::to_string(e.row_id) + " takes no (r, s) parameters");
  if (!e.takes_k && shape.k)
    reject("row " + std::to_string(e.row_id) + " takes no k parameter");

  switch (e.row_id) {
    case 1: {
      if (!shape.r || !shape.s) reject("row 1 requires both r and s");
      const int r = *shape.r, s = *shape.s;
      if (r < 2 || s < 2) reject("row 1 requires r >= 2 and s >= 2");
      return finish_stretched(1, 2LL * (r + s) - 4, 2LL * r - 2, 2LL * s - 2,
                              shape);
    }
    case 2: {
      if (!shape.k) reject("row 2 requires k");
      const int k = *shape.k;
      if (k < 3) reject("row 2 requires k >= 3");
      return finish_stretched(2, 2LL * k - 3, 2, 2LL * k - 4, shape);
    }
    case 3: {
      if (!shape.k) reject("row 3 requires k");
      const int k = *shape.k;
      if (k < 2) reject("row 3 requires k >= 2");
      return finish_stretched(3, 4LL * k - 3, 4, 4LL * k - 6, shape);
    }
    case 4: {
      if (!shape.k) reject("row 4 requires k");
      const int k = *shape.k;
      if (k < 2) reject("row 4 requires k >= 2");
      return finish_stretched(4, 8LL * k - 3, 8, 8LL * k - 10, shape);
    }
    case 5:
      return finish_stretched(5, 17, 8, 10, {});
    case 6:
      return finish_stretched(6, 29, 12, 18, {});
    default:
      return finish_half_disc(e.row_id, e.volume.im_base, e.volume.im_pow);
  }
}

MetricParams params_for_row(int row_id, const Shape& shape) {
  return derive_params(catalog_row(row_id), shape);
}

MetricParams row1_params(int r, int s) {
  Shape sh;
  sh.r = r;
  sh.s = s;
  return derive_params(catalog_row(1), sh);
}

}  // namespace conecalib
