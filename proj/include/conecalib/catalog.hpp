#pragma once

#include <optional>
#include <string>
#include <vector>

namespace conecalib {

// The thirteen minimal isoparametric families whose cones this tool certifies.
// Rows 1-6 ("stretchable") carry a stretched metric on a quarter-disc sector;
// rows 7-13 come from the isoparametric polynomials Im{(x+iy)^p} and live on
// the half-disc.  Either way the profile geometry is captured by a pair of
// volume exponents (p, q) plus the radial weight l.

enum class Family {
  Stretched,  // sector (0, pi/2), weight c^p s^q / tau
  HalfDisc,   // sector (0, pi),   weight s^q
};

struct ConeAngle {
  int num = 1, den = 2;  // angle = num * pi / den
  double radians() const;
};

// Free parameters of a catalog row.  Row 1 takes (r, s); rows 2-4 take k;
// the remaining rows are rigid.
struct Shape {
  std::optional<int> r, s, k;
};

struct VolumeLaw {
  std::string display;         // human-readable factorisation of the squared volume
  int im_base = 0, im_pow = 0; // exponents of an Im{(x+iy)^b}^e factor, if present
};

struct ConeEntry {
  int row_id = 0;
  std::string group;  // isometry group of the link
  std::string link;   // homogeneous presentation of the link
  ConeAngle angle;
  Family family = Family::Stretched;
  VolumeLaw volume;
  bool takes_rs = false;  // row 1
  bool takes_k = false;   // rows 2-4
  std::string note;       // e.g. the row-5 quotient alias
};

const std::vector<ConeEntry>& list_catalog();
const ConeEntry& catalog_row(int row_id);  // throws std::out_of_range

// Resolved exponents of one concrete cone.  theta0 is the unique interior
// critical angle of the weight; tau normalises the weight to peak value 1.
struct MetricParams {
  Family family = Family::Stretched;
  int row_id = 0;
  double l = 0, p = 0, q = 0;
  double alpha = 0;       // 2*alpha = l + 2
  double theta0 = 0;      // argmax of the weight
  double tau = 0;         // peak of c^p s^q (Stretched); 1 (HalfDisc)
  double domain_end = 0;  // pi/2 or pi

  // Exact integer mirrors; valid whenever the exponents are integers.
  bool integral = false;
  long long li = 0, pi = 0, qi = 0;

  Shape shape;

  // The HalfDisc weight has no cosine factor, so every slope/curvature
  // formula sees an effective cosine exponent of zero there.
  double p_eff() const;
};

// Resolves a row plus shape parameters to concrete exponents.  Throws
// std::domain_error when a required shape parameter is missing, out of the
// row's admissible range, or supplied to a rigid row.
MetricParams derive_params(const ConeEntry& entry, const Shape& shape = {});
MetricParams params_for_row(int row_id, const Shape& shape = {});
MetricParams row1_params(int r, int s);

}  // namespace conecalib
