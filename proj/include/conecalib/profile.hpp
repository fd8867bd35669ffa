#pragma once

#include <functional>
#include <vector>

namespace conecalib {

// A scalar profile over the angular variable, carried as a dense sample table
// plus (when available) closed-form evaluators.  The evaluators are
// authoritative; the table is the serialisation/plotting view.  Outside
// [theta_front, theta_back] the profile is extended by zero.

enum class Smoothness { Lipschitz, Smooth };

struct ProfileSample {
  double theta = 0, value = 0, derivative = 0;
};

struct AngularProfile {
  std::vector<ProfileSample> samples;  // strictly increasing theta
  Smoothness tag = Smoothness::Lipschitz;
  std::function<double(double)> value_fn;  // optional closed forms
  std::function<double(double)> deriv_fn;

  double value_at(double theta) const;
  double deriv_at(double theta) const;
  bool empty() const { return samples.empty() && !value_fn; }
};

// Piecewise-linear interpolation in the sample table (zero outside).
double interp_value(const std::vector<ProfileSample>& samples, double theta);
double interp_deriv(const std::vector<ProfileSample>& samples, double theta);

}  // namespace conecalib
