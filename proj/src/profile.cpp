#include "conecalib/profile.hpp"

#include <algorithm>

namespace conecalib {

namespace {

// Index of the first sample with theta > t, clamped for interpolation.
size_t upper_index(const std::vector<ProfileSample>& samples, double t) {
  const auto it = std::upper_bound(
      samples.begin(), samples.end(), t,
      [](double v, const ProfileSample& s) { return v < s.theta; });
  return static_cast<size_t>(it - samples.begin());
}

}  // namespace

double interp_value(const std::vector<ProfileSample>& samples, double theta) {
  if (samples.empty() || theta < samples.front().theta ||
      theta > samples.back().theta)
    return 0.0;
  const size_t i = upper_index(samples, theta);
  if (i == 0) return samples.front().value;
  if (i == samples.size()) return samples.back().value;
  const ProfileSample& a = samples[i - 1];
  const ProfileSample& b = samples[i];
  const double f = (theta - a.theta) / (b.theta - a.theta);
  return a.value * (1.0 - f) + b.value * f;
}

double interp_deriv(const std::vector<ProfileSample>& samples, double theta) {
  if (samples.empty() || theta < samples.front().theta ||
      theta > samples.back().theta)
    return 0.0;
  const size_t i = upper_index(samples, theta);
  if (i == 0) return samples.front().derivative;
  if (i == samples.size()) return samples.back().derivative;
  const ProfileSample& a = samples[i - 1];
  const ProfileSample& b = samples[i];
  const double f = (theta - a.theta) / (b.theta - a.theta);
  return a.derivative * (1.0 - f) + b.derivative * f;
}

double AngularProfile::value_at(double theta) const {
  if (value_fn) return value_fn(theta);
  return interp_value(samples, theta);
}

double AngularProfile::deriv_at(double theta) const {
  if (deriv_fn) return deriv_fn(theta);
  return interp_deriv(samples, theta);
}

}  // namespace conecalib
