#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

/// Trapezoidal membership of x. A zero-width ramp is a step: the plateau
/// edge itself has membership 1 and anything beyond it 0.
inline double membership(const FourTuple& t, double x) noexcept {
  if (x < t.support_min() || x > t.support_max()) return 0.0;
  if (x < t.a()) {
    if (t.alpha() <= 0.0) return 0.0;
    return std::clamp((x - t.support_min()) / t.alpha(), 0.0, 1.0);
  }
  if (x <= t.b()) return 1.0;
  if (t.beta() <= 0.0) return 0.0;
  return std::clamp((t.support_max() - x) / t.beta(), 0.0, 1.0);
}

/// Per-class products of feature memberships, before normalization.
inline std::vector<double> class_products(const MembershipModel& model, const FeatureVector& x) {
  detail::require(x.size() == model.num_features(),
                  "sample has " + std::to_string(x.size()) + " features, model expects " +
                      std::to_string(model.num_features()));
  std::vector<double> p(model.num_classes(), 1.0);
  for (std::size_t k = 0; k < model.num_classes(); ++k) {
    for (std::size_t j = 0; j < model.num_features() && p[k] > 0.0; ++j)
      p[k] *= membership(model.at(j, k), x[j]);
  }
  return p;
}

/// Normalized confidence over classes. Returns the all-zero distribution when
/// the sample lies outside the support of every class.
inline ClassDistribution infer(const MembershipModel& model, const FeatureVector& x) {
  return ClassDistribution::normalize(class_products(model, x));
}

/// Zeroes confidences below tau and renormalizes. If every entry is below
/// tau (or the input is all-zero) the distribution is returned unchanged.
inline ClassDistribution alpha_cut(const ClassDistribution& d, double tau) {
  detail::require(std::isfinite(tau) && tau >= 0.0 && tau < 1.0, "alpha-cut must lie in [0, 1)");
  if (d.is_all_zero() || tau == 0.0) return d;
  std::vector<double> kept = d.values();
  bool any = false;
  for (double& v : kept) {
    if (v < tau)
      v = 0.0;
    else
      any = true;
  }
  if (!any) return d;
  return ClassDistribution::normalize(std::move(kept));
}

/// Max aggregation: the most confident class, lowest index on ties.
inline std::size_t classify_binary(const ClassDistribution& d) {
  if (d.is_all_zero()) throw DataError("unclassifiable sample");
  const auto& r = d.values();
  return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

}  // namespace fqrc
