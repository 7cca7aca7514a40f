#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <ranges>
#include <string>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

inline constexpr std::size_t kDefaultNeighbors = 5;

inline double euclidean_distance(const FeatureVector& l, const FeatureVector& r) {
  detail::require(l.size() == r.size(), "feature vectors differ in length");
  double sum = 0.0;
  for (std::size_t j = 0; j < l.size(); ++j) {
    const double d = l[j] - r[j];
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// Majority vote among the k nearest training samples (Euclidean). Vote ties
/// go to the class with the smaller mean neighbor distance, then the lower
/// class index. Distance ties between neighbors keep training order.
template <std::ranges::forward_range Samples>
  requires std::same_as<std::ranges::range_value_t<Samples>, LabeledSample>
std::size_t knn_classify(const Samples& train, const FeatureVector& query,
                         std::size_t k = kDefaultNeighbors) {
  struct Neighbor {
    double distance;
    std::size_t label;
  };
  std::vector<Neighbor> all;
  for (const LabeledSample& s : train) all.push_back({euclidean_distance(s.features, query), s.label});
  if (all.empty()) throw ValidationError("KNN needs at least one training sample");
  detail::require(k >= 1, "k must be at least 1");
  detail::require(k <= all.size(), "k = " + std::to_string(k) + " exceeds the " +
                                       std::to_string(all.size()) + " training samples");

  std::stable_sort(all.begin(), all.end(),
                   [](const Neighbor& l, const Neighbor& r) { return l.distance < r.distance; });

  struct Tally {
    std::size_t votes = 0;
    double distance_sum = 0.0;
  };
  std::map<std::size_t, Tally> tally;  // ordered by class index
  for (std::size_t i = 0; i < k; ++i) {
    auto& t = tally[all[i].label];
    ++t.votes;
    t.distance_sum += all[i].distance;
  }

  auto best = tally.begin();
  for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
    const auto& [votes, dist] = it->second;
    const auto& [best_votes, best_dist] = best->second;
    if (votes > best_votes) {
      best = it;
    } else if (votes == best_votes &&
               dist / static_cast<double>(votes) < best_dist / static_cast<double>(best_votes)) {
      best = it;
    }
  }
  return best->first;
}

}  // namespace fqrc
