#pragma once

#include <algorithm>
#include <cmath>
#include <ranges>
#include <string>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

inline constexpr std::size_t kDefaultBins = 50;

/// Equal-width histogram over [min(values), max(values)] with `bins` bins.
///
/// Edge i is min + i * (max - min) / bins, except the last edge, which is
/// max itself. Bin i holds edge[i] <= x < edge[i + 1]; the last bin is also
/// closed on the right. When every value is equal, all mass lands in bin 0
/// and every edge equals that value.
inline HistogramSummary build_histogram(const std::vector<double>& values, std::size_t bins) {
  if (values.empty()) throw DataError("no training data for class/feature");
  detail::require(bins >= 1, "bin count must be at least 1");
  for (double v : values) detail::require(std::isfinite(v), "training value is not finite");

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / static_cast<double>(bins);

  HistogramSummary h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i < bins; ++i) h.bin_edges[i] = lo + static_cast<double>(i) * width;
  h.bin_edges[bins] = hi;
  h.counts.assign(bins, 0);

  if (width > 0.0) {
    // Interior edges edge[1..bins-1]; the number of them <= x is the bin index.
    const auto first = h.bin_edges.begin() + 1;
    const auto last = h.bin_edges.end() - 1;
    for (double v : values) {
      const auto idx = static_cast<std::size_t>(std::upper_bound(first, last, v) - first);
      ++h.counts[idx];
    }
  } else {
    h.counts[0] = values.size();
  }

  h.nonempty_bins = static_cast<std::size_t>(
      std::count_if(h.counts.begin(), h.counts.end(), [](std::size_t c) { return c > 0; }));
  h.mean_occupancy = static_cast<double>(values.size()) / static_cast<double>(h.nonempty_bins);
  return h;
}

/// Reads the four-tuple off a histogram: the plateau [a, b] is the hull of
/// bins whose count is strictly above the mean occupancy, and the support is
/// [min, max] of the data. A histogram with no such bin (uniform occupancy)
/// uses every non-empty bin instead.
inline FourTuple extract_four_tuple(const HistogramSummary& hist, const std::vector<double>& values) {
  detail::require(!values.empty() && hist.total() == values.size(),
                  "histogram was not built from these values");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (lo == hi) return FourTuple(lo, lo, 0.0, 0.0);

  const auto& n = hist.counts;
  auto dominant = [&](std::size_t i) { return static_cast<double>(n[i]) > hist.mean_occupancy; };
  std::size_t first = n.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (dominant(i)) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == n.size()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (n[i] > 0) {
        first = std::min(first, i);
        last = i;
      }
    }
  }

  const double a = hist.bin_edges[first];
  const double b = hist.bin_edges[last + 1];
  return FourTuple::from_breakpoints(lo, std::max(a, lo), std::min(b, hi), hi);
}

/// Learns the J x K membership grid from labeled samples.
///
/// Accepts any range of LabeledSample so dataset views (e.g. leave-one-out
/// folds) can be trained on without copying.
template <std::ranges::input_range Samples>
  requires std::same_as<std::ranges::range_value_t<Samples>, LabeledSample>
MembershipModel train(const Samples& samples, std::vector<std::string> feature_names,
                      std::vector<std::string> class_names, std::size_t bins = kDefaultBins) {
  const std::size_t num_features = feature_names.size();
  const std::size_t num_classes = class_names.size();
  detail::require(num_features > 0 && num_classes > 0, "need at least one feature and one class");
  detail::require(bins >= 1, "bin count must be at least 1");

  // cells[k][j] holds the j-th feature of every class-k sample
  std::vector<std::vector<std::vector<double>>> cells(
      num_classes, std::vector<std::vector<double>>(num_features));
  for (const LabeledSample& s : samples) {
    detail::require(s.features.size() == num_features,
                    "sample has " + std::to_string(s.features.size()) + " features, expected " +
                        std::to_string(num_features));
    detail::require(s.label < num_classes, "sample label out of range");
    for (std::size_t j = 0; j < num_features; ++j) cells[s.label][j].push_back(s.features[j]);
  }
  for (std::size_t k = 0; k < num_classes; ++k) {
    if (cells[k][0].empty()) throw DataError("class '" + class_names[k] + "' has no training samples");
  }

  std::vector<FourTuple> tuples;
  tuples.reserve(num_features * num_classes);
  for (std::size_t j = 0; j < num_features; ++j) {
    for (std::size_t k = 0; k < num_classes; ++k) {
      const auto& x = cells[k][j];
      tuples.push_back(extract_four_tuple(build_histogram(x, bins), x));
    }
  }
  return MembershipModel(std::move(feature_names), std::move(class_names), std::move(tuples));
}

}  // namespace fqrc
