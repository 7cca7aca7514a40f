#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

/// Subset of the K classes.
class LabelSet {
 public:
  explicit LabelSet(std::size_t num_classes) : bits_(num_classes, false) {}
  LabelSet(std::size_t num_classes, std::initializer_list<std::size_t> members)
      : LabelSet(num_classes) {
    for (auto k : members) insert(k);
  }

  /// Classes with strictly positive confidence.
  static LabelSet from_distribution(const ClassDistribution& d) {
    LabelSet s(d.size());
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] > 0.0) s.bits_[k] = true;
    return s;
  }

  void insert(std::size_t k) {
    detail::require(k < bits_.size(), "label outside the class set");
    bits_[k] = true;
  }
  bool contains(std::size_t k) const { return k < bits_.size() && bits_[k]; }
  std::size_t num_classes() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
  }
  bool empty() const noexcept { return size() == 0; }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Multi-label alpha-evaluation score (1 - |beta*M + gamma*Q| / |Y u W|)^alpha,
/// M = missed labels, Q = false positives. A fully incorrect answer (no label
/// in common) scores 0 for every alpha, including alpha = 0.
inline double alpha_score(const LabelSet& predicted, const LabelSet& truth, const EvalParams& p) {
  p.validate();
  detail::require(predicted.num_classes() == truth.num_classes(), "label sets differ in K");
  std::size_t missed = 0, false_pos = 0, uni = 0, common = 0;
  for (std::size_t k = 0; k < truth.num_classes(); ++k) {
    const bool y = truth.contains(k), w = predicted.contains(k);
    missed += y && !w;
    false_pos += w && !y;
    uni += y || w;
    common += y && w;
  }
  if (uni == 0) throw ValidationError("undefined union: both label sets are empty");
  if (common == 0) return 0.0;
  const double penalty = std::abs(p.beta_w * static_cast<double>(missed) +
                                  p.gamma_w * static_cast<double>(false_pos));
  const double base = std::clamp(1.0 - penalty / static_cast<double>(uni), 0.0, 1.0);
  if (base == 0.0) return 0.0;
  return std::pow(base, p.alpha);
}

/// Mean alpha-evaluation score over (predicted, truth) pairs.
inline double dataset_accuracy(const std::vector<std::pair<LabelSet, LabelSet>>& pairs,
                               const EvalParams& p) {
  if (pairs.empty()) throw ValidationError("accuracy over an empty sample set");
  double sum = 0.0;
  for (const auto& [pred, truth] : pairs) sum += alpha_score(pred, truth, p);
  return sum / static_cast<double>(pairs.size());
}

/// Cosine similarity of two confidence histograms (identical -> 1).
inline double distribution_similarity(const ClassDistribution& predicted,
                                      const ClassDistribution& reference) {
  detail::require(predicted.size() == reference.size(), "distributions differ in K");
  if (predicted.is_all_zero() || reference.is_all_zero())
    throw ValidationError("zero-norm distribution");
  double dot = 0.0, np = 0.0, nr = 0.0;
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    dot += predicted[k] * reference[k];
    np += predicted[k] * predicted[k];
    nr += reference[k] * reference[k];
  }
  return std::clamp(dot / (std::sqrt(np) * std::sqrt(nr)), 0.0, 1.0);
}

struct ErrorStats {
  std::vector<double> mean;  // per class
  std::vector<double> std;   // per class, population form
  double mean_std = 0.0;     // average of the per-class deviations
};

/// Per-class mean and standard deviation of |predicted - reference|.
inline ErrorStats error_stats(
    const std::vector<std::pair<ClassDistribution, ClassDistribution>>& pairs) {
  if (pairs.empty()) throw ValidationError("error statistics over an empty sample set");
  const std::size_t k_count = pairs.front().first.size();
  ErrorStats out{std::vector<double>(k_count, 0.0), std::vector<double>(k_count, 0.0), 0.0};
  for (const auto& [p, r] : pairs) {
    detail::require(p.size() == k_count && r.size() == k_count, "distributions differ in K");
    for (std::size_t k = 0; k < k_count; ++k) out.mean[k] += std::abs(p[k] - r[k]);
  }
  const auto n = static_cast<double>(pairs.size());
  for (auto& m : out.mean) m /= n;
  for (const auto& [p, r] : pairs) {
    for (std::size_t k = 0; k < k_count; ++k) {
      const double dev = std::abs(p[k] - r[k]) - out.mean[k];
      out.std[k] += dev * dev;
    }
  }
  for (auto& s : out.std) {
    s = std::sqrt(s / n);
    out.mean_std += s;
  }
  out.mean_std /= static_cast<double>(k_count);
  return out;
}

/// One-vs-rest F-score per class. Classes with precision + recall = 0
/// (including never predicted and never true) score 0.
inline std::vector<double> f_score(const std::vector<std::size_t>& predicted,
                                   const std::vector<std::size_t>& truth, std::size_t num_classes) {
  if (predicted.empty() || truth.empty()) throw ValidationError("F-score over empty label lists");
  detail::require(predicted.size() == truth.size(), "label lists differ in length");
  std::vector<double> tp(num_classes, 0.0), fp(num_classes, 0.0), fn(num_classes, 0.0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    detail::require(truth[i] < num_classes, "true label outside the class set");
    if (predicted[i] == truth[i]) {
      tp[truth[i]] += 1.0;
      continue;
    }
    fn[truth[i]] += 1.0;
    // predicted[i] >= num_classes means "no prediction" and only costs recall
    if (predicted[i] < num_classes) fp[predicted[i]] += 1.0;
  }
  std::vector<double> f(num_classes, 0.0);
  for (std::size_t k = 0; k < num_classes; ++k) {
    const double precision = tp[k] + fp[k] > 0.0 ? tp[k] / (tp[k] + fp[k]) : 0.0;
    const double recall = tp[k] + fn[k] > 0.0 ? tp[k] / (tp[k] + fn[k]) : 0.0;
    if (precision + recall > 0.0) f[k] = 2.0 * precision * recall / (precision + recall);
  }
  return f;
}

inline double macro_average(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

struct RocPoint {
  double threshold;
  double tpr;
  double fpr;
};

/// (threshold, TPR, FPR) for a one-vs-rest score, one point per distinct
/// score from high to low. Feed this to an external plotting tool.
inline std::vector<RocPoint> roc_points(const std::vector<double>& scores,
                                        const std::vector<bool>& positive) {
  detail::require(scores.size() == positive.size(), "scores and labels differ in length");
  const auto pos = static_cast<double>(std::count(positive.begin(), positive.end(), true));
  const auto neg = static_cast<double>(positive.size()) - pos;
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return scores[l] > scores[r]; });
  std::vector<RocPoint> out;
  double tp = 0.0, fp = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (positive[order[i]] ? tp : fp) += 1.0;
    if (i + 1 < order.size() && scores[order[i + 1]] == scores[order[i]]) continue;
    out.push_back({scores[order[i]], pos > 0 ? tp / pos : 0.0, neg > 0 ? fp / neg : 0.0});
  }
  return out;
}

}  // namespace fqrc
