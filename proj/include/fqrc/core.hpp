#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fqrc {

/// Invalid input at a library boundary (bad dimensions, non-finite values,
/// violated type invariants).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is well-formed but cannot be used (malformed CSV row, class
/// without samples, unknown label).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

inline void require_unique(const std::vector<std::string>& names, const char* kind) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names) {
    require(!n.empty(), std::string(kind) + " name must not be empty");
    require(seen.insert(n).second, std::string("duplicate ") + kind + " name '" + n + "'");
  }
}

/// Round-trip text form of a double (17 significant digits).
inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace detail

/// Attribute scores of one sample. Values may be negative but never NaN/Inf.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) detail::require(std::isfinite(v), "feature value is not finite");
  }
  FeatureVector(std::initializer_list<double> values) : FeatureVector(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  const std::vector<double>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

/// A feature vector with a 0-based class index.
struct LabeledSample {
  FeatureVector features;
  std::size_t label = 0;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

/// Trapezoidal fuzzy number {a, b, alpha, beta}: membership 1 on [a, b],
/// linear ramps down to 0 at a - alpha and b + beta.
///
/// The support bounds are stored explicitly so that a tuple learned from
/// observed minimum/maximum reports them back without rounding.
class FourTuple {
 public:
  FourTuple(double a, double b, double alpha, double beta)
      : lower_(a - alpha), a_(a), b_(b), upper_(b + beta), alpha_(alpha), beta_(beta) {
    validate();
  }

  /// Builds the tuple from its four breakpoints lower <= a <= b <= upper.
  static FourTuple from_breakpoints(double lower, double a, double b, double upper) {
    detail::require(lower <= a && upper >= b, "support must contain the plateau");
    FourTuple t(a, b, a - lower, upper - b);
    t.lower_ = lower;
    t.upper_ = upper;
    return t;
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double support_min() const noexcept { return lower_; }
  double support_max() const noexcept { return upper_; }

  friend bool operator==(const FourTuple& l, const FourTuple& r) noexcept {
    return l.a_ == r.a_ && l.b_ == r.b_ && l.alpha_ == r.alpha_ && l.beta_ == r.beta_;
  }

 private:
  void validate() const {
    detail::require(std::isfinite(a_) && std::isfinite(b_) && std::isfinite(alpha_) &&
                        std::isfinite(beta_),
                    "four-tuple parameters must be finite");
    detail::require(a_ <= b_, "four-tuple requires a <= b");
    detail::require(alpha_ >= 0.0 && beta_ >= 0.0, "four-tuple requires alpha >= 0 and beta >= 0");
  }

  double lower_, a_, b_, upper_, alpha_, beta_;
};

/// J x K grid of four-tuples: row j is a feature, column k a class.
class MembershipModel {
 public:
  MembershipModel(std::vector<std::string> feature_names, std::vector<std::string> class_names,
                  std::vector<FourTuple> tuples)
      : feature_names_(std::move(feature_names)),
        class_names_(std::move(class_names)),
        tuples_(std::move(tuples)) {
    detail::require(!feature_names_.empty(), "model needs at least one feature");
    detail::require(!class_names_.empty(), "model needs at least one class");
    detail::require_unique(feature_names_, "feature");
    detail::require_unique(class_names_, "class");
    detail::require(tuples_.size() == feature_names_.size() * class_names_.size(),
                    "tuple grid does not match J x K");
  }

  std::size_t num_features() const noexcept { return feature_names_.size(); }
  std::size_t num_classes() const noexcept { return class_names_.size(); }
  const FourTuple& at(std::size_t feature, std::size_t cls) const {
    detail::require(feature < num_features() && cls < num_classes(), "tuple index out of range");
    return tuples_[feature * num_classes() + cls];
  }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const std::vector<FourTuple>& tuples() const noexcept { return tuples_; }

  friend bool operator==(const MembershipModel&, const MembershipModel&) = default;

 private:
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
  std::vector<FourTuple> tuples_;  // row-major, feature-by-class
};

/// Equal-width histogram of one (feature, class) cell.
struct HistogramSummary {
  std::vector<double> bin_edges;     // B + 1 edges
  std::vector<std::size_t> counts;   // B counts
  std::size_t nonempty_bins = 0;
  double mean_occupancy = 0.0;

  std::size_t num_bins() const noexcept { return counts.size(); }
  std::size_t total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  }
};

/// Normalized class confidences. Either sums to one or is the all-zero
/// sentinel for a sample outside every learned support.
class ClassDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit ClassDistribution(std::vector<double> r) : r_(std::move(r)) {
    detail::require(!r_.empty(), "distribution needs at least one class");
    double sum = 0.0;
    for (double v : r_) {
      detail::require(std::isfinite(v) && v >= 0.0 && v <= 1.0 + kSumTolerance,
                      "confidence outside [0, 1]");
      sum += v;
    }
    all_zero_ = sum == 0.0;
    detail::require(all_zero_ || std::abs(sum - 1.0) <= kSumTolerance,
                    "confidences must sum to 1 (got " + detail::format_exact(sum) + ")");
  }

  static ClassDistribution all_zero(std::size_t k) {
    return ClassDistribution(std::vector<double>(k, 0.0));
  }

  /// Divides non-negative weights by their sum; a zero sum gives the sentinel.
  static ClassDistribution normalize(std::vector<double> weights) {
    double z = 0.0;
    for (double w : weights) {
      detail::require(std::isfinite(w) && w >= 0.0, "weights must be finite and non-negative");
      z += w;
    }
    if (z > 0.0)
      for (double& w : weights) w /= z;
    return ClassDistribution(std::move(weights));
  }

  std::size_t size() const noexcept { return r_.size(); }
  double operator[](std::size_t k) const { return r_[k]; }
  const std::vector<double>& values() const noexcept { return r_; }
  bool is_all_zero() const noexcept { return all_zero_; }

  friend bool operator==(const ClassDistribution&, const ClassDistribution&) = default;

 private:
  std::vector<double> r_;
  bool all_zero_ = false;
};

enum class Symbol { Top, Equal, Higher, MuchHigher };

struct RankEntry {
  std::size_t class_index = 0;
  double r = 0.0;
  double r_diff = 0.0;  // 0 for the top entry
  Symbol symbol = Symbol::Top;
};

/// Classes ordered by confidence, plus the classes ruled out (r = 0).
struct RankInterpretation {
  std::vector<RankEntry> ranked;
  std::vector<std::size_t> excluded;  // ascending class index
};

/// Parameters of the multi-label alpha-evaluation score.
struct EvalParams {
  double alpha = 0.5;    // forgiveness rate
  double beta_w = 1.0;   // weight on missed labels
  double gamma_w = 1.0;  // weight on false positives
  std::optional<double> alpha_cut;  // applied to predictions before labelling

  void validate() const {
    detail::require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
    detail::require(std::isfinite(beta_w) && beta_w > 0.0, "beta weight must be > 0");
    detail::require(std::isfinite(gamma_w) && gamma_w > 0.0, "gamma weight must be > 0");
    if (alpha_cut)
      detail::require(*alpha_cut >= 0.0 && *alpha_cut < 1.0, "alpha-cut must lie in [0, 1)");
  }
};

struct EvalReport {
  std::vector<std::string> class_names;
  std::size_t samples = 0;
  double accuracy = 0.0;         // mean alpha-evaluation score
  double binary_accuracy = 0.0;  // argmax vs single label
  bool has_reference = false;    // similarity/error fields are meaningful
  double mean_similarity = 0.0;
  std::vector<double> error_mean;
  std::vector<double> error_std;
  double mean_error_std = 0.0;
  std::vector<double> f_scores;
  double macro_f_score = 0.0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

}  // namespace fqrc
