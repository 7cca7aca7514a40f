#pragma once

// Command implementations behind the `fqrc` tool. Each returns the process
// exit status: 0 success, 2 validation/data error, 3 IO error.

#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fqrc/core.hpp"
#include "fqrc/data.hpp"
#include "fqrc/eval.hpp"
#include "fqrc/infer.hpp"
#include "fqrc/knn.hpp"
#include "fqrc/learn.hpp"
#include "fqrc/model_io.hpp"
#include "fqrc/rank.hpp"
#include "fqrc/report.hpp"

namespace fqrc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 2;
inline constexpr int kExitIo = 3;

inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

// ---------------------------------------------------------------------------
// train

struct TrainOptions {
  std::string dataset;
  std::string out;
  std::size_t bins = kDefaultBins;
  std::vector<std::string> classes;  // explicit class list, optional
};

inline ModelFile train_model_file(const Dataset& ds, std::size_t bins) {
  return ModelFile{train(ds.samples(), ds.feature_names(), ds.class_names(), bins), bins,
                   ds.class_counts()};
}

inline int cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset ds = load_csv(opt.dataset, CsvOptions{opt.classes});
    const ModelFile mf = train_model_file(ds, opt.bins);
    save_model(mf, opt.out);

    const auto& m = mf.model;
    out << "trained " << m.num_features() << " features x " << m.num_classes() << " classes, "
        << ds.size() << " samples, " << opt.bins << " bins\n";
    for (std::size_t k = 0; k < m.num_classes(); ++k)
      out << "  class " << m.class_names()[k] << ": " << mf.class_counts[k] << " samples\n";
    for (std::size_t j = 0; j < m.num_features(); ++j) {
      for (std::size_t k = 0; k < m.num_classes(); ++k) {
        const auto& t = m.at(j, k);
        out << "  " << m.feature_names()[j] << " / " << m.class_names()[k] << ": {a="
            << detail::format_fixed(t.a(), 4) << ", b=" << detail::format_fixed(t.b(), 4)
            << ", alpha=" << detail::format_fixed(t.alpha(), 4)
            << ", beta=" << detail::format_fixed(t.beta(), 4) << "}\n";
      }
    }
    out << "wrote " << opt.out << '\n';
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------
// infer / rank

struct InputOptions {
  std::string model;
  std::string input;                          // CSV with f: columns
  std::optional<std::vector<double>> inline_x;  // used instead of input
  std::optional<double> alpha_cut;
};

struct InferOptions : InputOptions {
  bool binary = false;
  int precision = 4;
};

struct RankOptions : InputOptions {
  RankThresholds thresholds;
  DiffRule rule = DiffRule::Adjacent;
};

namespace detail {

struct Batch {
  ModelFile mf;
  std::vector<std::string> ids;
  std::vector<FeatureVector> rows;
};

inline Batch load_batch(const InputOptions& opt) {
  Batch b{load_model(opt.model), {}, {}};
  const auto& m = b.mf.model;
  if (opt.inline_x) {
    b.ids.emplace_back("inline");
    b.rows.emplace_back(*opt.inline_x);
  } else {
    FeatureTable t = load_feature_table(opt.input);
    if (t.feature_names.size() != m.num_features())
      throw ValidationError("input has " + std::to_string(t.feature_names.size()) +
                            " features, model expects " + std::to_string(m.num_features()));
    if (t.feature_names != m.feature_names())
      throw ValidationError("input feature names do not match the model");
    for (std::size_t i = 0; i < t.rows.size(); ++i) b.ids.push_back(std::to_string(i + 1));
    b.rows = std::move(t.rows);
  }
  for (const auto& x : b.rows)
    fqrc::detail::require(x.size() == m.num_features(),
                          "input has " + std::to_string(x.size()) + " features, model expects " +
                              std::to_string(m.num_features()));
  return b;
}

inline ClassDistribution infer_with_cut(const MembershipModel& m, const FeatureVector& x,
                                        const std::optional<double>& cut) {
  ClassDistribution d = infer(m, x);
  if (cut) d = alpha_cut(d, *cut);
  return d;
}

}  // namespace detail

/// One line per sample: `<id> r_1 ... r_K [label]`, or `<id> NONE` when the
/// sample is outside every support. Labels are 1-based class indices.
inline int cmd_infer(const InferOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto batch = detail::load_batch(opt);
    const auto& m = batch.mf.model;
    out << "# id";
    for (const auto& c : m.class_names()) out << ' ' << c;
    if (opt.binary) out << " label";
    out << '\n';
    for (std::size_t i = 0; i < batch.rows.size(); ++i) {
      const auto d = detail::infer_with_cut(m, batch.rows[i], opt.alpha_cut);
      out << batch.ids[i];
      if (d.is_all_zero()) {
        out << " NONE\n";
        continue;
      }
      for (double r : d.values()) out << ' ' << fqrc::detail::format_fixed(r, opt.precision);
      if (opt.binary) out << ' ' << classify_binary(d) + 1;
      out << '\n';
    }
    return kExitOk;
  });
}

/// One line per sample: `<id>\t<description>\t<symbol string>`.
inline int cmd_rank(const RankOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    opt.thresholds.validate();
    const auto batch = detail::load_batch(opt);
    const auto& m = batch.mf.model;
    for (std::size_t i = 0; i < batch.rows.size(); ++i) {
      const auto d = detail::infer_with_cut(m, batch.rows[i], opt.alpha_cut);
      const auto ri = interpret(d, opt.thresholds, opt.rule);
      out << batch.ids[i] << '\t' << describe(ri, m.class_names()) << '\t'
          << symbol_string(ri, m.class_names()) << '\n';
    }
    return kExitOk;
  });
}

// ---------------------------------------------------------------------------
// evaluate

enum class Protocol { LeaveOneOut, Manifest };
enum class Classifier { Fqrc, Knn };

struct EvaluateOptions {
  std::string dataset;
  std::optional<std::string> model;     // manifest protocol only; otherwise trained
  Protocol protocol = Protocol::LeaveOneOut;
  std::optional<std::string> manifest;
  Classifier classifier = Classifier::Fqrc;
  std::size_t bins = kDefaultBins;
  std::size_t knn_k = kDefaultNeighbors;
  EvalParams params;
  std::optional<double> ref_alpha_cut;  // applied to reference distributions
  std::optional<std::string> report;    // key-value report path
  std::vector<std::string> classes;
};

/// Accumulates per-sample predictions into an EvalReport.
class Evaluator {
 public:
  Evaluator(const Dataset& ds, const EvaluateOptions& opt) : ds_(ds), opt_(opt) {}

  void add(std::size_t sample_index, const ClassDistribution& predicted) {
    const auto& s = ds_.sample(sample_index);
    const std::size_t k_count = ds_.num_classes();

    LabelSet truth(k_count, {s.label});
    std::optional<ClassDistribution> ref;
    if (ds_.has_references() && !ds_.reference(sample_index).is_all_zero()) {
      ref = ds_.reference(sample_index);
      if (opt_.ref_alpha_cut) ref = alpha_cut(*ref, *opt_.ref_alpha_cut);
      truth = LabelSet::from_distribution(*ref);
    }
    label_pairs_.emplace_back(LabelSet::from_distribution(predicted), truth);

    truth_.push_back(s.label);
    predicted_.push_back(predicted.is_all_zero() ? k_count : classify_binary(predicted));

    if (ref) {
      similarity_sum_ += predicted.is_all_zero() ? 0.0 : distribution_similarity(predicted, *ref);
      dist_pairs_.emplace_back(predicted, *ref);
    }
  }

  EvalReport report() const {
    if (label_pairs_.empty()) throw DataError("protocol produced no test samples");
    EvalReport r;
    r.class_names = ds_.class_names();
    r.samples = label_pairs_.size();
    r.accuracy = dataset_accuracy(label_pairs_, opt_.params);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth_.size(); ++i) hits += predicted_[i] == truth_[i];
    r.binary_accuracy = static_cast<double>(hits) / static_cast<double>(truth_.size());
    r.f_scores = f_score(predicted_, truth_, ds_.num_classes());
    r.macro_f_score = macro_average(r.f_scores);
    if (!dist_pairs_.empty()) {
      r.has_reference = true;
      r.mean_similarity = similarity_sum_ / static_cast<double>(dist_pairs_.size());
      const auto es = error_stats(dist_pairs_);
      r.error_mean = es.mean;
      r.error_std = es.std;
      r.mean_error_std = es.mean_std;
    } else {
      r.error_mean.assign(ds_.num_classes(), 0.0);
      r.error_std.assign(ds_.num_classes(), 0.0);
    }
    return r;
  }

 private:
  const Dataset& ds_;
  const EvaluateOptions& opt_;
  std::vector<std::pair<LabelSet, LabelSet>> label_pairs_;
  std::vector<std::pair<ClassDistribution, ClassDistribution>> dist_pairs_;
  std::vector<std::size_t> truth_, predicted_;
  double similarity_sum_ = 0.0;
};

inline ClassDistribution one_hot(std::size_t k, std::size_t num_classes) {
  std::vector<double> r(num_classes, 0.0);
  r.at(k) = 1.0;
  return ClassDistribution(std::move(r));
}

/// Runs the protocol and returns the report without printing anything.
inline EvalReport run_evaluation(const Dataset& ds, const EvaluateOptions& opt,
                                 std::vector<std::string>* warnings = nullptr) {
  opt.params.validate();
  if (opt.ref_alpha_cut)
    fqrc::detail::require(*opt.ref_alpha_cut >= 0.0 && *opt.ref_alpha_cut < 1.0,
                          "reference alpha-cut must lie in [0, 1)");
  Evaluator ev(ds, opt);

  auto predict = [&](const auto& train_samples, const MembershipModel* fixed_model,
                     std::size_t test_index) {
    const FeatureVector& x = ds.sample(test_index).features;
    if (opt.classifier == Classifier::Knn)
      return one_hot(knn_classify(train_samples, x, opt.knn_k), ds.num_classes());
    ClassDistribution d = fixed_model ? infer(*fixed_model, x) : ClassDistribution::all_zero(1);
    if (opt.params.alpha_cut) d = alpha_cut(d, *opt.params.alpha_cut);
    return d;
  };

  if (opt.protocol == Protocol::LeaveOneOut) {
    if (opt.model && warnings) warnings->emplace_back("--model is ignored under leave-one-out");
    for (const Fold& fold : leave_one_out(ds)) {
      std::optional<MembershipModel> model;
      if (opt.classifier == Classifier::Fqrc) {
        try {
          model = train(fold.train.samples(), ds.feature_names(), ds.class_names(), opt.bins);
        } catch (const DataError& e) {
          throw DataError("leave-one-out fold " + std::to_string(fold.test_index + 1) + ": " +
                          e.what());
        }
      }
      ev.add(fold.test_index, predict(fold.train.samples(), model ? &*model : nullptr, fold.test_index));
    }
  } else {
    if (!opt.manifest) throw ValidationError("manifest protocol needs --manifest");
    const Split split = fixed_split(ds, load_manifest(*opt.manifest));
    if (warnings) warnings->insert(warnings->end(), split.warnings.begin(), split.warnings.end());
    if (split.test.empty()) throw DataError("manifest has no test rows to evaluate");
    std::optional<MembershipModel> model;
    if (opt.classifier == Classifier::Fqrc) {
      if (opt.model) {
        model = load_model(*opt.model).model;
        if (model->feature_names() != ds.feature_names() || model->class_names() != ds.class_names())
          throw ValidationError("model features/classes do not match the dataset");
      } else {
        model = train(split.train.samples(), ds.feature_names(), ds.class_names(), opt.bins);
      }
    }
    for (std::size_t i : split.test.indices())
      ev.add(i, predict(split.train.samples(), model ? &*model : nullptr, i));
  }
  return ev.report();
}

inline int cmd_evaluate(const EvaluateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dataset ds = load_csv(opt.dataset, CsvOptions{opt.classes});
    std::vector<std::string> warnings;
    const EvalReport r = run_evaluation(ds, opt, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    print_report(r, out);
    if (opt.report) {
      std::ofstream f(*opt.report);
      if (!f) throw IoError("cannot write '" + *opt.report + "'");
      write_report(r, f, &opt.params);
      if (!f) throw IoError("write failed for '" + *opt.report + "'");
    }
    return kExitOk;
  });
}

}  // namespace fqrc::cli
