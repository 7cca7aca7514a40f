#pragma once

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <ranges>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

class DatasetView;

/// Labeled feature table with optional per-sample reference distributions
/// (e.g. survey histograms).
class Dataset {
 public:
  Dataset(std::vector<std::string> feature_names, std::vector<std::string> class_names,
          std::vector<LabeledSample> samples,
          std::optional<std::vector<ClassDistribution>> references = std::nullopt)
      : feature_names_(std::move(feature_names)),
        class_names_(std::move(class_names)),
        samples_(std::move(samples)),
        references_(std::move(references)) {
    detail::require(!feature_names_.empty(), "dataset needs at least one feature");
    detail::require(!class_names_.empty(), "dataset needs at least one class");
    detail::require_unique(feature_names_, "feature");
    detail::require_unique(class_names_, "class");
    for (const auto& s : samples_) {
      detail::require(s.features.size() == feature_names_.size(), "sample feature count mismatch");
      detail::require(s.label < class_names_.size(), "sample label outside the class set");
    }
    if (references_) {
      detail::require(references_->size() == samples_.size(), "one reference per sample required");
      for (const auto& r : *references_)
        detail::require(r.size() == class_names_.size(), "reference distribution has wrong K");
    }
  }

  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t num_features() const noexcept { return feature_names_.size(); }
  std::size_t num_classes() const noexcept { return class_names_.size(); }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const std::vector<LabeledSample>& samples() const noexcept { return samples_; }
  const LabeledSample& sample(std::size_t i) const { return samples_.at(i); }
  bool has_references() const noexcept { return references_.has_value(); }
  const ClassDistribution& reference(std::size_t i) const { return references_.value().at(i); }

  std::vector<std::size_t> class_counts() const {
    std::vector<std::size_t> c(num_classes(), 0);
    for (const auto& s : samples_) ++c[s.label];
    return c;
  }

 private:
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
  std::vector<LabeledSample> samples_;
  std::optional<std::vector<ClassDistribution>> references_;
};

/// Index subset of a dataset. The dataset must outlive the view.
class DatasetView {
 public:
  DatasetView(const Dataset& ds, std::vector<std::size_t> indices)
      : ds_(&ds), indices_(std::move(indices)) {
    for (auto i : indices_) detail::require(i < ds.size(), "view index out of range");
  }

  const Dataset& dataset() const noexcept { return *ds_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const LabeledSample& sample(std::size_t i) const { return ds_->sample(indices_.at(i)); }

  auto samples() const {
    return std::views::transform(indices_, [ds = ds_](std::size_t i) -> const LabeledSample& {
      return ds->sample(i);
    });
  }

 private:
  const Dataset* ds_;
  std::vector<std::size_t> indices_;
};

struct Fold {
  DatasetView train;
  std::size_t test_index;
};

/// N folds; fold i trains on every sample except i and tests on sample i.
inline auto leave_one_out(const Dataset& ds) {
  if (ds.size() < 2) throw DataError("leave-one-out needs at least 2 samples");
  return std::views::iota(std::size_t{0}, ds.size()) |
         std::views::transform([&ds](std::size_t test) {
           std::vector<std::size_t> idx;
           idx.reserve(ds.size() - 1);
           for (std::size_t i = 0; i < ds.size(); ++i)
             if (i != test) idx.push_back(i);
           return Fold{DatasetView(ds, std::move(idx)), test};
         });
}

enum class SplitRole { Train, Test };

/// Row assignment for a fixed train/test protocol, keyed by 0-based sample index.
using Manifest = std::vector<std::pair<std::size_t, SplitRole>>;

struct Split {
  DatasetView train;
  DatasetView test;
  std::vector<std::string> warnings;
};

inline Split fixed_split(const Dataset& ds, const Manifest& manifest) {
  std::vector<int> seen(ds.size(), 0);
  std::vector<std::size_t> train, test;
  for (const auto& [row, role] : manifest) {
    if (row >= ds.size())
      throw DataError("manifest references missing row " + std::to_string(row));
    if (seen[row]++) throw DataError("manifest assigns row " + std::to_string(row) + " twice");
    (role == SplitRole::Train ? train : test).push_back(row);
  }
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (!seen[i]) throw DataError("manifest does not assign row " + std::to_string(i));
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  Split s{DatasetView(ds, std::move(train)), DatasetView(ds, std::move(test)), {}};
  if (s.test.empty()) s.warnings.emplace_back("manifest has no test rows");
  if (s.train.empty()) s.warnings.emplace_back("manifest has no training rows");
  return s;
}

// ---------------------------------------------------------------------------
// CSV

namespace csv {

struct Row {
  std::size_t line;  // 1-based line in the file
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

inline std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw DataError("line " + std::to_string(line_no) + ": unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

inline Table parse(std::istream& in) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_line(line, line_no);
    if (t.header.empty()) {
      t.header = std::move(fields);
      continue;
    }
    if (fields.size() != t.header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(t.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    t.rows.push_back({line_no, std::move(fields)});
  }
  if (t.header.empty()) throw DataError("empty CSV file: missing header row");
  return t;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse(in);
}

inline double parse_number(const std::string& text, std::size_t line, const std::string& column) {
  const char* begin = text.c_str();
  while (*begin == ' ' || *begin == '\t') ++begin;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw DataError("line " + std::to_string(line) + ": column '" + column +
                    "' is not a finite number: '" + text + "'");
  return v;
}

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string s = "\"";
  for (char c : field) {
    if (c == '"') s += '"';
    s += c;
  }
  return s + '"';
}

}  // namespace csv

struct CsvOptions {
  /// Explicit class list and order; otherwise the distinct labels sorted by name.
  std::vector<std::string> class_names;
};

/// Parses `f:<name>,...,label[,ref:<class>,...]` CSV text.
inline Dataset parse_dataset(std::istream& in, const CsvOptions& opt = {}) {
  const csv::Table t = csv::parse(in);
  std::vector<std::string> features;
  std::vector<std::size_t> feature_cols;
  std::optional<std::size_t> label_col;
  std::vector<std::pair<std::string, std::size_t>> ref_cols;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    const std::string& h = t.header[c];
    if (h.rfind("f:", 0) == 0) {
      features.push_back(h.substr(2));
      feature_cols.push_back(c);
    } else if (h == "label") {
      if (label_col) throw DataError("header has more than one label column");
      label_col = c;
    } else if (h.rfind("ref:", 0) == 0) {
      ref_cols.emplace_back(h.substr(4), c);
    } else {
      throw DataError("line 1: unrecognised column '" + h + "' (expected f:<name>, label or ref:<class>)");
    }
  }
  if (features.empty()) throw DataError("line 1: no feature columns");
  if (!label_col) throw DataError("line 1: no label column");

  std::vector<std::string> classes = opt.class_names;
  if (classes.empty()) {
    std::set<std::string> distinct;
    for (const auto& r : t.rows) distinct.insert(r.fields[*label_col]);
    classes.assign(distinct.begin(), distinct.end());
  }
  std::map<std::string, std::size_t> class_index;
  for (std::size_t k = 0; k < classes.size(); ++k) class_index.emplace(classes[k], k);

  std::vector<std::size_t> ref_order;  // column for each class
  if (!ref_cols.empty()) {
    ref_order.assign(classes.size(), t.header.size());
    for (const auto& [name, col] : ref_cols) {
      auto it = class_index.find(name);
      if (it == class_index.end()) throw DataError("line 1: ref column for unknown class '" + name + "'");
      ref_order[it->second] = col;
    }
    for (std::size_t k = 0; k < classes.size(); ++k)
      if (ref_order[k] == t.header.size())
        throw DataError("line 1: missing ref column for class '" + classes[k] + "'");
  }

  std::vector<LabeledSample> samples;
  std::vector<ClassDistribution> refs;
  for (const auto& row : t.rows) {
    std::vector<double> x;
    for (std::size_t j = 0; j < feature_cols.size(); ++j)
      x.push_back(csv::parse_number(row.fields[feature_cols[j]], row.line, t.header[feature_cols[j]]));
    const std::string& label = row.fields[*label_col];
    auto it = class_index.find(label);
    if (it == class_index.end())
      throw DataError("line " + std::to_string(row.line) + ": unknown label '" + label + "'");
    samples.push_back({FeatureVector(std::move(x)), it->second});

    if (!ref_order.empty()) {
      std::vector<double> r;
      double sum = 0.0;
      for (std::size_t col : ref_order) {
        r.push_back(csv::parse_number(row.fields[col], row.line, t.header[col]));
        if (r.back() < 0.0)
          throw DataError("line " + std::to_string(row.line) + ": negative reference value");
        sum += r.back();
      }
      if (sum != 0.0 && std::abs(sum - 1.0) > 1e-6)
        throw DataError("line " + std::to_string(row.line) + ": reference values sum to " +
                        detail::format_exact(sum) + ", expected 1 or 0");
      if (std::abs(sum - 1.0) <= ClassDistribution::kSumTolerance)
        refs.emplace_back(std::move(r));
      else
        refs.push_back(ClassDistribution::normalize(std::move(r)));
    }
  }
  std::optional<std::vector<ClassDistribution>> references;
  if (!ref_order.empty()) references = std::move(refs);
  return Dataset(std::move(features), std::move(classes), std::move(samples), std::move(references));
}

inline Dataset load_csv(const std::string& path, const CsvOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_dataset(in, opt);
}

/// Writes the dataset back in the same CSV layout with 17 significant digits.
inline void write_csv(const Dataset& ds, std::ostream& out) {
  for (const auto& f : ds.feature_names()) out << csv::quote("f:" + f) << ',';
  out << "label";
  if (ds.has_references())
    for (const auto& c : ds.class_names()) out << ',' << csv::quote("ref:" + c);
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& s = ds.sample(i);
    for (double v : s.features) out << detail::format_exact(v) << ',';
    out << csv::quote(ds.class_names()[s.label]);
    if (ds.has_references())
      for (double r : ds.reference(i).values()) out << ',' << detail::format_exact(r);
    out << '\n';
  }
}

/// Unlabeled feature rows for inference. Only `f:` columns are read; the
/// label and ref columns, when present, are ignored.
struct FeatureTable {
  std::vector<std::string> feature_names;
  std::vector<FeatureVector> rows;
};

inline FeatureTable parse_feature_table(std::istream& in) {
  const csv::Table t = csv::parse(in);
  FeatureTable out;
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (t.header[c].rfind("f:", 0) == 0) {
      out.feature_names.push_back(t.header[c].substr(2));
      cols.push_back(c);
    }
  }
  if (cols.empty()) throw DataError("line 1: no feature columns");
  for (const auto& row : t.rows) {
    std::vector<double> x;
    for (auto c : cols) x.push_back(csv::parse_number(row.fields[c], row.line, t.header[c]));
    out.rows.emplace_back(std::move(x));
  }
  return out;
}

inline FeatureTable load_feature_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_feature_table(in);
}

/// Manifest CSV with header `index,split`; index is the 0-based sample row,
/// split is `train` or `test`.
inline Manifest parse_manifest(std::istream& in) {
  const csv::Table t = csv::parse(in);
  if (t.header.size() != 2 || t.header[0] != "index" || t.header[1] != "split")
    throw DataError("line 1: manifest header must be 'index,split'");
  Manifest m;
  for (const auto& row : t.rows) {
    const double idx = csv::parse_number(row.fields[0], row.line, "index");
    if (idx < 0 || idx != std::floor(idx))
      throw DataError("line " + std::to_string(row.line) + ": index must be a non-negative integer");
    SplitRole role;
    if (row.fields[1] == "train")
      role = SplitRole::Train;
    else if (row.fields[1] == "test")
      role = SplitRole::Test;
    else
      throw DataError("line " + std::to_string(row.line) + ": split must be 'train' or 'test'");
    m.emplace_back(static_cast<std::size_t>(idx), role);
  }
  return m;
}

inline Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_manifest(in);
}

}  // namespace fqrc
