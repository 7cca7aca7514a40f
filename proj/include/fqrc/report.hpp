#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "fqrc/core.hpp"

namespace fqrc {

// Key-value report: one `key=value` per line. Per-class entries are indexed,
// e.g. `class.0=Coast`, `f_score.0=0.75`. Keys starting with `param.` are
// informational and ignored on reload.
inline void write_report(const EvalReport& r, std::ostream& out, const EvalParams* params = nullptr) {
  using detail::format_exact;
  out << "samples=" << r.samples << '\n';
  out << "accuracy=" << format_exact(r.accuracy) << '\n';
  out << "binary_accuracy=" << format_exact(r.binary_accuracy) << '\n';
  out << "has_reference=" << (r.has_reference ? 1 : 0) << '\n';
  out << "mean_similarity=" << format_exact(r.mean_similarity) << '\n';
  out << "mean_error_std=" << format_exact(r.mean_error_std) << '\n';
  out << "macro_f_score=" << format_exact(r.macro_f_score) << '\n';
  out << "classes=" << r.class_names.size() << '\n';
  for (std::size_t k = 0; k < r.class_names.size(); ++k) {
    out << "class." << k << '=' << r.class_names[k] << '\n';
    out << "error_mean." << k << '=' << format_exact(r.error_mean.at(k)) << '\n';
    out << "error_std." << k << '=' << format_exact(r.error_std.at(k)) << '\n';
    out << "f_score." << k << '=' << format_exact(r.f_scores.at(k)) << '\n';
  }
  if (params) {
    out << "param.alpha=" << format_exact(params->alpha) << '\n';
    out << "param.beta=" << format_exact(params->beta_w) << '\n';
    out << "param.gamma=" << format_exact(params->gamma_w) << '\n';
    if (params->alpha_cut) out << "param.alpha_cut=" << format_exact(*params->alpha_cut) << '\n';
  }
}

inline EvalReport read_report(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("report line " + std::to_string(line_no) + ": expected key=value");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw DataError("report is missing key '" + key + "'");
    return it->second;
  };
  auto num = [&](const std::string& key) {
    std::istringstream s(get(key));
    s.imbue(std::locale::classic());
    double v = 0;
    if (!(s >> v)) throw DataError("report key '" + key + "' is not a number");
    return v;
  };

  EvalReport r;
  r.samples = static_cast<std::size_t>(num("samples"));
  r.accuracy = num("accuracy");
  r.binary_accuracy = num("binary_accuracy");
  r.has_reference = num("has_reference") != 0.0;
  r.mean_similarity = num("mean_similarity");
  r.mean_error_std = num("mean_error_std");
  r.macro_f_score = num("macro_f_score");
  const auto k_count = static_cast<std::size_t>(num("classes"));
  for (std::size_t k = 0; k < k_count; ++k) {
    const std::string idx = std::to_string(k);
    r.class_names.push_back(get("class." + idx));
    r.error_mean.push_back(num("error_mean." + idx));
    r.error_std.push_back(num("error_std." + idx));
    r.f_scores.push_back(num("f_score." + idx));
  }
  return r;
}

inline EvalReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_report(in);
}

/// Aligned human-readable table.
inline void print_report(const EvalReport& r, std::ostream& out) {
  using detail::format_fixed;
  out << "samples            " << r.samples << '\n';
  out << "alpha-evaluation   " << format_fixed(r.accuracy, 4) << '\n';
  out << "binary accuracy    " << format_fixed(r.binary_accuracy, 4) << '\n';
  out << "macro F-score      " << format_fixed(r.macro_f_score, 4) << '\n';
  if (r.has_reference) {
    out << "mean similarity    " << format_fixed(r.mean_similarity, 4) << '\n';
    out << "mean error std     " << format_fixed(r.mean_error_std, 4) << '\n';
  }
  std::size_t width = 5;
  for (const auto& n : r.class_names) width = std::max(width, n.size());
  out << '\n' << std::left << std::setw(static_cast<int>(width)) << "class" << "  F-score";
  if (r.has_reference) out << "  err-mean  err-std";
  out << '\n';
  for (std::size_t k = 0; k < r.class_names.size(); ++k) {
    out << std::left << std::setw(static_cast<int>(width)) << r.class_names[k] << "  "
        << std::right << std::setw(7) << format_fixed(r.f_scores[k], 4);
    if (r.has_reference)
      out << "  " << std::setw(8) << format_fixed(r.error_mean[k], 4) << "  " << std::setw(7)
          << format_fixed(r.error_std[k], 4);
    out << '\n';
  }
  out << std::right;
}

}  // namespace fqrc
