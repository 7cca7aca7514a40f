#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

inline constexpr int kModelFormatVersion = 1;

/// Persisted model: the tuple grid plus how it was trained.
struct ModelFile {
  MembershipModel model;
  std::size_t bins = 0;
  std::vector<std::size_t> class_counts;  // training samples per class

  friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

// Text layout, one record per line:
//
//   fqrc-model <version>
//   features <J>
//   classes <K>
//   bins <B>
//   feature <name>                       (J lines, in order)
//   class <count> <name>                 (K lines, in order)
//   tuple <j> <k> <a> <b> <alpha> <beta> (J*K lines, row-major)
//   end
//
// Names run to the end of the line; numbers use 17 significant digits.
inline void write_model(const ModelFile& mf, std::ostream& out) {
  const auto& m = mf.model;
  detail::require(mf.class_counts.size() == m.num_classes(), "class counts do not match K");
  out << "fqrc-model " << kModelFormatVersion << '\n';
  out << "features " << m.num_features() << '\n';
  out << "classes " << m.num_classes() << '\n';
  out << "bins " << mf.bins << '\n';
  for (const auto& f : m.feature_names()) out << "feature " << f << '\n';
  for (std::size_t k = 0; k < m.num_classes(); ++k)
    out << "class " << mf.class_counts[k] << ' ' << m.class_names()[k] << '\n';
  for (std::size_t j = 0; j < m.num_features(); ++j) {
    for (std::size_t k = 0; k < m.num_classes(); ++k) {
      const auto& t = m.at(j, k);
      out << "tuple " << j << ' ' << k << ' ' << detail::format_exact(t.a()) << ' '
          << detail::format_exact(t.b()) << ' ' << detail::format_exact(t.alpha()) << ' '
          << detail::format_exact(t.beta()) << '\n';
    }
  }
  out << "end\n";
}

namespace detail {

class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  // Returns the keyword and leaves the rest of the line in `rest`.
  std::string next(std::string& rest) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto sp = line.find(' ');
      rest = sp == std::string::npos ? std::string() : line.substr(sp + 1);
      return line.substr(0, sp);
    }
    fail("unexpected end of model file");
  }

  std::string expect(const std::string& keyword) {
    std::string rest;
    const std::string got = next(rest);
    if (got != keyword) fail("expected '" + keyword + "', found '" + got + "'");
    return rest;
  }

  std::size_t to_count(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      fail("expected a count, found '" + s + "'");
    }
    if (pos != s.size() || s.empty() || s[0] == '-') fail("expected a count, found '" + s + "'");
    return static_cast<std::size_t>(v);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("model file line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace detail

inline ModelFile read_model(std::istream& in) {
  detail::ModelReader r(in);
  const std::string version = r.expect("fqrc-model");
  const std::size_t v = r.to_count(version);
  if (v == 0 || v > static_cast<std::size_t>(kModelFormatVersion))
    r.fail("unsupported model format version " + version + " (this build reads up to " +
           std::to_string(kModelFormatVersion) + ")");

  const std::size_t num_features = r.to_count(r.expect("features"));
  const std::size_t num_classes = r.to_count(r.expect("classes"));
  const std::size_t bins = r.to_count(r.expect("bins"));
  if (num_features == 0 || num_classes == 0) r.fail("empty tuple grid");

  std::vector<std::string> features, classes;
  std::vector<std::size_t> counts;
  for (std::size_t j = 0; j < num_features; ++j) features.push_back(r.expect("feature"));
  for (std::size_t k = 0; k < num_classes; ++k) {
    const std::string rest = r.expect("class");
    const auto sp = rest.find(' ');
    if (sp == std::string::npos) r.fail("class record needs a count and a name");
    counts.push_back(r.to_count(rest.substr(0, sp)));
    classes.push_back(rest.substr(sp + 1));
  }

  std::vector<FourTuple> tuples;
  for (std::size_t j = 0; j < num_features; ++j) {
    for (std::size_t k = 0; k < num_classes; ++k) {
      std::istringstream rec(r.expect("tuple"));
      rec.imbue(std::locale::classic());
      std::size_t jj = 0, kk = 0;
      double a = 0, b = 0, alpha = 0, beta = 0;
      std::string extra;
      if (!(rec >> jj >> kk >> a >> b >> alpha >> beta) || (rec >> extra))
        r.fail("malformed tuple record");
      if (jj != j || kk != k) r.fail("tuple records out of order");
      try {
        tuples.emplace_back(a, b, alpha, beta);
      } catch (const ValidationError& e) {
        r.fail(e.what());
      }
    }
  }
  r.expect("end");
  try {
    return ModelFile{MembershipModel(std::move(features), std::move(classes), std::move(tuples)),
                     bins, std::move(counts)};
  } catch (const ValidationError& e) {
    r.fail(e.what());
  }
}

inline void save_model(const ModelFile& mf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_model(mf, out);
  if (!out) throw IoError("write failed for '" + path + "'");
}

inline ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_model(in);
}

}  // namespace fqrc
