#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc {

/// Upper bounds of r_diff for each symbol. A difference at or below `equal`
/// is EQUAL, up to `higher` is HIGHER, up to `much_higher` MUCH_HIGHER.
struct RankThresholds {
  double equal = 0.0;
  double higher = 0.5;
  double much_higher = 1.0;

  void validate() const {
    detail::require(equal >= 0.0 && equal <= higher && higher <= much_higher,
                    "rank thresholds must satisfy 0 <= equal <= higher <= much_higher");
  }
};

enum class DiffRule {
  Adjacent,  // against the next-better class in the ranking
  FromMax,   // against the top class
};

inline const char* symbol_text(Symbol s) {
  switch (s) {
    case Symbol::Top: return "";
    case Symbol::Equal: return "=";
    case Symbol::Higher: return ">";
    case Symbol::MuchHigher: return ">>";
  }
  return "?";
}

inline Symbol classify_difference(double r_diff, const RankThresholds& th) {
  if (r_diff <= th.equal) return Symbol::Equal;
  if (r_diff <= th.higher) return Symbol::Higher;
  return Symbol::MuchHigher;
}

inline RankInterpretation interpret(const ClassDistribution& d, const RankThresholds& th = {},
                                    DiffRule rule = DiffRule::Adjacent) {
  th.validate();
  RankInterpretation out;
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == 0.0)
      out.excluded.push_back(k);
    else
      order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return d[l] > d[r]; });

  for (std::size_t i = 0; i < order.size(); ++i) {
    RankEntry e{order[i], d[order[i]], 0.0, Symbol::Top};
    if (i > 0) {
      const double ref = rule == DiffRule::Adjacent ? out.ranked.back().r : out.ranked.front().r;
      e.r_diff = ref - e.r;
      e.symbol = classify_difference(e.r_diff, th);
    }
    out.ranked.push_back(e);
  }
  return out;
}

namespace detail {

inline std::string join_names(const std::vector<std::size_t>& idx,
                              const std::vector<std::string>& names, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += sep;
    s += names.at(idx[i]);
  }
  return s;
}

inline std::string join_ranked(const RankInterpretation& ri, const std::vector<std::string>& names,
                               bool spaced) {
  std::string s;
  for (const auto& e : ri.ranked) {
    if (e.symbol != Symbol::Top) {
      if (spaced) s += ' ';
      s += symbol_text(e.symbol);
      if (spaced) s += ' ';
    }
    s += names.at(e.class_index);
  }
  return s;
}

}  // namespace detail

/// One-line text such as "Class1 > Class4 > Class2, definitely not: Class3".
inline std::string describe(const RankInterpretation& ri, const std::vector<std::string>& class_names) {
  detail::require(ri.ranked.size() + ri.excluded.size() <= class_names.size(),
                  "class names do not cover the ranking");
  if (ri.ranked.empty()) return "no class: sample outside all learned supports";
  std::string s = detail::join_ranked(ri, class_names, true);
  if (!ri.excluded.empty()) s += ", definitely not: " + detail::join_names(ri.excluded, class_names, ",");
  return s;
}

/// Compact form such as "C1>C4>C2|x:C3".
inline std::string symbol_string(const RankInterpretation& ri,
                                 const std::vector<std::string>& class_names) {
  std::string s = detail::join_ranked(ri, class_names, false);
  if (!ri.excluded.empty()) s += "|x:" + detail::join_names(ri.excluded, class_names, ",");
  return s;
}

}  // namespace fqrc
