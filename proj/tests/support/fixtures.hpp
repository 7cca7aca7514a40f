#pragma once

#include <array>
#include <string>
#include <vector>

#include "fqrc/core.hpp"

namespace fqrc::testing {

/// Tuple whose membership at x is `mu`: a unit-slope left ramp ending at x
/// for 0 < mu < 1, a plateau around x for mu = 1, a support above x for 0.
inline FourTuple tuple_with_membership(double x, double mu) {
  if (mu >= 1.0) return FourTuple(x - 1.0, x + 1.0, 1.0, 1.0);
  if (mu <= 0.0) return FourTuple(x + 2.0, x + 3.0, 1.0, 1.0);
  return FourTuple::from_breakpoints(x - mu, x - mu + 1.0, x - mu + 2.0, x - mu + 3.0);
}

/// Model with arbitrary target memberships mu[j][k] at the point x.
inline MembershipModel model_with_memberships(const std::vector<double>& x,
                                              const std::vector<std::vector<double>>& mu,
                                              std::vector<std::string> features,
                                              std::vector<std::string> classes) {
  std::vector<FourTuple> grid;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < classes.size(); ++k) grid.push_back(tuple_with_membership(x[j], mu[j][k]));
  return MembershipModel(std::move(features), std::move(classes), std::move(grid));
}

// Four-class, two-attribute walkthrough: test attributes and the per-class
// memberships of each attribute.
inline const std::vector<double> kWalkthroughX = {-0.1545, -1.7597};
inline const std::vector<std::vector<double>> kWalkthroughMu = {
    {1.0, 0.3046, 0.5406, 0.7508},  // natural
    {1.0, 0.1558, 0.0, 1.0},        // open
};
inline const std::array<double, 4> kWalkthroughR = {0.5561, 0.0264, 0.0000, 0.4175};

inline MembershipModel walkthrough_model(std::vector<std::string> classes = {"Class1", "Class2",
                                                                             "Class3", "Class4"}) {
  return model_with_memberships(kWalkthroughX, kWalkthroughMu, {"natural", "open"},
                                std::move(classes));
}

// Eight-class confidences and their printed interpretations, rewritten with
// '=' for equal, '>>' for much higher and "|x:" before the excluded classes.
inline const std::vector<std::string> kEightClasses = {"T", "I", "S", "H", "C", "O", "M", "F"};
inline const std::vector<std::vector<double>> kEightClassRows = {
    {0.4562, 0.4562, 0.0876, 0, 0, 0, 0, 0},
    {0.7644, 0.2356, 0, 0, 0, 0, 0, 0},
    {0, 0.3339, 0.0308, 0.4725, 0.0497, 0.1131, 0, 0},
    {0, 0.5880, 0.0499, 0.3094, 0, 0.0526, 0, 0},
    {0.0726, 0.2631, 0.4202, 0, 0, 0, 0, 0.2440},
    {0.1412, 0.3456, 0.4361, 0, 0, 0.0005, 0.0119, 0.0647},
    {0.0811, 0.2826, 0.4183, 0, 0, 0, 0.0245, 0.1935},
};
inline const std::vector<std::string> kEightClassInterpretations = {
    "T=I>S|x:H,C,O,M,F",     "T>>I|x:S,H,C,O,M,F",  "H>I>O>C>S|x:T,M,F", "I>H>O>S|x:T,C,M,F",
    "S>I>F>T|x:H,C,O,M",     "S>I>T>F>M>O|x:H,C",   "S>I>F>T>M|x:H,C,O",
};

}  // namespace fqrc::testing
