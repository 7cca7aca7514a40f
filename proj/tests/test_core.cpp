#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "fqrc/core.hpp"

namespace fqrc {
namespace {

TEST(FeatureVector, RejectsNonFinite) {
  EXPECT_THROW(FeatureVector({1.0, std::numeric_limits<double>::infinity()}), ValidationError);
  EXPECT_THROW(FeatureVector({std::nan("")}), ValidationError);
  EXPECT_EQ(FeatureVector({-0.1545, 2.0}).size(), 2u);
}

TEST(FourTuple, Invariants) {
  EXPECT_THROW(FourTuple(2, 1, 0, 0), ValidationError);
  EXPECT_THROW(FourTuple(0, 1, -0.1, 0), ValidationError);
  EXPECT_THROW(FourTuple(0, 1, 0, std::nan("")), ValidationError);
  const FourTuple t(-2, -1, 0.5, 0.25);  // negative values are fine
  EXPECT_EQ(t.support_min(), -2.5);
  EXPECT_EQ(t.support_max(), -0.75);
  EXPECT_NO_THROW(FourTuple(3, 3, 0, 0));
}

TEST(FourTuple, BreakpointsAreKeptExactly) {
  const auto t = FourTuple::from_breakpoints(-0.3, 5.1, 6.7, 9.9);
  EXPECT_EQ(t.support_min(), -0.3);
  EXPECT_EQ(t.support_max(), 9.9);
  EXPECT_THROW(FourTuple::from_breakpoints(1, 0, 2, 3), ValidationError);
}

TEST(MembershipModel, Validation) {
  const FourTuple t(0, 1, 0, 0);
  EXPECT_NO_THROW(MembershipModel({"f"}, {"a", "b"}, {t, t}));
  EXPECT_THROW(MembershipModel({"f"}, {"a", "b"}, {t}), ValidationError);
  EXPECT_THROW(MembershipModel({"f"}, {"a", "a"}, {t, t}), ValidationError);
  EXPECT_THROW(MembershipModel({""}, {"a"}, {t}), ValidationError);
  const MembershipModel m({"f1", "f2"}, {"a", "b"}, {t, FourTuple(1, 2, 0, 0), t, t});
  EXPECT_EQ(m.at(0, 1), FourTuple(1, 2, 0, 0));
  EXPECT_THROW(m.at(2, 0), ValidationError);
}

TEST(ClassDistribution, Invariants) {
  EXPECT_NO_THROW(ClassDistribution({0.25, 0.75}));
  EXPECT_THROW(ClassDistribution({0.5, 0.6}), ValidationError);
  EXPECT_THROW(ClassDistribution({-0.5, 1.5}), ValidationError);
  EXPECT_THROW(ClassDistribution(std::vector<double>{}), ValidationError);
  const auto z = ClassDistribution::all_zero(3);
  EXPECT_TRUE(z.is_all_zero());
  EXPECT_FALSE(ClassDistribution({0, 1}).is_all_zero());
}

TEST(ClassDistribution, Normalize) {
  const auto d = ClassDistribution::normalize({1, 3});
  EXPECT_EQ(d[0], 0.25);
  EXPECT_EQ(d[1], 0.75);
  EXPECT_TRUE(ClassDistribution::normalize({0, 0}).is_all_zero());
  EXPECT_THROW(ClassDistribution::normalize({-1, 2}), ValidationError);
}

}  // namespace
}  // namespace fqrc
