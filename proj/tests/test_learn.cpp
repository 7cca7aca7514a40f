#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fqrc/learn.hpp"
#include "support/oracle.hpp"

namespace fqrc {
namespace {

using testing::oracle_cell;

TEST(BuildHistogram, SkewedValues) {
  const std::vector<double> v{1, 1, 1, 2, 2, 9};
  const auto oracle = oracle_cell(v, 4);
  ASSERT_EQ(oracle.counts, (std::vector<std::size_t>{5, 0, 0, 1}));

  const auto h = build_histogram(v, 4);
  EXPECT_EQ(h.bin_edges, (std::vector<double>{1, 3, 5, 7, 9}));
  EXPECT_EQ(h.counts, oracle.counts);
  EXPECT_EQ(h.nonempty_bins, 2u);
  EXPECT_DOUBLE_EQ(h.mean_occupancy, 3.0);
}

TEST(BuildHistogram, ZeroRangeIsOneDegenerateBin) {
  const auto h = build_histogram({5, 5, 5}, 4);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{3, 0, 0, 0}));
  EXPECT_EQ(h.nonempty_bins, 1u);
  EXPECT_DOUBLE_EQ(h.mean_occupancy, 3.0);
}

TEST(BuildHistogram, EvenSplit) {
  const std::vector<double> v{0, 1, 2, 3};
  const auto oracle = oracle_cell(v, 2);
  const auto h = build_histogram(v, 2);
  EXPECT_EQ(h.bin_edges, (std::vector<double>{0, 1.5, 3}));
  EXPECT_EQ(h.counts, oracle.counts);
  EXPECT_EQ(h.counts, (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(h.nonempty_bins, 2u);
  EXPECT_DOUBLE_EQ(h.mean_occupancy, 2.0);
}

TEST(BuildHistogram, MaximumLandsInLastBin) {
  const auto h = build_histogram({0, 10}, 5);
  EXPECT_EQ(h.counts.back(), 1u);
  EXPECT_EQ(h.total(), 2u);
}

TEST(BuildHistogram, Errors) {
  EXPECT_THROW(build_histogram({}, 4), DataError);
  EXPECT_THROW(build_histogram({1.0}, 0), ValidationError);
  EXPECT_THROW(build_histogram({1.0, std::nan("")}, 4), ValidationError);
}

TEST(ExtractFourTuple, DominantBinIsPlateau) {
  const std::vector<double> v{1, 1, 1, 2, 2, 9};
  const auto t = extract_four_tuple(build_histogram(v, 4), v);
  EXPECT_EQ(t, FourTuple(1, 3, 0, 6));
}

TEST(ExtractFourTuple, PointMassIsDegenerate) {
  const std::vector<double> v{5, 5, 5};
  EXPECT_EQ(extract_four_tuple(build_histogram(v, 4), v), FourTuple(5, 5, 0, 0));
}

TEST(ExtractFourTuple, UniformOccupancyFallsBackToAllNonemptyBins) {
  const std::vector<double> v{0, 1, 2, 3};
  const auto h = build_histogram(v, 2);
  for (auto n : h.counts) ASSERT_FALSE(static_cast<double>(n) > h.mean_occupancy);
  EXPECT_EQ(extract_four_tuple(h, v), FourTuple(0, 3, 0, 0));
}

TEST(ExtractFourTuple, NonContiguousDominantBinsAreBridged) {
  // bins 0 and 3 dominant, bins 1 and 2 sparse
  const std::vector<double> v{0, 0, 0, 1.2, 2.2, 4, 4, 4};
  const auto h = build_histogram(v, 4);
  ASSERT_EQ(h.counts, (std::vector<std::size_t>{3, 1, 1, 3}));
  const auto t = extract_four_tuple(h, v);
  EXPECT_EQ(t.a(), 0.0);
  EXPECT_EQ(t.b(), 4.0);
}

TEST(Train, DisjointClassesGiveDisjointSupports) {
  std::vector<LabeledSample> s;
  for (double x : {0.0, 0.0, 0.0, 1.0}) s.push_back({FeatureVector{x}, 0});
  for (double x : {10.0, 10.0, 10.0, 11.0}) s.push_back({FeatureVector{x}, 1});
  const auto m = train(s, {"f"}, {"c1", "c2"}, 50);
  EXPECT_EQ(m.at(0, 0).support_min(), 0.0);
  EXPECT_EQ(m.at(0, 0).support_max(), 1.0);
  EXPECT_EQ(m.at(0, 1).support_min(), 10.0);
  EXPECT_EQ(m.at(0, 1).support_max(), 11.0);
}

TEST(Train, SingleSamplePerClassIsDegenerate) {
  std::vector<LabeledSample> s{{FeatureVector{1.5, -2}, 0}, {FeatureVector{3, 4}, 1}};
  const auto m = train(s, {"a", "b"}, {"c1", "c2"});
  EXPECT_EQ(m.at(0, 0), FourTuple(1.5, 1.5, 0, 0));
  EXPECT_EQ(m.at(1, 1), FourTuple(4, 4, 0, 0));
}

TEST(Train, GridShape) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  std::vector<LabeledSample> s;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(6);
    for (auto& v : x) v = g(rng);
    s.push_back({FeatureVector(x), static_cast<std::size_t>(i % 8)});
  }
  const auto m = train(s, {"f1", "f2", "f3", "f4", "f5", "f6"},
                       {"T", "I", "S", "H", "C", "O", "M", "F"});
  EXPECT_EQ(m.num_features(), 6u);
  EXPECT_EQ(m.num_classes(), 8u);
  EXPECT_EQ(m.tuples().size(), 48u);
}

TEST(Train, Errors) {
  std::vector<LabeledSample> s{{FeatureVector{1.0}, 0}};
  try {
    train(s, {"f"}, {"present", "absent"});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("absent"), std::string::npos);
  }
  std::vector<LabeledSample> ragged{{FeatureVector{1.0}, 0}, {FeatureVector{1.0, 2.0}, 0}};
  EXPECT_THROW(train(ragged, {"f"}, {"c"}), ValidationError);
}

TEST(TrainProperty, SupportEqualsObservedRangeAndPlateauInside) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-50, 50);
  std::uniform_int_distribution<int> n(1, 40), bins(1, 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<LabeledSample> s;
    const int count = n(rng);
    for (int i = 0; i < count; ++i) s.push_back({FeatureVector{u(rng), u(rng) * 1e-3}, 0});
    const auto m = train(s, {"f1", "f2"}, {"c"}, static_cast<std::size_t>(bins(rng)));
    for (std::size_t j = 0; j < 2; ++j) {
      double lo = s[0].features[j], hi = lo;
      for (const auto& x : s) {
        lo = std::min(lo, x.features[j]);
        hi = std::max(hi, x.features[j]);
      }
      const auto& t = m.at(j, 0);
      EXPECT_EQ(t.support_min(), lo);
      EXPECT_EQ(t.support_max(), hi);
      EXPECT_LE(t.a(), t.b());
      EXPECT_LE(t.support_min(), t.a());
      EXPECT_GE(t.support_max(), t.b());
    }
  }
}

TEST(TrainProperty, SampleOrderDoesNotMatter) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<LabeledSample> s;
  for (int i = 0; i < 60; ++i) s.push_back({FeatureVector{u(rng), u(rng)}, static_cast<std::size_t>(i % 3)});
  const auto ref = train(s, {"x", "y"}, {"a", "b", "c"}, 7);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(s.begin(), s.end(), rng);
    EXPECT_EQ(train(s, {"x", "y"}, {"a", "b", "c"}, 7), ref);
  }
}

}  // namespace
}  // namespace fqrc
