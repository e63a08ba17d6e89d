#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

constexpr std::size_t kCases = 1000;

TEST(Properties, Partition) {
  const auto o = properties::partition_property(kCases, 101);
  EXPECT_TRUE(o.ok()) << properties::describe(o);
}

TEST(Properties, MetricBounds) {
  const auto o = properties::metric_bounds_property(kCases, 102);
  EXPECT_TRUE(o.ok()) << properties::describe(o);
}

TEST(Properties, CautionBounds) {
  const auto o = properties::caution_bounds_property(kCases, 103);
  EXPECT_TRUE(o.ok()) << properties::describe(o);
}

TEST(Properties, Rearrangement) {
  const auto o = properties::rearrange_property(kCases, 104);
  EXPECT_TRUE(o.ok()) << properties::describe(o);
}

TEST(Properties, BipolarRoundTrip) {
  const auto o = properties::bipolar_round_trip_property(kCases, 105);
  EXPECT_TRUE(o.ok()) << properties::describe(o);
}

}  // namespace
