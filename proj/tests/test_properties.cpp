#include <gtest/gtest.h>

#include "property_suite.hpp"

TEST(Properties, RandomizedInvariantsHold) {
  for (const auto& p : worldquiz::testing::run_property_suite(2000, 7)) {
    EXPECT_EQ(p.cases, 2000) << p.name;
    EXPECT_EQ(p.failures, 0) << p.name << ": " << p.first_failure;
  }
}
