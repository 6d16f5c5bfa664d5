#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace {

constexpr int kInstances = 200;

void expect_suite(const props::Outcome& o) {
    EXPECT_GE(o.instances, kInstances) << o.name;
    EXPECT_EQ(o.failures, 0) << o.name << ": first failure " << o.first_failure;
}

}  // namespace

TEST(Properties, DerivationComposition) { expect_suite(props::derive_composition(101, kInstances)); }

TEST(Properties, ReductionCertificates) { expect_suite(props::reduction_certificates(102, kInstances)); }

TEST(Properties, ChowBlockHomogeneity) { expect_suite(props::chow_homogeneity(103, kInstances)); }

TEST(Properties, BhContraction) { expect_suite(props::bh_contraction(104, kInstances)); }

TEST(Properties, ParsePrintRoundTrip) { expect_suite(props::parse_print_roundtrip(105, kInstances)); }
