#include <gtest/gtest.h>

#include <cstdint>
#include <stdexcept>

#include "fastrem/verify.hpp"

using namespace fastrem;

namespace {

sweep_spec small_spec(unsigned width, signedness sign) {
  sweep_spec spec;
  spec.width = width;
  spec.divisors.mode = divisor_selection::kind::all;
  spec.sign = sign;
  spec.threads = 1;
  return spec;
}

}  // namespace

TEST(Oracle, TruncatedDivision) {
  EXPECT_EQ(oracle_divmod(-7, 3).quotient, -2);
  EXPECT_EQ(oracle_divmod(-7, 3).remainder, -1);
  EXPECT_EQ(oracle_divmod(7, -3).remainder, 1);
  EXPECT_EQ(oracle_divmod(INT64_MIN, -1).quotient, INT64_MIN);
  EXPECT_EQ(oracle_divmod(INT64_MIN, -1).remainder, 0);
  EXPECT_THROW(oracle_divmod(1, 0), std::invalid_argument);
  EXPECT_THROW(oracle_divmod_unsigned(1, 0), std::invalid_argument);
}

TEST(Strategy, NamesRoundTrip) {
  for (strategy s : kAllStrategies) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_EQ(parse_strategy("gm-divisibility"), strategy::gm);
  EXPECT_EQ(parse_strategy("oracle"), strategy::hardware);
  EXPECT_FALSE(parse_strategy("bogus").has_value());
}

TEST(Sweep, ExhaustiveEightBitAllStrategies) {
  auto spec = small_spec(8, signedness::both);
  const auto report = run_sweep(spec);
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.divisors_checked, 255u + 255u);
  // lkk checks div, mod and divisible for unsigned; mod and divisible for signed.
  EXPECT_EQ(report.tally(strategy::lkk).checks, 255u * 256 * 3 + 255u * 256 * 2);
  EXPECT_GT(report.tally(strategy::gmw).checks, 0u);
  EXPECT_EQ(report.mismatch_count(), 0u);
}

TEST(Sweep, MinimalStrategyAtOddWidths) {
  for (unsigned width : {1u, 2u, 5u, 11u}) {
    auto spec = small_spec(width, width == 1 ? signedness::unsigned_only : signedness::both);
    spec.strategies = {strategy::minimal};
    const auto report = run_sweep(spec);
    EXPECT_TRUE(report.passed()) << width;
    EXPECT_GT(report.tally(strategy::minimal).checks, 0u);
  }
}

TEST(Sweep, NegativeOffsetProducesMismatches) {
  auto spec = small_spec(10, signedness::unsigned_only);
  spec.divisors.mode = divisor_selection::kind::explicit_list;
  spec.divisors.values = {7, 95};
  spec.strategies = {strategy::minimal};
  spec.l_offset = -1;
  const auto report = run_sweep(spec);
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(report.first_mismatches.empty());
  EXPECT_LE(report.first_mismatches.size(), 100u);
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  sweep_spec spec;
  spec.width = 32;
  spec.numerators = numerator_coverage::sampled;
  spec.sample_count = 2000;
  spec.sign = signedness::both;
  spec.divisors.mode = divisor_selection::kind::explicit_list;
  spec.divisors.values = {3, 7, 95, 1000, 65537, -3, -95, 1 << 20};
  spec.strategies = {strategy::lkk, strategy::gm, strategy::hardware, strategy::minimal};
  spec.l_offset = -2;  // force mismatches so their order is compared too
  spec.threads = 1;
  const auto a = run_sweep(spec);
  spec.threads = 4;
  const auto b = run_sweep(spec);
  EXPECT_FALSE(a.passed());
  EXPECT_TRUE(same_results(a, b));
  spec.seed ^= 1;
  const auto c = run_sweep(spec);
  EXPECT_FALSE(same_results(a, c));
}

TEST(Sweep, StructuredThirtyTwoBitSampled) {
  sweep_spec spec;
  spec.width = 32;
  spec.numerators = numerator_coverage::sampled;
  spec.sample_count = 200;
  spec.sign = signedness::both;
  const auto report = run_sweep(spec);
  EXPECT_TRUE(report.passed());
  EXPECT_GT(report.divisors_checked, 200u);
}

TEST(Sweep, InvalidSpecsAreRejected) {
  sweep_spec spec;
  spec.width = 12;  // lkk has no 12-bit form
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec.width = 8;
  spec.divisors.mode = divisor_selection::kind::explicit_list;
  spec.divisors.values = {0};
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec.divisors.values = {256};
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec.divisors.values = {3};
  spec.l_offset = 1;
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec.l_offset = 0;
  spec.strategies.clear();
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec.strategies = {strategy::gmw};
  spec.sign = signedness::signed_only;
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
}

TEST(Sweep, JsonShape) {
  auto spec = small_spec(8, signedness::unsigned_only);
  spec.divisors.mode = divisor_selection::kind::explicit_list;
  spec.divisors.values = {3};
  const auto j = to_json(run_sweep(spec));
  EXPECT_EQ(j.at("mismatch_count"), 0);
  EXPECT_EQ(j.at("passed"), true);
  EXPECT_EQ(j.at("divisors_checked"), 1);
  EXPECT_EQ(j.at("seed"), spec.seed);
  EXPECT_TRUE(j.at("per_strategy").contains("lkk"));
  EXPECT_TRUE(j.at("first_mismatches").is_array());
  EXPECT_EQ(j.at("spec").at("width"), 8);
}

TEST(Minimality, SmallWidthsPass) {
  for (unsigned n = 1; n <= 9; ++n) {
    const auto r = minimality_sweep(n);
    EXPECT_TRUE(r.passed()) << n;
    EXPECT_EQ(r.divisors_checked, (1u << n) - 1);
  }
}

TEST(Tightness, SixAtSixBits) {
  const auto p = unsigned_params_with(6, 6, 1);
  const auto n = find_counterexample(p);
  ASSERT_TRUE(n.has_value());
  const auto got = generic_divrem_unchecked(*n, p);
  EXPECT_TRUE(got.quotient != *n / 6 || got.remainder != *n % 6);
  EXPECT_FALSE(find_counterexample(minimal_unsigned_params(6, 6)).has_value());
}

TEST(Tightness, TwelveBitSweep) {
  const auto r = tightness_sweep(12);
  EXPECT_GT(r.divisors_checked, 0u);
  EXPECT_TRUE(r.passed()) << r.divisors_without_counterexample.size() << " divisors lack a counterexample";
}
