#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "fastrem/core_unsigned.hpp"
#include "oracles.hpp"

using namespace fastrem;

namespace {

// floor((2^64 - 1) / d) + 1 computed in 128 bits.
std::uint64_t reference_reciprocal(std::uint32_t d) {
  return static_cast<std::uint64_t>((oracle::u128{1} << 64) - 1) / d + 1;
}

}  // namespace

TEST(UnsignedReciprocal, GoldenConstants) {
  EXPECT_EQ(compute_reciprocal(95).reciprocal(), 194176253407468965ULL);
  EXPECT_EQ(compute_reciprocal(2).reciprocal(), std::uint64_t{1} << 63);
  EXPECT_EQ(compute_reciprocal(6).reciprocal(), 3074457345618258603ULL);
  EXPECT_EQ(compute_reciprocal(6).reciprocal(), reference_reciprocal(6));
}

TEST(UnsignedReciprocal, RejectsZero) {
  EXPECT_THROW(compute_reciprocal(0), std::invalid_argument);
}

TEST(UnsignedReciprocal, UnitDivisorIsTotal) {
  const auto one = compute_reciprocal(1);
  EXPECT_TRUE(one.is_unit());
  EXPECT_EQ(one.reciprocal(), 0u);
  for (std::uint32_t n : {0u, 1u, 12345u, 0x80000000u, 0xFFFFFFFFu}) {
    EXPECT_EQ(fastmod(n, one), 0u);
    EXPECT_EQ(fastdiv(n, one), n);
    EXPECT_TRUE(is_divisible(n, one));
  }
}

TEST(UnsignedReciprocal, BoundHoldsForStructuredDivisors) {
  std::vector<std::uint32_t> ds;
  for (std::uint32_t d = 2; d <= 4096; ++d) ds.push_back(d);
  for (unsigned k = 2; k < 32; ++k) {
    ds.push_back(1u << k);
    ds.push_back((1u << k) - 1);
    ds.push_back((1u << k) + 1);
  }
  ds.push_back(0xFFFFFFFFu);
  ds.push_back(0xFFFFFFFEu);
  for (std::uint32_t d : ds) {
    const auto div = compute_reciprocal(d);
    const oracle::u128 cd = oracle::u128{div.reciprocal()} * d;
    const oracle::u128 lo = oracle::u128{1} << 64;
    ASSERT_NE(div.reciprocal(), 0u) << d;
    ASSERT_LE(lo, cd) << d;
    ASSERT_LE(cd, lo + (oracle::u128{1} << 32)) << d;
    ASSERT_EQ(div.reciprocal(), reference_reciprocal(d)) << d;
    if ((d & (d - 1)) == 0) {
      ASSERT_EQ(cd, lo) << d;
    }
  }
}

TEST(UnsignedFastmod, WorkedExamples) {
  EXPECT_EQ(fastmod(23, compute_reciprocal(4)), 3u);
  EXPECT_EQ(fastmod(0, compute_reciprocal(95)), 0u);
  EXPECT_EQ(fastmod(63, compute_reciprocal(6)), 3u);
  EXPECT_EQ(fastmod(42, compute_reciprocal(6)), 0u);
}

TEST(UnsignedFastdiv, WorkedExamples) {
  EXPECT_EQ(fastdiv(23, compute_reciprocal(4)), 5u);
  EXPECT_EQ(fastdiv(63, compute_reciprocal(6)), 10u);
  EXPECT_EQ(fastdiv(0, compute_reciprocal(6)), 0u);
}

TEST(UnsignedIsDivisible, WorkedExamples) {
  EXPECT_TRUE(is_divisible(42, compute_reciprocal(6)));
  EXPECT_FALSE(is_divisible(23, compute_reciprocal(6)));
  EXPECT_TRUE(is_divisible(0, compute_reciprocal(7)));
}

TEST(UnsignedFastmod, WrappingProductsAreExercised) {
  // c * n >= 2^64 for every n >= d here, so the low half must wrap.
  const std::uint32_t d = 95;
  const auto div = compute_reciprocal(d);
  for (std::uint32_t n : {95u, 96u, 1000u, 0x7FFFFFFFu, 0x80000000u, 0xFFFFFFFFu}) {
    ASSERT_GE(oracle::u128{div.reciprocal()} * n, oracle::u128{1} << 64);
    EXPECT_EQ(fastmod(n, div), n % d);
    EXPECT_EQ(fastdiv(n, div), n / d);
  }
}

TEST(UnsignedProperties, RandomAgainstNativeDivision) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::uint32_t> any;
  for (int i = 0; i < 2000; ++i) {
    std::uint32_t d = any(rng);
    if (d == 0) d = 1;
    const auto div = compute_reciprocal(d);
    for (int j = 0; j < 500; ++j) {
      const std::uint32_t n = any(rng);
      const std::uint32_t q = fastdiv(n, div);
      const std::uint32_t r = fastmod(n, div);
      ASSERT_EQ(q, n / d) << n << " / " << d;
      ASSERT_EQ(r, n % d) << n << " % " << d;
      ASSERT_EQ(std::uint64_t{q} * d + r, n);
      ASSERT_EQ(is_divisible(n, div), r == 0);
    }
    // Multiples hit the divisibility edge.
    const std::uint32_t m = static_cast<std::uint32_t>(d * (any(rng) % (0xFFFFFFFFu / d + 1)));
    ASSERT_TRUE(is_divisible(m, div)) << m << " " << d;
  }
}

TEST(UnsignedMirror, Exhaustive8Bit) {
  for (unsigned d = 1; d < 256; ++d) {
    const basic_unsigned_divisor<8> div(static_cast<std::uint8_t>(d));
    for (unsigned n = 0; n < 256; ++n) {
      const auto nn = static_cast<std::uint8_t>(n);
      ASSERT_EQ(fastmod<8>(nn, div), n % d);
      ASSERT_EQ(fastdiv<8>(nn, div), n / d);
      ASSERT_EQ(is_divisible<8>(nn, div), n % d == 0);
    }
  }
}

TEST(UnsignedDivisor, ConstexprUsable) {
  constexpr auto div = compute_reciprocal(95);
  static_assert(fastmod(1000u, div) == 1000u % 95);
  static_assert(fastdiv(1000u, div) == 1000u / 95);
  static_assert(!is_divisible(1000u, div));
  SUCCEED();
}
