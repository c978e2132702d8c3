#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <stdexcept>

#include "fastrem/magic.hpp"
#include "oracles.hpp"

using namespace fastrem;

namespace {

magic_parameters table_params() {
  magic_parameters p;
  p.d = 6;
  p.n_bits = 6;
  p.l_bits = 2;
  p.f_bits = 8;
  p.c = 43;
  return p;
}

}  // namespace

TEST(MagicMinimalUnsigned, DivideBySixAtSixBits) {
  const auto p = minimal_unsigned_params(6, 6);
  EXPECT_EQ(p.l_bits, 2);
  EXPECT_EQ(p.f_bits, 8u);
  EXPECT_EQ(p.c, 43u);
  EXPECT_TRUE(p.minimal);
  EXPECT_FALSE(check_unsigned_condition(oracle::ceil_pow2_div(6, 6), 6, 6, 0));
  EXPECT_FALSE(check_unsigned_condition(oracle::ceil_pow2_div(7, 6), 6, 6, 1));
}

TEST(MagicMinimalUnsigned, PowerOfTwo) {
  const auto p = minimal_unsigned_params(4, 8);
  EXPECT_EQ(p.f_bits, 2u);
  EXPECT_EQ(p.c, 1u);
  EXPECT_TRUE(is_valid(p));
  for (std::uint64_t n = 0; n < 256; ++n) {
    EXPECT_EQ(generic_divrem(n, p), (divrem_result{n / 4, n % 4}));
  }
}

TEST(MagicMinimalUnsigned, NinetyFiveAt32Bits) {
  const auto p = minimal_unsigned_params(95, 32);
  const unsigned l = oracle::smallest_unsigned_l(95, 32);
  EXPECT_EQ(p.l_bits, static_cast<int>(l));
  EXPECT_EQ(p.f_bits, 32 + l);
  EXPECT_EQ(p.c, oracle::ceil_pow2_div(32 + l, 95));
  EXPECT_TRUE(is_valid(p));
}

TEST(MagicMinimalUnsigned, RejectsOutOfRange) {
  EXPECT_THROW(minimal_unsigned_params(0, 8), std::invalid_argument);
  EXPECT_THROW(minimal_unsigned_params(256, 8), std::invalid_argument);
  EXPECT_THROW(minimal_unsigned_params(3, 0), std::invalid_argument);
  EXPECT_THROW(minimal_unsigned_params(3, 33), std::invalid_argument);
}

TEST(MagicConditions, Unsigned) {
  EXPECT_TRUE(check_unsigned_condition(43, 6, 6, 2));
  EXPECT_FALSE(check_unsigned_condition(43, 6, 8, 0));
  // With N = 1, L = 0 the bound is 2 <= c * 1 <= 3, so c = 1 is too small.
  EXPECT_FALSE(check_unsigned_condition(1, 1, 1, 0));
  EXPECT_TRUE(check_unsigned_condition(2, 1, 1, 0));
}

TEST(MagicConditions, Signed) {
  const oracle::u128 c6 = oracle::floor_pow2_div(64, 6) + 1;
  EXPECT_TRUE(check_signed_condition(c6, 6, 32, 33));
  EXPECT_FALSE(check_signed_condition(oracle::u128{1} << 62, 4, 32, 33));
  EXPECT_TRUE(check_signed_condition((oracle::u128{1} << 62) + 1, 4, 32, 33));
}

TEST(MagicGeneric, TableRows) {
  const auto p = table_params();
  EXPECT_EQ(generic_divrem(17, p), (divrem_result{2, 5}));
  EXPECT_EQ(generic_divrem(22, p), (divrem_result{3, 4}));
  EXPECT_EQ(generic_divrem(63, p), (divrem_result{10, 3}));
  EXPECT_EQ(generic_divrem(0, p), (divrem_result{0, 0}));
  EXPECT_TRUE(generic_is_divisible(42, p));
  EXPECT_FALSE(generic_is_divisible(23, p));
  EXPECT_TRUE(generic_is_divisible(24, p));
}

TEST(MagicGeneric, InsufficientBitsAreRejected) {
  // Eight fractional bits are not enough for 8-bit numerators: 131 / 6
  // evaluates to 22.
  magic_parameters p = table_params();
  p.n_bits = 8;
  p.l_bits = 0;
  EXPECT_FALSE(is_valid(p));
  EXPECT_THROW(generic_divrem(131, p), std::invalid_argument);
  EXPECT_EQ(generic_divrem_unchecked(131, p).quotient, 22u);
  EXPECT_NE(generic_divrem_unchecked(131, p).quotient, 131u / 6);
}

TEST(MagicGeneric, RejectsBadNumeratorsAndKinds) {
  const auto p = table_params();
  EXPECT_THROW(generic_divrem(64, p), std::invalid_argument);
  EXPECT_THROW(generic_is_divisible(64, p), std::invalid_argument);
  EXPECT_THROW(generic_signed_rem(1, p), std::invalid_argument);
  const auto s = minimal_signed_params(3, 4);
  EXPECT_THROW(generic_divrem(1, s), std::invalid_argument);
  EXPECT_THROW(generic_signed_rem(8, s), std::invalid_argument);
}

TEST(MagicMinimalSigned, SmallExamples) {
  {
    const auto p = minimal_signed_params(3, 4);
    const unsigned l = oracle::smallest_signed_l(3, 4);
    EXPECT_EQ(p.l_bits, static_cast<int>(l));
    const oracle::u128 lo = oracle::u128{1} << (3 + l);
    EXPECT_LT(lo, p.c * 3);
    EXPECT_LT(p.c * 3, lo + (oracle::u128{1} << l));
  }
  {
    const auto p = minimal_signed_params(2, 8);
    const unsigned l = oracle::smallest_signed_l(2, 8);
    EXPECT_EQ(p.l_bits, static_cast<int>(l));
    EXPECT_EQ(p.c, (oracle::u128{1} << (7 + l - 1)) + 1);
    EXPECT_TRUE(is_valid(p));
  }
  {
    const auto p = minimal_signed_params(1, 8);
    EXPECT_EQ(p.c, (oracle::u128{1} << p.f_bits) + 1);
    EXPECT_TRUE(is_valid(p));
    for (std::int64_t n = -128; n < 128; ++n) {
      EXPECT_EQ(generic_signed_rem(n, p), 0);
    }
  }
  EXPECT_THROW(minimal_signed_params(128, 8), std::invalid_argument);
  EXPECT_THROW(minimal_signed_params(0, 8), std::invalid_argument);
  EXPECT_THROW(minimal_signed_params(1, 1), std::invalid_argument);
}

TEST(MagicConvenient, Always_valid) {
  for (unsigned n_bits : {1u, 7u, 16u, 32u}) {
    for (std::uint64_t d : {1ull, 2ull, 3ull, 5ull, 95ull, 4097ull, 0xFFFFFFFFull}) {
      if (d >= (std::uint64_t{1} << n_bits)) continue;
      const auto p = convenient_unsigned_params(d, n_bits);
      EXPECT_EQ(p.f_bits, 2 * n_bits);
      EXPECT_TRUE(is_valid(p)) << d << " " << n_bits;
      if (n_bits >= 2 && d < (std::uint64_t{1} << (n_bits - 1))) {
        EXPECT_TRUE(is_valid(convenient_signed_params(d, n_bits))) << d << " " << n_bits;
      }
    }
  }
  EXPECT_EQ(convenient_unsigned_params(95, 32).c, 194176253407468965ULL);
}

// Brute-force agreement of both minimizers over every divisor at small N,
// plus exact remainders for every numerator at the minimal F.
TEST(MagicProperties, MinimalityAndExactnessSmallWidths) {
  for (unsigned n_bits = 1; n_bits <= 10; ++n_bits) {
    const std::uint64_t limit = std::uint64_t{1} << n_bits;
    for (std::uint64_t d = 1; d < limit; ++d) {
      const auto p = minimal_unsigned_params(d, n_bits);
      ASSERT_TRUE(is_valid(p)) << d;
      if (!std::has_single_bit(d)) {
        ASSERT_EQ(p.l_bits, static_cast<int>(oracle::smallest_unsigned_l(d, n_bits)));
        // Scan L downward: the condition must fail for every smaller L.
        for (int l = p.l_bits - 1; l >= 0; --l) {
          ASSERT_FALSE(check_unsigned_condition(oracle::ceil_pow2_div(n_bits + l, d), d, n_bits, l));
        }
      }
      for (std::uint64_t n = 0; n < limit; ++n) {
        const auto qr = generic_divrem(n, p);
        ASSERT_EQ(qr.quotient, n / d) << n << "/" << d << " N=" << n_bits;
        ASSERT_EQ(qr.remainder, n % d) << n << "%" << d << " N=" << n_bits;
        ASSERT_EQ(generic_is_divisible(n, p), n % d == 0);
      }
      if (n_bits >= 2 && d < limit / 2) {
        const auto s = minimal_signed_params(d, n_bits);
        ASSERT_EQ(s.l_bits, static_cast<int>(oracle::smallest_signed_l(d, n_bits)));
        const auto half = static_cast<std::int64_t>(limit / 2);
        const auto sd = static_cast<std::int64_t>(d);
        for (std::int64_t n = -half; n < half; ++n) {
          ASSERT_EQ(generic_signed_rem(n, s), n % sd) << n << "%" << d << " N=" << n_bits;
        }
      }
    }
  }
}

TEST(MagicProperties, CeilingIdentity) {
  for (unsigned n_bits = 1; n_bits <= 12; ++n_bits) {
    for (std::uint64_t d = 1; d < (std::uint64_t{1} << n_bits); ++d) {
      for (unsigned l = 0; l <= n_bits; ++l) {
        const auto p = unsigned_params_with(d, n_bits, static_cast<int>(l));
        const oracle::u128 two_f = oracle::u128{1} << p.f_bits;
        const oracle::u128 expected =
            std::has_single_bit(d) ? two_f : two_f + d - (two_f % d);
        ASSERT_EQ(p.c * d, expected);
      }
    }
  }
}
