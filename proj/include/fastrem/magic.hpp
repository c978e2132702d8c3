// Generic-width parameter selection for remainder by multiplication.
//
// For a numerator width N (1..32) and divisor d, a reciprocal c with
// F = N + L fractional bits computes every remainder in [0, 2^N) exactly
// when
//
//   2^(N+L) <= c * d <= 2^(N+L) + 2^L                     (unsigned)
//
// and, for signed numerators in [-2^(N-1), 2^(N-1)) with F = N - 1 + L,
//
//   2^(N-1+L) < c * d < 2^(N-1+L) + 2^L                   (signed).
//
// The minimizers return the smallest such L with c = ceil(2^F / d)
// (unsigned) or c = floor(2^F / d) + 1 (signed). All arithmetic is exact
// in 128 bits: F <= 64 and c <= 2^64 + 1.

#ifndef FASTREM_MAGIC_HPP
#define FASTREM_MAGIC_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "fastrem/width.hpp"

namespace fastrem {

struct magic_parameters {
  std::uint64_t d = 1;
  unsigned n_bits = 1;
  // Negative only for the unsigned power-of-two branch, where F = log2(d).
  int l_bits = 0;
  unsigned f_bits = 0;
  uint128_t c = 1;
  bool is_signed = false;
  bool minimal = false;

  friend bool operator==(const magic_parameters&, const magic_parameters&) = default;
};

struct divrem_result {
  std::uint64_t quotient = 0;
  std::uint64_t remainder = 0;

  friend bool operator==(const divrem_result&, const divrem_result&) = default;
};

namespace detail {

constexpr unsigned kMaxMagicBits = 32;
// Keeps 2^(N+L) and c * d comfortably inside 128 bits.
constexpr unsigned kMaxFractionBits = 96;

constexpr uint128_t pow2(unsigned k) noexcept { return uint128_t{1} << k; }

inline void check_width(unsigned n_bits, unsigned min_bits = 1) {
  if (n_bits < min_bits || n_bits > kMaxMagicBits) {
    throw std::invalid_argument("numerator width must be in [" + std::to_string(min_bits) + ", " +
                                std::to_string(kMaxMagicBits) + "], got " + std::to_string(n_bits));
  }
}

inline uint128_t ceil_div(uint128_t a, std::uint64_t b) noexcept { return (a + b - 1) / b; }

// Products above this cannot satisfy either condition (c * d < 2^97).
constexpr uint128_t kMaxCheckedReciprocal = uint128_t{1} << 96;

}  // namespace detail

inline bool check_unsigned_condition(uint128_t c, std::uint64_t d, unsigned n_bits, int l_bits) {
  detail::check_width(n_bits);
  if (l_bits < 0 || n_bits + static_cast<unsigned>(l_bits) > detail::kMaxFractionBits) {
    return false;
  }
  if (d == 0 || d >= (std::uint64_t{1} << n_bits) || c >= detail::kMaxCheckedReciprocal) {
    return false;
  }
  const auto l = static_cast<unsigned>(l_bits);
  const uint128_t lo = detail::pow2(n_bits + l);
  const uint128_t cd = c * d;
  return lo <= cd && cd <= lo + detail::pow2(l);
}

inline bool check_signed_condition(uint128_t c, std::uint64_t d, unsigned n_bits, int l_bits) {
  detail::check_width(n_bits);
  if (l_bits < 0 || n_bits - 1 + static_cast<unsigned>(l_bits) > detail::kMaxFractionBits) {
    return false;
  }
  if (n_bits < 2 || d == 0 || d >= (std::uint64_t{1} << (n_bits - 1)) ||
      c >= detail::kMaxCheckedReciprocal) {
    return false;
  }
  const auto l = static_cast<unsigned>(l_bits);
  const uint128_t lo = detail::pow2(n_bits - 1 + l);
  const uint128_t cd = c * d;
  return lo < cd && cd < lo + detail::pow2(l);
}

// Unsigned parameters for a given L with c = ceil(2^(N+L) / d). No
// validity check; used to probe L values below the minimum.
inline magic_parameters unsigned_params_with(std::uint64_t d, unsigned n_bits, int l_bits) {
  detail::check_width(n_bits);
  if (d == 0 || d >= (std::uint64_t{1} << n_bits)) {
    throw std::invalid_argument("divisor out of range for width");
  }
  if (l_bits < 0 || n_bits + static_cast<unsigned>(l_bits) > 64) {
    throw std::invalid_argument("fractional bits must be in [N, 64]");
  }
  magic_parameters p;
  p.d = d;
  p.n_bits = n_bits;
  p.l_bits = l_bits;
  p.f_bits = n_bits + static_cast<unsigned>(l_bits);
  p.c = detail::ceil_div(detail::pow2(p.f_bits), d);
  return p;
}

inline magic_parameters signed_params_with(std::uint64_t d, unsigned n_bits, int l_bits) {
  detail::check_width(n_bits, 2);
  if (d == 0 || d >= (std::uint64_t{1} << (n_bits - 1))) {
    throw std::invalid_argument("divisor magnitude out of range for signed width");
  }
  if (l_bits < 0 || n_bits - 1 + static_cast<unsigned>(l_bits) > 64) {
    throw std::invalid_argument("fractional bits must be in [N - 1, 64]");
  }
  magic_parameters p;
  p.d = d;
  p.n_bits = n_bits;
  p.l_bits = l_bits;
  p.f_bits = n_bits - 1 + static_cast<unsigned>(l_bits);
  p.c = detail::pow2(p.f_bits) / d + 1;
  p.is_signed = true;
  return p;
}

// Smallest F such that every remainder of an N-bit numerator is exact.
inline magic_parameters minimal_unsigned_params(std::uint64_t d, unsigned n_bits) {
  detail::check_width(n_bits);
  if (d == 0 || d >= (std::uint64_t{1} << n_bits)) {
    throw std::invalid_argument("divisor out of range for width");
  }
  if (std::has_single_bit(d)) {
    magic_parameters p;
    p.d = d;
    p.n_bits = n_bits;
    p.f_bits = static_cast<unsigned>(std::countr_zero(d));
    p.l_bits = static_cast<int>(p.f_bits) - static_cast<int>(n_bits);
    p.c = 1;
    p.minimal = true;
    return p;
  }
  // d <= (2^(N+L) mod d) + 2^L holds by L = ceil(log2 d) at the latest.
  unsigned l = 0;
  while (d > static_cast<uint128_t>(detail::pow2(n_bits + l) % d) + detail::pow2(l)) {
    ++l;
  }
  magic_parameters p = unsigned_params_with(d, n_bits, static_cast<int>(l));
  p.minimal = true;
  return p;
}

// F = 2N (L = N), always valid.
inline magic_parameters convenient_unsigned_params(std::uint64_t d, unsigned n_bits) {
  return unsigned_params_with(d, n_bits, static_cast<int>(n_bits));
}

inline magic_parameters minimal_signed_params(std::uint64_t d, unsigned n_bits) {
  detail::check_width(n_bits, 2);
  if (d == 0 || d >= (std::uint64_t{1} << (n_bits - 1))) {
    throw std::invalid_argument("divisor magnitude out of range for signed width");
  }
  // Any L with 2^L > d works, so the scan stops by L = floor(log2 d) + 1.
  for (int l = 0;; ++l) {
    magic_parameters p = signed_params_with(d, n_bits, l);
    if (check_signed_condition(p.c, d, n_bits, l)) {
      p.minimal = true;
      return p;
    }
  }
}

// L = N + 1, F = 2N.
inline magic_parameters convenient_signed_params(std::uint64_t d, unsigned n_bits) {
  return signed_params_with(d, n_bits, static_cast<int>(n_bits) + 1);
}

inline bool is_valid(const magic_parameters& p) {
  if (p.is_signed) {
    return p.f_bits + 1 == p.n_bits + static_cast<unsigned>(p.l_bits) &&
           check_signed_condition(p.c, p.d, p.n_bits, p.l_bits);
  }
  if (p.l_bits < 0) {
    // Power-of-two branch: c * d = 2^F exactly.
    return p.f_bits <= 64 && p.d != 0 && p.d < (std::uint64_t{1} << p.n_bits) &&
           static_cast<int>(p.f_bits) == static_cast<int>(p.n_bits) + p.l_bits &&
           p.c * p.d == detail::pow2(p.f_bits);
  }
  return p.f_bits == p.n_bits + static_cast<unsigned>(p.l_bits) &&
         check_unsigned_condition(p.c, p.d, p.n_bits, p.l_bits);
}

// Evaluates the multiply-based quotient and remainder without validating
// the parameters. With invalid parameters the result may be wrong; that is
// how too-few-bits counterexamples are found.
inline divrem_result generic_divrem_unchecked(std::uint64_t n, const magic_parameters& p) noexcept {
  const uint128_t product = p.c * n;
  const uint128_t frac_mask = detail::pow2(p.f_bits) - 1;
  const uint128_t fraction = product & frac_mask;
  return {static_cast<std::uint64_t>(product >> p.f_bits),
          static_cast<std::uint64_t>((fraction * p.d) >> p.f_bits)};
}

inline bool generic_is_divisible_unchecked(std::uint64_t n, const magic_parameters& p) noexcept {
  const uint128_t fraction = (p.c * n) & (detail::pow2(p.f_bits) - 1);
  return fraction < p.c;
}

// Signed remainder: mu = ((lsb_F(c * n) * d) >> F), minus d - 1 when n < 0.
inline std::int64_t generic_signed_rem_unchecked(std::int64_t n, const magic_parameters& p) noexcept {
  const uint128_t frac_mask = detail::pow2(p.f_bits) - 1;
  const uint128_t lowbits = (p.c * static_cast<uint128_t>(static_cast<int128_t>(n))) & frac_mask;
  const auto mu = static_cast<std::int64_t>((lowbits * p.d) >> p.f_bits);
  return n < 0 ? mu - static_cast<std::int64_t>(p.d) + 1 : mu;
}

namespace detail {

inline void check_generic_args(std::uint64_t n, const magic_parameters& p, bool want_signed) {
  if (p.is_signed != want_signed) {
    throw std::invalid_argument(want_signed ? "expected signed parameters"
                                            : "expected unsigned parameters");
  }
  if (!is_valid(p)) {
    throw std::invalid_argument("parameters do not satisfy the exactness condition");
  }
  if (!want_signed && n >= (std::uint64_t{1} << p.n_bits)) {
    throw std::invalid_argument("numerator out of range for width");
  }
}

}  // namespace detail

inline divrem_result generic_divrem(std::uint64_t n, const magic_parameters& p) {
  detail::check_generic_args(n, p, false);
  return generic_divrem_unchecked(n, p);
}

inline bool generic_is_divisible(std::uint64_t n, const magic_parameters& p) {
  detail::check_generic_args(n, p, false);
  return generic_is_divisible_unchecked(n, p);
}

inline std::int64_t generic_signed_rem(std::int64_t n, const magic_parameters& p) {
  detail::check_generic_args(0, p, true);
  const std::int64_t half = std::int64_t{1} << (p.n_bits - 1);
  if (n < -half || n >= half) {
    throw std::invalid_argument("numerator out of range for signed width");
  }
  return generic_signed_rem_unchecked(n, p);
}

}  // namespace fastrem

#endif  // FASTREM_MAGIC_HPP
