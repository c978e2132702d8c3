// Reference competitors:
//
//  * Granlund-Montgomery-Warren (GMW) unsigned quotient by an invariant
//    divisor, with the remainder recovered as n - q * d.
//  * Granlund-Montgomery (GM) divisibility test: multiply by the inverse
//    of the odd part of d modulo 2^N, rotate right by the number of
//    trailing zeros of d, compare against floor((2^N - 1) / d).

#ifndef FASTREM_BASELINE_HPP
#define FASTREM_BASELINE_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "fastrem/width.hpp"

namespace fastrem {

enum class gmw_variant : std::uint8_t {
  power_of_two,     // n >> K
  multiply_shift,   // (c * n) >> (N + L), c < 2^N
  even_preshift,    // (c * (n >> K)) >> (N - K + L)
  add_shift_fixup,  // c = 2^N + c'
};

constexpr std::string_view to_string(gmw_variant v) noexcept {
  switch (v) {
    case gmw_variant::power_of_two: return "power-of-two";
    case gmw_variant::multiply_shift: return "multiply-shift";
    case gmw_variant::even_preshift: return "even-preshift";
    case gmw_variant::add_shift_fixup: return "add-shift-fixup";
  }
  return "unknown";
}

template <unsigned Bits>
  requires supported_width<Bits>
struct basic_gmw_divisor {
  using uint_type = typename width<Bits>::uint_type;
  using word_type = typename width<Bits>::word_type;

  uint_type d = 1;
  gmw_variant variant = gmw_variant::power_of_two;
  // multiply_shift / even_preshift: c; add_shift_fixup: c' = c - 2^N.
  word_type multiplier = 0;
  unsigned pre_shift = 0;   // K for power_of_two and even_preshift
  unsigned post_shift = 0;  // N + L, N - K + L, or L - 1

  friend constexpr bool operator==(const basic_gmw_divisor&, const basic_gmw_divisor&) = default;
};

using gmw_divisor = basic_gmw_divisor<32>;

namespace detail {

constexpr unsigned floor_log2(std::uint64_t v) noexcept {
  return static_cast<unsigned>(std::bit_width(v)) - 1;
}

constexpr unsigned ceil_log2(std::uint64_t v) noexcept {
  return v <= 1 ? 0 : static_cast<unsigned>(std::bit_width(v - 1));
}

constexpr uint128_t ceil_div128(uint128_t a, uint128_t b) noexcept { return (a + b - 1) / b; }

}  // namespace detail

// Branch order follows the classic algorithm: power of two, then the
// N-bit multiplier if its error guard passes, then the even pre-shift,
// and finally the 2^N + c' multiplier with the add/shift fixup.
template <unsigned Bits>
  requires supported_width<Bits>
constexpr basic_gmw_divisor<Bits> gmw_prepare(typename width<Bits>::uint_type d) {
  using word = typename width<Bits>::word_type;
  constexpr unsigned N = Bits;
  if (d == 0) {
    throw std::invalid_argument("divisor must be non-zero");
  }
  basic_gmw_divisor<Bits> g;
  g.d = d;
  if (std::has_single_bit(d)) {
    g.variant = gmw_variant::power_of_two;
    g.pre_shift = static_cast<unsigned>(std::countr_zero(d));
    return g;
  }

  const uint128_t two_n = uint128_t{1} << N;
  {
    const unsigned l = detail::floor_log2(d);
    const uint128_t c = detail::ceil_div128(uint128_t{1} << (N + l), d);
    // The largest numerator with remainder d - 1 is the worst case.
    const uint128_t worst = two_n - (two_n % d) - 1;
    if (c * worst < (two_n / d) * (uint128_t{1} << (N + l))) {
      g.variant = gmw_variant::multiply_shift;
      g.multiplier = static_cast<word>(c);
      g.post_shift = N + l;
      return g;
    }
  }
  if ((d & 1) == 0) {
    const auto k = static_cast<unsigned>(std::countr_zero(d));
    const std::uint64_t odd = static_cast<std::uint64_t>(d) >> k;
    const unsigned l = detail::ceil_log2(odd);
    g.variant = gmw_variant::even_preshift;
    g.multiplier = static_cast<word>(detail::ceil_div128(uint128_t{1} << (N - k + l), odd));
    g.pre_shift = k;
    g.post_shift = N - k + l;
    return g;
  }
  const unsigned l = detail::ceil_log2(d);
  const uint128_t c = detail::ceil_div128(uint128_t{1} << (N + l), d);
  g.variant = gmw_variant::add_shift_fixup;
  g.multiplier = static_cast<word>(c - two_n);
  g.post_shift = l - 1;
  return g;
}

inline constexpr gmw_divisor gmw_prepare(std::uint32_t d) { return gmw_prepare<32>(d); }

template <unsigned Bits>
constexpr typename width<Bits>::uint_type gmw_div(typename width<Bits>::uint_type n,
                                                  const basic_gmw_divisor<Bits>& g) noexcept {
  using U = typename width<Bits>::uint_type;
  using word = typename width<Bits>::word_type;
  switch (g.variant) {
    case gmw_variant::power_of_two:
      return static_cast<U>(n >> g.pre_shift);
    case gmw_variant::multiply_shift:
      return static_cast<U>(detail::mul_lo<word>(g.multiplier, n) >> g.post_shift);
    case gmw_variant::even_preshift:
      return static_cast<U>(detail::mul_lo<word>(g.multiplier, static_cast<U>(n >> g.pre_shift)) >>
                            g.post_shift);
    case gmw_variant::add_shift_fixup: {
      const U t = static_cast<U>(detail::mul_lo<word>(g.multiplier, n) >> Bits);
      return static_cast<U>((t + static_cast<U>(detail::sub_wrap<U>(n, t) >> 1)) >> g.post_shift);
    }
  }
  return 0;
}

template <unsigned Bits>
constexpr typename width<Bits>::uint_type gmw_mod(typename width<Bits>::uint_type n,
                                                  const basic_gmw_divisor<Bits>& g) noexcept {
  using U = typename width<Bits>::uint_type;
  return detail::sub_wrap<U>(n, detail::mul_lo<U>(gmw_div<Bits>(n, g), g.d));
}

inline constexpr std::uint32_t gmw_div(std::uint32_t n, const gmw_divisor& g) noexcept {
  return gmw_div<32>(n, g);
}
inline constexpr std::uint32_t gmw_mod(std::uint32_t n, const gmw_divisor& g) noexcept {
  return gmw_mod<32>(n, g);
}

// Newton iteration x <- x (2 - d x); the seed is correct to 5 bits, so
// three steps reach 40 >= 32 bits.
template <class U>
constexpr U multiplicative_inverse(U d) {
  if ((d & 1) == 0) {
    throw std::invalid_argument("multiplicative inverse modulo 2^N requires an odd value");
  }
  using detail::mul_lo;
  using detail::sub_wrap;
  U x = static_cast<U>(d + 2 * ((d + 1) & 4));
  for (int i = 0; i < 3; ++i) {
    x = mul_lo<U>(x, sub_wrap<U>(U{2}, mul_lo<U>(d, x)));
  }
  return x;
}

inline constexpr std::uint32_t rotr32(std::uint32_t n, unsigned e) noexcept {
  return std::rotr(n, static_cast<int>(e & 31));
}

template <unsigned Bits>
  requires supported_width<Bits>
struct basic_gm_divisibility {
  using uint_type = typename width<Bits>::uint_type;

  uint_type d = 1;
  unsigned e = 0;       // trailing zeros of d
  uint_type dbar = 1;   // inverse of d >> e modulo 2^N
  uint_type thresh = 0; // (2^N - 1) / d

  friend constexpr bool operator==(const basic_gm_divisibility&,
                                   const basic_gm_divisibility&) = default;
};

using gm_divisibility = basic_gm_divisibility<32>;

template <unsigned Bits>
  requires supported_width<Bits>
constexpr basic_gm_divisibility<Bits> gm_prepare(typename width<Bits>::uint_type d) {
  using U = typename width<Bits>::uint_type;
  if (d == 0) {
    throw std::invalid_argument("divisor must be non-zero");
  }
  basic_gm_divisibility<Bits> g;
  g.d = d;
  g.e = static_cast<unsigned>(std::countr_zero(d));
  g.dbar = multiplicative_inverse<U>(static_cast<U>(d >> g.e));
  g.thresh = static_cast<U>(detail::max_uint<Bits>() / d);
  return g;
}

inline constexpr gm_divisibility gm_prepare(std::uint32_t d) { return gm_prepare<32>(d); }

template <unsigned Bits>
constexpr bool gm_divisible(typename width<Bits>::uint_type n,
                            const basic_gm_divisibility<Bits>& g) noexcept {
  using U = typename width<Bits>::uint_type;
  return std::rotr(detail::mul_lo<U>(n, g.dbar), static_cast<int>(g.e)) <= g.thresh;
}

inline constexpr bool gm_divisible(std::uint32_t n, const gm_divisibility& g) noexcept {
  return gm_divisible<32>(n, g);
}

}  // namespace fastrem

#endif  // FASTREM_BASELINE_HPP
