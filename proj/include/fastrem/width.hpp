// Integer width traits shared by the fast divisor templates.
//
// Every runtime algorithm in this library is written once against
// width<N> so the same code can be exercised at N = 8 and N = 16, where
// exhaustive verification is cheap, and at N = 32 in production.
//
//   uint_type  N-bit unsigned numerator/divisor
//   sint_type  N-bit two's complement numerator/divisor
//   word_type  2N-bit register holding the scaled reciprocal
//   wide_type  4N-bit type used only to take the high half of word * uint

#ifndef FASTREM_WIDTH_HPP
#define FASTREM_WIDTH_HPP

#include <bit>
#include <cstdint>
#include <type_traits>

namespace fastrem {

using uint128_t = unsigned __int128;
using int128_t = __int128;

template <unsigned Bits>
struct width;

template <>
struct width<8> {
  using uint_type = std::uint8_t;
  using sint_type = std::int8_t;
  using word_type = std::uint16_t;
  using sword_type = std::int16_t;
  using wide_type = std::uint32_t;
};

template <>
struct width<16> {
  using uint_type = std::uint16_t;
  using sint_type = std::int16_t;
  using word_type = std::uint32_t;
  using sword_type = std::int32_t;
  using wide_type = std::uint64_t;
};

template <>
struct width<32> {
  using uint_type = std::uint32_t;
  using sint_type = std::int32_t;
  using word_type = std::uint64_t;
  using sword_type = std::int64_t;
  using wide_type = uint128_t;
};

template <unsigned Bits>
concept supported_width = Bits == 8 || Bits == 16 || Bits == 32;

namespace detail {

// Narrow unsigned operands promote to (signed) int, where overflow is UB.
// Multiplying in at least `unsigned` keeps the product modular.
template <class T>
using mul_type = std::conditional_t<(sizeof(T) < sizeof(unsigned)), unsigned, T>;

template <class T>
constexpr T mul_lo(T a, T b) noexcept {
  return static_cast<T>(static_cast<mul_type<T>>(a) * static_cast<mul_type<T>>(b));
}

template <class T>
constexpr T sub_wrap(T a, T b) noexcept {
  return static_cast<T>(static_cast<mul_type<T>>(a) - static_cast<mul_type<T>>(b));
}

template <class T>
constexpr T add_wrap(T a, T b) noexcept {
  return static_cast<T>(static_cast<mul_type<T>>(a) + static_cast<mul_type<T>>(b));
}

// High 2N bits of a (2N x N)-bit product, truncated to N bits.
template <unsigned Bits>
constexpr typename width<Bits>::uint_type mul_hi(typename width<Bits>::word_type a,
                                                 typename width<Bits>::uint_type b) noexcept {
  using wide = typename width<Bits>::wide_type;
  return static_cast<typename width<Bits>::uint_type>((static_cast<wide>(a) * b) >> (2 * Bits));
}

template <unsigned Bits>
constexpr typename width<Bits>::uint_type max_uint() noexcept {
  return static_cast<typename width<Bits>::uint_type>(~typename width<Bits>::uint_type{0});
}

template <unsigned Bits>
constexpr typename width<Bits>::word_type max_word() noexcept {
  return static_cast<typename width<Bits>::word_type>(~typename width<Bits>::word_type{0});
}

// Unsigned magnitude of a signed value; the minimum maps to 2^(N-1).
template <unsigned Bits>
constexpr typename width<Bits>::uint_type magnitude(typename width<Bits>::sint_type v) noexcept {
  using U = typename width<Bits>::uint_type;
  const U u = static_cast<U>(v);
  return v < 0 ? sub_wrap<U>(U{0}, u) : u;
}

template <class U>
constexpr bool is_power_of_two(U v) noexcept {
  return std::has_single_bit(v);
}

}  // namespace detail
}  // namespace fastrem

#endif  // FASTREM_WIDTH_HPP
