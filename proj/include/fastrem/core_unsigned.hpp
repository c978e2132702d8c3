// Unsigned remainder, quotient and divisibility by a runtime-invariant
// divisor, using a 2N-bit scaled approximate reciprocal
//
//   c = floor((2^2N - 1) / d) + 1        (= ceil(2^2N / d))
//
// With F = 2N fractional bits, the low 2N bits of c * n are the fractional
// part of n / d, so
//
//   n mod d   = ((c * n mod 2^2N) * d) >> 2N
//   n div d   = (c * n) >> 2N
//   d | n    <=> c * n mod 2^2N < c
//
// No quotient is computed on the remainder path.

#ifndef FASTREM_CORE_UNSIGNED_HPP
#define FASTREM_CORE_UNSIGNED_HPP

#include <cstdint>
#include <stdexcept>

#include "fastrem/width.hpp"

namespace fastrem {

template <unsigned Bits>
  requires supported_width<Bits>
class basic_unsigned_divisor {
 public:
  using uint_type = typename width<Bits>::uint_type;
  using word_type = typename width<Bits>::word_type;

  // d = 1 wraps the reciprocal to 0; that case is flagged and handled
  // separately by fastdiv (fastmod and is_divisible are already right).
  explicit constexpr basic_unsigned_divisor(uint_type d)
      : d_(d),
        c_(d == 0 ? 0 : static_cast<word_type>(detail::max_word<Bits>() / d + 1)),
        unit_(d == 1) {
    if (d == 0) {
      throw std::invalid_argument("divisor must be non-zero");
    }
  }

  constexpr uint_type divisor() const noexcept { return d_; }
  constexpr word_type reciprocal() const noexcept { return c_; }
  constexpr bool is_unit() const noexcept { return unit_; }

  friend constexpr bool operator==(const basic_unsigned_divisor&,
                                   const basic_unsigned_divisor&) = default;

 private:
  uint_type d_;
  word_type c_;
  bool unit_;
};

using unsigned_fast_divisor = basic_unsigned_divisor<32>;

inline constexpr unsigned_fast_divisor compute_reciprocal(std::uint32_t d) {
  return unsigned_fast_divisor(d);
}

template <unsigned Bits>
constexpr typename width<Bits>::uint_type fastmod(typename width<Bits>::uint_type n,
                                                  const basic_unsigned_divisor<Bits>& div) noexcept {
  using word = typename width<Bits>::word_type;
  const word lowbits = detail::mul_lo<word>(div.reciprocal(), n);
  return detail::mul_hi<Bits>(lowbits, div.divisor());
}

template <unsigned Bits>
constexpr typename width<Bits>::uint_type fastdiv(typename width<Bits>::uint_type n,
                                                  const basic_unsigned_divisor<Bits>& div) noexcept {
  if (div.is_unit()) [[unlikely]] {
    return n;
  }
  return detail::mul_hi<Bits>(div.reciprocal(), n);
}

// For d = 1, c = 0 and the right-hand side c - 1 wraps to the maximum.
template <unsigned Bits>
constexpr bool is_divisible(typename width<Bits>::uint_type n,
                            const basic_unsigned_divisor<Bits>& div) noexcept {
  using word = typename width<Bits>::word_type;
  const word c = div.reciprocal();
  return detail::mul_lo<word>(c, n) <= detail::sub_wrap<word>(c, word{1});
}

// Divisibility from the bare 64-bit reciprocal, for tables that store
// only c per divisor.
inline constexpr std::uint64_t divisibility_reciprocal(std::uint32_t d) noexcept {
  return 1 + UINT64_C(0xFFFFFFFFFFFFFFFF) / d;
}
inline constexpr bool divisible_by_reciprocal(std::uint32_t n, std::uint64_t c) noexcept {
  return n * c <= c - 1;
}

// Explicit-width overloads so 32-bit callers do not spell the template.
inline constexpr std::uint32_t fastmod(std::uint32_t n, const unsigned_fast_divisor& div) noexcept {
  return fastmod<32>(n, div);
}
inline constexpr std::uint32_t fastdiv(std::uint32_t n, const unsigned_fast_divisor& div) noexcept {
  return fastdiv<32>(n, div);
}
inline constexpr bool is_divisible(std::uint32_t n, const unsigned_fast_divisor& div) noexcept {
  return is_divisible<32>(n, div);
}

}  // namespace fastrem

#endif  // FASTREM_CORE_UNSIGNED_HPP
