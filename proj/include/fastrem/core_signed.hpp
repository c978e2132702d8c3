// Signed (truncated, C99 semantics) remainder and divisibility by a
// runtime-invariant divisor.
//
// For |d| = pd in [2, 2^(N-1)) the reciprocal is
//
//   c = floor((2^2N - 1) / pd) + 1 + (pd is a power of two ? 1 : 0)
//
// which is floor(2^2N / pd) + 1 and satisfies the strict bound
// 2^2N < c * pd < 2^2N + 2^(N+1). The numerator is sign-extended before
// the wrapping multiply; for negative n the high half is off by pd - 1,
// which is removed with a sign mask instead of a branch.
//
// |d| = 1 and d = -2^(N-1) are flagged at construction and bypass the
// multiply path.

#ifndef FASTREM_CORE_SIGNED_HPP
#define FASTREM_CORE_SIGNED_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "fastrem/width.hpp"

namespace fastrem {

enum class signed_divisor_kind : std::uint8_t {
  fast,
  unit,       // |d| = 1
  min_value,  // d = -2^(N-1)
};

template <unsigned Bits>
  requires supported_width<Bits>
class basic_signed_divisor {
 public:
  using uint_type = typename width<Bits>::uint_type;
  using sint_type = typename width<Bits>::sint_type;
  using word_type = typename width<Bits>::word_type;

  explicit constexpr basic_signed_divisor(sint_type d) : d_(d), pd_(detail::magnitude<Bits>(d)) {
    if (d == 0) {
      throw std::invalid_argument("divisor must be non-zero");
    }
    if (pd_ == 1) {
      kind_ = signed_divisor_kind::unit;
    } else if (d == std::numeric_limits<sint_type>::min()) {
      kind_ = signed_divisor_kind::min_value;
    } else {
      kind_ = signed_divisor_kind::fast;
      c_ = static_cast<word_type>(detail::max_word<Bits>() / pd_ + 1 +
                                  (detail::is_power_of_two(pd_) ? 1 : 0));
    }
    // Divisibility reduces to the unsigned test on magnitudes; this
    // reciprocal wraps to 0 for pd = 1, which the unsigned test accepts.
    divisibility_c_ = static_cast<word_type>(detail::max_word<Bits>() / pd_ + 1);
  }

  constexpr sint_type divisor() const noexcept { return d_; }
  constexpr uint_type magnitude() const noexcept { return pd_; }
  constexpr word_type reciprocal() const noexcept { return c_; }
  constexpr word_type divisibility_reciprocal() const noexcept { return divisibility_c_; }
  constexpr signed_divisor_kind kind() const noexcept { return kind_; }
  constexpr bool is_trivial() const noexcept { return kind_ != signed_divisor_kind::fast; }

  friend constexpr bool operator==(const basic_signed_divisor&,
                                   const basic_signed_divisor&) = default;

 private:
  sint_type d_;
  uint_type pd_;
  word_type c_ = 0;
  word_type divisibility_c_ = 0;
  signed_divisor_kind kind_ = signed_divisor_kind::fast;
};

using signed_fast_divisor = basic_signed_divisor<32>;

inline constexpr signed_fast_divisor compute_signed_reciprocal(std::int32_t d) {
  return signed_fast_divisor(d);
}

namespace detail {

// n mod 2^(N-1) with truncated semantics: keep the low N-1 bits, then put
// the sign back when n is negative and the result is non-zero.
template <unsigned Bits>
constexpr typename width<Bits>::sint_type rem_min_value(typename width<Bits>::sint_type n) noexcept {
  using U = typename width<Bits>::uint_type;
  using S = typename width<Bits>::sint_type;
  constexpr U low_mask = static_cast<U>(max_uint<Bits>() >> 1);
  constexpr U half = static_cast<U>(low_mask + 1);
  const U low = static_cast<U>(static_cast<U>(n) & low_mask);
  const U fixup = (n < 0 && low != 0) ? half : U{0};
  return static_cast<S>(sub_wrap<U>(low, fixup));
}

}  // namespace detail

template <unsigned Bits>
constexpr typename width<Bits>::sint_type fastmod_signed(typename width<Bits>::sint_type n,
                                                         const basic_signed_divisor<Bits>& div) noexcept {
  using U = typename width<Bits>::uint_type;
  using S = typename width<Bits>::sint_type;
  using word = typename width<Bits>::word_type;
  using sword = typename width<Bits>::sword_type;

  if (div.is_trivial()) [[unlikely]] {
    return div.kind() == signed_divisor_kind::unit ? S{0} : detail::rem_min_value<Bits>(n);
  }
  const U pd = div.magnitude();
  const word lowbits = detail::mul_lo<word>(div.reciprocal(), static_cast<word>(static_cast<sword>(n)));
  const U highbits = detail::mul_hi<Bits>(lowbits, pd);
  // (n >> (N-1)) is 0 or all ones.
  const U sign_mask = static_cast<U>(static_cast<S>(n >> (Bits - 1)));
  return static_cast<S>(detail::sub_wrap<U>(highbits, static_cast<U>((pd - 1) & sign_mask)));
}

// d | n  <=>  |d| | |n|, evaluated with the unsigned single-multiply test.
template <unsigned Bits>
constexpr bool is_divisible_signed(typename width<Bits>::sint_type n,
                                   const basic_signed_divisor<Bits>& div) noexcept {
  using word = typename width<Bits>::word_type;
  const word c = div.divisibility_reciprocal();
  const word mag = detail::magnitude<Bits>(n);
  return detail::mul_lo<word>(c, mag) <= detail::sub_wrap<word>(c, word{1});
}

inline constexpr std::int32_t fastmod_signed(std::int32_t n, const signed_fast_divisor& div) noexcept {
  return fastmod_signed<32>(n, div);
}
inline constexpr bool is_divisible_signed(std::int32_t n, const signed_fast_divisor& div) noexcept {
  return is_divisible_signed<32>(n, div);
}

}  // namespace fastrem

#endif  // FASTREM_CORE_SIGNED_HPP
