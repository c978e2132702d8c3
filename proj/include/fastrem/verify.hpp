// Oracle-based verification sweeps.
//
// A sweep compares each selected strategy against native division over a
// (divisor, numerator) domain at width 8, 16 or 32. The same templates
// that run at 32 bits are instantiated at the smaller widths, so an
// exhaustive 16-bit sweep covers the exact arithmetic recipe used in
// production. The `minimal` strategy evaluates the generic-width formula
// with the smallest valid F (optionally shifted by l_offset) at any width
// from 1 to 32.
//
// Reports are deterministic: workers own disjoint divisor subsets, counts
// are summed, and the retained mismatches are the smallest 100 by
// (strategy, op, signedness, d, n), independent of thread count.

#ifndef FASTREM_VERIFY_HPP
#define FASTREM_VERIFY_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "fastrem/baseline.hpp"
#include "fastrem/core_signed.hpp"
#include "fastrem/core_unsigned.hpp"
#include "fastrem/magic.hpp"

namespace fastrem {

enum class strategy : std::uint8_t { lkk, gmw, gm, hardware, minimal };

inline constexpr std::array<strategy, 5> kAllStrategies = {
    strategy::lkk, strategy::gmw, strategy::gm, strategy::hardware, strategy::minimal};

constexpr std::string_view to_string(strategy s) noexcept {
  switch (s) {
    case strategy::lkk: return "lkk";
    case strategy::gmw: return "gmw";
    case strategy::gm: return "gm";
    case strategy::hardware: return "hardware";
    case strategy::minimal: return "minimal";
  }
  return "unknown";
}

// Accepts the long spellings used in reports ("gm-divisibility", "oracle").
inline std::optional<strategy> parse_strategy(std::string_view name) noexcept {
  if (name == "lkk") return strategy::lkk;
  if (name == "gmw") return strategy::gmw;
  if (name == "gm" || name == "gm-divisibility") return strategy::gm;
  if (name == "hardware" || name == "oracle") return strategy::hardware;
  if (name == "minimal") return strategy::minimal;
  return std::nullopt;
}

enum class signedness : std::uint8_t { unsigned_only, signed_only, both };
enum class numerator_coverage : std::uint8_t { exhaustive, sampled };

struct divisor_selection {
  enum class kind : std::uint8_t { explicit_list, all, structured };
  kind mode = kind::structured;
  std::vector<std::int64_t> values;  // explicit_list only
};

struct sweep_spec {
  unsigned width = 16;
  divisor_selection divisors;
  numerator_coverage numerators = numerator_coverage::exhaustive;
  std::uint64_t sample_count = 10'000'000;
  std::uint64_t seed = 0x5eed'1234'cafe'f00dULL;
  signedness sign = signedness::unsigned_only;
  std::vector<strategy> strategies = {strategy::lkk, strategy::gmw, strategy::gm,
                                      strategy::hardware};
  int l_offset = 0;      // minimal strategy only
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct mismatch {
  strategy which = strategy::lkk;
  std::string_view op;  // "div", "mod" or "divisible"; static storage
  bool is_signed = false;
  std::int64_t d = 0;
  std::int64_t n = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  auto key() const { return std::tuple(which, op, is_signed, d, n); }
  friend bool operator==(const mismatch&, const mismatch&) = default;
};

struct strategy_tally {
  std::uint64_t checks = 0;
  std::uint64_t mismatches = 0;
  friend bool operator==(const strategy_tally&, const strategy_tally&) = default;
};

struct mismatch_report {
  static constexpr std::size_t kMaxRetained = 100;

  sweep_spec spec;
  std::array<strategy_tally, kAllStrategies.size()> tallies{};
  std::vector<mismatch> first_mismatches;
  std::uint64_t divisors_checked = 0;
  std::uint64_t elapsed_ns = 0;

  std::uint64_t mismatch_count() const noexcept {
    std::uint64_t total = 0;
    for (const auto& t : tallies) total += t.mismatches;
    return total;
  }
  bool passed() const noexcept { return mismatch_count() == 0; }
  const strategy_tally& tally(strategy s) const noexcept {
    return tallies[static_cast<std::size_t>(s)];
  }
};

// Same results, ignoring timing.
inline bool same_results(const mismatch_report& a, const mismatch_report& b) {
  return a.tallies == b.tallies && a.first_mismatches == b.first_mismatches &&
         a.divisors_checked == b.divisors_checked;
}

struct divrem_oracle_result {
  std::int64_t quotient = 0;
  std::int64_t remainder = 0;
  friend bool operator==(const divrem_oracle_result&, const divrem_oracle_result&) = default;
};

// Native division; truncated toward zero for signed operands.
inline divrem_oracle_result oracle_divmod(std::int64_t n, std::int64_t d) {
  if (d == 0) {
    throw std::invalid_argument("division by zero");
  }
  return {n / d, n % d};
}

inline divrem_oracle_result oracle_divmod_unsigned(std::uint64_t n, std::uint64_t d) {
  if (d == 0) {
    throw std::invalid_argument("division by zero");
  }
  return {static_cast<std::int64_t>(n / d), static_cast<std::int64_t>(n % d)};
}

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based: the i-th sample for divisor d depends only on (seed, d, i).
struct sample_stream {
  std::uint64_t key;
  sample_stream(std::uint64_t seed, std::int64_t d) noexcept
      : key(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(d)))) {}
  std::uint64_t operator()(std::uint64_t i) const noexcept { return splitmix64(key + i); }
};

inline bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) return false;
  }
  return true;
}

inline std::uint64_t largest_prime_below(std::uint64_t limit) {
  for (std::uint64_t v = limit - 1; v >= 2; --v) {
    if (is_prime(v)) return v;
  }
  return 2;
}

class accumulator {
 public:
  void check(strategy s, std::string_view op, bool is_signed, std::int64_t d, std::int64_t n,
             std::int64_t expected, std::int64_t actual) {
    auto& t = tallies[static_cast<std::size_t>(s)];
    ++t.checks;
    if (expected != actual) [[unlikely]] {
      ++t.mismatches;
      retained.push_back({s, op, is_signed, d, n, expected, actual});
      if (retained.size() > 8 * mismatch_report::kMaxRetained) {
        trim();
      }
    }
  }

  void trim() {
    const auto by_key = [](const mismatch& a, const mismatch& b) { return a.key() < b.key(); };
    std::sort(retained.begin(), retained.end(), by_key);
    if (retained.size() > mismatch_report::kMaxRetained) {
      retained.resize(mismatch_report::kMaxRetained);
    }
  }

  void merge(const accumulator& other) {
    for (std::size_t i = 0; i < tallies.size(); ++i) {
      tallies[i].checks += other.tallies[i].checks;
      tallies[i].mismatches += other.tallies[i].mismatches;
    }
    retained.insert(retained.end(), other.retained.begin(), other.retained.end());
    divisors += other.divisors;
    trim();
  }

  std::array<strategy_tally, kAllStrategies.size()> tallies{};
  std::vector<mismatch> retained;
  std::uint64_t divisors = 0;
};

struct strategy_flags {
  bool lkk = false, gmw = false, gm = false, hardware = false, minimal = false;
  explicit strategy_flags(const std::vector<strategy>& list) {
    for (strategy s : list) {
      switch (s) {
        case strategy::lkk: lkk = true; break;
        case strategy::gmw: gmw = true; break;
        case strategy::gm: gm = true; break;
        case strategy::hardware: hardware = true; break;
        case strategy::minimal: minimal = true; break;
      }
    }
  }
  bool any_fixed_width() const noexcept { return lkk || gmw || gm || hardware; }
};

// A divisor task: magnitude-checked value plus which pass it belongs to.
struct divisor_task {
  std::int64_t d;
  bool is_signed;
};

inline std::vector<std::int64_t> structured_unsigned(unsigned width) {
  const std::uint64_t limit = std::uint64_t{1} << width;
  std::vector<std::int64_t> out;
  out.push_back(1);
  for (std::uint64_t d = 2; d <= 1024 && d < limit; ++d) out.push_back(static_cast<std::int64_t>(d));
  for (unsigned k = 2; k < width; ++k) {
    const std::uint64_t p = std::uint64_t{1} << k;
    for (std::uint64_t d : {p - 1, p, p + 1}) out.push_back(static_cast<std::int64_t>(d));
  }
  if (limit > 2) {
    out.push_back(static_cast<std::int64_t>(limit - 1));
    out.push_back(static_cast<std::int64_t>(limit - 2));
    out.push_back(static_cast<std::int64_t>(largest_prime_below(limit)));
    if (limit > 4) out.push_back(static_cast<std::int64_t>(largest_prime_below(limit / 2)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](std::int64_t d) { return d < 1 || static_cast<std::uint64_t>(d) >= limit; });
  return out;
}

inline std::vector<std::int64_t> structured_signed(unsigned width) {
  const std::int64_t half = std::int64_t{1} << (width - 1);
  std::vector<std::int64_t> out;
  for (std::int64_t d : structured_unsigned(width)) {
    if (d < half) {
      out.push_back(d);
      out.push_back(-d);
    }
  }
  out.push_back(half - 1);
  out.push_back(-(half - 1));
  out.push_back(-half);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline void validate(const sweep_spec& spec, const strategy_flags& flags) {
  if (spec.strategies.empty()) {
    throw std::invalid_argument("at least one strategy is required");
  }
  if (flags.any_fixed_width() && spec.width != 8 && spec.width != 16 && spec.width != 32) {
    throw std::invalid_argument("lkk, gmw, gm and hardware strategies need width 8, 16 or 32");
  }
  if (spec.width < 1 || spec.width > 32) {
    throw std::invalid_argument("width must be in [1, 32]");
  }
  if (flags.gmw && spec.sign == signedness::signed_only) {
    throw std::invalid_argument("gmw has no signed form");
  }
  if (spec.divisors.mode == divisor_selection::kind::all && spec.width > 16) {
    throw std::invalid_argument("'all' divisors is only allowed for width <= 16");
  }
  if (spec.divisors.mode == divisor_selection::kind::explicit_list && spec.divisors.values.empty()) {
    throw std::invalid_argument("explicit divisor list is empty");
  }
  if (spec.sign != signedness::unsigned_only && spec.width < 2) {
    throw std::invalid_argument("signed sweeps need width >= 2");
  }
  if (spec.l_offset != 0 && !flags.minimal) {
    throw std::invalid_argument("l_offset only applies to the minimal strategy");
  }
  const std::int64_t ulimit = static_cast<std::int64_t>(std::uint64_t{1} << spec.width);
  const std::int64_t half = ulimit / 2;
  for (std::int64_t d : spec.divisors.values) {
    const bool fits_unsigned = d >= 1 && d < ulimit;
    const bool fits_signed = d != 0 && d >= -half && d < half;
    const bool ok = (spec.sign == signedness::unsigned_only && fits_unsigned) ||
                    (spec.sign == signedness::signed_only && fits_signed) ||
                    (spec.sign == signedness::both && (fits_unsigned || fits_signed));
    if (!ok) {
      throw std::invalid_argument("divisor " + std::to_string(d) + " is out of range for width " +
                                  std::to_string(spec.width));
    }
  }
}

inline std::vector<divisor_task> build_tasks(const sweep_spec& spec) {
  const std::int64_t ulimit = static_cast<std::int64_t>(std::uint64_t{1} << spec.width);
  const std::int64_t half = ulimit / 2;
  std::vector<divisor_task> tasks;
  const bool want_unsigned = spec.sign != signedness::signed_only;
  const bool want_signed = spec.sign != signedness::unsigned_only;

  if (want_unsigned) {
    std::vector<std::int64_t> ds;
    switch (spec.divisors.mode) {
      case divisor_selection::kind::all:
        for (std::int64_t d = 1; d < ulimit; ++d) ds.push_back(d);
        break;
      case divisor_selection::kind::structured:
        ds = structured_unsigned(spec.width);
        break;
      case divisor_selection::kind::explicit_list:
        for (std::int64_t d : spec.divisors.values) {
          if (d >= 1 && d < ulimit) ds.push_back(d);
        }
        break;
    }
    for (std::int64_t d : ds) tasks.push_back({d, false});
  }
  if (want_signed) {
    std::vector<std::int64_t> ds;
    switch (spec.divisors.mode) {
      case divisor_selection::kind::all:
        for (std::int64_t d = -half; d < half; ++d) {
          if (d != 0) ds.push_back(d);
        }
        break;
      case divisor_selection::kind::structured:
        ds = structured_signed(spec.width);
        break;
      case divisor_selection::kind::explicit_list:
        for (std::int64_t d : spec.divisors.values) {
          if (d != 0 && d >= -half && d < half) ds.push_back(d);
          if (d > 0 && -d >= -half) ds.push_back(-d);
        }
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        break;
    }
    for (std::int64_t d : ds) tasks.push_back({d, true});
  }
  return tasks;
}

// Visits every numerator for one divisor: the full range, or boundary
// values followed by seeded random samples.
template <class F>
void for_each_unsigned_numerator(const sweep_spec& spec, std::uint64_t d, F&& f) {
  const std::uint64_t limit = std::uint64_t{1} << spec.width;
  const std::uint64_t mask = limit - 1;
  if (spec.numerators == numerator_coverage::exhaustive) {
    for (std::uint64_t n = 0; n < limit; ++n) f(n);
    return;
  }
  const std::uint64_t half = limit / 2;
  for (std::uint64_t n : {std::uint64_t{0}, std::uint64_t{1}, d - 1, d, d + 1, half - 1, half, mask}) {
    if (n < limit) f(n);
  }
  const sample_stream stream(spec.seed, static_cast<std::int64_t>(d));
  for (std::uint64_t i = 0; i < spec.sample_count; ++i) f(stream(i) & mask);
}

template <class F>
void for_each_signed_numerator(const sweep_spec& spec, std::int64_t d, F&& f) {
  const std::int64_t half = std::int64_t{1} << (spec.width - 1);
  if (spec.numerators == numerator_coverage::exhaustive) {
    for (std::int64_t n = -half; n < half; ++n) f(n);
    return;
  }
  const std::int64_t m = d < 0 ? -d : d;
  for (std::int64_t n : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, m - 1, m, m + 1,
                         -(m - 1), -m, -(m + 1), -half, -half + 1, half - 1}) {
    if (n >= -half && n < half) f(n);
  }
  const sample_stream stream(spec.seed, d);
  const std::uint64_t mask = (std::uint64_t{1} << spec.width) - 1;
  for (std::uint64_t i = 0; i < spec.sample_count; ++i) {
    // Sign-extend the low `width` bits.
    const std::uint64_t bits = stream(i) & mask;
    const auto n = static_cast<std::int64_t>(bits << (64 - spec.width)) >> (64 - spec.width);
    f(n);
  }
}

template <unsigned Bits>
void sweep_unsigned_divisor(const sweep_spec& spec, const strategy_flags& flags, std::uint64_t d64,
                            accumulator& acc) {
  using U = typename width<Bits>::uint_type;
  const U d = static_cast<U>(d64);
  const basic_unsigned_divisor<Bits> lkk(d);
  const auto gmw = gmw_prepare<Bits>(d);
  const auto gm = gm_prepare<Bits>(d);
  const auto sd = static_cast<std::int64_t>(d64);
  for_each_unsigned_numerator(spec, d64, [&](std::uint64_t n64) {
    const U n = static_cast<U>(n64);
    const auto sn = static_cast<std::int64_t>(n64);
    const std::int64_t q = static_cast<std::int64_t>(n64 / d64);
    const std::int64_t r = static_cast<std::int64_t>(n64 % d64);
    if (flags.lkk) {
      acc.check(strategy::lkk, "mod", false, sd, sn, r, fastmod<Bits>(n, lkk));
      acc.check(strategy::lkk, "div", false, sd, sn, q, fastdiv<Bits>(n, lkk));
      acc.check(strategy::lkk, "divisible", false, sd, sn, r == 0, is_divisible<Bits>(n, lkk));
    }
    if (flags.gmw) {
      acc.check(strategy::gmw, "div", false, sd, sn, q, gmw_div<Bits>(n, gmw));
      acc.check(strategy::gmw, "mod", false, sd, sn, r, gmw_mod<Bits>(n, gmw));
    }
    if (flags.gm) {
      acc.check(strategy::gm, "divisible", false, sd, sn, r == 0, gm_divisible<Bits>(n, gm));
    }
    if (flags.hardware) {
      acc.check(strategy::hardware, "div", false, sd, sn, q, static_cast<U>(n / d));
      acc.check(strategy::hardware, "mod", false, sd, sn, r, static_cast<U>(n % d));
    }
  });
}

template <unsigned Bits>
void sweep_signed_divisor(const sweep_spec& spec, const strategy_flags& flags, std::int64_t d64,
                          accumulator& acc) {
  using S = typename width<Bits>::sint_type;
  using U = typename width<Bits>::uint_type;
  const S d = static_cast<S>(d64);
  const basic_signed_divisor<Bits> lkk(d);
  const auto gm = gm_prepare<Bits>(detail::magnitude<Bits>(d));
  for_each_signed_numerator(spec, d64, [&](std::int64_t n64) {
    const S n = static_cast<S>(n64);
    // 64-bit truncated remainder is exact for every narrower pair.
    const std::int64_t r = n64 % d64;
    if (flags.lkk) {
      acc.check(strategy::lkk, "mod", true, d64, n64, r, fastmod_signed<Bits>(n, lkk));
      acc.check(strategy::lkk, "divisible", true, d64, n64, r == 0, is_divisible_signed<Bits>(n, lkk));
    }
    if (flags.gm) {
      const U mag = detail::magnitude<Bits>(n);
      acc.check(strategy::gm, "divisible", true, d64, n64, r == 0, gm_divisible<Bits>(mag, gm));
    }
    if (flags.hardware) {
      // Native narrow remainder; |d| = 1 sidesteps MIN % -1.
      const std::int64_t native = (d == S{-1}) ? 0 : static_cast<S>(n % d);
      acc.check(strategy::hardware, "mod", true, d64, n64, r, native);
    }
  });
}

inline void sweep_minimal_divisor(const sweep_spec& spec, std::int64_t d, bool is_signed,
                                  accumulator& acc) {
  if (!is_signed) {
    const auto ud = static_cast<std::uint64_t>(d);
    magic_parameters p = minimal_unsigned_params(ud, spec.width);
    if (spec.l_offset != 0) {
      const int l = p.l_bits + spec.l_offset;
      if (std::has_single_bit(ud) || l < 0) return;
      p = unsigned_params_with(ud, spec.width, l);
    }
    for_each_unsigned_numerator(spec, ud, [&](std::uint64_t n) {
      const auto got = generic_divrem_unchecked(n, p);
      const auto sn = static_cast<std::int64_t>(n);
      acc.check(strategy::minimal, "div", false, d, sn, static_cast<std::int64_t>(n / ud),
                static_cast<std::int64_t>(got.quotient));
      acc.check(strategy::minimal, "mod", false, d, sn, static_cast<std::int64_t>(n % ud),
                static_cast<std::int64_t>(got.remainder));
      acc.check(strategy::minimal, "divisible", false, d, sn, n % ud == 0,
                generic_is_divisible_unchecked(n, p));
    });
    return;
  }
  const std::uint64_t mag = static_cast<std::uint64_t>(d < 0 ? -d : d);
  if (mag >= (std::uint64_t{1} << (spec.width - 1))) return;  // -2^(N-1) has no parameters
  magic_parameters p = minimal_signed_params(mag, spec.width);
  if (spec.l_offset != 0) {
    const int l = p.l_bits + spec.l_offset;
    if (l < 0) return;
    p = signed_params_with(mag, spec.width, l);
  }
  for_each_signed_numerator(spec, d, [&](std::int64_t n) {
    acc.check(strategy::minimal, "mod", true, d, n, n % d, generic_signed_rem_unchecked(n, p));
  });
}

template <unsigned Bits>
void sweep_task(const sweep_spec& spec, const strategy_flags& flags, const divisor_task& t,
                accumulator& acc) {
  if (flags.any_fixed_width()) {
    if (t.is_signed) {
      sweep_signed_divisor<Bits>(spec, flags, t.d, acc);
    } else {
      sweep_unsigned_divisor<Bits>(spec, flags, static_cast<std::uint64_t>(t.d), acc);
    }
  }
}

}  // namespace detail

inline mismatch_report run_sweep(const sweep_spec& spec) {
  const detail::strategy_flags flags(spec.strategies);
  detail::validate(spec, flags);
  const auto tasks = detail::build_tasks(spec);
  const auto start = std::chrono::steady_clock::now();

  const auto run_one = [&](const detail::divisor_task& t, detail::accumulator& acc) {
    switch (spec.width) {
      case 8: detail::sweep_task<8>(spec, flags, t, acc); break;
      case 16: detail::sweep_task<16>(spec, flags, t, acc); break;
      case 32: detail::sweep_task<32>(spec, flags, t, acc); break;
      default: break;
    }
    if (flags.minimal) {
      detail::sweep_minimal_divisor(spec, t.d, t.is_signed, acc);
    }
    ++acc.divisors;
  };

  unsigned threads = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, tasks.size())));
  std::vector<detail::accumulator> parts(threads);
  if (threads == 1) {
    for (const auto& t : tasks) run_one(t, parts[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < tasks.size(); i += threads) run_one(tasks[i], parts[w]);
      });
    }
    for (auto& th : workers) th.join();
  }
  detail::accumulator total;
  for (const auto& p : parts) total.merge(p);
  total.trim();

  mismatch_report report;
  report.spec = spec;
  report.tallies = total.tallies;
  report.first_mismatches = std::move(total.retained);
  report.divisors_checked = total.divisors;
  report.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
          .count());
  return report;
}

// Algorithm-2 minimality at width N: for every d in [1, 2^N) the chosen L
// satisfies the exactness condition and L - 1 does not.
struct minimality_report {
  unsigned n_bits = 0;
  std::uint64_t divisors_checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::uint64_t> first_failures;  // at most 100
  bool passed() const noexcept { return failure_count == 0; }
};

inline minimality_report minimality_sweep(unsigned n_bits) {
  detail::check_width(n_bits);
  minimality_report report;
  report.n_bits = n_bits;
  const std::uint64_t limit = std::uint64_t{1} << n_bits;
  for (std::uint64_t d = 1; d < limit; ++d) {
    const auto p = minimal_unsigned_params(d, n_bits);
    bool ok = is_valid(p);
    if (std::has_single_bit(d)) {
      ok = ok && p.c == 1 && p.f_bits == static_cast<unsigned>(std::countr_zero(d));
    } else {
      ok = ok && check_unsigned_condition(p.c, d, n_bits, p.l_bits);
      if (p.l_bits > 0) {
        const auto below = unsigned_params_with(d, n_bits, p.l_bits - 1);
        ok = ok && !check_unsigned_condition(below.c, d, n_bits, below.l_bits);
      }
    }
    ++report.divisors_checked;
    if (!ok) {
      ++report.failure_count;
      if (report.first_failures.size() < 100) report.first_failures.push_back(d);
    }
  }
  return report;
}

// For every non-power-of-two d whose minimal L is positive, searches all
// N-bit numerators for one where parameters with L - 1 give a wrong
// quotient or remainder.
struct tightness_report {
  unsigned n_bits = 0;
  std::uint64_t divisors_checked = 0;
  std::uint64_t divisors_with_counterexample = 0;
  std::vector<std::uint64_t> divisors_without_counterexample;
  bool passed() const noexcept { return divisors_without_counterexample.empty(); }
};

inline std::optional<std::uint64_t> find_counterexample(const magic_parameters& p) {
  const std::uint64_t limit = std::uint64_t{1} << p.n_bits;
  for (std::uint64_t n = 0; n < limit; ++n) {
    const auto got = generic_divrem_unchecked(n, p);
    if (got.quotient != n / p.d || got.remainder != n % p.d) return n;
  }
  return std::nullopt;
}

inline tightness_report tightness_sweep(unsigned n_bits) {
  detail::check_width(n_bits);
  tightness_report report;
  report.n_bits = n_bits;
  const std::uint64_t limit = std::uint64_t{1} << n_bits;
  for (std::uint64_t d = 3; d < limit; ++d) {
    if (std::has_single_bit(d)) continue;
    const auto p = minimal_unsigned_params(d, n_bits);
    if (p.l_bits <= 0) continue;
    ++report.divisors_checked;
    if (find_counterexample(unsigned_params_with(d, n_bits, p.l_bits - 1))) {
      ++report.divisors_with_counterexample;
    } else {
      report.divisors_without_counterexample.push_back(d);
    }
  }
  return report;
}

// JSON serialization. Field names are stable; new fields may be added.
inline nlohmann::json to_json(const sweep_spec& spec) {
  nlohmann::json j;
  j["width"] = spec.width;
  switch (spec.divisors.mode) {
    case divisor_selection::kind::all: j["divisors"] = "all"; break;
    case divisor_selection::kind::structured: j["divisors"] = "structured"; break;
    case divisor_selection::kind::explicit_list: j["divisors"] = spec.divisors.values; break;
  }
  j["numerators"] = spec.numerators == numerator_coverage::exhaustive ? "exhaustive" : "sampled";
  j["sample_count"] = spec.sample_count;
  j["seed"] = spec.seed;
  j["signedness"] = spec.sign == signedness::unsigned_only ? "unsigned"
                    : spec.sign == signedness::signed_only ? "signed"
                                                            : "both";
  std::vector<std::string> names;
  for (strategy s : spec.strategies) names.emplace_back(to_string(s));
  j["strategies"] = names;
  j["l_offset"] = spec.l_offset;
  return j;
}

inline nlohmann::json to_json(const mismatch_report& r) {
  nlohmann::json j;
  j["spec"] = to_json(r.spec);
  j["strategy"] = j["spec"]["strategies"];
  j["mismatch_count"] = r.mismatch_count();
  nlohmann::json per = nlohmann::json::object();
  for (strategy s : r.spec.strategies) {
    per[std::string(to_string(s))] = {{"checks", r.tally(s).checks},
                                      {"mismatches", r.tally(s).mismatches}};
  }
  j["per_strategy"] = per;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& m : r.first_mismatches) {
    list.push_back({{"strategy", std::string(to_string(m.which))},
                    {"op", std::string(m.op)},
                    {"signed", m.is_signed},
                    {"d", m.d},
                    {"n", m.n},
                    {"expected", m.expected},
                    {"actual", m.actual}});
  }
  j["first_mismatches"] = list;
  j["divisors_checked"] = r.divisors_checked;
  j["elapsed_ns"] = r.elapsed_ns;
  j["seed"] = r.spec.seed;
  j["passed"] = r.passed();
  return j;
}

}  // namespace fastrem

#endif  // FASTREM_VERIFY_HPP
