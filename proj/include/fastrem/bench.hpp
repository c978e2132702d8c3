// Throughput benchmarks.
//
// lcg:    x <- (a * x + b) mod d, seed 1234, b = 27961, a = 31 (unsigned)
//         or -31 (signed). Each step consumes the previous x, so the loop
//         is a serial dependency chain through the remainder.
// primes: counts primes below a limit by trial divisibility against the
//         primes found so far; per-prime constants are computed once.
//
// Timing is wall-clock on the monotonic clock: one untimed warmup run,
// then `repeats` timed runs, median reported. The checksum (final x or
// prime count) must agree across strategies.

#ifndef FASTREM_BENCH_HPP
#define FASTREM_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "fastrem/baseline.hpp"
#include "fastrem/core_signed.hpp"
#include "fastrem/core_unsigned.hpp"
#include "fastrem/verify.hpp"

namespace fastrem {

struct bench_report {
  std::string benchmark;  // "lcg", "lcg-signed" or "primes"
  strategy which = strategy::lkk;
  std::optional<std::int64_t> divisor;  // lcg only
  std::uint64_t iterations = 0;
  std::uint64_t elapsed_ns = 0;
  std::int64_t checksum = 0;
  unsigned repeats = 0;

  double ns_per_op() const noexcept {
    return iterations == 0 ? 0.0 : static_cast<double>(elapsed_ns) / static_cast<double>(iterations);
  }
};

struct lcg_config {
  std::int64_t d = 95;
  strategy which = strategy::lkk;
  std::uint64_t iterations = 100'000'000;
  bool is_signed = false;
  // Defaults to 31, negated for the signed variant.
  std::optional<std::int64_t> multiplier;
  std::uint32_t seed = 1234;
  std::uint32_t addend = 27961;
  unsigned repeats = 5;
  std::uint64_t warmup_iterations = 1'000'000;
};

struct prime_config {
  std::uint32_t limit = 40000;
  strategy which = strategy::lkk;
  unsigned repeats = 5;
};

namespace detail {

// The divisor is read through a volatile so the compiler cannot
// strength-reduce the hardware loop even when d is a literal upstream.
inline std::uint32_t opaque(std::uint32_t v) {
  volatile std::uint32_t sink = v;
  return sink;
}
inline std::int32_t opaque(std::int32_t v) {
  volatile std::int32_t sink = v;
  return sink;
}

[[gnu::noipa]] inline std::uint32_t lcg_lkk(std::uint32_t x, std::uint32_t a, std::uint32_t b,
                                               unsigned_fast_divisor div, std::uint64_t iters) {
  for (std::uint64_t i = 0; i < iters; ++i) x = fastmod(a * x + b, div);
  return x;
}

[[gnu::noipa]] inline std::uint32_t lcg_gmw(std::uint32_t x, std::uint32_t a, std::uint32_t b,
                                               gmw_divisor g, std::uint64_t iters) {
  for (std::uint64_t i = 0; i < iters; ++i) x = gmw_mod(a * x + b, g);
  return x;
}

[[gnu::noipa]] inline std::uint32_t lcg_hardware(std::uint32_t x, std::uint32_t a, std::uint32_t b,
                                                    std::uint32_t d, std::uint64_t iters) {
  d = opaque(d);
  for (std::uint64_t i = 0; i < iters; ++i) x = (a * x + b) % d;
  return x;
}

// a * x + b wraps in 32 bits, then is reinterpreted as signed.
inline std::int32_t signed_step(std::int32_t x, std::uint32_t a, std::uint32_t b) noexcept {
  return static_cast<std::int32_t>(a * static_cast<std::uint32_t>(x) + b);
}

[[gnu::noipa]] inline std::int32_t lcg_signed_lkk(std::int32_t x, std::uint32_t a, std::uint32_t b,
                                                     signed_fast_divisor div, std::uint64_t iters) {
  for (std::uint64_t i = 0; i < iters; ++i) x = fastmod_signed(signed_step(x, a, b), div);
  return x;
}

[[gnu::noipa]] inline std::int32_t lcg_signed_hardware(std::int32_t x, std::uint32_t a,
                                                          std::uint32_t b, std::int32_t d,
                                                          std::uint64_t iters) {
  // INT_MIN % -1 traps; the remainder by -1 equals the remainder by 1.
  d = opaque(d == -1 ? 1 : d);
  for (std::uint64_t i = 0; i < iters; ++i) x = signed_step(x, a, b) % d;
  return x;
}

template <class F>
std::pair<std::uint64_t, std::int64_t> time_median(unsigned repeats, F&& run) {
  std::vector<std::uint64_t> samples;
  std::int64_t checksum = 0;
  for (unsigned r = 0; r < std::max(1u, repeats); ++r) {
    const auto start = std::chrono::steady_clock::now();
    checksum = run();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
  }
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2),
                   samples.end());
  return {samples[samples.size() / 2], checksum};
}

struct gm_entry {
  std::uint32_t dbar;
  std::uint32_t thresh;
  std::uint8_t e;
};

[[gnu::noipa]] inline std::uint32_t count_primes_lkk(std::uint32_t limit) {
  std::vector<std::uint64_t> cvals;
  for (std::uint32_t n = 3; n < limit; n += 2) {
    bool is_prime = true;
    for (std::uint64_t c : cvals) {
      if (divisible_by_reciprocal(n, c)) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) cvals.push_back(divisibility_reciprocal(n));
  }
  return static_cast<std::uint32_t>(cvals.size()) + 1;  // 2 is prime
}

[[gnu::noipa]] inline std::uint32_t count_primes_gm(std::uint32_t limit) {
  std::vector<gm_entry> entries;
  for (std::uint32_t n = 3; n < limit; n += 2) {
    bool is_prime = true;
    for (const gm_entry& g : entries) {
      if (rotr32(n * g.dbar, g.e) <= g.thresh) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) {
      const auto g = gm_prepare(n);
      entries.push_back({g.dbar, g.thresh, static_cast<std::uint8_t>(g.e)});
    }
  }
  return static_cast<std::uint32_t>(entries.size()) + 1;
}

[[gnu::noipa]] inline std::uint32_t count_primes_hardware(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t n = 3; n < limit; n += 2) {
    bool is_prime = true;
    for (std::uint32_t p : primes) {
      if (n % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(n);
  }
  return static_cast<std::uint32_t>(primes.size()) + 1;
}

// Number of trial divisibility tests the prime loop performs.
inline std::uint64_t prime_trial_tests(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  std::uint64_t tests = 0;
  for (std::uint32_t n = 3; n < limit; n += 2) {
    bool is_prime = true;
    for (std::uint32_t p : primes) {
      ++tests;
      if (n % p == 0) {
        is_prime = false;
        break;
      }
    }
    if (is_prime) primes.push_back(n);
  }
  return tests;
}

}  // namespace detail

inline bench_report lcg_bench(const lcg_config& cfg) {
  if (cfg.iterations == 0) {
    throw std::invalid_argument("iterations must be >= 1");
  }
  bench_report rep;
  rep.benchmark = cfg.is_signed ? "lcg-signed" : "lcg";
  rep.which = cfg.which;
  rep.divisor = cfg.d;
  rep.iterations = cfg.iterations;
  rep.repeats = std::max(1u, cfg.repeats);
  const std::int64_t a64 = cfg.multiplier.value_or(cfg.is_signed ? -31 : 31);
  const auto a = static_cast<std::uint32_t>(a64);
  const std::uint32_t b = cfg.addend;
  const std::uint64_t warm = std::min(cfg.warmup_iterations, cfg.iterations);

  if (!cfg.is_signed) {
    if (cfg.d < 1 || cfg.d > std::numeric_limits<std::uint32_t>::max()) {
      throw std::invalid_argument("unsigned lcg divisor must be in [1, 2^32)");
    }
    const auto d = static_cast<std::uint32_t>(cfg.d);
    const std::uint32_t x0 = cfg.seed;
    switch (cfg.which) {
      case strategy::lkk: {
        const auto div = compute_reciprocal(d);
        detail::lcg_lkk(x0, a, b, div, warm);
        std::tie(rep.elapsed_ns, rep.checksum) =
            detail::time_median(rep.repeats, [&] { return detail::lcg_lkk(x0, a, b, div, cfg.iterations); });
        break;
      }
      case strategy::gmw: {
        const auto g = gmw_prepare(d);
        detail::lcg_gmw(x0, a, b, g, warm);
        std::tie(rep.elapsed_ns, rep.checksum) =
            detail::time_median(rep.repeats, [&] { return detail::lcg_gmw(x0, a, b, g, cfg.iterations); });
        break;
      }
      case strategy::hardware: {
        detail::lcg_hardware(x0, a, b, d, warm);
        std::tie(rep.elapsed_ns, rep.checksum) = detail::time_median(
            rep.repeats, [&] { return detail::lcg_hardware(x0, a, b, d, cfg.iterations); });
        break;
      }
      default:
        throw std::invalid_argument("strategy " + std::string(to_string(cfg.which)) +
                                    " does not compute remainders for the lcg benchmark");
    }
    return rep;
  }

  if (cfg.d == 0 || cfg.d < std::numeric_limits<std::int32_t>::min() ||
      cfg.d > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("signed lcg divisor must be a non-zero 32-bit integer");
  }
  const auto d = static_cast<std::int32_t>(cfg.d);
  const auto x0 = static_cast<std::int32_t>(cfg.seed);
  switch (cfg.which) {
    case strategy::lkk: {
      const auto div = compute_signed_reciprocal(d);
      detail::lcg_signed_lkk(x0, a, b, div, warm);
      std::tie(rep.elapsed_ns, rep.checksum) = detail::time_median(
          rep.repeats, [&] { return detail::lcg_signed_lkk(x0, a, b, div, cfg.iterations); });
      break;
    }
    case strategy::hardware: {
      detail::lcg_signed_hardware(x0, a, b, d, warm);
      std::tie(rep.elapsed_ns, rep.checksum) = detail::time_median(
          rep.repeats, [&] { return detail::lcg_signed_hardware(x0, a, b, d, cfg.iterations); });
      break;
    }
    default:
      throw std::invalid_argument("strategy " + std::string(to_string(cfg.which)) +
                                  " has no signed remainder for the lcg benchmark");
  }
  return rep;
}

inline bench_report lcg_bench(std::int64_t d, strategy which, std::uint64_t iterations,
                              bool is_signed = false) {
  lcg_config cfg;
  cfg.d = d;
  cfg.which = which;
  cfg.iterations = iterations;
  cfg.is_signed = is_signed;
  return lcg_bench(cfg);
}

inline bench_report prime_count_bench(const prime_config& cfg) {
  if (cfg.limit < 3) {
    throw std::invalid_argument("prime limit must be >= 3");
  }
  bench_report rep;
  rep.benchmark = "primes";
  rep.which = cfg.which;
  rep.iterations = detail::prime_trial_tests(cfg.limit);
  rep.repeats = std::max(1u, cfg.repeats);
  std::uint32_t (*kernel)(std::uint32_t) = nullptr;
  switch (cfg.which) {
    case strategy::lkk: kernel = detail::count_primes_lkk; break;
    case strategy::gm: kernel = detail::count_primes_gm; break;
    case strategy::hardware: kernel = detail::count_primes_hardware; break;
    default:
      throw std::invalid_argument("strategy " + std::string(to_string(cfg.which)) +
                                  " has no divisibility test for the primes benchmark");
  }
  std::tie(rep.elapsed_ns, rep.checksum) =
      detail::time_median(rep.repeats, [&] { return static_cast<std::int64_t>(kernel(cfg.limit)); });
  return rep;
}

inline bench_report prime_count_bench(std::uint32_t limit, strategy which) {
  prime_config cfg;
  cfg.limit = limit;
  cfg.which = which;
  return prime_count_bench(cfg);
}

// Reports with the same benchmark, divisor and iteration count must carry
// the same checksum.
inline bool checksums_agree(const std::vector<bench_report>& reports) {
  std::map<std::tuple<std::string, std::int64_t, std::uint64_t>, std::int64_t> seen;
  for (const auto& r : reports) {
    const auto key = std::tuple(r.benchmark, r.divisor.value_or(0), r.iterations);
    const auto [it, inserted] = seen.emplace(key, r.checksum);
    if (!inserted && it->second != r.checksum) return false;
  }
  return true;
}

inline nlohmann::json to_json(const bench_report& r) {
  nlohmann::json j;
  j["benchmark"] = r.benchmark;
  j["strategy"] = std::string(to_string(r.which));
  j["divisor"] = r.divisor ? nlohmann::json(*r.divisor) : nlohmann::json(nullptr);
  j["iterations"] = r.iterations;
  j["elapsed_ns"] = r.elapsed_ns;
  j["ns_per_op"] = r.ns_per_op();
  j["checksum"] = r.checksum;
  j["repeats"] = r.repeats;
  return j;
}

// format: "json" (default when empty) or "csv".
inline std::string emit_report(const std::vector<bench_report>& reports, std::string_view format) {
  if (reports.empty()) {
    throw std::invalid_argument("no reports to emit");
  }
  if (format.empty() || format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  if (format == "csv") {
    std::ostringstream out;
    out << "benchmark,strategy,divisor,iterations,elapsed_ns,ns_per_op,checksum\n";
    for (const auto& r : reports) {
      out << r.benchmark << ',' << to_string(r.which) << ',';
      if (r.divisor) out << *r.divisor;
      char ns[32];
      std::snprintf(ns, sizeof ns, "%.4f", r.ns_per_op());
      out << ',' << r.iterations << ',' << r.elapsed_ns << ',' << ns << ',' << r.checksum << '\n';
    }
    return out.str();
  }
  throw std::invalid_argument("unknown report format: " + std::string(format));
}

}  // namespace fastrem

#endif  // FASTREM_BENCH_HPP
